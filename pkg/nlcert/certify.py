'''
Certification suite: orthogonality, irredundancy (clique counting), OPLM
solution spaces, irreducibility, indistinguishability witnesses and the
hidden-nonlocality classifier
'''

# Python imports
import math
import time

from multiprocessing import Pool

# External libs
import numpy as np
import scipy.linalg

# nlcert imports
from .clique import max_clique
from .common import debug, format_index_group
from .measurement import (LocalMeasurement, format_measurement,
                          is_orthogonality_preserving, measurement_outcomes,
                          product_outcomes)
from .model import (UnknownLabel, nonorthogonal_pairs, partial_inner,
                    strip_spectators, subset, support)
from .protocols import verify_protocol


class NotOrthogonal(Exception):
    '''
    Signals a certifier called on a set that is not pairwise orthogonal.
    '''

    def __init__(self, pairs):
        super(NotOrthogonal, self).__init__(
            'set is not pairwise orthogonal: %s' % (
                ', '.join('(%s, %s)' % p for p in pairs[:5]),))
        self.pairs = pairs


class CertificationError(Exception):
    '''
    Signals a certifier precondition failure (singleton set, unknown witness
    labels).
    '''


IRREDUNDANT = 'Irredundant'
REDUNDANT = 'Redundant'
UNKNOWN = 'Unknown'
CERTIFIED = 'Certified'
IRREDUCIBLE = 'Irreducible'
REDUCIBLE = 'Reducible'

TYPE_I = 'TypeI'
STRONG_TYPE_I = 'StrongTypeI'
TYPE_II = 'TypeII'
NOT_ESTABLISHED = 'NotEstablished'


## Orthogonality

def check_orthogonality(stateset):
    '''
    (true iff pairwise orthogonal, nonorthogonal label pairs)
    '''

    pairs = nonorthogonal_pairs(stateset)
    return not pairs, pairs


def require_orthogonal(stateset):
    pairs = nonorthogonal_pairs(stateset, limit=5)
    if pairs:
        raise NotOrthogonal(pairs)


## Irredundancy

def nonorth_clique(stateset, parties):
    '''
    Maximum clique of the graph joining states whose joint overlap on
    `parties` (a label or a list of labels) is nonzero; returns
    (size, witness labels)
    '''

    if isinstance(parties, str):
        parties = [parties]
    idx = [stateset.space.index(p) for p in parties]
    states = stateset.states

    def adjacent(u, v):
        return not partial_inner(states[u], states[v], idx).is_zero()

    clique = max_clique(len(states), adjacent)
    return len(clique), [states[u].label for u in clique]


class IrredundancyCertificate(object):
    '''
    Per-party clique counts against the d/p thresholds
    '''

    def __init__(self, parties, verdict, redundant=None):
        # party -> dict(clique_size, witness, threshold, against)
        self.parties = parties
        self.verdict = verdict
        self.redundant = redundant

    def to_dict(self):
        return {'verdict': self.verdict, 'redundant': self.redundant,
                'parties': self.parties}

    def tostring(self):
        lines = ['irredundancy: %s%s' % (
            self.verdict, '(%s)' % (self.redundant,) if self.redundant else '')]
        for party, info in self.parties.items():
            lines.append('  %s: clique %d on %s (threshold %d) %s' % (
                party, info['clique_size'], ','.join(info['against']),
                info['threshold'], ' '.join(info['witness'])))
        return '\n'.join(lines)


def certify_irredundancy(stateset):
    '''
    For each party X (dim d, smallest prime p) the states pairwise
    nonorthogonal on all other parties must outnumber d/p, since after a
    nonempty discard on X they would have to stay orthogonal in dimension at
    most d/p. A party whose discard already keeps the set orthogonal makes
    the set Redundant.
    '''

    labels = stateset.space.labels()
    parties = {}
    verdict = IRREDUNDANT
    for X in stateset.space:
        others = [p for p in labels if p != X.label]
        size, witness = nonorth_clique(stateset, others)
        threshold = X.dim // min(X.prime_factors)
        parties[X.label] = {'clique_size': size, 'witness': witness,
                            'threshold': threshold, 'against': others}
        if size <= 1 and len(stateset) > 1:
            return IrredundancyCertificate(parties, REDUNDANT, X.label)
        if size <= threshold:
            verdict = UNKNOWN
    return IrredundancyCertificate(parties, verdict)


## OPLM solution spaces

class HermitianBasis(object):
    '''
    Orthonormal (trace form) basis of the Hermitian E with
    <a_i|E|a_j> = 0 for every pair whose other-party overlap is nonzero
    '''

    def __init__(self, party, ambient_dim, restricted_to_support, indices,
                 basis, singular_values, gap, null_residual, constraints):
        self.party = party
        self.ambient_dim = ambient_dim
        self.restricted_to_support = restricted_to_support
        self.indices = indices
        self.basis = basis
        self.singular_values = singular_values
        self.gap = gap
        self.null_residual = null_residual
        self.constraints = constraints

    @property
    def dimension(self):
        return len(self.basis)

    def is_trivial(self):
        return self.dimension == 1

    def to_dict(self):
        return {'party': self.party, 'ambient_dim': self.ambient_dim,
                'support': format_index_group(self.indices),
                'restricted_to_support': self.restricted_to_support,
                'dimension': self.dimension, 'constraints': self.constraints,
                'gap': _finite(self.gap),
                'null_residual': _finite(self.null_residual)}

    def tostring(self):
        return ('oplm %s on %s (dim %d): solution dimension %d, '
                '%d constraints, gap %.3g, residual %.3g' % (
                    self.party, format_index_group(self.indices),
                    len(self.indices), self.dimension, self.constraints,
                    self.gap, self.null_residual))


def _finite(x):
    return x if math.isfinite(x) else None


class OplmSolver(object):
    '''
    Real-linear nullspace solver over Hermitian matrices: E is parametrized
    by the diagonal generators |k><k| and the off-diagonal pairs
    (|k><l| + |l><k|)/sqrt(2), (i|k><l| - i|l><k|)/sqrt(2)
    '''

    def __init__(self, verbose=False, rtol=1e-9, identity_tol=1e-8):
        self.verbose = verbose
        self.rtol = rtol
        self.identity_tol = identity_tol
        self._generators = {}

    def debug(self, msg, *args):
        if self.verbose:
            debug(msg, *args)

    def generators(self, d):
        if d not in self._generators:
            gens = []
            for k in range(d):
                G = np.zeros((d, d), dtype=complex)
                G[k, k] = 1
                gens.append(G)
            ks, ls = np.triu_indices(d, 1)
            r = 1 / math.sqrt(2)
            for k, l in zip(ks, ls):
                G = np.zeros((d, d), dtype=complex)
                G[k, l] = G[l, k] = r
                gens.append(G)
            for k, l in zip(ks, ls):
                G = np.zeros((d, d), dtype=complex)
                G[k, l] = 1j * r
                G[l, k] = -1j * r
                gens.append(G)
            self._generators[d] = gens
        return self._generators[d]

    @staticmethod
    def constraint_row(a, b):
        '''
        <a|G|b> for every generator G, in generator order
        '''

        d = len(a)
        M = np.outer(np.conj(a), b)
        ks, ls = np.triu_indices(d, 1)
        r = 1 / math.sqrt(2)
        return np.concatenate([np.diag(M),
                               (M[ks, ls] + M[ls, ks]) * r,
                               1j * (M[ks, ls] - M[ls, ks]) * r])

    def nullspace(self, vectors, pairs):
        '''
        Solution space for the party vectors (complex arrays of equal
        length) under the constraints <a_i|E|a_j> = 0, (i, j) in pairs;
        returns (basis matrices, singular values, gap, null residual)
        '''

        d = len(vectors[0]) if vectors else 0
        n = d * d
        gens = self.generators(d)

        rows = []
        for i, j in pairs:
            row = self.constraint_row(vectors[i], vectors[j])
            for part in (row.real, row.imag):
                norm = np.linalg.norm(part)
                if norm > 0:
                    rows.append(part / norm)

        if not rows:
            return list(gens), np.zeros(0), math.inf, 0.0

        A = np.array(rows)
        if A.shape[0] > n:
            R = scipy.linalg.qr(A, mode='r')[0][:n]
        else:
            R = np.vstack([A, np.zeros((n - A.shape[0], n))])
        _, s, vh = scipy.linalg.svd(R)

        tol = self.rtol * s[0]
        rank = int(np.sum(s > tol))
        null = vh[rank:]
        gap = s[rank - 1] / tol if rank > 0 else math.inf
        residual = s[rank] / s[0] if rank < len(s) else 0.0

        # Identity lies in the solution space of an orthogonal set
        ident = np.concatenate([np.ones(d), np.zeros(n - d)])
        proj = null.T.dot(null.dot(ident))
        miss = np.linalg.norm(ident - proj) / math.sqrt(d)
        assert miss <= self.identity_tol, \
            'identity outside the solution space (residual %g)' % (miss,)

        basis = [sum(c * G for c, G in zip(coeffs, gens)) for coeffs in null]
        return basis, s, gap, residual

    def solve(self, stateset, party, restrict_to_support=True):
        require_orthogonal(stateset)
        i = stateset.space.index(party)
        dim = stateset.space.parties[i].dim
        if restrict_to_support:
            indices = support(stateset, party)
        else:
            indices = tuple(range(dim))
        sel = list(indices)
        vectors = [s.factors[i].to_complex()[sel] for s in stateset]

        others = [j for j in range(len(stateset.space)) if j != i]
        states = stateset.states
        pairs = []
        for a in range(len(states)):
            for b in range(a + 1, len(states)):
                if not partial_inner(states[a], states[b], others).is_zero():
                    pairs.append((a, b))

        basis, s, gap, residual = self.nullspace(vectors, pairs)
        res = HermitianBasis(party, dim, restrict_to_support, indices, basis,
                             s, gap, residual, len(pairs))
        self.debug('%s', res.tostring())
        return res


def oplm_space(stateset, party, restrict_to_support=True, solver=None):
    return (solver or OplmSolver()).solve(stateset, party, restrict_to_support)


def is_trivial_oplm(stateset, party, solver=None):
    return oplm_space(stateset, party, True, solver).is_trivial()


## Irreducibility

class IrreducibilityCertificate(object):

    def __init__(self, verdict, spaces, evidence=None, reason=None):
        self.verdict = verdict
        self.spaces = spaces
        # (measurement literal, outcome id, dropped labels)
        self.evidence = evidence
        self.reason = reason

    def to_dict(self):
        d = {'verdict': self.verdict,
             'oplm': [b.to_dict() for b in self.spaces]}
        if self.evidence:
            d['evidence'] = {'measurement': self.evidence[0],
                             'outcome': self.evidence[1],
                             'dropped': self.evidence[2]}
        if self.reason:
            d['reason'] = self.reason
        return d

    def tostring(self):
        s = 'irreducibility: %s' % (self.verdict,)
        if self.evidence:
            s += ' (%s outcome %s drops %s)' % (
                self.evidence[0], self.evidence[1], ', '.join(self.evidence[2]))
        elif self.reason:
            s += ' (%s)' % (self.reason,)
        return s


def _candidate_measurements(party, dim, sup):
    '''
    Computational basis on the support, then every contiguous two-block
    split of it; indices off the support form one extra outcome
    '''

    rest = tuple(i for i in range(dim) if i not in set(sup))
    groups = [[(i,) for i in sup]]
    for j in range(1, len(sup)):
        groups.append([tuple(sup[:j]), tuple(sup[j:])])
    for g in groups:
        if rest:
            g = g + [rest]
        yield LocalMeasurement(party, list(enumerate(g, 1)))


def find_reducing_measurement(stateset):
    '''
    First orthogonality-preserving candidate measurement with an outcome
    that keeps some but not all states
    '''

    for p in stateset.space:
        sup = support(stateset, p.label)
        if len(sup) < 2:
            continue
        for m in _candidate_measurements(p.label, p.dim, sup):
            ok, _ = is_orthogonality_preserving(stateset, m, first_only=True)
            if not ok:
                continue
            for outset in measurement_outcomes(stateset, m):
                if 0 < len(outset) < len(stateset):
                    return (format_measurement(m), outset.key(),
                            outset.dropped)
    return None


def certify_irreducibility(stateset, solver=None):
    '''
    Irreducible when every party's OPLM space is trivial; Reducible only with
    a concrete eliminating measurement; Unknown otherwise
    '''

    if len(stateset) < 2:
        raise CertificationError('irreducibility needs at least two states')
    require_orthogonal(stateset)
    solver = solver or OplmSolver()
    spaces = [solver.solve(stateset, p.label) for p in stateset.space]
    if all(b.is_trivial() for b in spaces):
        return IrreducibilityCertificate(IRREDUCIBLE, spaces)
    evidence = find_reducing_measurement(stateset)
    if evidence:
        return IrreducibilityCertificate(REDUCIBLE, spaces, evidence)
    return IrreducibilityCertificate(
        UNKNOWN, spaces, reason='nontrivial OPLM space on %s' % (
            ','.join(b.party for b in spaces if not b.is_trivial()),))


## Indistinguishability

class IndistinguishabilityCertificate(object):

    def __init__(self, verdict, witness, source, spaces=(), spectators=(),
                 reason=None):
        self.verdict = verdict
        self.witness = witness
        self.source = source
        self.spaces = list(spaces)
        self.spectators = list(spectators)
        self.reason = reason

    def is_certified(self):
        return self.verdict == CERTIFIED

    def to_dict(self):
        d = {'verdict': self.verdict, 'witness': self.witness,
             'witness_size': len(self.witness), 'source': self.source,
             'oplm': [b.to_dict() for b in self.spaces]}
        if self.spectators:
            d['spectators'] = self.spectators
        if self.reason:
            d['reason'] = self.reason
        return d

    def tostring(self):
        s = 'indistinguishability: %s, witness of %d states (%s)' % (
            self.verdict, len(self.witness), self.source)
        if self.spaces:
            s += ', oplm dims %s' % (
                ' '.join('%s=%d' % (b.party, b.dimension) for b in self.spaces),)
        if self.reason:
            s += ': %s' % (self.reason,)
        return s


def certify_indistinguishability(stateset, witness=None, solver=None):
    '''
    Certified when the witness subset (given, shipped as 'witness' metadata,
    or the whole set) has at least 3 states and trivial OPLM on every
    non-spectator party
    '''

    require_orthogonal(stateset)
    if witness is not None:
        source = 'given'
    elif stateset.getmeta('witness') is not None:
        witness, source = stateset.getmeta('witness'), 'metadata'
    else:
        witness, source = None, 'full set'

    if witness is None:
        w = stateset
    else:
        try:
            w = subset(stateset, witness)
        except UnknownLabel as ex:
            raise CertificationError(str(ex))
    labels = w.labels()

    if len(w) < 3:
        return IndistinguishabilityCertificate(
            UNKNOWN, labels, source,
            reason='fewer than 3 states; two orthogonal product states are '
                   'always locally distinguishable')

    w, spectators = strip_spectators(w)
    if len(w.space) < 2:
        return IndistinguishabilityCertificate(
            UNKNOWN, labels, source, spectators=spectators,
            reason='witness lives on a single party')

    solver = solver or OplmSolver()
    spaces = [solver.solve(w, p.label) for p in w.space]
    if all(b.is_trivial() for b in spaces):
        return IndistinguishabilityCertificate(CERTIFIED, labels, source,
                                               spaces, spectators)
    return IndistinguishabilityCertificate(
        UNKNOWN, labels, source, spaces, spectators,
        reason='nontrivial OPLM space on %s' % (
            ','.join(b.party for b in spaces if not b.is_trivial()),))


## Classification

class Classification(object):

    def __init__(self, verdict, reasons, evidence):
        self.verdict = verdict
        self.reasons = reasons
        self.evidence = evidence

    def is_established(self):
        return self.verdict != NOT_ESTABLISHED

    def to_dict(self):
        ev = dict(self.evidence)
        if ev.get('irredundancy') is not None:
            ev['irredundancy'] = ev['irredundancy'].to_dict()
        outs = []
        for o in ev.get('outcomes', []):
            o = dict(o)
            for key in ('indistinguishability', 'irreducibility'):
                if o.get(key) is not None:
                    o[key] = o[key].to_dict()
            outs.append(o)
        ev['outcomes'] = outs
        return {'verdict': self.verdict, 'reasons': self.reasons,
                'evidence': ev}

    def tostring(self):
        lines = ['verdict: %s' % (self.verdict,)]
        for r in self.reasons:
            lines.append('  reason: %s' % (r,))
        ev = self.evidence
        if ev.get('irredundancy') is not None:
            lines.append(ev['irredundancy'].tostring())
        for o in ev.get('outcomes', []):
            lines.append('outcome %s: %d of %d states' % (
                o['outcome'], o['cardinality'], ev['size']))
            for key in ('indistinguishability', 'irreducibility'):
                if o.get(key) is not None:
                    lines.append('  ' + o[key].tostring())
        return '\n'.join(lines)


def _certify_outcome(args):
    states, witness, rtol, identity_tol = args
    solver = OplmSolver(rtol=rtol, identity_tol=identity_tol)
    return certify_indistinguishability(states, witness, solver)


class Classifier(object):
    '''
    Hidden-nonlocality pipeline: orthogonality, protocol, irredundancy,
    orthogonality-preserving measurement, per-outcome witnesses
    '''

    def __init__(self, verbose=False, processes=1, rtol=1e-9,
                 identity_tol=1e-8):
        self.verbose = verbose
        self.processes = processes
        self.rtol = rtol
        self.identity_tol = identity_tol
        self.timings = {}

    def debug(self, msg, *args):
        if self.verbose:
            debug(msg, *args)

    def solver(self):
        return OplmSolver(verbose=self.verbose, rtol=self.rtol,
                          identity_tol=self.identity_tol)

    def stage(self, name, fnc, *args):
        start = time.time()
        res = fnc(*args)
        self.timings[name] = time.time() - start
        self.debug('stage %s done in %.3fs', name, self.timings[name])
        return res

    def witness_for(self, witnesses, outset, pos):
        if witnesses is None:
            return None
        if isinstance(witnesses, dict):
            return witnesses.get(outset.key())
        return witnesses[pos] if pos < len(witnesses) else None

    def certify_outcomes(self, outcomes, witnesses):
        tasks = [(o.states, self.witness_for(witnesses, o, k),
                  self.rtol, self.identity_tol)
                 for k, o in enumerate(outcomes)]
        if self.processes > 1 and len(tasks) > 1:
            pool = Pool(processes=self.processes)
            try:
                return pool.map(_certify_outcome, tasks)
            finally:
                pool.close()
                pool.join()
        return [_certify_outcome(t) for t in tasks]

    def classify(self, stateset, measurements, protocol, witnesses=None):
        self.timings = {}
        reasons = []
        evidence = {'size': len(stateset), 'outcomes': []}
        if isinstance(measurements, LocalMeasurement):
            measurements = [measurements]
        evidence['measurement'] = [format_measurement(m) for m in measurements]

        ok, pairs = self.stage('orthogonality', check_orthogonality, stateset)
        evidence['orthogonal'] = ok
        if not ok:
            reasons.append('set is not pairwise orthogonal: %s' % (pairs[:5],))
            return Classification(NOT_ESTABLISHED, reasons, evidence)

        ok, trace = self.stage('protocol', verify_protocol, stateset, protocol)
        evidence['protocol'] = {'accepted': ok, 'trace': trace}
        if not ok:
            reasons.append('protocol rejected: %s' % (trace[0],))

        cert = self.stage('irredundancy', certify_irredundancy, stateset)
        evidence['irredundancy'] = cert
        if cert.verdict != IRREDUNDANT:
            reasons.append('irredundancy not established: %s%s' % (
                cert.verdict, '(%s)' % (cert.redundant,) if cert.redundant
                else ''))

        ok, violations = self.stage('oplm', is_orthogonality_preserving,
                                    stateset, measurements, True)
        evidence['orthogonality_preserving'] = ok
        if not ok:
            reasons.append('measurement is not orthogonality preserving at '
                           'outcome %s: (%s, %s)' % violations[0])
            return Classification(NOT_ESTABLISHED, reasons, evidence)

        outcomes = product_outcomes(stateset, measurements)
        certs = self.stage('outcomes', self.certify_outcomes, outcomes,
                           witnesses)
        for outset, c in zip(outcomes, certs):
            evidence['outcomes'].append({
                'outcome': outset.key(), 'cardinality': len(outset),
                'dropped': outset.dropped, 'indistinguishability': c,
                'irreducibility': None})
            if not c.is_certified():
                reasons.append('outcome %s not certified indistinguishable: '
                               '%s' % (outset.key(), c.reason))

        if reasons:
            return Classification(NOT_ESTABLISHED, reasons, evidence)

        if any(len(o) < len(stateset) for o in outcomes):
            return Classification(TYPE_II, reasons, evidence)

        strong = True
        start = time.time()
        for outset, ev in zip(outcomes, evidence['outcomes']):
            irr = certify_irreducibility(outset.states, self.solver())
            ev['irreducibility'] = irr
            if irr.verdict != IRREDUCIBLE:
                strong = False
        self.timings['irreducibility'] = time.time() - start
        return Classification(STRONG_TYPE_I if strong else TYPE_I, reasons,
                              evidence)


def classify_hidden_nonlocality(stateset, measurements, protocol,
                                witnesses=None, processes=1, verbose=False):
    return Classifier(verbose=verbose, processes=processes).classify(
        stateset, measurements, protocol, witnesses)


## Checks (command-line certify)

CHECKS = {}


def addcheck(name, fnc):
    CHECKS[name] = fnc


def getcheck(name):
    if name not in CHECKS:
        raise CertificationError("unknown check '%s' (choose from %s)"
                                 % (name, ', '.join(sorted(CHECKS))))
    return CHECKS[name]


class CheckResult(object):

    def __init__(self, name, passed, data, text):
        self.name = name
        self.passed = passed
        self.data = data
        self.text = text

    def to_dict(self):
        return {'check': self.name, 'passed': self.passed, 'result': self.data}

    def tostring(self):
        return '%s: %s\n%s' % (self.name, 'pass' if self.passed else 'fail',
                               self.text)


def run_orthogonality(stateset, party=None, witness=None, solver=None):
    ok, pairs = check_orthogonality(stateset)
    text = 'pairwise orthogonal' if ok else 'nonorthogonal pairs: %s' % (
        ', '.join('(%s, %s)' % p for p in pairs),)
    return CheckResult('orthogonality', ok,
                       {'orthogonal': ok, 'pairs': pairs}, text)


def run_irredundancy(stateset, party=None, witness=None, solver=None):
    cert = certify_irredundancy(stateset)
    return CheckResult('irredundancy', cert.verdict == IRREDUNDANT,
                       cert.to_dict(), cert.tostring())


def run_irreducibility(stateset, party=None, witness=None, solver=None):
    cert = certify_irreducibility(stateset, solver)
    return CheckResult('irreducibility', cert.verdict == IRREDUCIBLE,
                       cert.to_dict(), cert.tostring())


def run_indistinguishability(stateset, party=None, witness=None, solver=None):
    cert = certify_indistinguishability(stateset, witness, solver)
    return CheckResult('indistinguishability', cert.is_certified(),
                       cert.to_dict(), cert.tostring())


def run_oplm_dim(stateset, party=None, witness=None, solver=None):
    solver = solver or OplmSolver()
    parties = [party] if party else stateset.space.labels()
    spaces = [solver.solve(stateset, p) for p in parties]
    return CheckResult('oplm-dim', all(b.is_trivial() for b in spaces),
                       {'spaces': [b.to_dict() for b in spaces]},
                       '\n'.join(b.tostring() for b in spaces))


addcheck('orthogonality', run_orthogonality)
addcheck('irredundancy', run_irredundancy)
addcheck('irreducibility', run_irreducibility)
addcheck('indistinguishability', run_indistinguishability)
addcheck('oplm-dim', run_oplm_dim)
