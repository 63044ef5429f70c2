'''
One-party measurements (diagonal block projectors), their outcomes and the
orthogonality-preserving check
'''

# Python imports
import itertools

# nlcert imports
from .common import NotSupported, parse_index_group, format_index_group
from .model import tilde, nonorthogonal_pairs


class MeasurementError(Exception):
    '''
    Signals a malformed measurement (overlapping or missing indices, unknown
    outcome).
    '''


class LocalMeasurement(object):
    '''
    Measurement of one party; outcome `oid` is the projector onto the
    computational basis indices of its subset
    '''

    def __init__(self, party, outcomes, operators=None):
        self.party = party
        self.outcomes = [(oid, tuple(sorted(indices)))
                         for oid, indices in outcomes]
        ids = [oid for oid, _ in self.outcomes]
        if len(set(ids)) != len(ids):
            raise MeasurementError('duplicate outcome ids: %s' % (ids,))
        # General (Kraus/PSD) outcome operators; not executable
        self.operators = operators

    @classmethod
    def general(cls, party, operators):
        m = cls(party, [], operators=list(operators))
        m.outcomes = [(i, None) for i in range(1, len(m.operators) + 1)]
        return m

    def is_general(self):
        return self.operators is not None

    def outcome_ids(self):
        return [oid for oid, _ in self.outcomes]

    def indices(self, oid):
        for o, indices in self.outcomes:
            if o == oid or str(o) == str(oid):
                return indices
        raise MeasurementError("unknown outcome '%s' of %s" % (oid, self))

    def validate(self, dim):
        '''
        Subsets must be disjoint and cover 0..dim-1
        '''

        if self.is_general():
            raise NotSupported('general measurement outcomes are not '
                               'supported by the executor', 'kraus')
        seen = set()
        for oid, indices in self.outcomes:
            if not indices:
                raise MeasurementError("outcome '%s' is empty" % (oid,))
            for i in indices:
                if i < 0 or i >= dim:
                    raise MeasurementError(
                        'index %d out of range [0, %d)' % (i, dim))
                if i in seen:
                    raise MeasurementError(
                        'index %d appears in two outcomes' % (i,))
                seen.add(i)
        missing = set(range(dim)) - seen
        if missing:
            raise MeasurementError('projectors miss indices %s'
                                   % (sorted(missing),))

    def relabel(self, mapping):
        return LocalMeasurement(
            self.party, [(mapping.get(oid, oid), indices)
                         for oid, indices in self.outcomes])

    def __eq__(self, other):
        return (isinstance(other, LocalMeasurement)
                and self.party == other.party
                and self.outcomes == other.outcomes)

    def __repr__(self):
        return format_measurement(self)


def parse_measurement(literal):
    '''
    "B:0-4;5-10" -> LocalMeasurement on B with outcomes 1 and 2
    '''

    from .parser import ParseError

    if ':' not in literal:
        raise ParseError("measurement literal '%s' lacks 'party:'" % (literal,))
    party, groups = literal.split(':', 1)
    party = party.strip()
    if not party:
        raise ParseError("measurement literal '%s' lacks a party" % (literal,))
    outcomes = []
    for k, group in enumerate(groups.split(';'), 1):
        try:
            outcomes.append((k, parse_index_group(group)))
        except ValueError as ex:
            raise ParseError("bad index group '%s' in '%s': %s"
                             % (group, literal, ex))
    return LocalMeasurement(party, outcomes)


def format_measurement(m):
    if m.is_general():
        return '%s:<%d general outcomes>' % (m.party, len(m.operators))
    return '%s:%s' % (m.party, ';'.join(format_index_group(indices)
                                       for _, indices in m.outcomes))


def computational_basis(party, dim):
    return LocalMeasurement(party, [(i + 1, (i,)) for i in range(dim)])


def block_split(party, dim, k):
    '''
    {0..k-1 | k..dim-1}
    '''

    return LocalMeasurement(party, [(1, tuple(range(k))),
                                    (2, tuple(range(k, dim)))])


def outcome_key(oid):
    if isinstance(oid, tuple):
        return ','.join(map(str, oid))
    return str(oid)


class OutcomeSet(object):
    '''
    Post-measurement states of one outcome, with the labels of the states
    the outcome annihilated
    '''

    def __init__(self, outcome_id, states, dropped, parent_size):
        self.outcome_id = outcome_id
        self.states = states
        self.dropped = list(dropped)
        self.parent_size = parent_size

    def __len__(self):
        return len(self.states)

    def key(self):
        return outcome_key(self.outcome_id)

    def parents(self):
        return [s.root() for s in self.states]

    def __repr__(self):
        return 'OutcomeSet(%s, %d states, %d dropped)' % (
            self.key(), len(self.states), len(self.dropped))


def _project(stateset, i, indices):
    kept, dropped = [], []
    for s in stateset:
        v = s.factors[i].project(indices)
        if v.is_zero():
            dropped.append(s.root())
        else:
            kept.append(s.replace(i, v, label=tilde(s.label),
                                  parent=s.root()))
    return kept, dropped


def apply_projector(stateset, party, indices):
    '''
    Restricts each state's factor on `party` to `indices`, dropping states
    that vanish; surviving labels are tilde-marked
    '''

    i = stateset.space.index(party)
    kept, _ = _project(stateset, i, indices)
    return stateset.derive(kept)


def _attach_witness(stateset, outset):
    witnesses = stateset.getmeta('witnesses') or {}
    w = witnesses.get(outset.key())
    meta = dict(outset.states.meta)
    meta.pop('witnesses', None)
    meta.pop('measurement', None)
    if w is not None:
        meta['witness'] = list(w)
    outset.states.meta = meta
    return outset


def measurement_outcomes(stateset, m):
    '''
    One OutcomeSet per outcome of m (in m's outcome order)
    '''

    if m.is_general():
        raise NotSupported('general measurement outcomes are not supported '
                           'by the executor', 'kraus')
    i = stateset.space.index(m.party)
    m.validate(stateset.space.parties[i].dim)
    res = []
    for oid, indices in m.outcomes:
        kept, dropped = _project(stateset, i, indices)
        res.append(_attach_witness(stateset, OutcomeSet(
            oid, stateset.derive(kept), dropped, len(stateset))))
    return res


def product_outcomes(stateset, measurements):
    '''
    Outcomes of one-party measurements on distinct parties performed
    together; outcome ids are tuples
    '''

    if isinstance(measurements, LocalMeasurement):
        return measurement_outcomes(stateset, measurements)
    if len(measurements) == 1:
        return measurement_outcomes(stateset, measurements[0])
    parties = [m.party for m in measurements]
    if len(set(parties)) != len(parties):
        raise MeasurementError('measurements must act on distinct parties')
    idx = []
    for m in measurements:
        if m.is_general():
            raise NotSupported('general measurement outcomes are not '
                               'supported by the executor', 'kraus')
        i = stateset.space.index(m.party)
        m.validate(stateset.space.parties[i].dim)
        idx.append(i)

    res = []
    for combo in itertools.product(*[m.outcomes for m in measurements]):
        cur = stateset
        dropped = []
        for i, (oid, indices) in zip(idx, combo):
            kept, gone = _project(cur, i, indices)
            dropped.extend(gone)
            cur = stateset.derive(kept)
        oid = tuple(o for o, _ in combo)
        res.append(_attach_witness(stateset, OutcomeSet(
            oid, cur, dropped, len(stateset))))
    return res


def is_orthogonality_preserving(stateset, m, first_only=False):
    '''
    (true iff every outcome set is pairwise orthogonal, violating
    (outcome, label, label) triples)
    '''

    violations = []
    for outset in product_outcomes(stateset, m):
        limit = 1 if first_only else None
        for a, b in nonorthogonal_pairs(outset.states, limit=limit):
            violations.append((outset.outcome_id, a, b))
            if first_only:
                return False, violations
    return not violations, violations
