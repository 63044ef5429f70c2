'''
Constructors of the product-state families and their shipped metadata
(measurement, per-outcome witnesses, figure labels)
'''

# Python imports
import itertools
import string

# nlcert imports
from .common import debug
from .cyclo import CycloRational
from .model import (LocalVector, ProductState, SpaceSpec, StateSet,
                    inner_product, restrict, support)
from .measurement import block_split, measurement_outcomes, outcome_key


class UnknownFamily(Exception):
    '''
    Signals an unknown family id or invalid family parameters.
    '''


class FamilyId(object):
    '''
    Family kind with its integer parameters
    '''

    KINDS = ('yu', 'type1', 'strong11', 'type2-78', 'multi')

    def __init__(self, kind, params=()):
        if kind not in self.KINDS:
            raise UnknownFamily("unknown family kind '%s'" % (kind,))
        self.kind = kind
        self.params = list(params)
        self.validate()

    def validate(self):
        p = self.params
        if self.kind == 'yu':
            if len(p) != 1 or p[0] < 3:
                raise UnknownFamily('yu needs d >= 3, got %s' % (p,))
        elif self.kind == 'type1':
            if len(p) != 1:
                raise UnknownFamily('type1 needs one dimension, got %s' % (p,))
            check_type1_dim(p[0])
        elif self.kind == 'multi':
            if not p:
                raise UnknownFamily('multi needs at least one block')
            for d in p:
                check_type1_dim(d)
        elif p:
            raise UnknownFamily('%s takes no parameters' % (self.kind,))

    def __eq__(self, other):
        return (isinstance(other, FamilyId) and self.kind == other.kind
                and self.params == other.params)

    def __str__(self):
        if self.params:
            return '%s:%s' % (self.kind, ','.join(map(str, self.params)))
        return self.kind

    __repr__ = __str__


def check_type1_dim(d):
    if not isinstance(d, int) or d < 11 or d % 2 == 0:
        raise UnknownFamily('type-I families need odd d >= 11, got %r' % (d,))


def parse_family_id(text):
    '''
    "yu:d", "type1:d", "strong11", "type2-78", "multi:d1,d2,..."
    '''

    text = text.strip()
    kind, _, rest = text.partition(':')
    try:
        params = [int(x) for x in rest.split(',')] if rest else []
    except ValueError:
        raise UnknownFamily("bad parameters in family id '%s'" % (text,))
    return FamilyId(kind, params)


## Vector helpers

def _vec(party, dim, *terms):
    '''
    Sum of c|i> for (i, c) in terms
    '''

    nz = {}
    for i, c in terms:
        nz[i] = nz.get(i, CycloRational(0)) + c
    return LocalVector(party, dim, nz)


def _diff(party, dim, i, j):
    # |i - j>
    return _vec(party, dim, (i, 1), (j, -1))


def _plus(party, dim, lo, hi):
    # |_lo +_hi>
    return _vec(party, dim, *[(i, 1) for i in range(lo, hi + 1)])


def _bipartite(dA, dB):
    return SpaceSpec([('A', dA), ('B', dB)])


## Yu sets

def yu_set(d):
    '''
    2d-1 states |n>|0-n>, |0-n>|n+> and |+_{d-1}>|+_{d-1}> (n+ = n+1, with
    n+ = 1 at n = d-1)
    '''

    if not isinstance(d, int) or d < 3:
        raise UnknownFamily('yu set needs d >= 3, got %r' % (d,))
    states = []
    labels = {}
    for n in range(1, d):
        label = 'psi_%d' % (n,)
        states.append(ProductState(label, [_vec('A', d, (n, 1)),
                                           _diff('B', d, 0, n)]))
        labels[label] = 'h_%d' % (n,)
    for n in range(1, d):
        nplus = 1 if n == d - 1 else n + 1
        label = 'psi_%d' % (d - 1 + n,)
        states.append(ProductState(label, [_diff('A', d, 0, n),
                                           _vec('B', d, (nplus, 1))]))
        labels[label] = 'v_%d' % (nplus,)
    label = 'psi_%d' % (2 * d - 1,)
    states.append(ProductState(label, [_plus('A', d, 0, d - 1),
                                       _plus('B', d, 0, d - 1)]))
    labels[label] = 's'

    res = StateSet(_bipartite(d, d), states)
    res.addmeta('family', str(FamilyId('yu', [d])))
    res.addmeta('figure_labels', labels)
    return res


## Type-I families

def _type1_states(d):
    k = (d - 1) // 2
    states = []
    labels = {}

    def add(label, short, a, b):
        states.append(ProductState(label, [a, b]))
        if short:
            labels[label] = short

    for n in range(1, k):
        add('psi_%d' % (n,), 'h_%d' % (n,), _vec('A', d, (n, 1)),
            _vec('B', d, (0, 1), (n, -1), (d - 1 - n, 1), (d - 1, -1)))
    for n in range(1, k):
        sigma = k - 1 if n == 1 else n - 1
        add('psi_%d' % (k - 1 + n,), 'v_%d' % (n,), _diff('A', d, 0, sigma),
            _diff('B', d, n, d - 1 - n))
    add('psi_%d' % (2 * k - 1,), None, _plus('A', d, 0, k - 1),
        _plus('B', d, 0, d - 1))

    for n in range(1, k + 1):
        if n == 1:
            l0, l1 = k - 3, k - 2
        elif n == 2:
            l0, l1 = k - 2, k - 1
        else:
            l0, l1 = k - n, k - 1
        add('phi_%d' % (n,), 'H_%d' % (n,), _vec('A', d, (k + n, 1)),
            _vec('B', d, (k, 1), (k + n, -1), (l0, 1), (l1, -1)))
    for n in range(1, k + 1):
        tau = k if n == 1 else n - 1
        if n == 1:
            r = k - 2
        elif n == 2:
            r = k - 1
        else:
            r = k - n
        add('phi_%d' % (k + n,), 'V_%d' % (n,), _diff('A', d, k, k + tau),
            _diff('B', d, k + n, r))
    return states, labels


def type1_witnesses(d):
    k = (d - 1) // 2
    return {'1': ['psi_%d' % (n,) for n in range(1, 2 * k)],
            '2': ['phi_%d' % (n,) for n in range(1, 2 * k + 2)]}


def type1_set(d):
    '''
    The 2d-2 states of the odd-d >= 11 type-I family (d = 2k+1)
    '''

    check_type1_dim(d)
    k = (d - 1) // 2
    states, labels = _type1_states(d)
    states.append(ProductState('phi_%d' % (2 * k + 1,),
                               [_plus('A', d, k, d - 1),
                                _plus('B', d, 0, d - 1)]))
    res = StateSet(_bipartite(d, d), states)
    res.addmeta('family', str(FamilyId('type1', [d])))
    res.addmeta('measurement', ['B:0-%d;%d-%d' % (k - 1, k, d - 1)])
    res.addmeta('witnesses', type1_witnesses(d))
    res.addmeta('figure_labels', labels)
    return res


def strong_type1_set():
    '''
    The 20 states in C^11 x C^11 whose outcome sets are locally irreducible
    '''

    d = 11
    states = []
    labels = {}
    for n in range(1, 5):
        label = 'psi_%d' % (n,)
        states.append(ProductState(label, [
            _vec('A', d, (n, 1)),
            _vec('B', d, (4 - n, 1), (4, -1), (5, 1), (5 + n, -1))]))
        labels[label] = 'h_%d' % (n,)
    for n in range(1, 5):
        sigma = 4 if n == 1 else n - 1
        label = 'psi_%d' % (4 + n,)
        states.append(ProductState(label, [_diff('A', d, 0, sigma),
                                           _diff('B', d, 4 - n, 5 + n)]))
        labels[label] = 'v_%d' % (n,)

    phis, philabels = _type1_states(d)
    for s in phis:
        if s.label.startswith('phi_'):
            states.append(s)
            labels[s.label] = philabels[s.label]

    states.append(ProductState('S', [_plus('A', d, 0, d - 1),
                                     _plus('B', d, 0, d - 1)]))
    states.append(ProductState('M', [_diff('A', d, 1, 6),
                                     _diff('B', d, 0, 9)]))
    labels['M'] = 'm'

    res = StateSet(_bipartite(d, d), states)
    res.addmeta('family', str(FamilyId('strong11')))
    res.addmeta('measurement', ['B:0-4;5-10'])
    res.addmeta('figure_labels', labels)
    return res


def restricted_strong_outcomes():
    '''
    The two outcome sets of the strong family under B:{0-4 | 5-10},
    re-expressed on their B supports (C^11 x C^5 and C^11 x C^6)
    '''

    s = strong_type1_set()
    res = []
    for outset in measurement_outcomes(s, block_split('B', 11, 5)):
        states = outset.states
        res.append(restrict(states, 'B', support(states, 'B')))
    return res


## Type-II family

def type2_set_78():
    '''
    The 22 states in C^7 x C^8 whose B-split drops states on both outcomes
    '''

    dA, dB = 7, 8
    roots = [CycloRational.root(k) for k in range(3)]
    states = []

    def add(label, a, b):
        states.append(ProductState(label, [a, b]))

    def pm(i, j, s):
        # |i +/- j> on B
        return _vec('B', dB, (i, 1), (j, s))

    add('psi_1', _vec('A', dA, (0, 1)), pm(0, 1, 1))
    add('psi_2', _vec('A', dA, (0, 1)), pm(0, 1, -1))
    add('psi_3', _vec('A', dA, (0, 1)), pm(2, 3, 1))
    add('psi_4', _vec('A', dA, (0, 1)), pm(2, 3, -1))
    for n, w in enumerate(roots, 5):
        add('psi_%d' % (n,),
            _vec('A', dA, (0, 1), (1, w), (2, w * w)),
            _vec('B', dB, (4, 1)))
    add('psi_8', _vec('A', dA, (3, 1)),
        _vec('B', dB, (3, 1), (4, 1), (5, 1), (6, 1)))
    add('psi_9', _vec('A', dA, (3, 1)),
        _vec('B', dB, (3, 1), (4, -1), (5, 1), (6, -1)))
    add('psi_10', _vec('A', dA, (3, 1)), pm(1, 2, 1))
    add('psi_11', _vec('A', dA, (3, 1)), pm(1, 2, -1))
    for n, w in enumerate(roots, 12):
        add('psi_%d' % (n,),
            _vec('A', dA, (1, 1), (2, w), (3, w * w)),
            _vec('B', dB, (0, 1)))

    add('phi_1', _vec('A', dA, (4, 1)),
        _vec('B', dB, (5, 1), (6, 1), (3, 1), (4, 1)))
    add('phi_2', _vec('A', dA, (4, 1)),
        _vec('B', dB, (5, 1), (6, -1), (3, 1), (4, -1)))
    add('phi_3', _vec('A', dA, (4, 1), (5, 1)), _vec('B', dB, (7, 1)))
    add('phi_4', _vec('A', dA, (4, 1), (5, -1)), _vec('B', dB, (7, 1)))
    add('phi_5', _vec('A', dA, (6, 1)), pm(6, 7, 1))
    add('phi_6', _vec('A', dA, (6, 1)), pm(6, 7, -1))
    add('phi_7', _vec('A', dA, (5, 1), (6, 1)), _vec('B', dB, (5, 1)))
    add('phi_8', _vec('A', dA, (5, 1), (6, -1)), _vec('B', dB, (5, 1)))

    res = StateSet(_bipartite(dA, dB), states)
    res.addmeta('family', str(FamilyId('type2-78')))
    res.addmeta('measurement', ['B:0-4;5-7'])
    res.addmeta('witnesses', {
        '1': ['psi_%d' % (n,) for n in range(1, 15)],
        '2': ['phi_%d' % (n,) for n in range(1, 9)]})
    return res


## Multiparty composition

LISTED_FILLERS = {11: (3, 9, 2, 8), 13: (4, 10, 3, 9)}


def _filler(d, rect, parties=('A', 'B')):
    r1, r2, c1, c2 = rect
    return ProductState('fill', [_diff(parties[0], d, r1, r2),
                                 _diff(parties[1], d, c1, c2)])


def filler_violations(d, rect, family=None):
    '''
    Which filler properties the rectangle (r1, r2, c1, c2) violates:
      1. orthogonal to the family, and family + filler locally
         distinguishable by Alice's computational basis;
      2. nonzero on both halves of the B-split;
      3. measured pieces orthogonal to the family's measured pieces.
    '''

    from .protocols import basis_tree, verify_protocol

    family = family or type1_set(d)
    k = (d - 1) // 2
    fill = _filler(d, rect)
    failed = []

    if any(not inner_product(fill, s).is_zero() for s in family):
        return [1]

    halves = [tuple(range(k)), tuple(range(k, d))]
    pieces = []
    for half in halves:
        v = fill.factors[1].project(half)
        if v.is_zero():
            failed.append(2)
            break
        pieces.append((half, fill.replace(1, v)))
    else:
        for half, piece in pieces:
            for s in family:
                v = s.factors[1].project(half)
                if v.is_zero():
                    continue
                if not inner_product(piece, s.replace(1, v)).is_zero():
                    failed.append(3)
                    break
            if 3 in failed:
                break

    if not failed:
        union = family.derive(list(family) + [fill])
        ok, _ = verify_protocol(union, basis_tree(['A'], [d]))
        if not ok:
            failed.append(1)
    return failed


def filler_candidates(d):
    '''
    Rectangles in search order: rows r1 < r2 anywhere, c1 in the first half
    of the B-split and c2 in the second
    '''

    k = (d - 1) // 2
    for r1, r2 in itertools.combinations(range(d), 2):
        for c1, c2 in itertools.product(range(0, k), range(k, d)):
            yield (r1, r2, c1, c2)


def filler_rect(d, verbose=False):
    '''
    Rectangle (r1, r2, c1, c2) of the filler for blocks of dimension d; the
    listed choice for d is tried first and kept only if it passes all three
    properties
    '''

    check_type1_dim(d)
    family = type1_set(d)
    if d in LISTED_FILLERS:
        rect = LISTED_FILLERS[d]
        failed = filler_violations(d, rect, family)
        if not failed:
            return rect
        if verbose:
            debug('filler %s for d=%d violates %s, searching',
                  rect, d, failed)

    for rect in filler_candidates(d):
        if not filler_violations(d, rect, family):
            if verbose:
                debug('filler for d=%d: %s', d, rect)
            return rect
    raise UnknownFamily('no filler rectangle satisfies the filler '
                        'properties for d=%d' % (d,))


def filler_state(d, verbose=False):
    '''
    Filler (|r1> - |r2>)(|c1> - |c2>) for blocks of dimension d
    '''

    return _filler(d, filler_rect(d, verbose))


def block_parties(i, nblocks):
    '''
    Party labels of block i (0-based): A, B for the first block, C, D for
    the second and so on
    '''

    if 2 * nblocks <= len(string.ascii_uppercase):
        return (string.ascii_uppercase[2 * i], string.ascii_uppercase[2 * i + 1])
    return ('A%d' % (i + 1,), 'B%d' % (i + 1,))


def _relabel_party(v, party):
    return LocalVector(party, v.dim, v.nz)


def multiparty_type1(dims):
    '''
    Union over blocks i of fill_1 x ... x S_i x ... x fill_N
    '''

    dims = list(dims)
    FamilyId('multi', dims)
    if len(dims) == 1:
        return type1_set(dims[0])

    n = len(dims)
    parties = [block_parties(i, n) for i in range(n)]
    space = SpaceSpec([(p, d) for (pa, pb), d in zip(parties, dims)
                       for p in (pa, pb)])
    rects = [filler_rect(d) for d in dims]
    fills = [_filler(d, rect) for d, rect in zip(dims, rects)]
    blocks = [type1_set(d) for d in dims]

    states = []
    for i, block in enumerate(blocks):
        for s in block:
            factors = []
            for j in range(n):
                src = s if j == i else fills[j]
                factors.append(_relabel_party(src.factors[0], parties[j][0]))
                factors.append(_relabel_party(src.factors[1], parties[j][1]))
            states.append(ProductState('%d:%s' % (i + 1, s.label), factors))

    res = StateSet(space, states)
    res.addmeta('family', str(FamilyId('multi', dims)))
    res.addmeta('measurement', [
        '%s:0-%d;%d-%d' % (parties[j][1], (d - 1) // 2 - 1, (d - 1) // 2, d - 1)
        for j, d in enumerate(dims)])
    res.addmeta('fillers', {str(j + 1): list(rect)
                            for j, rect in enumerate(rects)})

    # Block 1's witness for its outcome, whatever the other blocks observe
    first = type1_witnesses(dims[0])
    witnesses = {}
    for oid in itertools.product(*[(1, 2) for _ in dims]):
        witnesses[outcome_key(oid)] = ['1:%s' % (label,)
                                       for label in first[str(oid[0])]]
    res.addmeta('witnesses', witnesses)
    return res


## Registry

FAMILIES = {}


def addfamily(kind, constructor):
    FAMILIES[kind] = constructor


def getfamily(kind):
    if kind not in FAMILIES:
        raise UnknownFamily("unknown family kind '%s'" % (kind,))
    return FAMILIES[kind]


def construct(family):
    '''
    State set of a family id (string or FamilyId)
    '''

    fid = parse_family_id(family) if isinstance(family, str) else family
    return getfamily(fid.kind)(*fid.params)


addfamily('yu', yu_set)
addfamily('type1', type1_set)
addfamily('strong11', strong_type1_set)
addfamily('type2-78', type2_set_78)
addfamily('multi', lambda *dims: multiparty_type1(dims))


def figure_labels(stateset):
    '''
    Short figure labels (h_n, v_n, H_n, V_n, m, s) keyed by state label;
    measured states inherit their parent's label
    '''

    labels = stateset.getmeta('figure_labels') or {}
    return {s.label: labels[s.root()] for s in stateset if s.root() in labels}
