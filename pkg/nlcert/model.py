'''
State model: spaces, product states, state sets and their inner products
'''

# Python imports
import itertools

# External libs
import numpy as np

# nlcert imports
from .common import SpaceError, factorize
from .cyclo import CycloRational, ZERO, cy_conj, cy_mul, cy_to_float


TILDE = '~'


class UnknownLabel(SpaceError):
    '''
    Signals a state label that is not in the set
    '''


def tilde(label):
    '''
    Marks a label as measured (psi_1 -> ~psi_1); marking is idempotent
    '''

    if label.startswith(TILDE):
        return label
    return TILDE + label


def untilde(label):
    return label.lstrip(TILDE)


class Party(object):
    '''
    One local system: label, dimension and prime factorization
    '''

    def __init__(self, label, dim, prime_factors=None):
        if not isinstance(label, str) or not label:
            raise SpaceError('party label must be a nonempty string')
        if not isinstance(dim, int) or dim < 2:
            raise SpaceError("party '%s' needs dim >= 2, got %r" % (label, dim))
        if prime_factors is None:
            prime_factors = factorize(dim)
        prime_factors = list(prime_factors)
        prod = 1
        for p in prime_factors:
            prod *= p
        if prod != dim or factorize(dim) != sorted(prime_factors):
            raise SpaceError("bad factorization %r of %d" % (prime_factors, dim))

        self.label = label
        self.dim = dim
        self.prime_factors = prime_factors

    def __eq__(self, other):
        return (isinstance(other, Party) and self.label == other.label
                and self.dim == other.dim)

    def __hash__(self):
        return hash((self.label, self.dim))

    def __repr__(self):
        return '%s(%d)' % (self.label, self.dim)


class SpaceSpec(object):
    '''
    Ordered list of parties
    '''

    def __init__(self, parties):
        ps = []
        for party in parties:
            if not isinstance(party, Party):
                party = Party(*party)
            ps.append(party)
        if not ps:
            raise SpaceError('space needs at least one party')
        labels = [p.label for p in ps]
        if len(set(labels)) != len(labels):
            raise SpaceError('duplicate party labels: %s' % (labels,))
        self.parties = tuple(ps)
        self._index = {p.label: i for i, p in enumerate(ps)}

    def __len__(self):
        return len(self.parties)

    def __iter__(self):
        return iter(self.parties)

    def __eq__(self, other):
        return isinstance(other, SpaceSpec) and self.parties == other.parties

    def __hash__(self):
        return hash(self.parties)

    def __repr__(self):
        return ' x '.join(map(repr, self.parties))

    def labels(self):
        return [p.label for p in self.parties]

    def dims(self):
        return [p.dim for p in self.parties]

    def index(self, party):
        if isinstance(party, int):
            if 0 <= party < len(self.parties):
                return party
            raise SpaceError('party index %d out of range' % (party,))
        if party not in self._index:
            raise SpaceError("unknown party '%s'" % (party,))
        return self._index[party]

    def party(self, party):
        return self.parties[self.index(party)]

    def dim(self, party):
        return self.party(party).dim

    def total_dim(self):
        total = 1
        for p in self.parties:
            total *= p.dim
        return total

    def with_dim(self, party, dim):
        i = self.index(party)
        ps = list(self.parties)
        ps[i] = Party(ps[i].label, dim)
        return SpaceSpec(ps)

    def without(self, party_labels):
        return SpaceSpec([p for p in self.parties
                          if p.label not in party_labels])

    def to_dict(self):
        return {'parties': [{'label': p.label, 'dim': p.dim,
                             'prime_factors': list(p.prime_factors)}
                            for p in self.parties]}

    @classmethod
    def from_dict(cls, d):
        return cls([Party(p['label'], p['dim'], p.get('prime_factors'))
                    for p in d['parties']])


class LocalVector(object):
    '''
    Exact coefficient vector of one party (kept sparse: only nonzero
    entries are stored)
    '''

    __slots__ = ('party', 'dim', 'nz', '_key')

    def __init__(self, party, dim, entries):
        '''
        entries - either a dense sequence of length dim or a dict
                  index -> coefficient
        '''

        self.party = party
        self.dim = dim
        nz = {}
        if isinstance(entries, dict):
            items = entries.items()
        else:
            assert len(entries) == dim, \
                'expected %d entries, got %d' % (dim, len(entries))
            items = enumerate(entries)
        for i, c in items:
            c = CycloRational.coerce(c)
            if not c.is_zero():
                if i < 0 or i >= dim:
                    raise SpaceError('index %d out of range [0, %d)' % (i, dim))
                nz[i] = c
        self.nz = nz
        self._key = None

    @classmethod
    def basis(cls, party, dim, i):
        return cls(party, dim, {i: 1})

    @property
    def entries(self):
        return tuple(self.nz.get(i, ZERO) for i in range(self.dim))

    def __getitem__(self, i):
        return self.nz.get(i, ZERO)

    def key(self):
        if self._key is None:
            self._key = (self.party, self.dim,
                         tuple(sorted((i, c.a, c.b) for i, c in self.nz.items())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, LocalVector) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        from .parser import print_ket
        return '%s%s' % (self.party, print_ket(self))

    def is_zero(self):
        return not self.nz

    def support(self):
        return tuple(sorted(self.nz))

    def inner(self, other):
        '''
        <self|other>, conjugate-linear in self
        '''

        a, b = self.nz, other.nz
        if len(b) < len(a):
            small, large, flip = b, a, True
        else:
            small, large, flip = a, b, False
        res = ZERO
        for i, c in small.items():
            d = large.get(i)
            if d is None:
                continue
            if flip:
                res = res + cy_mul(cy_conj(d), c)
            else:
                res = res + cy_mul(cy_conj(c), d)
        return res

    def project(self, indices):
        '''
        Entries outside `indices` zeroed
        '''

        indices = set(indices)
        return LocalVector(self.party, self.dim,
                           {i: c for i, c in self.nz.items() if i in indices})

    def reindex(self, indices):
        '''
        Restriction to `indices`, relabeled in increasing order
        '''

        indices = sorted(indices)
        pos = {i: j for j, i in enumerate(indices)}
        for i in self.nz:
            if i not in pos:
                raise SpaceError(
                    "%s has weight at index %d outside the subset %s"
                    % (self.party, i, indices))
        return LocalVector(self.party, len(indices),
                           {pos[i]: c for i, c in self.nz.items()})

    def permute(self, perm):
        '''
        Basis relabeling i -> perm[i]
        '''

        return LocalVector(self.party, self.dim,
                           {perm[i]: c for i, c in self.nz.items()})

    def is_parallel(self, other):
        '''
        Whether other = c * self for a nonzero scalar c
        '''

        if self.dim != other.dim or set(self.nz) != set(other.nz):
            return False
        if not self.nz:
            return True
        p = min(self.nz)
        sp, op = self.nz[p], other.nz[p]
        for i, c in self.nz.items():
            if cy_mul(other.nz[i], sp) != cy_mul(c, op):
                return False
        return True

    def to_complex(self):
        v = np.zeros(self.dim, dtype=complex)
        for i, c in self.nz.items():
            v[i] = cy_to_float(c)
        return v


class ProductState(object):
    '''
    Unnormalized fully product pure state: one LocalVector per party
    '''

    __slots__ = ('label', 'factors', 'parent')

    def __init__(self, label, factors, parent=None):
        factors = tuple(factors)
        for f in factors:
            if f.is_zero():
                raise SpaceError("state '%s' has a zero factor on %s"
                                 % (label, f.party))
        self.label = label
        self.factors = factors
        self.parent = parent

    def root(self):
        '''
        Label of the unmeasured state this one descends from
        '''

        return self.parent if self.parent is not None else self.label

    def factor(self, party):
        if isinstance(party, int):
            return self.factors[party]
        for f in self.factors:
            if f.party == party:
                return f
        raise SpaceError("unknown party '%s'" % (party,))

    def replace(self, i, vector, label=None, parent=None):
        factors = list(self.factors)
        factors[i] = vector
        return ProductState(label or self.label, factors,
                            parent=parent if parent is not None else self.parent)

    def __eq__(self, other):
        return (isinstance(other, ProductState) and self.label == other.label
                and self.factors == other.factors)

    def __hash__(self):
        return hash((self.label, self.factors))

    def __repr__(self):
        return '%s = %s' % (self.label,
                            ''.join(repr(f) for f in self.factors))


class StateSet(object):
    '''
    States with unique labels on a common space
    '''

    def __init__(self, space, states, meta=None):
        self.space = space
        self.states = list(states)
        self.meta = dict(meta) if meta else {}
        self._bylabel = {}
        for s in self.states:
            if s.label in self._bylabel:
                raise SpaceError("duplicate state label '%s'" % (s.label,))
            self._bylabel[s.label] = s
            if len(s.factors) != len(space):
                raise SpaceError("state '%s' has %d factors, space has %d"
                                 % (s.label, len(s.factors), len(space)))
            for f, p in zip(s.factors, space):
                if f.party != p.label or f.dim != p.dim:
                    raise SpaceError(
                        "state '%s' factor %s(%d) does not match party %r"
                        % (s.label, f.party, f.dim, p))

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def __eq__(self, other):
        return (isinstance(other, StateSet) and self.space == other.space
                and self.states == other.states)

    def __repr__(self):
        return '\n'.join(map(repr, self.states))

    def labels(self):
        return [s.label for s in self.states]

    def getstate(self, label):
        return self._bylabel[label]

    def has(self, label):
        return label in self._bylabel

    def addmeta(self, name, val):
        self.meta[name] = val

    def getmeta(self, name, default=None):
        return self.meta.get(name, default)

    def derive(self, states, space=None):
        '''
        New set with the same metadata
        '''

        return StateSet(space or self.space, states, meta=self.meta)


def same_space(s, t):
    if len(s.factors) != len(t.factors):
        raise SpaceError("'%s' and '%s' live on different spaces"
                         % (s.label, t.label))
    for f, g in zip(s.factors, t.factors):
        if f.party != g.party or f.dim != g.dim:
            raise SpaceError("'%s' and '%s' live on different spaces"
                             % (s.label, t.label))


def local_inner(s, t, party):
    '''
    <s|t> on a single party
    '''

    return s.factor(party).inner(t.factor(party))


def partial_inner(s, t, parties):
    '''
    Product of local inner products over `parties` (indices), stopping at
    the first zero
    '''

    res = CycloRational(1)
    for i in parties:
        c = s.factors[i].inner(t.factors[i])
        if c.is_zero():
            return ZERO
        res = cy_mul(res, c)
    return res


def inner_product(s, t):
    same_space(s, t)
    return partial_inner(s, t, range(len(s.factors)))


def coordinates(s):
    return set(itertools.product(*[f.support() for f in s.factors]))


def support(stateset, party):
    i = stateset.space.index(party)
    indices = set()
    for s in stateset:
        indices.update(s.factors[i].nz)
    return tuple(sorted(indices))


def restrict(stateset, party, indices):
    '''
    Re-expresses the set on the span of `indices` of one party
    '''

    i = stateset.space.index(party)
    indices = sorted(set(indices))
    if not indices:
        raise SpaceError('cannot restrict to an empty index subset')
    dim = stateset.space.parties[i].dim
    for j in indices:
        if j < 0 or j >= dim:
            raise SpaceError('index %d out of range [0, %d)' % (j, dim))
    if len(indices) < 2:
        raise SpaceError('restriction must keep at least two indices')
    space = stateset.space.with_dim(i, len(indices))
    states = [s.replace(i, s.factors[i].reindex(indices)) for s in stateset]
    return stateset.derive(states, space=space)


def restrict_to_support(stateset, party):
    '''
    restrict() onto the party's support; a party whose support is a single
    index is left as is
    '''

    sup = support(stateset, party)
    if len(sup) < 2 or len(sup) == stateset.space.dim(party):
        return stateset
    return restrict(stateset, party, sup)


def matches_label(s, label):
    return s.label == label or s.root() == label or untilde(s.label) == label


def subset(stateset, labels):
    '''
    States selected by label; a label also matches a measured descendant
    '''

    chosen = []
    for label in labels:
        found = [s for s in stateset if matches_label(s, label)]
        if not found:
            raise UnknownLabel("label '%s' not in set" % (label,))
        for s in found:
            if s not in chosen:
                chosen.append(s)
    return stateset.derive(chosen)


def spectator_parties(stateset):
    '''
    Parties on which all states carry the same factor up to a scalar
    '''

    res = []
    if not len(stateset):
        return res
    for i, p in enumerate(stateset.space):
        first = stateset[0].factors[i]
        if all(first.is_parallel(s.factors[i]) for s in stateset):
            res.append(p.label)
    return res


def strip_spectators(stateset):
    '''
    Drops spectator parties (a fixed product factor does not change local
    distinguishability); returns (set, dropped labels)
    '''

    dropped = spectator_parties(stateset)
    if not dropped or len(dropped) == len(stateset.space):
        return stateset, []
    keep = [i for i, p in enumerate(stateset.space) if p.label not in dropped]
    space = stateset.space.without(dropped)
    states = [ProductState(s.label, [s.factors[i] for i in keep],
                           parent=s.parent)
              for s in stateset]
    return stateset.derive(states, space=space), dropped


def dense_vector(s):
    '''
    Full tensor of a product state (oracle and Lemma-1 use only)
    '''

    v = np.ones(1, dtype=complex)
    for f in s.factors:
        v = np.kron(v, f.to_complex())
    return v


def nonorthogonal_pairs(stateset, limit=None):
    '''
    Label pairs (i < j in set order) with nonzero inner product
    '''

    pairs = []
    states = stateset.states
    n = len(states[0].factors) if states else 0
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            if not partial_inner(states[i], states[j], range(n)).is_zero():
                pairs.append((states[i].label, states[j].label))
                if limit is not None and len(pairs) >= limit:
                    return pairs
    return pairs
