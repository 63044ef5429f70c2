'''
LOCC discrimination protocol trees and their verifier

A tree is a Leaf or a Node(party, measurement, children) with one child
per outcome. The verifier tracks the candidate states through every branch
and accepts when every leaf can finish the discrimination.
'''

# Python imports
import json

# nlcert imports
from .common import debug, format_index_group
from .measurement import (MeasurementError, computational_basis,
                          measurement_outcomes, parse_measurement)


class ProtocolError(Exception):
    '''
    Signals a malformed protocol tree or an unsupported family.
    '''


DEFAULT_CHILD = '*'
LEAF = 'leaf'


class Leaf(object):

    def __eq__(self, other):
        return isinstance(other, Leaf)

    def __hash__(self):
        return hash(LEAF)

    def __repr__(self):
        return LEAF


class Node(object):
    '''
    One measurement round by `party`; children are keyed by outcome id
    (as string) or by DEFAULT_CHILD
    '''

    def __init__(self, party, measurement, children):
        if measurement.party != party:
            raise ProtocolError("node of party '%s' holds a measurement of '%s'"
                                % (party, measurement.party))
        self.party = party
        self.measurement = measurement
        self.children = {str(k): v for k, v in children.items()}

    def child(self, oid):
        key = str(oid)
        if key in self.children:
            return self.children[key]
        if DEFAULT_CHILD in self.children:
            return self.children[DEFAULT_CHILD]
        raise ProtocolError("node %s has no child for outcome '%s'"
                            % (self.measurement, oid))

    def __eq__(self, other):
        return (isinstance(other, Node) and self.party == other.party
                and self.measurement == other.measurement
                and self.children == other.children)

    def __repr__(self):
        return 'Node(%s)' % (self.measurement,)


def tree_to_dict(tree):
    if isinstance(tree, Leaf):
        return LEAF
    measure = ';'.join(format_index_group(indices)
                       for _, indices in tree.measurement.outcomes)
    children = {}
    for oid in tree.measurement.outcome_ids():
        if str(oid) in tree.children:
            children[str(oid)] = tree_to_dict(tree.children[str(oid)])
    if DEFAULT_CHILD in tree.children:
        children[DEFAULT_CHILD] = tree_to_dict(tree.children[DEFAULT_CHILD])
    return {'party': tree.party, 'measure': measure, 'children': children}


def dict_to_tree(d):
    if d == LEAF:
        return Leaf()
    if not isinstance(d, dict):
        raise ProtocolError('expected a node object or "leaf", got %r' % (d,))
    for key in ('party', 'measure'):
        if key not in d:
            raise ProtocolError("protocol node lacks '%s'" % (key,))
    literal = d['measure']
    if ':' not in literal:
        literal = '%s:%s' % (d['party'], literal)
    m = parse_measurement(literal)
    children = d.get('children', {DEFAULT_CHILD: LEAF})
    if children == LEAF:
        children = {DEFAULT_CHILD: LEAF}
    if not isinstance(children, dict):
        raise ProtocolError('children must be an object, got %r' % (children,))
    return Node(d['party'], m,
                {k: dict_to_tree(v) for k, v in children.items()})


def read_protocol(path):
    with open(path, encoding='utf-8') as f:
        try:
            return dict_to_tree(json.load(f))
        except ValueError as ex:
            raise ProtocolError("cannot read protocol '%s': %s" % (path, ex))


def write_protocol(tree, path):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(tree_to_dict(tree), f, indent=2)
        f.write('\n')


def _classes(vectors):
    '''
    Groups vectors into classes of mutually parallel ones; returns the class
    index per vector, or None when two classes are neither parallel nor
    orthogonal
    '''

    reps = []
    cls = []
    for v in vectors:
        for k, r in enumerate(reps):
            if r.is_parallel(v):
                cls.append(k)
                break
        else:
            for r in reps:
                if not r.inner(v).is_zero():
                    return None
            reps.append(v)
            cls.append(len(reps) - 1)
    return cls


def leaf_rule(candidates):
    '''
    Whether the remaining candidates can be told apart by a final round;
    returns (accepted, rule or reason)

    (i)   at most one candidate;
    (ii)  one party holds pairwise orthogonal residuals;
    (iii) every party whose residuals are pairwise parallel or orthogonal
          measures in a basis containing them, and together the outcomes
          separate all candidates.
    '''

    states = list(candidates)
    if len(states) <= 1:
        return True, 'single candidate'
    nparties = len(states[0].factors)

    for i in range(nparties):
        ok = True
        for a in range(len(states)):
            for b in range(a + 1, len(states)):
                if not states[a].factors[i].inner(states[b].factors[i]).is_zero():
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True, 'orthogonal on %s' % (states[0].factors[i].party,)

    usable = []
    columns = []
    for i in range(nparties):
        cls = _classes([s.factors[i] for s in states])
        if cls is not None:
            usable.append(states[0].factors[i].party)
            columns.append(cls)
    tuples = [tuple(col[k] for col in columns) for k in range(len(states))]
    if len(set(tuples)) == len(tuples):
        return True, 'joint finish on %s' % (','.join(usable),)

    seen = {}
    for s, t in zip(states, tuples):
        if t in seen:
            return False, "'%s' and '%s' cannot be separated" % (
                seen[t].root(), s.root())
        seen[t] = s
    return False, 'candidates cannot be separated'


class ProtocolVerifier(object):
    '''
    Simulates candidate tracking through a protocol tree
    '''

    def __init__(self, verbose=False):
        self.verbose = verbose
        self.trace = []
        self.leaves = 0

    def debug(self, msg, *args):
        if self.verbose:
            debug(msg, *args)

    def verify(self, stateset, tree):
        self.trace = []
        self.leaves = 0
        self.execute(tree, stateset, [])
        ok = not self.trace
        self.debug('protocol %s after %d leaves',
                   'accepted' if ok else 'rejected', self.leaves)
        return ok, list(self.trace)

    def execute(self, obj, candidates, path):
        name = obj.__class__.__name__
        meth = getattr(self, 'execute_%s' % (name,), None)
        if meth is None:
            raise ProtocolError("unknown protocol element '%s'" % (name,))
        return meth(obj, candidates, path)

    def pathstr(self, path):
        return '/'.join(path) if path else 'root'

    def execute_Leaf(self, leaf, candidates, path):
        self.leaves += 1
        ok, why = leaf_rule(candidates)
        if not ok:
            msg = 'leaf %s: %d candidates (%s): %s' % (
                self.pathstr(path), len(candidates),
                ', '.join(s.root() for s in candidates), why)
            self.debug(msg)
            self.trace.append(msg)

    def execute_Node(self, node, candidates, path):
        m = node.measurement
        if m.is_general():
            raise ProtocolError('node %s uses general outcomes'
                                % (self.pathstr(path),))
        try:
            outcomes = measurement_outcomes(candidates, m)
        except MeasurementError as ex:
            raise ProtocolError('malformed node at %s: %s'
                                % (self.pathstr(path), ex))

        covered = set()
        for outset in outcomes:
            covered.update(outset.parents())
        missing = set(s.root() for s in candidates) - covered
        if missing:
            raise ProtocolError('states %s vanish from every outcome at %s'
                                % (sorted(missing), self.pathstr(path)))

        for outset in outcomes:
            child = node.child(outset.outcome_id)
            if not len(outset.states):
                continue
            step = '%s[%s]' % (node.party,
                               format_index_group(m.indices(outset.outcome_id)))
            self.execute(child, outset.states, path + [step])


def verify_protocol(stateset, tree, verbose=False):
    '''
    (accepted, failure trace)
    '''

    return ProtocolVerifier(verbose=verbose).verify(stateset, tree)


def basis_tree(parties, dims):
    '''
    Computational-basis rounds by `parties` in order, then a leaf
    '''

    tree = Leaf()
    for party, dim in reversed(list(zip(parties, dims))):
        tree = Node(party, computational_basis(party, dim),
                    {DEFAULT_CHILD: tree})
    return tree


# type2-78: Alice {0-3 | 4-6}, Bob {4,5 | rest}, then finishing rounds
TYPE2_78_PROTOCOL = {
    'party': 'A', 'measure': '0-3;4-6', 'children': {
        '1': {'party': 'B', 'measure': '4,5;0-3,6,7', 'children': {
            '1': {'party': 'A', 'measure': '0-2;3-6', 'children': LEAF},
            '2': {'party': 'A', 'measure': '0;1-6', 'children': {
                '1': LEAF,
                '2': {'party': 'B', 'measure': '0;1-7', 'children': LEAF},
            }},
        }},
        '2': {'party': 'B', 'measure': '4,5;0-3,6,7', 'children': {
            '1': {'party': 'A', 'measure': '4;0-3,5,6', 'children': LEAF},
            '2': {'party': 'A', 'measure': '4,5;0-3,6', 'children': {
                '1': {'party': 'B', 'measure': '7;0-6', 'children': LEAF},
                '2': LEAF,
            }},
        }},
    }}


def builtin_protocol(family):
    '''
    Shipped distinguishing protocol of a family (id string or FamilyId)
    '''

    from .families import parse_family_id

    fid = parse_family_id(family) if isinstance(family, str) else family
    if fid.kind == 'yu':
        raise ProtocolError('unsupported family %s: Yu sets are locally '
                            'indistinguishable' % (fid,))
    if fid.kind == 'type1':
        return basis_tree(['A'], fid.params)
    if fid.kind == 'strong11':
        return basis_tree(['A'], [11])
    if fid.kind == 'type2-78':
        return dict_to_tree(TYPE2_78_PROTOCOL)
    if fid.kind == 'multi':
        from .families import block_parties
        parties = [block_parties(i, len(fid.params))[0]
                   for i in range(len(fid.params))]
        return basis_tree(parties, fid.params)
    raise ProtocolError('unsupported family %s' % (fid,))
