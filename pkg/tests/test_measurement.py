import pytest

from utils import make_set

from nlcert.common import NotSupported, format_index_group, parse_index_group
from nlcert.families import (multiparty_type1, strong_type1_set, type1_set,
                             type2_set_78)
from nlcert.measurement import (LocalMeasurement, MeasurementError,
                                apply_projector, block_split,
                                computational_basis, format_measurement,
                                is_orthogonality_preserving,
                                measurement_outcomes, parse_measurement,
                                product_outcomes)
from nlcert.model import restrict, support
from nlcert.parser import ParseError, parse_ket


## Literals:

testdata_literals = [
    ('B:0-4;5-10', 'B', [(1, (0, 1, 2, 3, 4)), (2, (5, 6, 7, 8, 9, 10))]),
    ('A:0;1-6', 'A', [(1, (0,)), (2, (1, 2, 3, 4, 5, 6))]),
    ('B:4,5;0-3,6,7', 'B', [(1, (4, 5)), (2, (0, 1, 2, 3, 6, 7))]),
]

@pytest.mark.parametrize(('literal', 'party', 'outcomes'), testdata_literals)
def test_parse_measurement(literal, party, outcomes):
    m = parse_measurement(literal)
    assert m.party == party
    assert m.outcomes == outcomes
    assert format_measurement(m) == literal


testdata_index_groups = [
    ([3], '3'),
    ([4, 5], '4,5'),
    ([0, 1, 2], '0-2'),
    ([0, 1, 2, 3, 6, 7], '0-3,6,7'),
    ([1, 2, 4, 5, 6, 9], '1,2,4-6,9'),
]

@pytest.mark.parametrize(('indices', 'text'), testdata_index_groups)
def test_index_groups(indices, text):
    assert format_index_group(indices) == text
    assert parse_index_group(text) == tuple(indices)


@pytest.mark.parametrize('literal', ['0-4;5-10', ':0-4', 'B:0-x;5'])
def test_bad_literal(literal):
    with pytest.raises(ParseError):
        parse_measurement(literal)


def test_block_split():
    assert block_split('B', 11, 5) == parse_measurement('B:0-4;5-10')
    assert computational_basis('A', 3) == parse_measurement('A:0;1;2')


## Validation:

testdata_invalid = [
    'B:0-4;4-10',
    'B:0-4;6-10',
    'B:0-4;5-11',
]

@pytest.mark.parametrize('literal', testdata_invalid)
def test_invalid_measurement(literal):
    with pytest.raises(MeasurementError):
        measurement_outcomes(type1_set(11), parse_measurement(literal))


def test_duplicate_outcome_ids():
    with pytest.raises(MeasurementError):
        LocalMeasurement('B', [(1, (0,)), (1, (1,))])


def test_general_outcomes_not_executed():
    m = LocalMeasurement.general('B', ['E1', 'E2'])
    assert m.is_general()
    assert m.outcome_ids() == [1, 2]
    with pytest.raises(NotSupported):
        measurement_outcomes(type1_set(11), m)


## Outcomes:

def test_type1_outcomes():
    S = type1_set(11)
    outs = measurement_outcomes(S, parse_measurement('B:0-4;5-10'))
    assert [len(o) for o in outs] == [20, 20]
    assert [o.key() for o in outs] == ['1', '2']
    assert outs[0].dropped == []
    s = outs[0].states.getstate('~psi_1')
    assert s.parent == 'psi_1'
    assert s.factors[1] == parse_ket('|0>-|1>', 11, 'B')
    assert outs[1].states.getstate('~psi_1').factors[1] == \
        parse_ket('|9>-|10>', 11, 'B')


def test_type2_outcomes():
    S = type2_set_78()
    outs = measurement_outcomes(S, parse_measurement('B:0-4;5-7'))
    assert [len(o) for o in outs] == [16, 10]
    assert len(outs[0].dropped) + len(outs[1].dropped) == 2 * 22 - 26
    assert 'phi_3' in outs[0].dropped
    assert outs[0].states.getmeta('witness') == \
        ['psi_%d' % (n,) for n in range(1, 15)]


def test_outcome_meta():
    S = type1_set(11)
    outs = measurement_outcomes(S, parse_measurement('B:0-4;5-10'))
    meta = outs[1].states.meta
    assert meta['witness'] == ['phi_%d' % (n,) for n in range(1, 12)]
    assert 'witnesses' not in meta
    assert 'measurement' not in meta


def test_apply_projector():
    S = type2_set_78()
    T = apply_projector(S, 'B', range(5, 8))
    assert len(T) == 10
    assert all(s.label.startswith('~') for s in T)


testdata_reassembly = [
    (type1_set(11), 'B:0-4;5-10'),
    (strong_type1_set(), 'B:0-4;5-10'),
    (type2_set_78(), 'B:0-4;5-7'),
    (type2_set_78(), 'A:0-3;4-6'),
]

@pytest.mark.parametrize(('S', 'literal'), testdata_reassembly)
def test_outcomes_reassemble(S, literal):
    """
    The outcome pieces of every state add back up to its measured factor.
    """
    m = parse_measurement(literal)
    outs = measurement_outcomes(S, m)
    pieces = {}
    for o in outs:
        assert len(o) + len(o.dropped) == len(S)
        for s in o.states:
            nz = s.factor(m.party).nz
            assert not set(nz) & set(pieces.get(s.root(), {}))
            pieces.setdefault(s.root(), {}).update(nz)
    assert sorted(pieces) == sorted(S.labels())
    for s in S:
        assert pieces[s.label] == s.factor(m.party).nz


def test_projector_commutes_with_restrict():
    T = apply_projector(type1_set(11), 'A', range(5))
    sup = support(T, 'A')
    assert 1 < len(sup) < 11
    left = restrict(apply_projector(T, 'B', range(5)), 'A', sup)
    right = apply_projector(restrict(T, 'A', sup), 'B', range(5))
    assert left == right
    assert left.space.dims() == [len(sup), 11]


def test_product_outcomes():
    S = multiparty_type1([11, 11, 13])
    ms = [parse_measurement(lit) for lit in S.getmeta('measurement')]
    outs = product_outcomes(S, ms)
    assert len(outs) == 8
    assert all(len(o) == 64 for o in outs)
    assert outs[0].key() == '1,1,1'
    assert outs[-1].key() == '2,2,2'
    assert len(outs[3].states.getmeta('witness')) == 9


def test_product_outcomes_distinct_parties():
    S = multiparty_type1([11, 11])
    with pytest.raises(MeasurementError):
        product_outcomes(S, [parse_measurement('B:0-4;5-10'),
                             parse_measurement('B:0-3;4-10')])


## Orthogonality preservation:

testdata_preserving = [
    (type1_set(11), 'B:0-4;5-10', True),
    (type1_set(13), 'B:0-5;6-12', True),
    (type2_set_78(), 'B:0-4;5-7', True),
    # psi_1 and psi_9 both keep |0> on B and overlap on A
    (type1_set(11), 'B:0;1-10', False),
    # |0+1>|0> and |0-1>|0> collapse onto the same state
    (make_set([('p', ['|0>+|1>', '|0>']), ('m', ['|0>-|1>', '|0>'])], (2, 2)),
     'A:0;1', False),
]

@pytest.mark.parametrize(('S', 'literal', 'expected'), testdata_preserving)
def test_orthogonality_preserving(S, literal, expected):
    ok, violations = is_orthogonality_preserving(S, parse_measurement(literal))
    assert ok == expected
    assert bool(violations) != expected


def test_multiparty_orthogonality_preserving():
    S = multiparty_type1([11, 11, 13])
    ms = [parse_measurement(lit) for lit in S.getmeta('measurement')]
    ok, violations = is_orthogonality_preserving(S, ms, first_only=True)
    assert ok, violations
