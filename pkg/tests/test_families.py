import pytest

from utils import factor_map, load_states

from nlcert.certify import check_orthogonality
from nlcert.families import (FAMILIES, UnknownFamily, block_parties,
                             construct, figure_labels, filler_rect,
                             filler_state, filler_violations,
                             multiparty_type1, parse_family_id,
                             restricted_strong_outcomes, strong_type1_set,
                             type1_set, type2_set_78, yu_set)
from nlcert.model import coordinates, inner_product
from nlcert.parser import parse_ket


## Family ids:

testdata_ids = [
    ('yu:5', 'yu', [5]),
    ('type1:11', 'type1', [11]),
    ('strong11', 'strong11', []),
    ('type2-78', 'type2-78', []),
    ('multi:11,11,13', 'multi', [11, 11, 13]),
]

@pytest.mark.parametrize(('text', 'kind', 'params'), testdata_ids)
def test_parse_family_id(text, kind, params):
    fid = parse_family_id(text)
    assert fid.kind == kind
    assert fid.params == params
    assert str(fid) == text


testdata_bad_ids = ['yu:2', 'type1:10', 'type1:9', 'type1:x', 'foo:3',
                    'strong11:3', 'multi:11,12', 'multi']

@pytest.mark.parametrize('text', testdata_bad_ids)
def test_bad_family_id(text):
    with pytest.raises(UnknownFamily):
        parse_family_id(text)


def test_registry():
    assert sorted(FAMILIES) == ['multi', 'strong11', 'type1', 'type2-78', 'yu']
    assert len(construct('type1:13')) == 24


## Cardinalities and orthogonality:

testdata_orthogonal = [
    ('yu:3', 5), ('yu:4', 7), ('yu:5', 9), ('yu:6', 11), ('yu:7', 13),
    ('yu:8', 15), ('type1:11', 20), ('type1:13', 24), ('type1:15', 28),
    ('strong11', 20), ('type2-78', 22), ('multi:11,11,13', 64),
    ('multi:11,13', 44),
]

@pytest.mark.parametrize(('family', 'size'), testdata_orthogonal)
def test_orthogonal(family, size):
    """
    Every constructor returns a pairwise orthogonal set of the given size
    (exact arithmetic, zero tolerance).
    """
    S = construct(family)
    assert len(S) == size
    ok, pairs = check_orthogonality(S)
    assert ok, pairs


def test_deterministic():
    assert type1_set(13) == type1_set(13)
    assert multiparty_type1([11, 13]) == multiparty_type1([11, 13])


## Listing fidelity:

testdata_listings = [
    (11, 'example1.json'),
    (13, 'example2.json'),
]

@pytest.mark.parametrize(('d', 'fname'), testdata_listings)
def test_type1_listing(d, fname):
    """
    type1_set(d) reproduces the shipped listing coefficient for coefficient.
    """
    assert factor_map(type1_set(d)) == factor_map(load_states(fname))


def test_type1_coordinates_disjoint():
    """
    All states but the two full-sum ones have 4 coordinates, pairwise
    disjoint.
    """
    for d in (11, 13, 15):
        S = type1_set(d)
        k = (d - 1) // 2
        seen = set()
        for s in S:
            if s.label in ('psi_%d' % (2 * k - 1,), 'phi_%d' % (2 * k + 1,)):
                continue
            c = coordinates(s)
            assert len(c) == 4
            assert not (c & seen)
            seen |= c


def test_type1_bad_dims():
    for d in (9, 10, 12):
        with pytest.raises(UnknownFamily):
            type1_set(d)


## Yu sets:

def test_yu_set():
    S = yu_set(5)
    assert S.getstate('psi_2').factors[1] == parse_ket('|0>-|2>', 5, 'B')
    labels = figure_labels(S)
    assert labels['psi_2'] == 'h_2'
    # |0-4>|1>: n = 4 wraps to n+ = 1
    assert labels['psi_8'] == 'v_1'
    assert labels['psi_9'] == 's'
    with pytest.raises(UnknownFamily):
        yu_set(2)


## Strong family:

def test_strong_set():
    S = strong_type1_set()
    assert coordinates(S.getstate('M')) == {(1, 0), (1, 9), (6, 0), (6, 9)}
    phis = ['phi_%d' % (n,) for n in range(1, 11)]
    T = type1_set(11)
    for label in phis:
        assert S.getstate(label) == T.getstate(label)
    assert figure_labels(S)['M'] == 'm'


def test_restricted_strong_outcomes():
    one, two = restricted_strong_outcomes()
    assert one.space.dims() == [11, 5]
    assert two.space.dims() == [11, 6]
    assert len(one) == len(two) == 20


## Type-II family:

def test_type2_set():
    S = type2_set_78()
    assert S.space.dims() == [7, 8]
    assert S.getstate('psi_5').factors[0] == parse_ket('|0>+|1>+|2>', 7, 'A')
    assert S.getstate('psi_6').factors[0] == parse_ket('|0>+w|1>+w^2|2>', 7, 'A')
    assert S.getstate('psi_7').factors[0] == parse_ket('|0>+w^2|1>+w|2>', 7, 'A')
    assert inner_product(S.getstate('psi_5'), S.getstate('psi_6')).is_zero()


## Fillers and the multiparty composition:

testdata_fillers = [
    (11, '|1>-|2>', '|4>-|5>'),
    (13, '|1>-|2>', '|4>-|6>'),
    (15, '|1>-|2>', '|4>-|7>'),
]

@pytest.mark.parametrize(('d', 'a', 'b'), testdata_fillers)
def test_filler(d, a, b):
    f = filler_state(d)
    assert f.factors[0] == parse_ket(a, d, 'A')
    assert f.factors[1] == parse_ket(b, d, 'B')
    r1, r2 = f.factors[0].support()
    c1, c2 = f.factors[1].support()
    assert filler_violations(d, (r1, r2, c1, c2)) == []


testdata_listed_fillers = [
    (11, (3, 9, 2, 8)),
    (13, (4, 10, 3, 9)),
]

@pytest.mark.parametrize(('d', 'rect'), testdata_listed_fillers)
def test_listed_filler_overlaps_stoppers(d, rect):
    """
    Orthogonal and distinguishable with the family, but the measured pieces
    overlap those of the all-plus states
    """

    assert filler_violations(d, rect) == [3]
    assert filler_rect(d) != rect


def test_filler_violations():
    # |1-6>|0-5> is not orthogonal to every state of the family
    assert filler_violations(11, (1, 6, 0, 5)) == [1]
    # Nothing of the filler on the second half of the split
    assert filler_violations(11, (1, 2, 5, 6)) == [2]


def test_block_parties():
    assert block_parties(0, 3) == ('A', 'B')
    assert block_parties(2, 3) == ('E', 'F')
    assert block_parties(13, 14) == ('A14', 'B14')


def test_multiparty():
    S = multiparty_type1([11, 11, 13])
    assert len(S) == 64
    assert S.space.labels() == ['A', 'B', 'C', 'D', 'E', 'F']
    assert S.space.dims() == [11, 11, 11, 11, 13, 13]
    assert S.getmeta('measurement') == ['B:0-4;5-10', 'D:0-4;5-10',
                                        'F:0-5;6-12']
    assert S.getmeta('fillers') == {'1': [1, 2, 4, 5], '2': [1, 2, 4, 5],
                                    '3': [1, 2, 4, 6]}
    assert len(S.getmeta('witnesses')) == 8
    s = S.getstate('2:psi_1')
    assert s.factors[0] == parse_ket('|1>-|2>', 11, 'A')
    assert s.factors[2] == parse_ket('|1>', 11, 'C')
    assert s.factors[5] == parse_ket('|4>-|6>', 13, 'F')
    assert check_orthogonality(S)[0]


def test_multiparty_single_block():
    assert multiparty_type1([11]) == type1_set(11)
