import numpy as np
import pytest
from scipy.stats import unitary_group

from utils import load_states, make_set, permuted

from nlcert.certify import (CERTIFIED, IRREDUCIBLE, IRREDUNDANT, REDUCIBLE,
                            REDUNDANT, UNKNOWN, CertificationError,
                            NotOrthogonal, OplmSolver, certify_irreducibility,
                            certify_indistinguishability,
                            certify_irredundancy, check_orthogonality,
                            getcheck, is_trivial_oplm, nonorth_clique,
                            oplm_space)
from nlcert.families import (restricted_strong_outcomes, strong_type1_set,
                             type1_set, type2_set_78, yu_set)
from nlcert.measurement import measurement_outcomes, parse_measurement
from nlcert.model import ProductState, partial_inner, support
from nlcert.parser import parse_ket


def outcomes(S, literal=None):
    literal = literal or S.getmeta('measurement')[0]
    return measurement_outcomes(S, parse_measurement(literal))


def constraint_system(S, party):
    """
    Party vectors on the support and the pairs the other parties couple
    """

    i = S.space.index(party)
    sel = list(support(S, party))
    vectors = [s.factors[i].to_complex()[sel] for s in S]
    others = [j for j in range(len(S.space)) if j != i]
    pairs = [(a, b) for a in range(len(S)) for b in range(a + 1, len(S))
             if not partial_inner(S[a], S[b], others).is_zero()]
    return vectors, pairs


## Orthogonality:

def test_nonorthogonal_set():
    S = type1_set(11)
    bad = S.derive(list(S) + [ProductState('x', [
        parse_ket('|1>', 11, 'A'), parse_ket('|0>', 11, 'B')])])
    ok, pairs = check_orthogonality(bad)
    assert not ok
    assert pairs == [('psi_1', 'x'), ('psi_9', 'x')]
    with pytest.raises(NotOrthogonal):
        certify_irreducibility(bad)
    with pytest.raises(NotOrthogonal):
        oplm_space(bad, 'A')


## Irredundancy:

def test_clique_on_party():
    size, witness = nonorth_clique(type1_set(15), 'B')
    assert size >= 6
    assert len(witness) == size


def test_type1_irredundant():
    cert = certify_irredundancy(type1_set(11))
    assert cert.verdict == IRREDUNDANT
    for info in cert.parties.values():
        assert info['threshold'] == 1
        assert info['clique_size'] >= 2


def test_composite_dimension():
    cert = certify_irredundancy(type1_set(15))
    assert cert.verdict == IRREDUNDANT
    for party in ('A', 'B'):
        assert cert.parties[party]['threshold'] == 5
        assert cert.parties[party]['clique_size'] > 5


def test_example4_irredundant():
    cert = certify_irredundancy(type2_set_78())
    assert cert.verdict == IRREDUNDANT
    assert cert.parties['A']['threshold'] == 1
    assert cert.parties['B']['threshold'] == 4
    assert cert.parties['A']['clique_size'] >= 4
    assert cert.parties['B']['clique_size'] >= 5
    assert cert.to_dict()['verdict'] == IRREDUNDANT


def test_redundant_control():
    cert = certify_irredundancy(load_states('redundant.json'))
    assert cert.verdict == REDUNDANT
    assert cert.redundant == 'A'
    assert 'Redundant(A)' in cert.tostring()


testdata_relabel = [
    (type1_set(11), 0),
    (type1_set(15), 1),
    (type2_set_78(), 2),
]

@pytest.mark.parametrize(('S', 'seed'), testdata_relabel)
def test_irredundancy_relabel_invariant(S, seed):
    """
    Reordering the states and relabeling each party's basis keeps the
    verdict and the clique sizes.
    """
    rng = np.random.default_rng(seed)
    order = [int(k) for k in rng.permutation(len(S))]
    perms = [[int(i) for i in rng.permutation(d)] for d in S.space.dims()]
    base = certify_irredundancy(S)
    cert = certify_irredundancy(permuted(S, order, perms))
    assert cert.verdict == base.verdict
    for party, info in base.parties.items():
        assert cert.parties[party]['clique_size'] == info['clique_size']
        assert cert.parties[party]['threshold'] == info['threshold']


## OPLM spaces:

@pytest.mark.parametrize('k', [0, 1])
@pytest.mark.parametrize('party', ['A', 'B'])
def test_strong_outcome_systems(k, party):
    S = restricted_strong_outcomes()[k]
    b = oplm_space(S, party)
    assert b.dimension == 1
    assert b.gap >= 1e6
    # The single solution is proportional to the identity
    E = b.basis[0]
    d = E.shape[0]
    assert np.allclose(E, E[0, 0] * np.eye(d), atol=1e-8)


def test_example3_outcome2_on_A():
    S = restricted_strong_outcomes()[1]
    assert S.space.dims() == [11, 6]
    assert is_trivial_oplm(S, 'A')


def test_nontrivial_oplm():
    # Alice's projector onto 0..4 separates psi from phi
    S = outcomes(type1_set(11))[0].states
    b = oplm_space(S, 'A')
    assert b.dimension > 1
    assert not b.is_trivial()


@pytest.mark.parametrize('d', [3, 4, 5])
def test_yu_trivial(d):
    S = yu_set(d)
    assert is_trivial_oplm(S, 'A')
    assert is_trivial_oplm(S, 'B')


def test_full_space_dimension():
    S = restricted_strong_outcomes()[0]
    b = oplm_space(S, 'A', restrict_to_support=False)
    assert b.ambient_dim == 11
    assert len(b.indices) == 11
    assert b.dimension == 1


testdata_unitary = [
    (restricted_strong_outcomes()[0], 'A'),
    (restricted_strong_outcomes()[1], 'B'),
    (outcomes(type1_set(11))[0].states, 'A'),
    (yu_set(4), 'B'),
]

@pytest.mark.parametrize(('S', 'party'), testdata_unitary)
def test_unitary_invariance(S, party):
    solver = OplmSolver(identity_tol=1e-6)
    vectors, pairs = constraint_system(S, party)
    base = len(solver.nullspace(vectors, pairs)[0])
    d = len(vectors[0])
    for seed in range(20):
        U = unitary_group.rvs(d, random_state=seed)
        rotated = [U.dot(v) for v in vectors]
        assert len(solver.nullspace(rotated, pairs)[0]) == base


PRODUCT_BASIS = [
    ('00', ['|0>', '|0>']), ('01', ['|0>', '|1>']),
    ('10', ['|1>', '|0>']), ('11', ['|1>', '|1>']),
]

@pytest.mark.parametrize('party', ['A', 'B'])
def test_product_basis(party):
    """
    Only the diagonal operators preserve the computational product basis.
    """
    b = oplm_space(make_set(PRODUCT_BASIS, (2, 2)), party)
    assert b.dimension == 2
    assert not b.is_trivial()


@pytest.mark.parametrize('party', ['A', 'B'])
def test_oplm_monotone(party):
    """
    More states only add constraints, so the dimension never grows.
    """
    S = type1_set(11)
    dims = [oplm_space(S.derive(S[:k]), party,
                       restrict_to_support=False).dimension
            for k in (2, 5, 10, 15, 20)]
    assert dims == sorted(dims, reverse=True)
    assert dims[-1] < 121


def test_unconstrained():
    solver = OplmSolver()
    basis, s, gap, residual = solver.nullspace([np.eye(3)[0], np.eye(3)[1]],
                                               [])
    assert len(basis) == 9
    assert residual == 0.0


## Irreducibility:

@pytest.mark.parametrize('k', [0, 1])
def test_strong_outcomes_irreducible(k):
    S = outcomes(strong_type1_set())[k].states
    cert = certify_irreducibility(S)
    assert cert.verdict == IRREDUCIBLE
    assert [b.dimension for b in cert.spaces] == [1, 1]


def test_type1_outcome_reducible():
    cert = certify_irreducibility(outcomes(type1_set(11))[0].states)
    assert cert.verdict == REDUCIBLE
    literal, oid, dropped = cert.evidence
    assert literal == 'A:0-4;5-10'
    assert oid == '1'
    assert dropped == ['phi_%d' % (n,) for n in range(1, 12)]
    assert cert.to_dict()['evidence']['measurement'] == 'A:0-4;5-10'


def test_product_basis_reducible():
    cert = certify_irreducibility(make_set(PRODUCT_BASIS, (2, 2)))
    assert cert.verdict == REDUCIBLE
    literal, oid, dropped = cert.evidence
    assert literal == 'A:0;1'
    assert dropped == ['10', '11']


def test_irreducibility_needs_two_states():
    S = type1_set(11)
    with pytest.raises(CertificationError):
        certify_irreducibility(S.derive([S[0]]))


## Indistinguishability:

testdata_witnesses = [
    ('type1:11', 0, 9),
    ('type1:11', 1, 11),
    ('type2-78', 0, 14),
    ('type2-78', 1, 8),
]

@pytest.mark.parametrize(('family', 'k', 'size'), testdata_witnesses)
def test_shipped_witness(family, k, size):
    S = type1_set(11) if family == 'type1:11' else type2_set_78()
    cert = certify_indistinguishability(outcomes(S)[k].states)
    assert cert.verdict == CERTIFIED
    assert cert.source == 'metadata'
    assert len(cert.witness) == size
    assert all(b.dimension == 1 for b in cert.spaces)


def test_given_witness():
    S = outcomes(type1_set(13))[0].states
    cert = certify_indistinguishability(
        S, ['psi_%d' % (n,) for n in range(1, 12)])
    assert cert.is_certified()
    assert cert.source == 'given'


def test_small_witness():
    S = outcomes(type1_set(11))[0].states
    cert = certify_indistinguishability(S, ['psi_1', 'psi_2'])
    assert cert.verdict == UNKNOWN
    assert 'fewer than 3' in cert.reason


def test_unknown_witness_label():
    S = outcomes(type1_set(11))[0].states
    with pytest.raises(CertificationError):
        certify_indistinguishability(S, ['psi_1', 'psi_99', 'psi_3'])


def test_full_set_witness():
    cert = certify_indistinguishability(yu_set(5))
    assert cert.verdict == CERTIFIED
    assert cert.source == 'full set'
    assert len(cert.witness) == 9


def test_distinguishable_witness():
    # Alice's A-split tells psi from phi
    S = outcomes(type1_set(11))[0].states
    cert = certify_indistinguishability(S, S.labels())
    assert cert.verdict == UNKNOWN
    assert 'A' in cert.reason


## Checks:

def test_getcheck():
    with pytest.raises(CertificationError):
        getcheck('entropy')


def test_oplm_dim_check():
    res = getcheck('oplm-dim')(restricted_strong_outcomes()[1], party='A')
    assert res.passed
    assert res.to_dict()['result']['spaces'][0]['dimension'] == 1


def test_orthogonality_check():
    res = getcheck('orthogonality')(load_states('example2.json'))
    assert res.passed
    assert 'pairwise orthogonal' in res.tostring()
