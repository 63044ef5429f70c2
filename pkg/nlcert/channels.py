'''
Quantum channels in Kraus form and the non-orthogonality preservation
check: for any channel N and density operators rho, sigma with
Tr[rho sigma] != 0, also Tr[N(rho) N(sigma)] != 0.
'''

# Python imports
import itertools

# External libs
import numpy as np

# nlcert imports
from .density import DensityOperator, hs_inner, partial_trace


COMPLETENESS_TOL = 1e-8
OVERLAP_TOL = 1e-12


class ChannelError(Exception):
    '''
    Signals an incomplete Kraus set or a violated channel precondition.
    '''


def check_complete(kraus, dim_in):
    total = np.zeros((dim_in, dim_in), dtype=complex)
    for A in kraus:
        A = np.asarray(A, dtype=complex)
        if A.ndim != 2 or A.shape[1] != dim_in:
            raise ChannelError('Kraus operator of shape %s cannot act on dim %d'
                               % (A.shape, dim_in))
        total += A.conj().T @ A
    err = np.max(np.abs(total - np.eye(dim_in)))
    if err > COMPLETENESS_TOL:
        raise ChannelError('Kraus set is not complete (deviation %.3g)' % (err,))


def apply_kraus_channel(D, kraus, dims_out=None):
    '''
    N(D) = sum_k A_k D A_k^dagger
    '''

    kraus = [np.asarray(A, dtype=complex) for A in kraus]
    if not kraus:
        raise ChannelError('empty Kraus set')
    check_complete(kraus, D.matrix.shape[0])
    dout = kraus[0].shape[0]
    if any(A.shape[0] != dout for A in kraus):
        raise ChannelError('Kraus operators disagree on output dimension')
    out = sum(A @ D.matrix @ A.conj().T for A in kraus)
    if dims_out is None:
        dims_out = [dout]
    return DensityOperator(dims_out, out, check=False)


def partial_trace_kraus(dims, discard):
    '''
    Kraus operators (x)_i {1 or <b_i|} realizing the partial trace
    '''

    discard = set(discard)
    ops = []
    ranges = [range(dims[i]) for i in sorted(discard)]
    for bs in itertools.product(*ranges):
        pick = dict(zip(sorted(discard), bs))
        A = np.ones((1, 1), dtype=complex)
        for i, d in enumerate(dims):
            if i in pick:
                row = np.zeros((1, d), dtype=complex)
                row[0, pick[i]] = 1
                A = np.kron(A, row)
            else:
                A = np.kron(A, np.eye(d))
        ops.append(A)
    return ops


def check_lemma1_instance(rho, sigma, kraus, dims_out=None):
    '''
    True iff the channel keeps the (nonzero) overlap of rho and sigma
    nonzero
    '''

    before = hs_inner(rho, sigma)
    if abs(before) <= OVERLAP_TOL:
        raise ChannelError('inputs are orthogonal (|<rho,sigma>| = %.3g)'
                           % (abs(before),))
    after = hs_inner(apply_kraus_channel(rho, kraus, dims_out),
                     apply_kraus_channel(sigma, kraus, dims_out))
    return abs(after) > OVERLAP_TOL


def random_density(dim, rng, rank=None):
    rank = rank or dim
    G = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = G @ G.conj().T
    return DensityOperator([dim], rho / np.trace(rho).real)


def random_kraus(dim_in, dim_out, count, rng):
    '''
    `count` Kraus operators cut from a random isometry
    '''

    assert count * dim_out >= dim_in, \
        'need count*dim_out >= dim_in, got %d*%d < %d' % (count, dim_out, dim_in)
    V = (rng.normal(size=(count * dim_out, dim_in))
         + 1j * rng.normal(size=(count * dim_out, dim_in)))
    Q, _ = np.linalg.qr(V)
    return [Q[k * dim_out:(k + 1) * dim_out, :] for k in range(count)]


def preservation_suite(trials, rng, max_dim=6, max_ops=4, min_overlap=0.1):
    '''
    Randomized instances; every third instance is a bipartite partial
    trace. Returns the list of failing instances (empty on success).
    '''

    failures = []
    for t in range(trials):
        if t % 3 == 2:
            da = int(rng.integers(2, 4))
            db = 2
            dims = [da, db]
            while True:
                rho = DensityOperator(
                    dims, random_density(da * db, rng, rank=1).matrix)
                sigma = DensityOperator(
                    dims, random_density(da * db, rng).matrix)
                if abs(hs_inner(rho, sigma)) >= min_overlap:
                    break
            discard = [int(rng.integers(0, 2))]
            kraus = partial_trace_kraus(dims, discard)
            keep = [d for i, d in enumerate(dims) if i not in discard]
            ok = check_lemma1_instance(rho, sigma, kraus, dims_out=keep)
            ref = hs_inner(partial_trace(rho, discard),
                           partial_trace(sigma, discard))
            if abs(ref) <= OVERLAP_TOL:
                ok = False
        else:
            dim = int(rng.integers(2, max_dim + 1))
            while True:
                rho = random_density(dim, rng)
                sigma = random_density(dim, rng)
                if abs(hs_inner(rho, sigma)) >= min_overlap:
                    break
            count = int(rng.integers(1, max_ops + 1))
            lo = -(-dim // count)
            dout = int(rng.integers(lo, max_dim + 1))
            kraus = random_kraus(dim, dout, count, rng)
            ok = check_lemma1_instance(rho, sigma, kraus)
        if not ok:
            failures.append((t, rho, sigma))
    return failures
