'''
Floating point density operators (used by the channel property path only)
'''

# External libs
import numpy as np

# nlcert imports
from .common import SpaceError
from .model import dense_vector


HERM_TOL = 1e-10


class DensityOperator(object):
    '''
    Square complex matrix over subsystems with dimensions `dims`
    '''

    def __init__(self, dims, matrix, check=True):
        dims = [int(d) for d in dims]
        matrix = np.asarray(matrix, dtype=complex)
        total = int(np.prod(dims)) if dims else 1
        if matrix.shape != (total, total):
            raise SpaceError('matrix of shape %s does not match dims %s'
                             % (matrix.shape, dims))
        if check:
            if not np.allclose(matrix, matrix.conj().T, atol=HERM_TOL):
                raise SpaceError('density operator is not Hermitian')
            if abs(np.trace(matrix).imag) > HERM_TOL:
                raise SpaceError('density operator has a non-real trace %s'
                                 % (np.trace(matrix),))
        self.dims = dims
        self.matrix = matrix

    @classmethod
    def from_vector(cls, dims, v):
        v = np.asarray(v, dtype=complex).reshape(-1)
        return cls(dims, np.outer(v, v.conj()))

    @classmethod
    def from_state(cls, s):
        '''
        |s><s| of a ProductState
        '''

        return cls.from_vector([f.dim for f in s.factors], dense_vector(s))

    def trace(self):
        return np.trace(self.matrix)

    def eigvalsh(self):
        return np.linalg.eigvalsh(self.matrix)

    def __repr__(self):
        return 'DensityOperator(dims=%s)' % (self.dims,)


def partial_trace(D, discard):
    '''
    Traces out the subsystems (indices into D.dims) in `discard`
    '''

    discard = sorted(set(discard))
    n = len(D.dims)
    if not discard:
        raise SpaceError('nothing to discard')
    for i in discard:
        if not isinstance(i, (int, np.integer)) or i < 0 or i >= n:
            raise SpaceError('invalid subsystem %r for dims %s' % (i, D.dims))
    if len(discard) == n:
        raise SpaceError('cannot discard every subsystem')

    t = D.matrix.reshape(D.dims + D.dims)
    for i in reversed(discard):
        half = t.ndim // 2
        t = np.trace(t, axis1=i, axis2=i + half)
    keep = [d for i, d in enumerate(D.dims) if i not in discard]
    size = int(np.prod(keep))
    return DensityOperator(keep, t.reshape(size, size))


def hs_inner(D1, D2):
    '''
    Tr[D1^dagger D2]
    '''

    if D1.matrix.shape != D2.matrix.shape:
        raise SpaceError('dimension mismatch: %s vs %s'
                         % (D1.matrix.shape, D2.matrix.shape))
    return complex(np.vdot(D1.matrix, D2.matrix))
