# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Dense Hermitian linear algebra for the Horn-body computations:
Kronecker assembly, sorted eigenvalues, Haar-random unitaries, the
2x2 coefficient pair and the reduction of a pair of projections to
2x2 blocks.
'''
import numpy as np
from scipy.linalg import qr, block_diag

# max-entry tolerances
HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-12
PROJECTION_TOL = 1e-10

def kron(A, B):
    '''
    (A (x) B)[i*dimB + k, j*dimB + l] = A[i,j] * B[k,l]
    '''
    return np.kron(np.asarray(A), np.asarray(B))

def _check_unit(name, x):
    if not (0 <= x <= 1):
        raise ValueError('%s must lie in [0,1], got %s' % (name, x))

def check_hermitian(H, tol=HERMITIAN_TOL):
    '''
    Returns max |H - H^*|; raises ValueError if it exceeds *tol*
    (relative to the largest entry, when that exceeds one).
    '''
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError('expected a square matrix, got shape %s' % (H.shape,))
    if H.size == 0:
        raise ValueError('empty matrix')
    dev = np.max(np.abs(H - H.conj().T))
    scale = max(1., np.max(np.abs(H)))
    if dev > tol * scale:
        raise ValueError('matrix is not self-adjoint: max |H - H^*| = %g (tolerance %g)' %
                         (dev, tol * scale))
    return dev

def check_unitary(U, tol=UNITARY_TOL):
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError('expected a square matrix, got shape %s' % (U.shape,))
    dev = np.max(np.abs(np.dot(U, U.conj().T) - np.eye(U.shape[0])))
    if dev > tol:
        raise ValueError('matrix is not unitary: max |U U^* - I| = %g' % dev)
    return dev

def eig_sym(H, vectors=False):
    '''
    Eigenvalues of a self-adjoint matrix, in nonincreasing order and
    repeated according to multiplicity.

    Parameters
    ----------
    H - square array
        Must be self-adjoint to within HERMITIAN_TOL.
    vectors - boolean
        Also return the matrix whose columns are the eigenvectors.

    Returns
    -------
    w - 1-d float array, nonincreasing
    (w, V) if *vectors*; H = V diag(w) V^*.
    '''
    H = np.asarray(H)
    check_hermitian(H)
    Hs = 0.5 * (H + H.conj().T)
    if vectors:
        w,V = np.linalg.eigh(Hs)
        return w[::-1].copy(), V[:, ::-1].copy()
    return np.linalg.eigvalsh(Hs)[::-1].copy()

def haar_unitary(dim, seed):
    '''
    Draws a Haar-distributed unitary of size *dim* from the QR
    decomposition of a complex Ginibre matrix, with the phases of R's
    diagonal moved into Q.  Deterministic for a given *seed*.
    '''
    if dim < 1:
        raise ValueError('dim must be positive, got %s' % dim)
    rng = np.random.RandomState(seed)
    Z = (rng.standard_normal((dim, dim)) +
         1j * rng.standard_normal((dim, dim))) / np.sqrt(2.)
    Q,R = qr(Z)
    d = np.diagonal(R)
    ph = d / np.abs(d)
    return Q * ph[np.newaxis, :]

def coefficient_pair(s):
    '''
    The coefficients a1 = diag(1,-1) and

        a2 = [[2s-1, 2 sqrt(s(1-s))], [2 sqrt(s(1-s)), 1-2s]],

    both self-adjoint unitaries with spectrum {1,-1}; they commute only
    for s in {0, 1}.
    '''
    _check_unit('s', s)
    s = float(s)
    c = 2. * np.sqrt(s * (1. - s))
    a1 = np.array([[1., 0.], [0., -1.]])
    a2 = np.array([[2.*s - 1., c], [c, 1. - 2.*s]])
    return a1, a2

def block_projections(t):
    '''
    The canonical 2x2 block of a pair of projections with angle
    parameter t: (p, q) with q = diag(1,0).
    '''
    _check_unit('t', t)
    t = float(t)
    c = np.sqrt(t * (1. - t))
    p = np.array([[t, c], [c, 1. - t]])
    q = np.array([[1., 0.], [0., 0.]])
    return p, q

def block_matrix(a1, a2, t):
    '''
    a1 (x) p + a2 (x) q for the canonical block (p, q) at parameter *t*,
    for any pair of 2x2 self-adjoint coefficients.
    '''
    a1 = np.asarray(a1)
    a2 = np.asarray(a2)
    for nm,a in [('a1', a1), ('a2', a2)]:
        if a.shape != (2, 2):
            raise ValueError('%s must be 2x2, got shape %s' % (nm, a.shape))
        check_hermitian(a)
    p,q = block_projections(t)
    return kron(a1, p) + kron(a2, q)

def sum_matrix(s, t):
    _check_unit('s', s)
    _check_unit('t', t)
    a1,a2 = coefficient_pair(s)
    return block_matrix(a1, a2, t)

class ProjectionPair(object):
    '''
    A pair of projections (p, q) of normalized trace 1/2 in dimension
    2d, in block form: in the orthonormal basis given by the columns of
    *basis*, ordered (e_1, f_1, e_2, f_2, ...), q is the direct sum of
    diag(1,0) blocks and p the direct sum of the canonical blocks with
    parameters *block_params*.
    '''
    def __init__(self, dim, block_params, basis):
        self.dim = dim
        self.block_params = np.asarray(block_params, dtype=float)
        self.basis = basis

    def __str__(self):
        return 'ProjectionPair(dim=%i, t=%s)' % (self.dim, self.block_params)

    def reconstruct(self):
        return projection_blocks(self.block_params, self.basis)

def projection_blocks(params, basis=None):
    '''
    Assembles (p, q) from block parameters, optionally rotated into the
    given basis (p = U P0 U^*).
    '''
    blocks = [block_projections(t) for t in params]
    P0 = block_diag(*[p for p,q in blocks])
    Q0 = block_diag(*[q for p,q in blocks])
    if basis is None:
        return P0, Q0
    U = np.asarray(basis)
    Uh = U.conj().T
    return np.dot(U, np.dot(P0, Uh)), np.dot(U, np.dot(Q0, Uh))

def _check_projection(name, P, tol):
    check_hermitian(P, tol)
    n = P.shape[0]
    err = np.max(np.abs(np.dot(P, P) - P))
    if err > tol:
        raise ValueError('%s is not a projection: max |P^2 - P| = %g' % (name, err))
    tr = np.trace(P).real / n
    if abs(tr - 0.5) > tol:
        raise ValueError('%s must have normalized trace 1/2, got %.12g' % (name, tr))

def two_projection_blocks(p, q, tol=PROJECTION_TOL, degenerate_tol=1e-12):
    '''
    Splits C^{2d} into d two-dimensional subspaces reducing both p and
    q, and returns the block parameters and the basis.

    The t_i are the eigenvalues of the compression of p to range(q),
    with eigenvectors e_i.  For 0 < t_i < 1 the partner vector is
    f_i = (1-q) p e_i / |(1-q) p e_i|.  When t_i is 0 or 1 the block is
    commutative and f_i is taken from the compression of p to ker(q),
    whose eigenvalues are the 1 - t_i.
    '''
    p = np.asarray(p)
    q = np.asarray(q)
    if p.shape != q.shape:
        raise ValueError('p and q have different shapes: %s, %s' % (p.shape, q.shape))
    n = p.shape[0]
    if n % 2:
        raise ValueError('dimension must be even, got %i' % n)
    _check_projection('p', p, tol)
    _check_projection('q', q, tol)
    d = n // 2

    wq,Vq = np.linalg.eigh(0.5 * (q + q.conj().T))
    # ascending: kernel first, range last
    K = Vq[:, :d]
    R = Vq[:, d:]

    C = np.dot(R.conj().T, np.dot(p, R))
    t,Y = np.linalg.eigh(0.5 * (C + C.conj().T))
    E = np.dot(R, Y)
    t = np.clip(t, 0., 1.)

    F = np.zeros_like(E, dtype=complex)
    G = np.dot(p, E) - E * t[np.newaxis, :]
    hi = []
    lo = []
    for i in range(d):
        if t[i] > 1. - degenerate_tol:
            hi.append(i)
            t[i] = 1.
        elif t[i] < degenerate_tol:
            lo.append(i)
            t[i] = 0.
        else:
            F[:,i] = G[:,i] / np.linalg.norm(G[:,i])
    if len(hi) or len(lo):
        D = np.dot(K.conj().T, np.dot(p, K))
        w,Z = np.linalg.eigh(0.5 * (D + D.conj().T))
        # eigenvalue 0 of p on ker(q) pairs with t = 1, eigenvalue 1 with t = 0
        for j,i in enumerate(hi):
            F[:,i] = np.dot(K, Z[:,j])
        for j,i in enumerate(lo):
            F[:,i] = np.dot(K, Z[:,d-1-j])

    U = np.zeros((n, n), dtype=complex)
    U[:, 0::2] = E
    U[:, 1::2] = F
    return ProjectionPair(n, t, U)
