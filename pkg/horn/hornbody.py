# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Monte-Carlo points of the quantum Horn body at multiplicity d: the
eigenvalue functions of

    a1 (x) (diag(alpha) (x) 1_d)  +  a2 (x) U (diag(beta) (x) 1_d) U^*

for Haar-random U in U(N d).
'''
import hashlib
from fractions import Fraction

import numpy as np

from hornbody.horn.spectra import (kron, eig_sym, haar_unitary, check_hermitian,
                                   coefficient_pair, block_matrix, two_projection_blocks)
from hornbody.horn.eigenfunc import (EigenvalueFunction, DiscreteMeasure, ev_of_spectrum,
                                     measure_of_ev, mixture)
from hornbody.horn.counterexample import membership_gap
from hornbody.util.file import write_jsonl, read_jsonl
from hornbody.util.log import logdebug, loginfo
from hornbody.util.multiproc import multiproc

def _as_matrix(name, a):
    a = np.atleast_2d(np.asarray(a))
    check_hermitian(a)
    return a

def _as_sequence(name, x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or not len(x):
        raise ValueError('%s must be a nonempty sequence' % name)
    if np.any(np.diff(x) > 0):
        raise ValueError('%s must be nonincreasing, got %s' % (name, x))
    return x

class BodySpec(object):
    '''
    Coefficients a1, a2 (n x n, self-adjoint), nonincreasing N-tuples
    alpha, beta and the multiplicity d.
    '''
    def __init__(self, a1, a2, alpha, beta, d=1):
        self.a1 = _as_matrix('a1', a1)
        self.a2 = _as_matrix('a2', a2)
        if self.a1.shape != self.a2.shape:
            raise ValueError('a1 and a2 differ in shape: %s, %s' %
                             (self.a1.shape, self.a2.shape))
        self.alpha = _as_sequence('alpha', alpha)
        self.beta = _as_sequence('beta', beta)
        if len(self.alpha) != len(self.beta):
            raise ValueError('alpha and beta differ in length: %i, %i' %
                             (len(self.alpha), len(self.beta)))
        d = int(d)
        if d < 1:
            raise ValueError('multiplicity d must be at least 1, got %s' % d)
        self.d = d
        self.n = self.a1.shape[0]
        self.N = len(self.alpha)

    def __repr__(self):
        return 'BodySpec(n=%i, N=%i, d=%i, alpha=%s, beta=%s)' % (
            self.n, self.N, self.d, list(self.alpha), list(self.beta))

    def dim(self):
        return self.n * self.N * self.d

    def with_d(self, d):
        return BodySpec(self.a1, self.a2, self.alpha, self.beta, d)

    def expected_mean(self):
        '''
        Normalized trace of every matrix in the body.
        '''
        return (np.trace(self.a1).real * self.alpha.sum() +
                np.trace(self.a2).real * self.beta.sum()) / (self.n * self.N)

    def is_counterexample(self, s, tol=1e-12):
        if self.n != 2 or self.N != 2:
            return False
        b1,b2 = coefficient_pair(s)
        return (np.max(np.abs(self.a1 - b1)) <= tol and
                np.max(np.abs(self.a2 - b2)) <= tol and
                np.all(self.alpha == [1., 0.]) and np.all(self.beta == [1., 0.]))

    def to_dict(self):
        def mat(a):
            return dict(re=np.real(a).tolist(), im=np.imag(a).tolist())
        return dict(a1=mat(self.a1), a2=mat(self.a2), alpha=self.alpha.tolist(),
                    beta=self.beta.tolist(), d=self.d)

    @staticmethod
    def from_dict(d):
        def mat(m):
            return np.array(m['re']) + 1j * np.array(m['im'])
        a1 = mat(d['a1'])
        a2 = mat(d['a2'])
        if not (np.any(a1.imag) or np.any(a2.imag)):
            a1,a2 = a1.real, a2.real
        return BodySpec(a1, a2, d['alpha'], d['beta'], d['d'])

def counterexample_spec(s, d=1):
    a1,a2 = coefficient_pair(s)
    return BodySpec(a1, a2, [1., 0.], [1., 0.], d)

def derive_seed(master, index):
    '''
    Per-sample seed: the first four bytes (big-endian) of
    sha256("master:index").
    '''
    h = hashlib.sha256(('%d:%d' % (master, index)).encode('ascii')).digest()
    return int.from_bytes(h[:4], 'big')

def lift_unitary(U, k):
    '''
    U (x) 1_k: realizes a level-d sample at level k*d, repeating every
    eigenvalue k times.
    '''
    return np.kron(U, np.eye(k))

def _projections(spec, U):
    Id = np.eye(spec.d)
    P = kron(np.diag(spec.alpha), Id)
    Q = kron(np.diag(spec.beta), Id)
    Uh = U.conj().T
    return P, np.dot(U, np.dot(Q, Uh))

def assemble(spec, U):
    P,Q = _projections(spec, U)
    return kron(spec.a1, P) + kron(spec.a2, Q)

def _unitary(spec, seed, unitary):
    if unitary is not None:
        return np.asarray(unitary)
    if seed is None:
        return np.eye(spec.N * spec.d)
    return haar_unitary(spec.N * spec.d, seed)

def sample_spectrum(spec, seed, unitary=None):
    '''
    Eigenvalue sequence (nonincreasing, length n*N*d) of one body
    matrix.  *unitary* overrides the Haar draw; seed=None without a
    unitary uses U = I.
    '''
    U = _unitary(spec, seed, unitary)
    return eig_sym(assemble(spec, U))

def sample_point(spec, seed, unitary=None):
    return ev_of_spectrum(sample_spectrum(spec, seed, unitary))

def spectrum_measure(spectrum):
    n = len(spectrum)
    return DiscreteMeasure(list(spectrum), [Fraction(1, n)] * n)

def block_phi(a1, a2, mu):
    '''
    The mixture over t ~ mu of the spectral measures of
    block_matrix(a1, a2, t).
    '''
    return mixture([spectrum_measure(eig_sym(block_matrix(a1, a2, t))) for t in mu.atoms],
                   mu.weights)

def sample_preimage(spec, seed, unitary=None):
    '''
    For 2x2 coefficients and alpha = beta = (1,0): the block parameters
    t_i of the sampled pair of projections, as the measure
    (1/d) sum_i delta(t_i) on [0,1].  The sample's spectral measure is
    block_phi(a1, a2, preimage).
    '''
    if spec.n != 2 or spec.N != 2 or not (np.all(spec.alpha == [1., 0.]) and
                                          np.all(spec.beta == [1., 0.])):
        raise ValueError('sample_preimage needs 2x2 coefficients and alpha=beta=(1,0); got %s'
                         % spec)
    U = _unitary(spec, seed, unitary)
    P,Q = _projections(spec, U)
    pair = two_projection_blocks(P, Q)
    logdebug('sample_preimage: seed', seed, 'block parameters', pair.block_params)
    return DiscreteMeasure(list(pair.block_params), [Fraction(1, spec.d)] * spec.d)

def horn2_check(alpha, beta, gamma, tol=1e-8):
    '''
    Horn inequalities for 2x2 matrices: can gamma be the spectrum of
    A + B with spec(A) = alpha, spec(B) = beta?
    '''
    for nm,x in [('alpha', alpha), ('beta', beta), ('gamma', gamma)]:
        if len(x) != 2:
            raise ValueError('%s must have two entries, got %s' % (nm, x))
        if x[1] > x[0]:
            raise ValueError('%s must be nonincreasing, got %s' % (nm, x))
    a1,a2 = alpha
    b1,b2 = beta
    g1,g2 = gamma
    if abs((g1 + g2) - (a1 + a2 + b1 + b2)) > tol:
        return False
    return max(a1 + b2, a2 + b1) - tol <= g1 <= a1 + b1 + tol

class BodyCloud(object):
    '''
    Sampled points of the body at one multiplicity, with the seeds that
    produced them and their raw eigenvalue sequences.
    '''
    def __init__(self, spec, points, seeds, spectra):
        self.spec = spec
        self.points = list(points)
        self.seeds = list(seeds)
        self.spectra = [np.asarray(x) for x in spectra]

    def __len__(self):
        return len(self.points)

    def measures(self):
        return [measure_of_ev(p) for p in self.points]

    def to_records(self):
        '''
        A header record holding the spec, then one record per point.
        '''
        recs = [dict(spec=self.spec.to_dict(), count=len(self))]
        for sd,sp,pt in zip(self.seeds, self.spectra, self.points):
            rec = dict(seed=sd, spectrum=[float(x) for x in sp])
            rec.update(pt.to_dict())
            recs.append(rec)
        return recs

    def write_jsonl(self, fn):
        write_jsonl(self.to_records(), fn)

    @staticmethod
    def read_jsonl(fn):
        recs = read_jsonl(fn)
        if not len(recs) or not 'spec' in recs[0]:
            raise ValueError('%s: first record must hold the spec' % fn)
        spec = BodySpec.from_dict(recs[0]['spec'])
        pts = recs[1:]
        if recs[0].get('count', len(pts)) != len(pts):
            raise ValueError('%s: header promises %s points, found %i' %
                             (fn, recs[0]['count'], len(pts)))
        return BodyCloud(spec, [EigenvalueFunction.from_dict(r) for r in pts],
                         [r['seed'] for r in pts], [r['spectrum'] for r in pts])

def _sample_job(args):
    spec,seed = args
    return sample_spectrum(spec, seed)

def sample_cloud(spec, count, seed, nthreads=1):
    '''
    *count* samples with seeds derive_seed(seed, i), i = 0..count-1, in
    index order whatever the number of workers.
    '''
    if count < 1:
        raise ValueError('count must be at least 1, got %s' % count)
    seeds = [derive_seed(seed, i) for i in range(count)]
    mp = multiproc(nthreads)
    try:
        spectra = mp.map(_sample_job, [(spec, sd) for sd in seeds])
    finally:
        mp.close()
    loginfo('Sampled', count, 'points of', spec)
    return BodyCloud(spec, [ev_of_spectrum(sp) for sp in spectra], seeds, spectra)

def _gap_job(args):
    s,mu,kwargs = args
    return membership_gap(s, mu, **kwargs)

def cloud_vs_phi_reports(cloud, s, nthreads=1, **kwargs):
    '''
    membership_gap of every cloud point against the image of Phi_s.
    '''
    if not cloud.spec.is_counterexample(s):
        raise ValueError('cloud spec %s is not the counterexample spec for s=%s' %
                         (cloud.spec, s))
    if not len(cloud):
        return []
    mp = multiproc(nthreads)
    try:
        return mp.map(_gap_job, [(s, mu, kwargs) for mu in cloud.measures()])
    finally:
        mp.close()

def cloud_vs_phi_fit(cloud, s, t_grid=401, x_grid=4096, nthreads=1, **kwargs):
    reps = cloud_vs_phi_reports(cloud, s, nthreads=nthreads, t_grid=t_grid,
                                x_grid=x_grid, **kwargs)
    return [rep.gap for rep in reps]
