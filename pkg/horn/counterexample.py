# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
The asymptotic Horn body for alpha = beta = (1,0) with coefficients
coefficient_pair(s).  Each 2x2 block with parameter t contributes the
spectral measure

    nu_t = 1/4 (d(l1) + d(l2) + d(-l2) + d(-l1)),

and the body is the EV-image of the mixtures Phi_s(mu) = int nu_t dmu(t).

The membership test (is a given measure a mixture of nu_t's?) is run
in CDF space, where Phi_s is affine: minimize

    int |sum_j w_j F_{nu_{t_j}} - F_target| dx

over the weight simplex, on a t-grid and an x-grid over [-2, 2].
'''
import csv
import io
from fractions import Fraction

import numpy as np
import scipy.sparse
from scipy.optimize import linprog

from hornbody.horn.eigenfunc import (DiscreteMeasure, exact_sqrt, ev_of_measure,
                                     affine_combine_ev, measure_of_ev, mixture,
                                     num_to_json, is_exact)
from hornbody.util.log import logdebug, logwarn
from hornbody.util.multiproc import multiproc

QUARTER = Fraction(1, 4)
X_MIN = -2.
X_MAX = 2.

class CounterexampleParams(object):
    def __init__(self, s, r):
        if not (0 <= s <= 1):
            raise ValueError('s must lie in [0,1], got %s' % s)
        if not (0 < r < 1):
            raise ValueError('r must lie in (0,1), got %s' % r)
        self.s = s
        self.r = r

    def __repr__(self):
        return 'CounterexampleParams(s=%s, r=%s)' % (self.s, self.r)

def _check_st(s, t):
    if not (0 <= s <= 1):
        raise ValueError('s must lie in [0,1], got %s' % s)
    if not (0 <= t <= 1):
        raise ValueError('t must lie in [0,1], got %s' % t)

def lambda_quadruple(s, t):
    '''
    Eigenvalues of sum_matrix(s, t), nonincreasing:
    (l1, l2, -l2, -l1) with

        l1, l2 = sqrt(1-t+st) +- sqrt(st)

    ((sqrt(1-t+st) +- sqrt(st))^2 = 1-t+2st +- 2 sqrt(st-st^2+s^2t^2).)
    Exact when the square roots are rational.
    '''
    _check_st(s, t)
    a = exact_sqrt(1 - t + s*t)
    b = exact_sqrt(s*t)
    l1 = a + b
    l2 = a - b
    return (l1, l2, -l2, -l1)

def _lambdas(s, ts):
    # vectorized (l1, l2) over an array of t
    ts = np.asarray(ts, dtype=float)
    s = float(s)
    a = np.sqrt(1. - ts + s*ts)
    b = np.sqrt(s*ts)
    return a + b, a - b

def charpoly_value(s, t, lam):
    '''
    P(lam) = lam^4 - 2(1-t+2st) lam^2 + (1-t)^2
    '''
    return lam**4 - 2*(1 - t + 2*s*t)*lam**2 + (1 - t)**2

def nu_t(s, t):
    return DiscreteMeasure(lambda_quadruple(s, t), [QUARTER]*4)

def phi(s, mu):
    '''
    Phi_s(mu): the mixture of nu_t over t ~ mu.
    '''
    if not mu.support_within(0, 1):
        raise ValueError('phi needs a measure on [0,1]; support is [%s, %s]' %
                         (mu.atoms[0], mu.atoms[-1]))
    return mixture([nu_t(s, t) for t in mu.atoms], mu.weights)

def sigma_target(params):
    '''
    The four-atom measure of the r-combination (taken pointwise on
    eigenvalue functions) of the t=1 and t=0 block spectra:

        1/4 (d(1-r+2r sqrt(s)) + d(1-r) + d(r-1) + d(r-1-2r sqrt(s)))
    '''
    s,r = params.s, params.r
    A = 1 - r + 2*r*exact_sqrt(s)
    B = 1 - r
    return DiscreteMeasure([A, B, -B, -A], [QUARTER]*4)

TABLE1_COLUMNS = ['[0,1/4)', '[1/4,1/2)', '[1/2,3/4)', '[3/4,1)']
TABLE1_ROWS = ['ev_nu1', 'ev_nu0', 'combination']

def table1(s, r):
    '''
    Values of the eigenvalue functions of nu_1, nu_0 and of their
    pointwise combination r*row1 + (1-r)*row2 on the quarters of [0,1).
    '''
    CounterexampleParams(s, r)
    f1 = ev_of_measure(nu_t(s, 1))
    f0 = ev_of_measure(nu_t(s, 0))
    comb = affine_combine_ev(f1, f0, r)
    quarters = [QUARTER * i for i in range(4)]
    return [[f.value_at(x) for x in quarters] for f in [f1, f0, comb]]

def format_value(x):
    if is_exact(x):
        return str(Fraction(x))
    return repr(float(x))

def table1_csv(s, r):
    out = io.StringIO()
    wr = csv.writer(out, lineterminator='\n')
    wr.writerow(['row'] + TABLE1_COLUMNS)
    for label,row in zip(TABLE1_ROWS, table1(s, r)):
        wr.writerow([label] + [format_value(x) for x in row])
    return out.getvalue()

def table1_dict(s, r):
    return dict(s=num_to_json(s), r=num_to_json(r), columns=TABLE1_COLUMNS,
                rows=[dict(label=label, values=[format_value(x) for x in row])
                      for label,row in zip(TABLE1_ROWS, table1(s, r))])

def support_relations(s, t, r):
    '''
    Residuals (l1(s,t) - (1-r+2r sqrt(s)), l2(s,t) - (1-r)); both vanish
    iff the positive atoms of nu_t match those of sigma in order.
    '''
    l1,l2 = _lambdas(s, t)
    s = float(s)
    r = float(r)
    return l1 - (1. - r + 2.*r*np.sqrt(s)), l2 - (1. - r)

def _bisect(func, lo, hi, flo, maxiter=200):
    for i in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = func(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo,flo = mid,fm
        else:
            hi = mid
    return 0.5 * (lo + hi)

def support_scan(params, t_grid=1001, tol=1e-9):
    '''
    Returns the t in [0,1] with supp(nu_t) contained in supp(sigma), to
    within *tol*.

    Candidates are grid points where l1 or l2 hits one of the positive
    atoms of sigma, plus roots bracketed between grid points, refined by
    bisection.  Each candidate is then checked atom by atom.
    '''
    if t_grid < 2:
        raise ValueError('t_grid must be at least 2, got %s' % t_grid)
    s = float(params.s)
    r = float(params.r)
    targets = [1. - r + 2.*r*np.sqrt(s), 1. - r]
    ts = np.arange(t_grid) / float(t_grid - 1)
    L = _lambdas(s, ts)

    cands = []
    for i in range(2):
        for c in targets:
            g = L[i] - c
            cands.extend(ts[np.abs(g) <= tol])
            for j in np.flatnonzero(g[:-1] * g[1:] < 0):
                func = lambda t: _lambdas(s, t)[i] - c
                root = _bisect(func, ts[j], ts[j+1], g[j])
                logdebug('support_scan: root of l%i = %.12g in [%g, %g]: t = %.15g' %
                         (i+1, c, ts[j], ts[j+1], root))
                cands.append(root)

    def qualifies(t):
        return all(min(abs(float(l) - c) for c in targets) <= tol
                   for l in _lambdas(s, t))

    hits = []
    for t in sorted(cands):
        t = float(t)
        if not qualifies(t):
            continue
        if len(hits) and t - hits[-1] <= tol:
            continue
        hits.append(t)
    return hits

def t_nodes(t_grid):
    '''
    The t-grid of the membership program: t_grid uniform nodes plus
    t_grid nodes uniform in sqrt(t).  Grids of 2^n+1 points are nested.
    '''
    if t_grid < 2:
        raise ValueError('t_grid must be at least 2, got %s' % t_grid)
    u = np.arange(t_grid) / float(t_grid - 1)
    return np.union1d(u, u*u)

def x_nodes(x_grid):
    if x_grid < 2:
        raise ValueError('x_grid must be at least 2, got %s' % x_grid)
    return X_MIN + (X_MAX - X_MIN) * np.arange(x_grid) / float(x_grid - 1)

def _cell_index(xs, atoms):
    # cell k holds the atoms in (x_{k-1}, x_k]
    return np.clip(np.searchsorted(xs, atoms, side='left'), 0, len(xs) - 1)

def _block_cdf_increments(s, ts, xs):
    # sparse (m x n): mass of nu_{t_j} falling into x-cell k
    l1,l2 = _lambdas(s, ts)
    n = len(ts)
    cols = np.tile(np.arange(n), 4)
    rows = _cell_index(xs, np.concatenate([l1, l2, -l2, -l1]))
    vals = np.full(4*n, 0.25)
    return scipy.sparse.csr_matrix((vals, (rows, cols)), shape=(len(xs), n))

def _target_cdf_increments(target, xs):
    db = np.zeros(len(xs))
    np.add.at(db, _cell_index(xs, target.atom_array()), target.weight_array())
    return db

class GapReport(object):
    '''
    Result of a membership-gap computation.  *r* is set when the target
    was sigma_target(s, r) and is None otherwise.
    '''
    def __init__(self, s, r, t_grid, x_grid, gap, t_nodes, weights,
                 iterations, converged, method, lower_bound=None):
        self.s = s
        self.r = r
        self.t_grid = t_grid
        self.x_grid = x_grid
        self.gap = gap
        self.t_nodes = t_nodes
        self.weights = weights
        self.iterations = iterations
        self.converged = converged
        self.method = method
        # certified lower bound on the optimum over the t-grid
        self.lower_bound = lower_bound

    def __repr__(self):
        return ('GapReport(s=%s, r=%s, gap=%.6g, t_grid=%i, x_grid=%i, %s, %i its%s)' %
                (self.s, self.r, self.gap, self.t_grid, self.x_grid, self.method,
                 self.iterations, '' if self.converged else ', NOT CONVERGED'))

    def support(self, wtol=1e-12):
        I = np.flatnonzero(self.weights > wtol)
        return self.t_nodes[I], self.weights[I]

    def to_dict(self):
        ts,ws = self.support()
        return dict(s=num_to_json(self.s),
                    r=None if self.r is None else num_to_json(self.r),
                    t_grid=self.t_grid, x_grid=self.x_grid,
                    gap=float(self.gap), iterations=int(self.iterations),
                    converged=bool(self.converged), method=self.method,
                    lower_bound=(None if self.lower_bound is None
                                 else float(self.lower_bound)),
                    support=[[float(t), float(w)] for t,w in zip(ts, ws)])

def _project_simplex(v, z=1.):
    '''
    Euclidean projection of v onto {w >= 0, sum w = z} (sort-based).
    '''
    n = v.shape[0]
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - z
    rho = np.nonzero(u * np.arange(1, n+1) > cssv)[0][-1]
    theta = cssv[rho] / (rho + 1.)
    return np.maximum(v - theta, 0.)

def _gap_lp(D, db, h):
    '''
    The L1 fit as a sparse linear program.  With y = cumsum(D w - db)
    (the CDF residual on the x-grid) split as y = ep - em:

        min  h * sum(ep + em)
        s.t. (ep_k - em_k) - (ep_{k-1} - em_{k-1}) - (D w)_k = -db_k
             sum(w) = 1,  w, ep, em >= 0
    '''
    m,n = D.shape
    S = scipy.sparse.diags([np.ones(m), -np.ones(m-1)], [0, -1], shape=(m, m),
                           format='csr')
    top = scipy.sparse.hstack([-D, S, -S])
    bottom = scipy.sparse.hstack([scipy.sparse.csr_matrix(np.ones((1, n))),
                                  scipy.sparse.csr_matrix((1, 2*m))])
    A_eq = scipy.sparse.vstack([top, bottom], format='csr')
    b_eq = np.concatenate([-db, [1.]])
    c = np.concatenate([np.zeros(n), np.full(2*m, h)])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method='highs')
    logdebug('linprog:', res.status, res.message)
    if res.x is None:
        return np.full(n, 1./n), int(getattr(res, 'nit', 0)), False, None
    return res.x[:n], int(getattr(res, 'nit', 0)), res.status == 0, res.fun

def _gap_subgradient(D, db, h, max_iter, tol):
    '''
    Projected subgradient with a Polyak-type step aimed at the midpoint
    between the best value and the best lower bound.  The lower bound

        f(w*) >= f(w) + min_j g_j - g.w

    holds on the simplex by convexity; the run has converged once the
    best value is within *tol* of it.
    '''
    m,n = D.shape
    A = np.cumsum(D.toarray(), axis=0)
    b = np.cumsum(db)
    w = np.full(n, 1./n)
    wbest = w
    fbest = np.inf
    lb = 0.
    for it in range(1, max_iter+1):
        resid = np.dot(A, w) - b
        f = h * np.sum(np.abs(resid))
        g = h * np.dot(A.T, np.sign(resid))
        if f < fbest:
            fbest,wbest = f,w
        lb = max(lb, f + g.min() - np.dot(g, w))
        if fbest - lb <= tol:
            return wbest, it, True, lb
        gg = np.dot(g, g)
        if gg == 0:
            return wbest, it, True, lb
        level = 0.5 * (fbest + lb)
        w = _project_simplex(w - (f - level) / gg * g)
    return wbest, max_iter, False, lb

def membership_gap(s, target, t_grid=401, x_grid=4096, method='lp',
                   max_iter=10000, r=None, tol=1e-6):
    '''
    Distance (W1, discretized) from *target* to the image of Phi_s.

    Parameters
    ----------
    s - real in [0,1]
    target - DiscreteMeasure supported in [-2, 2]
    t_grid - int
        Uniform t nodes (see t_nodes).
    x_grid - int
        Points of the x-grid over [-2, 2].
    method - 'lp' or 'subgradient'
    max_iter - int
        Iteration budget for 'subgradient'.
    r - optional
        Recorded in the report when *target* is sigma_target(s, r).

    Returns
    -------
    GapReport
    '''
    if not (0 <= s <= 1):
        raise ValueError('s must lie in [0,1], got %s' % s)
    if not target.support_within(X_MIN, X_MAX, 1e-9):
        raise ValueError('target must be supported in [-2, 2]; support is [%s, %s]' %
                         (target.atoms[0], target.atoms[-1]))
    ts = t_nodes(t_grid)
    xs = x_nodes(x_grid)
    h = (X_MAX - X_MIN) / float(x_grid - 1)
    D = _block_cdf_increments(s, ts, xs)
    db = _target_cdf_increments(target, xs)

    if method == 'lp':
        w,its,ok,lb = _gap_lp(D, db, h)
    elif method == 'subgradient':
        w,its,ok,lb = _gap_subgradient(D, db, h, max_iter, tol)
    else:
        raise ValueError('unknown method %r (expected "lp" or "subgradient")' % method)

    w = np.maximum(w, 0.)
    w /= w.sum()
    gap = h * np.sum(np.abs(np.cumsum(D.dot(w) - db)))
    rep = GapReport(s, r, t_grid, x_grid, gap, ts, w, its, ok, method, lb)
    if not ok:
        logwarn('membership_gap did not converge:', rep)
    else:
        logdebug('membership_gap:', rep)
    return rep

def sigma_gap(params, **kwargs):
    return membership_gap(params.s, sigma_target(params), r=params.r, **kwargs)

def r_sweep(count):
    '''
    count interior points k/(count+1) of (0,1), as exact rationals.
    '''
    if count < 1:
        raise ValueError('sweep count must be positive, got %s' % count)
    return [Fraction(k, count + 1) for k in range(1, count + 1)]

def _sigma_gap_job(args):
    s,r,kwargs = args
    return sigma_gap(CounterexampleParams(s, r), **kwargs)

def sweep_sigma_gaps(s, rs, nthreads=1, **kwargs):
    '''
    sigma_gap for each r in *rs*, in order; runs on *nthreads* workers.
    '''
    mp = multiproc(nthreads)
    try:
        return mp.map(_sigma_gap_job, [(s, r, kwargs) for r in rs])
    finally:
        mp.close()
