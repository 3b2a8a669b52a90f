# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Finitely supported probability measures on the line and their
eigenvalue functions

    lambda(t) = sup{ x : mu((x, oo)) > t },   t in [0,1),

right-continuous nonincreasing step functions.  The two objects carry
different affine structures: measures mix (CDFs add), eigenvalue
functions combine pointwise (quantiles add).

Exact inputs (int / Fraction) stay exact through every operation here;
anything involving a float falls back to floats.
'''
import math
from bisect import bisect_right
from fractions import Fraction

import numpy as np

# atoms (or adjacent step values) closer than this are merged
MERGE_TOL = 1e-11
# sum-of-weights tolerance for float weights
WEIGHT_TOL = 1e-12

def is_exact(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

def exact_sqrt(x):
    '''
    Square root that stays rational when *x* is the square of a
    rational; returns a float otherwise.
    '''
    if is_exact(x):
        x = Fraction(x)
        if x < 0:
            raise ValueError('square root of negative number %s' % x)
        n,d = x.numerator, x.denominator
        rn = math.isqrt(n)
        rd = math.isqrt(d)
        if rn*rn == n and rd*rd == d:
            return Fraction(rn, rd)
        return math.sqrt(n / d)
    x = float(x)
    if x < 0:
        raise ValueError('square root of negative number %g' % x)
    return math.sqrt(x)

def _check_weights_sum(weights, what='weights'):
    total = sum(weights)
    if all(is_exact(w) for w in weights):
        if total != 1:
            raise ValueError('%s must sum to 1, got %s' % (what, total))
    elif abs(total - 1) > WEIGHT_TOL:
        raise ValueError('%s must sum to 1, got %.17g' % (what, total))

def num_to_json(x):
    if is_exact(x):
        return str(Fraction(x))
    return float(x)

def num_from_json(v):
    if isinstance(v, str) or is_exact(v):
        return Fraction(v)
    return float(v)

class DiscreteMeasure(object):
    '''
    sum_i weights[i] * delta(atoms[i]), atoms strictly increasing.
    Atoms within *merge_tol* of the first atom of their group are merged
    into it, summing the weights.
    '''
    def __init__(self, atoms, weights, merge_tol=MERGE_TOL):
        atoms = list(atoms)
        weights = list(weights)
        if len(atoms) != len(weights):
            raise ValueError('%i atoms but %i weights' % (len(atoms), len(weights)))
        if not len(atoms):
            raise ValueError('a measure needs at least one atom')
        for a in atoms:
            if not math.isfinite(a):
                raise ValueError('atom %s is not finite' % a)
        for w in weights:
            if not w > 0:
                raise ValueError('weights must be positive, got %s' % w)
        _check_weights_sum(weights)

        order = sorted(range(len(atoms)), key=lambda i: atoms[i])
        A = []
        W = []
        for i in order:
            a,w = atoms[i], weights[i]
            if len(A) and a - A[-1] <= merge_tol:
                W[-1] = W[-1] + w
            else:
                A.append(a)
                W.append(w)
        self.atoms = A
        self.weights = W

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return self.atoms == other.atoms and self.weights == other.weights

    def __repr__(self):
        return 'DiscreteMeasure(%s)' % ', '.join(
            '%s@%s' % (w, a) for a,w in zip(self.atoms, self.weights))

    def is_exact(self):
        return all(is_exact(x) for x in self.atoms + self.weights)

    def allclose(self, other, tol=1e-10):
        return (len(self) == len(other) and
                all(abs(a - b) <= tol for a,b in zip(self.atoms, other.atoms)) and
                all(abs(a - b) <= tol for a,b in zip(self.weights, other.weights)))

    def atom_array(self):
        return np.array([float(a) for a in self.atoms])

    def weight_array(self):
        return np.array([float(w) for w in self.weights])

    def cdf(self, xs):
        return cdf(self, xs)

    def support_within(self, lo, hi, tol=0.):
        return self.atoms[0] >= lo - tol and self.atoms[-1] <= hi + tol

    def to_dict(self):
        return dict(atoms=[num_to_json(a) for a in self.atoms],
                    weights=[num_to_json(w) for w in self.weights])

    @staticmethod
    def from_dict(d):
        return DiscreteMeasure([num_from_json(a) for a in d['atoms']],
                               [num_from_json(w) for w in d['weights']])

class EigenvalueFunction(object):
    '''
    Step function on [0,1): value values[j] on [breakpoints[j],
    breakpoints[j+1]), the last step running up to 1.  Adjacent steps
    whose values agree within *merge_tol* are merged.
    '''
    def __init__(self, breakpoints, values, merge_tol=MERGE_TOL):
        breakpoints = list(breakpoints)
        values = list(values)
        if len(breakpoints) != len(values):
            raise ValueError('%i breakpoints but %i values' %
                             (len(breakpoints), len(values)))
        if not len(values):
            raise ValueError('an eigenvalue function needs at least one step')
        if breakpoints[0] != 0:
            raise ValueError('first breakpoint must be 0, got %s' % breakpoints[0])
        for x0,x1 in zip(breakpoints[:-1], breakpoints[1:]):
            if not x0 < x1:
                raise ValueError('breakpoints must increase: %s, %s' % (x0, x1))
        if not breakpoints[-1] < 1:
            raise ValueError('breakpoints must lie in [0,1), got %s' % breakpoints[-1])
        for v0,v1 in zip(values[:-1], values[1:]):
            if v1 > v0 + merge_tol:
                raise ValueError('values must be nonincreasing: %s, %s' % (v0, v1))
        X = [breakpoints[0]]
        V = [values[0]]
        for x,v in zip(breakpoints[1:], values[1:]):
            if abs(V[-1] - v) <= merge_tol:
                continue
            X.append(x)
            V.append(v)
        self.breakpoints = X
        self.values = V

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, EigenvalueFunction):
            return NotImplemented
        return self.breakpoints == other.breakpoints and self.values == other.values

    def __repr__(self):
        return 'EigenvalueFunction(%s)' % ', '.join(
            '[%s:%s' % (x, v) for x,v in zip(self.breakpoints, self.values))

    def value_at(self, t):
        if not (0 <= t < 1):
            raise ValueError('t must lie in [0,1), got %s' % t)
        return self.values[bisect_right(self.breakpoints, t) - 1]

    def __call__(self, t):
        '''
        Vectorized float evaluation.
        '''
        t = np.asarray(t, dtype=float)
        bp = np.array([float(x) for x in self.breakpoints])
        vals = np.array([float(v) for v in self.values])
        return vals[np.searchsorted(bp, t, side='right') - 1]

    def widths(self):
        ends = self.breakpoints[1:] + [1]
        return [x1 - x0 for x0,x1 in zip(self.breakpoints, ends)]

    def mean(self):
        '''
        integral over [0,1); equals the normalized trace of the matrix
        the function came from.
        '''
        return sum(w * v for w,v in zip(self.widths(), self.values))

    def allclose(self, other, tol=1e-10):
        return ev_l1_distance(self, other) <= tol

    def to_dict(self):
        return dict(breakpoints=[num_to_json(x) for x in self.breakpoints],
                    values=[num_to_json(v) for v in self.values])

    @staticmethod
    def from_dict(d):
        return EigenvalueFunction([num_from_json(x) for x in d['breakpoints']],
                                  [num_from_json(v) for v in d['values']])

def cdf(mu, xs):
    '''
    F(x) = mu((-oo, x]) on an array of points (floats).
    '''
    cum = np.cumsum(mu.weight_array())
    idx = np.searchsorted(mu.atom_array(), np.asarray(xs, dtype=float), side='right')
    return np.where(idx > 0, cum[np.maximum(idx - 1, 0)], 0.)

def ev_of_measure(mu):
    '''
    The eigenvalue function of *mu*: the atoms from the top down, each
    held on an interval whose length is its weight.
    '''
    vals = mu.atoms[::-1]
    wts = mu.weights[::-1]
    if all(is_exact(w) for w in wts):
        bp = [0]
        for w in wts[:-1]:
            bp.append(bp[-1] + w)
        return EigenvalueFunction(bp, vals)
    # float weights sum to 1 only within WEIGHT_TOL; steps narrower than
    # the float spacing near their breakpoint are dropped
    cum = np.cumsum([float(w) for w in wts])
    cum /= cum[-1]
    bp = [0.]
    V = [vals[0]]
    for x,v in zip(cum[:-1], vals[1:]):
        x = float(x)
        if x >= 1.:
            break
        if x <= bp[-1]:
            V[-1] = v
            continue
        bp.append(x)
        V.append(v)
    return EigenvalueFunction(bp, V)

def measure_of_ev(f):
    return DiscreteMeasure(f.values, f.widths())

def ev_of_spectrum(values):
    '''
    The eigenvalue function of a matrix with the given (nonincreasing)
    eigenvalue sequence: steps of width 1/N.
    '''
    values = list(values)
    n = len(values)
    if n == 0:
        raise ValueError('empty spectrum')
    for i in range(n - 1):
        if values[i+1] > values[i]:
            raise ValueError('spectrum must be nonincreasing: position %i has %s > %s' %
                             (i+1, values[i+1], values[i]))
    return EigenvalueFunction([Fraction(i, n) for i in range(n)], values)

def w1_distance(mu, nu):
    '''
    Wasserstein-1 distance, computed as the integral of |F_mu - F_nu|
    over the merged atom grid.  Exact when both measures are exact.
    '''
    xs = sorted(set(mu.atoms) | set(nu.atoms))
    Wmu = dict(zip(mu.atoms, mu.weights))
    Wnu = dict(zip(nu.atoms, nu.weights))
    Fmu = 0
    Fnu = 0
    total = 0
    for x0,x1 in zip(xs[:-1], xs[1:]):
        Fmu += Wmu.get(x0, 0)
        Fnu += Wnu.get(x0, 0)
        total += abs(Fmu - Fnu) * (x1 - x0)
    return total

def _merged_breakpoints(f, g):
    return sorted(set(f.breakpoints) | set(g.breakpoints))

def ev_l1_distance(f, g):
    bp = _merged_breakpoints(f, g)
    ends = bp[1:] + [1]
    return sum(abs(f.value_at(x) - g.value_at(x)) * (x1 - x)
               for x,x1 in zip(bp, ends))

def affine_combine_ev(f, g, r):
    '''
    r*f + (1-r)*g, pointwise: the affine structure of eigenvalue
    functions (not the mixture of the measures).
    '''
    if not (0 <= r <= 1):
        raise ValueError('r must lie in [0,1], got %s' % r)
    bp = _merged_breakpoints(f, g)
    return EigenvalueFunction(bp, [r * f.value_at(x) + (1 - r) * g.value_at(x)
                                   for x in bp])

def mixture(measures, weights):
    '''
    sum_j weights[j] * measures[j]; the CDF of the result is the same
    combination of the CDFs.
    '''
    measures = list(measures)
    weights = list(weights)
    if len(measures) != len(weights):
        raise ValueError('%i measures but %i weights' % (len(measures), len(weights)))
    if not len(measures):
        raise ValueError('empty mixture')
    for w in weights:
        if w < 0:
            raise ValueError('mixture weights must be nonnegative, got %s' % w)
    _check_weights_sum(weights, 'mixture weights')
    atoms = []
    wts = []
    for m,w in zip(measures, weights):
        if w == 0:
            continue
        atoms.extend(m.atoms)
        wts.extend([w * x for x in m.weights])
    return DiscreteMeasure(atoms, wts)

def integrate(g, mu):
    '''
    integral of g d(mu) = sum_i w_i g(a_i)
    '''
    return sum(w * g(a) for a,w in zip(mu.atoms, mu.weights))

def ev_of_callable(func, m=4096):
    '''
    Discretizes a nonincreasing function on [0,1) to a step function
    on the uniform m-point grid, taking values at the midpoints.
    '''
    if m < 1:
        raise ValueError('grid size must be positive, got %s' % m)
    vals = [func((i + 0.5) / m) for i in range(m)]
    return EigenvalueFunction([Fraction(i, m) for i in range(m)], vals)
