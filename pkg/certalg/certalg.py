# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Exact algebra behind the non-convexity certificate.

supp(nu_t) inside supp(sigma) forces the ordered matches
l1(s,t) = 1-r+2r sqrt(s) and l2(s,t) = 1-r; the only other option is
t = 0 with l1 = l2 = 1, which needs s = 1/4.  Subtracting the two
gives sqrt(st) = r sqrt(s), so t = r^2, and putting that back leaves
2r(1-r)(1-sqrt(s)) = 0.  No t works for r, s in (0,1).  certify
records r(1-r)(1-s), which has the sign of r(1-r)(1-sqrt(s)), as
support_value.

The elimination route works on the transcribed polynomials p1, p2 in
Q[r,s,t]: Res_t(p1, p2)(r, s) != 0 means they have no common root t,
and the verdict follows the resultant.  Where it vanishes (on every
factor of the eliminant, e.g. r^2 - 2r - 4s + 1) the verdict is
INCONCLUSIVE even though support_value is nonzero.
'''
import functools
from fractions import Fraction

import sympy

from hornbody.certalg.ratpoly import RatPoly, SYMBOL, var, const, parse, divide, det
from hornbody.certalg import constants
from hornbody.horn.counterexample import CounterexampleParams, sigma_target, nu_t
from hornbody.horn.eigenfunc import num_to_json
from hornbody.util.log import loginfo, logdebug, logwarn
from hornbody.util.ttime import Time

CERTIFIED_NOT_CONVEX = 'CERTIFIED_NOT_CONVEX'
SPECIAL_S_QUARTER = 'SPECIAL_S_QUARTER'
INCONCLUSIVE = 'INCONCLUSIVE'

class TranscriptionError(Exception):
    pass

class EliminantMismatch(Exception):
    def __init__(self, factor, remainder):
        self.factor = factor
        self.remainder = remainder
        super(EliminantMismatch, self).__init__(
            'resultant is not divisible by eliminant factor %s; remainder has %i terms' %
            (factor, len(remainder)))

def as_rational(x):
    '''
    int, Fraction or a "p/q" / decimal string -> Fraction.  Floats are
    refused so the exact path stays exact.
    '''
    if isinstance(x, bool):
        raise ValueError('not a rational: %r' % (x,))
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError('not a rational: %r' % x)
    raise ValueError('exact rational expected, got %r' % (x,))

def block_matrix_symbolic():
    '''
    a1 (x) p + a2 (x) q with a1 = diag(1,-1), a2 = [[2s-1, 2u], [2u, 1-2s]],
    p = [[t, v], [v, 1-t]], q = diag(1,0), where u = sqrt(s-s^2) and
    v = sqrt(t-t^2).
    '''
    s = var('s')
    t = var('t')
    u = var('u')
    v = var('v')
    zero = const(0)
    one = const(1)
    a1 = [[one, zero], [zero, -one]]
    a2 = [[2*s - 1, 2*u], [2*u, 1 - 2*s]]
    p = [[t, v], [v, 1 - t]]
    q = [[one, zero], [zero, zero]]
    M = [[None]*4 for i in range(4)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    M[2*i + k][2*j + l] = a1[i][j] * p[k][l] + a2[i][j] * q[k][l]
    return M

def charpoly_symbolic():
    '''
    det(lam I - M(s,t)) as a RatPoly in lam, s, t.  Raises RuntimeError
    if u or v survive the reduction.
    '''
    M = block_matrix_symbolic()
    lam = var('lam')
    A = [[(lam if i == j else const(0)) - M[i][j] for j in range(4)] for i in range(4)]
    P = det(A, method='berkowitz')
    if not P.free_of('u', 'v'):
        raise RuntimeError('radical residue in characteristic polynomial: %s' % P)
    return P

def charpoly():
    return parse(constants.CHARPOLY)

def charpoly_at(lam_poly):
    '''
    The characteristic polynomial with lam replaced by *lam_poly*; e.g.
    charpoly_at(1 - r) vanishes exactly when 1-r is an eigenvalue of the
    block.
    '''
    return charpoly().substitute('lam', lam_poly)

def squared_out(x, a, R):
    '''
    x = sqrt(a) +- sqrt(R) with both radicals squared out:
    (x^2 + a - R)^2 - 4 a x^2.  Also returns the inner part x^2 + a - R.
    '''
    M = x*x + a - R
    return M*M - 4*a*x*x, M

def support_radicands():
    r = var('r')
    s = var('s')
    t = var('t')
    R1 = 1 - t + 2*s*t - s
    R2 = t - t*t + s*t
    return 1 - r, s, R1, R2

def support_relation_polys():
    '''
    (M1, M2): the radical-free parts of the squared support relations;
    p_i = M_i^2 - 4 s (1-r)^2.
    '''
    x,a,R1,R2 = support_radicands()
    return squared_out(x, a, R1)[1], squared_out(x, a, R2)[1]

def build_p1_p2():
    '''
    Rebuilds p1, p2 from the support relations and checks them against
    the transcribed constants.
    '''
    x,a,R1,R2 = support_radicands()
    p1 = squared_out(x, a, R1)[0]
    p2 = squared_out(x, a, R2)[0]
    for nm,p,txt in [('p1', p1, constants.P1), ('p2', p2, constants.P2)]:
        ref = parse(txt)
        if p != ref:
            raise TranscriptionError('%s differs from transcription by %s' % (nm, p - ref))
    return p1, p2

def sylvester_matrix(p, q, name='t'):
    '''
    The Sylvester matrix of p, q in *name*, rows of p first; its
    determinant is Res_name(p, q).
    '''
    cp = p.coeffs_in(name)[::-1]
    cq = q.coeffs_in(name)[::-1]
    m = len(cp) - 1
    n = len(cq) - 1
    N = m + n
    S = []
    for i in range(n):
        S.append([const(0)]*i + cp + [const(0)]*(N - m - 1 - i))
    for i in range(m):
        S.append([const(0)]*i + cq + [const(0)]*(N - n - 1 - i))
    return S

def resultant_t(p, q, name='t'):
    '''
    Res_name(p, q) by sympy's subresultant algorithm; equal to the
    determinant of sylvester_matrix(p, q, name).  Res(name - a, name - b)
    = a - b.

    Parameters
    ----------
    p, q - RatPoly
        Free of u, v and lam (apart from *name* itself).
    name - string
        The variable to eliminate.

    Returns
    -------
    RatPoly in the remaining variables.
    '''
    for nm,x in [('p', p), ('q', q)]:
        others = [v for v in ('u', 'v', 'lam') if v != name]
        if not x.free_of(*others):
            raise ValueError('%s must be free of %s: %s' % (nm, ', '.join(others), x))
        if x.is_zero():
            raise ValueError('%s is the zero polynomial' % nm)
    if p.degree(name) <= 0 and q.degree(name) <= 0:
        raise ValueError('neither polynomial involves %s' % name)
    res = RatPoly(sympy.resultant(p.as_expr(), q.as_expr(), SYMBOL[name]))
    logdebug('Res_%s of degrees %i, %i: %i terms' % (name, p.degree(name), q.degree(name),
                                                      len(res)))
    if res.is_zero():
        logwarn('Resultant in', name, 'vanishes identically: common factor')
    return res

@functools.lru_cache(maxsize=None)
def p1_p2_resultant():
    '''
    Res_t(p1, p2), computed once per process.
    '''
    t0 = Time()
    p1,p2 = build_p1_p2()
    res = resultant_t(p1, p2)
    loginfo('Resultant of p1, p2:', len(res), 'terms, degree', res.degree('r'), 'in r,',
            res.degree('s'), 'in s;', Time() - t0)
    return res

def eliminant_factors():
    return [(nm, parse(txt), k) for nm,txt,k in constants.ELIMINANT_FACTORS]

@functools.lru_cache(maxsize=None)
def eliminant():
    E = const(1)
    for nm,f,k in eliminant_factors():
        E = E * f**k
    return E

def eliminant_check(res=None):
    '''
    Divides the resultant by every factor of the eliminant in turn and
    returns the quotient; raises EliminantMismatch naming the first
    factor that leaves a remainder.
    '''
    if res is None:
        res = p1_p2_resultant()
    q = res
    for nm,f,k in eliminant_factors():
        for i in range(k):
            q,rem = divide(q, f)
            if not rem.is_zero():
                raise EliminantMismatch(nm, rem)
    logdebug('Eliminant divides the resultant; quotient has', len(q), 'terms')
    return q

class Certificate(object):
    def __init__(self, s, r, resultant_value, eliminant_value, verdict, support_value=None):
        self.s = s
        self.r = r
        self.resultant_value = resultant_value
        self.eliminant_value = eliminant_value
        self.support_value = support_value
        self.verdict = verdict

    def __str__(self):
        return 'Certificate(s=%s, r=%s, verdict=%s)' % (self.s, self.r, self.verdict)

    def certified(self):
        return self.verdict in (CERTIFIED_NOT_CONVEX, SPECIAL_S_QUARTER)

    def to_dict(self):
        return dict(s=num_to_json(self.s), r=num_to_json(self.r),
                    resultant_value=num_to_json(self.resultant_value),
                    eliminant_value=num_to_json(self.eliminant_value),
                    support_value=(None if self.support_value is None
                                   else num_to_json(self.support_value)),
                    verdict=self.verdict)

def support_value(s, r):
    '''
    r(1-r)(1-s); zero iff the ordered support equations
    l1 = 1-r+2r sqrt(s), l2 = 1-r have a solution t (which is t = r^2),
    for s in (0,1].
    '''
    s = as_rational(s)
    r = as_rational(r)
    return r * (1 - r) * (1 - s)

def certify(s, r):
    '''
    Exact verdict on whether sigma(s, r) lies outside the image of
    Phi_s.  s = 1/4 also has the t = 0 solution (nu_0's atoms +-1 are
    atoms of sigma); there sigma != nu_0 is what excludes it.
    '''
    s = as_rational(s)
    r = as_rational(r)
    for nm,x in [('s', s), ('r', r)]:
        if not (0 < x < 1):
            raise ValueError('%s must lie in (0,1), got %s' % (nm, x))
    pt = dict(r=r, s=s)
    res = p1_p2_resultant().eval_exact(pt)
    elim = eliminant().eval_exact(pt)
    if s == Fraction(1, 4):
        sigma = sigma_target(CounterexampleParams(s, r))
        if res != 0 and sigma != nu_t(s, 0):
            verdict = SPECIAL_S_QUARTER
        else:
            verdict = INCONCLUSIVE
    elif res != 0:
        verdict = CERTIFIED_NOT_CONVEX
    else:
        verdict = INCONCLUSIVE
    if verdict == INCONCLUSIVE:
        logwarn('Inconclusive at s =', s, 'r =', r, ': resultant vanishes; try another r')
    cert = Certificate(s, r, res, elim, verdict, support_value(s, r))
    logdebug(cert)
    return cert
