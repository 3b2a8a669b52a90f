# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Multivariate polynomials with rational coefficients in the variables
r, s, t, lam, u, v, kept as sympy Polys over QQ.

u and v stand for the radicals sqrt(s - s^2) and sqrt(t - t^2); every
RatPoly is reduced modulo u^2 - s + s^2 and v^2 - t + t^2, so u and v
never appear with exponent above one.  Monomials are ordered
lexicographically with r > s > t > lam > u > v.
'''
from fractions import Fraction
from tokenize import TokenError

import sympy
from sympy import QQ, Poly, Rational
from sympy.parsing.sympy_parser import (parse_expr, standard_transformations,
                                        convert_xor, rationalize)
from sympy.polys.polyerrors import BasePolynomialError

VARS = ('r', 's', 't', 'lam', 'u', 'v')
SYMBOLS = sympy.symbols(VARS)
SYMBOL = dict(zip(VARS, SYMBOLS))
NV = len(VARS)
ZERO_EXP = (0,) * NV

_r, _s, _t, _lam, _u, _v = SYMBOLS
# a Groebner basis in lex order with u, v leading
RADICAL_RULES = [_u**2 - _s + _s**2, _v**2 - _t + _t**2]
_RADICAL_GENS = (_u, _v, _r, _s, _t, _lam)

_TRANSFORMS = standard_transformations + (convert_xor, rationalize)

class IrrationalValue(Exception):
    '''
    Exact evaluation needed sqrt(s - s^2) or sqrt(t - t^2) at a point
    where the radicand is not the square of a rational.
    '''
    pass

def _rational(c):
    if isinstance(c, bool):
        raise TypeError('boolean coefficient')
    if isinstance(c, int):
        return sympy.Integer(c)
    if isinstance(c, Fraction):
        return Rational(c.numerator, c.denominator)
    if isinstance(c, sympy.Rational):
        return c
    raise TypeError('coefficients must be int or Fraction, got %r' % (c,))

def _number(x):
    # sympy Rational -> int or Fraction
    x = Rational(x)
    if x.q == 1:
        return int(x.p)
    return Fraction(int(x.p), int(x.q))

def _symbol(name):
    try:
        return SYMBOL[name]
    except KeyError:
        raise ValueError('unknown variable %r; expected one of %s' % (name, VARS))

def _reduce_radicals(poly):
    Q,rem = sympy.reduced(poly.as_expr(), RADICAL_RULES, *_RADICAL_GENS, order='lex')
    return Poly(rem, *SYMBOLS, domain=QQ)

class RatPoly(object):
    '''
    A polynomial in r, s, t, lam, u, v.  Built from a sympy Poly or
    expression, an {exponent tuple: coefficient} dict, or an int /
    Fraction constant.
    '''
    def __init__(self, x=0):
        if isinstance(x, RatPoly):
            poly = x.poly
        elif isinstance(x, Poly):
            poly = x
        elif isinstance(x, dict):
            terms = {}
            for e,c in x.items():
                if len(e) != NV:
                    raise ValueError('exponent tuple %s has wrong length' % (e,))
                terms[tuple(e)] = _rational(c)
            poly = Poly.from_dict(terms, *SYMBOLS, domain=QQ)
        elif isinstance(x, sympy.Expr):
            poly = Poly(x, *SYMBOLS, domain=QQ)
        else:
            poly = Poly(_rational(x), *SYMBOLS, domain=QQ)
        if poly.gens != SYMBOLS or poly.domain != QQ:
            poly = Poly(poly.as_expr(), *SYMBOLS, domain=QQ)
        if not poly.is_zero and (poly.degree(_u) > 1 or poly.degree(_v) > 1):
            poly = _reduce_radicals(poly)
        self.poly = poly

    @staticmethod
    def const(c):
        return RatPoly(_rational(c))

    @staticmethod
    def var(name, power=1):
        return RatPoly(_symbol(name)**power)

    @staticmethod
    def coerce(x):
        if isinstance(x, RatPoly):
            return x
        return RatPoly.const(x)

    @staticmethod
    def parse(text):
        return parse(text)

    def as_expr(self):
        return self.poly.as_expr()

    @property
    def terms(self):
        return dict((e, _number(c)) for e,c in self.poly.as_dict().items())

    # ring operations

    def is_zero(self):
        return self.poly.is_zero

    def __bool__(self):
        return not self.poly.is_zero

    def __len__(self):
        return len(self.poly.as_dict())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = RatPoly.const(other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.poly == other.poly

    def __ne__(self, other):
        eq = self.__eq__(other)
        if eq is NotImplemented:
            return eq
        return not eq

    def __hash__(self):
        return hash(self.poly)

    def __neg__(self):
        return RatPoly(-self.poly)

    def __add__(self, other):
        try:
            other = RatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return RatPoly(self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return RatPoly(self.poly - other.poly)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = RatPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return RatPoly(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise ValueError('exponent must be a nonnegative integer, got %r' % (k,))
        return RatPoly(self.poly**k)

    def scale(self, c):
        return self * RatPoly.const(c)

    # structure

    def _degree_in(self, sym):
        if self.poly.is_zero:
            return -1
        return int(self.poly.degree(sym))

    def variables(self):
        return [nm for nm in VARS if self._degree_in(SYMBOL[nm]) > 0]

    def free_of(self, *names):
        return all(self._degree_in(_symbol(n)) <= 0 for n in names)

    def is_constant(self):
        return self.poly.is_ground

    def constant_value(self):
        if not self.is_constant():
            raise ValueError('polynomial %s is not constant' % self)
        return _number(self.poly.as_expr())

    def degree(self, name=None):
        '''
        Degree in variable *name* (total degree if None); -1 for the
        zero polynomial.
        '''
        if self.poly.is_zero:
            return -1
        if name is None:
            return int(self.poly.total_degree())
        return self._degree_in(_symbol(name))

    def leading_term(self):
        e,c = self.poly.terms()[0]
        return tuple(e), _number(c)

    def coeffs_in(self, name):
        '''
        [c_0, c_1, ..., c_deg]: self = sum_k c_k name^k, with name absent
        from the c_k.
        '''
        cs = Poly(self.as_expr(), _symbol(name)).all_coeffs()
        return [RatPoly(sympy.sympify(c)) for c in reversed(cs)]

    def coeff(self, name, k):
        cs = self.coeffs_in(name)
        if k < len(cs):
            return cs[k]
        return RatPoly()

    # substitution and evaluation

    def substitute(self, name, poly):
        poly = RatPoly.coerce(poly)
        return RatPoly(self.as_expr().subs(_symbol(name), poly.as_expr()))

    def specialize(self, assignment):
        '''
        Partial evaluation: substitutes the exact values in *assignment*
        (variable name -> int / Fraction / str) and returns a RatPoly in
        the remaining variables.
        '''
        vals = dict((_symbol(k), _rational(Fraction(x))) for k,x in assignment.items())
        return RatPoly(self.as_expr().xreplace(vals))

    def _radical_values(self, assignment, signs, exact):
        vals = dict(assignment)
        signs = signs or {}
        for rad,base in [('u', 's'), ('v', 't')]:
            if rad in vals or self.free_of(rad):
                continue
            if not base in vals:
                raise ValueError('evaluating %s needs a value for %s' % (rad, base))
            x = vals[base]
            if exact:
                x = Fraction(x)
                root = sympy.sqrt(_rational(x - x*x))
                if not root.is_Rational:
                    raise IrrationalValue('%s = sqrt(%s - %s^2) is irrational at %s = %s' %
                                          (rad, base, base, base, x))
                root = _number(root)
            else:
                x = float(x)
                root = max(x - x*x, 0.)**0.5
            vals[rad] = signs.get(rad, 1) * root
        return vals

    def _check_covered(self, vals):
        missing = [v for v in self.variables() if not v in vals]
        if missing:
            raise ValueError('no value given for %s' % ', '.join(missing))

    def eval_exact(self, assignment, radical_signs=None):
        '''
        Exact value at a point covering every variable except possibly u
        and v, which are taken as +sqrt(s - s^2), +sqrt(t - t^2) (or with
        the sign in *radical_signs*).  Raises IrrationalValue when a
        needed radical is not rational.
        '''
        vals = self._radical_values(assignment, radical_signs, True)
        self._check_covered(vals)
        return self.specialize(vals).constant_value()

    def evalf(self, assignment, radical_signs=None):
        vals = self._radical_values(assignment, radical_signs, False)
        self._check_covered(vals)
        subs = dict((_symbol(k), float(x)) for k,x in vals.items())
        return float(self.as_expr().evalf(subs=subs))

    # printing

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        if self.poly.is_zero:
            return '0'
        out = []
        for j,(e,c) in enumerate(self.sorted_terms()):
            mono = '*'.join((VARS[i] if k == 1 else '%s^%i' % (VARS[i], k))
                            for i,k in enumerate(e) if k)
            neg = c < 0
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = '%s*%s' % (a, mono)
            if j == 0:
                out.append(('-' if neg else '') + body)
            else:
                out.append(('- ' if neg else '+ ') + body)
        return ' '.join(out)

    def __repr__(self):
        return 'RatPoly(%s)' % self

def parse(text):
    '''
    Parses a polynomial in r, s, t, lam, u, v such as the output of
    str(RatPoly); "^" and "**" both mean power.
    '''
    if not text.strip():
        raise ValueError('empty polynomial string')
    try:
        expr = parse_expr(text, local_dict=dict(SYMBOL), transformations=_TRANSFORMS)
    except (SyntaxError, TokenError, TypeError, sympy.SympifyError) as e:
        raise ValueError('cannot parse %r: %s' % (text, e))
    extra = getattr(expr, 'free_symbols', set()) - set(SYMBOLS)
    if extra:
        raise ValueError('unknown variable(s) %s in %r' %
                         (', '.join(sorted(str(x) for x in extra)), text))
    try:
        return RatPoly(expr)
    except (BasePolynomialError, TypeError) as e:
        raise ValueError('%r is not a polynomial: %s' % (text, e))

def var(name):
    return RatPoly.var(name)

def const(c):
    return RatPoly.const(c)

def divide(a, b):
    '''
    Multivariate division of *a* by the single divisor *b* with respect
    to the lex order: a = q*b + rem, where no term of rem is divisible
    by the leading term of b.  b divides a exactly iff rem is zero.
    Works in the plain polynomial ring: neither argument may contain
    u or v.
    '''
    a = RatPoly.coerce(a)
    b = RatPoly.coerce(b)
    if b.is_zero():
        raise ZeroDivisionError('division by the zero polynomial')
    if not (a.free_of('u', 'v') and b.free_of('u', 'v')):
        raise ValueError('divide works on polynomials free of u and v')
    Q,rem = sympy.reduced(a.as_expr(), [b.as_expr()], *SYMBOLS, order='lex')
    return RatPoly(sympy.sympify(Q[0])), RatPoly(sympy.sympify(rem))

def exact_div(a, b):
    q,rem = divide(a, b)
    if not rem.is_zero():
        raise ArithmeticError('%s does not divide %s exactly' % (b, a))
    return q

def det(M, method='bareiss'):
    '''
    Determinant of a square matrix of RatPolys (or ints / Fractions).
    method is passed to sympy: 'bareiss' (fraction-free elimination) or
    'berkowitz' (division-free).  The result is reduced modulo the u, v
    relations.
    '''
    rows = [[RatPoly.coerce(x).as_expr() for x in row] for row in M]
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError('matrix is not square')
    if n == 0:
        return RatPoly.const(1)
    return RatPoly(sympy.cancel(sympy.Matrix(rows).det(method=method)))
