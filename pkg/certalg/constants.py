# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
'''
Hand-transcribed polynomials.  Everything here is checked against an
independent construction in certalg.certalg (build_p1_p2,
eliminant_check); edit only together with those checks.
'''

# support-inclusion equations with the radicals squared out
P1 = ('r^4 - 4*r^3 - 4*r^2*s*t + 2*r^2*t + 4*r^2 + 8*r*s*t - 4*r*t + 4*s^2*t^2'
      ' - 8*s^2*t + 4*s^2 - 4*s*t^2 + 4*s*t - 4*s + t^2')

P2 = ('r^4 - 4*r^3 - 2*r^2*s*t - 2*r^2*s + 2*r^2*t^2 - 2*r^2*t + 6*r^2 + 4*r*s*t'
      ' + 4*r*s - 4*r*t^2 + 4*r*t - 4*r + s^2*t^2 - 2*s^2*t + s^2 - 2*s*t^3 + 4*s*t^2'
      ' - 4*s*t - 2*s + t^4 - 2*t^3 + 3*t^2 - 2*t + 1')

# generator of the elimination ideal of (P1, P2) in Q[r,s], as
# (name, polynomial, multiplicity)
ELIMINANT_FACTORS = [
    ('r-1', 'r - 1', 2),
    ('quadratic', 'r^2 - 2*r - 4*s + 1', 1),
    ('quartic', 'r^4 - 4*r^3 + 4*r^2*s^2 - 6*r^2*s + 6*r^2 - 8*r*s^2 + 12*r*s - 4*r'
     ' + 4*s^4 - 4*s^3 + 5*s^2 - 6*s + 1', 1),
    ('sextic', 'r^6 - 6*r^5 + 4*r^4*s^2 - 10*r^4*s + 15*r^4 - 16*r^3*s^2 + 40*r^3*s'
     ' - 20*r^3 + 4*r^2*s^4 + 108*r^2*s^3 - 79*r^2*s^2 - 28*r^2*s + 15*r^2 - 8*r*s^4'
     ' - 216*r*s^3 + 190*r*s^2 - 24*r*s - 6*r - 144*s^5 + 340*s^4 - 184*s^3'
     ' + 13*s^2 + 6*s + 1', 1),
    ]

# characteristic polynomial of the 4x4 block, det(lam - M(s,t))
CHARPOLY = 'lam^4 - 2*lam^2 + 2*lam^2*t - 4*lam^2*s*t + 1 - 2*t + t^2'
