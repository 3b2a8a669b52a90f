# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
import unittest
from fractions import Fraction as F

import numpy as np
from scipy.stats import wasserstein_distance

from hornbody.horn.eigenfunc import (DiscreteMeasure, EigenvalueFunction, cdf,
                                     ev_of_measure, measure_of_ev, ev_of_spectrum,
                                     w1_distance, ev_l1_distance, affine_combine_ev,
                                     mixture, integrate, ev_of_callable, exact_sqrt)
from hornbody.horn.counterexample import nu_t

def random_measure(n):
    atoms = np.random.uniform(-2, 2, size=n)
    w = np.random.uniform(0.1, 1., size=n)
    return DiscreteMeasure(list(atoms), list(w / w.sum()))

class TestMeasures(unittest.TestCase):
    def setUp(self):
        np.random.seed(42)

    def testMergeAndSort(self):
        mu = DiscreteMeasure([1, -1, 1], [F(1,4), F(1,2), F(1,4)])
        self.assertEqual(mu.atoms, [-1, 1])
        self.assertEqual(mu.weights, [F(1,2), F(1,2)])
        self.assertTrue(mu.is_exact())
        mu = DiscreteMeasure([0.5, 0.5 + 1e-13, -0.5], [0.25, 0.25, 0.5])
        self.assertEqual(len(mu), 2)
        self.assertEqual(mu.atoms[1], 0.5)

    def testRejects(self):
        self.assertRaises(ValueError, DiscreteMeasure, [0, 1], [F(1,2), F(1,3)])
        self.assertRaises(ValueError, DiscreteMeasure, [0, 1], [F(3,2), F(-1,2)])
        self.assertRaises(ValueError, DiscreteMeasure, [0, 1], [1])
        self.assertRaises(ValueError, DiscreteMeasure, [], [])
        self.assertRaises(ValueError, DiscreteMeasure, [float('nan')], [1])
        self.assertRaises(ValueError, DiscreteMeasure, [0., 1.], [0.5, 0.5 + 1e-9])

    def testCdf(self):
        nu0 = DiscreteMeasure([1, -1], [F(1,2), F(1,2)])
        np.testing.assert_array_equal(cdf(nu0, [-2., -1., 0., 1., 2.]),
                                      [0., 0.5, 0.5, 1., 1.])
        self.assertEqual(integrate(lambda x: x*x, nu0), 1)

    def testMixture(self):
        mus = [random_measure(3) for i in range(3)]
        w = [0.2, 0.3, 0.5]
        mix = mixture(mus, w)
        xs = np.linspace(-2.5, 2.5, 101)
        expect = sum(wi * cdf(m, xs) for wi,m in zip(w, mus))
        np.testing.assert_allclose(cdf(mix, xs), expect, atol=1e-12)
        self.assertRaises(ValueError, mixture, mus, [0.5, 0.5])
        self.assertRaises(ValueError, mixture, mus[:2], [1.5, -0.5])

    def testJson(self):
        mu = DiscreteMeasure([F(-1,3), 0.25], [F(1,3), F(2,3)])
        d = mu.to_dict()
        self.assertEqual(d['atoms'], ['-1/3', 0.25])
        self.assertEqual(DiscreteMeasure.from_dict(d), mu)

    def testExactSqrt(self):
        self.assertEqual(exact_sqrt(F(9,16)), F(3,4))
        self.assertEqual(exact_sqrt(4), 2)
        self.assertIsInstance(exact_sqrt(2), float)
        self.assertAlmostEqual(exact_sqrt(0.25), 0.5)
        self.assertRaises(ValueError, exact_sqrt, F(-1,4))

class TestEigenvalueFunctions(unittest.TestCase):
    def setUp(self):
        np.random.seed(42)

    def testOfSpectrum(self):
        f = ev_of_spectrum([3, 1, 1, -2])
        self.assertEqual(f.breakpoints, [0, F(1,4), F(3,4)])
        self.assertEqual(f.values, [3, 1, -2])
        self.assertEqual(f.value_at(F(1,4)), 1)
        self.assertEqual(f.value_at(F(3,4) - F(1,1000)), 1)
        self.assertEqual(f.mean(), F(3,4))
        np.testing.assert_array_equal(f([0., 0.3, 0.9]), [3., 1., -2.])
        self.assertRaises(ValueError, f.value_at, 1)
        self.assertRaises(ValueError, ev_of_spectrum, [1, 2])
        self.assertRaises(ValueError, ev_of_spectrum, [])

    def testRejects(self):
        self.assertRaises(ValueError, EigenvalueFunction, [F(1,2)], [1])
        self.assertRaises(ValueError, EigenvalueFunction, [0, F(1,2)], [0, 1])
        self.assertRaises(ValueError, EigenvalueFunction, [0, 1], [1, 0])
        self.assertRaises(ValueError, EigenvalueFunction, [0, F(1,2), F(1,3)], [2, 1, 0])

    def testMeasureCorrespondence(self):
        mu = DiscreteMeasure([F(-1), F(1,2), F(2)], [F(1,6), F(1,3), F(1,2)])
        f = ev_of_measure(mu)
        self.assertEqual(f.values, [2, F(1,2), -1])
        self.assertEqual(f.breakpoints, [0, F(1,2), F(5,6)])
        self.assertEqual(measure_of_ev(f), mu)
        self.assertEqual(f.mean(), integrate(lambda x: x, mu))

    def testFloatWeightsWithinTolerance(self):
        mu = DiscreteMeasure([-1., 0., 1.], [1e-13, 0.5, 0.5])
        f = ev_of_measure(mu)
        self.assertEqual(len(f), 3)
        self.assertTrue(f.breakpoints[-1] < 1.)
        back = measure_of_ev(f)
        self.assertTrue(np.allclose(back.atoms, mu.atoms))
        self.assertTrue(np.allclose(back.weights, mu.weights, atol=1e-12))
        # a step too narrow to resolve is absorbed
        f = ev_of_measure(DiscreteMeasure([-1., 0., 1.], [1e-17, 0.5, 0.5]))
        self.assertEqual(len(f), 2)
        self.assertEqual(f.values, [1., 0.])
        for i in range(20):
            mu = random_measure(7)
            f = ev_of_measure(mu)
            self.assertTrue(np.allclose(measure_of_ev(f).weights, mu.weights))

    def testW1AgainstScipy(self):
        for i in range(10):
            mu = random_measure(4)
            nu = random_measure(6)
            d = w1_distance(mu, nu)
            ref = wasserstein_distance(mu.atom_array(), nu.atom_array(),
                                       mu.weight_array(), nu.weight_array())
            self.assertLess(abs(d - ref), 1e-12)
            self.assertLess(abs(ev_l1_distance(ev_of_measure(mu), ev_of_measure(nu)) - d),
                            1e-12)

    def testW1Exact(self):
        d0 = DiscreteMeasure([0], [1])
        d1 = DiscreteMeasure([1], [1])
        self.assertEqual(w1_distance(d0, d1), 1)
        self.assertEqual(w1_distance(d0, d0), 0)

    def testTwoAffineStructures(self):
        s = F(1,4)
        r = F(1,2)
        nu1 = nu_t(s, 1)
        nu0 = nu_t(s, 0)
        comb = affine_combine_ev(ev_of_measure(nu1), ev_of_measure(nu0), r)
        mix = mixture([nu1, nu0], [r, 1 - r])
        self.assertEqual(comb.values, [1, F(1,2), F(-1,2), -1])
        d = w1_distance(measure_of_ev(comb), mix)
        self.assertEqual(d, F(1,4))
        self.assertGreaterEqual(d, 0.05)

    def testAffineCombine(self):
        f = ev_of_spectrum([2, 0])
        g = ev_of_spectrum([1, 1, -1])
        self.assertEqual(affine_combine_ev(f, g, 1), f)
        h = affine_combine_ev(f, g, F(1,2))
        self.assertEqual(h.breakpoints, [0, F(1,2), F(2,3)])
        self.assertEqual(h.values, [F(3,2), F(1,2), F(-1,2)])
        self.assertEqual(h.mean(), F(1,2) * f.mean() + F(1,2) * g.mean())
        self.assertRaises(ValueError, affine_combine_ev, f, g, F(3,2))

    def testOfCallable(self):
        f = ev_of_callable(lambda t: 1. - 2.*t, 8)
        self.assertEqual(len(f), 8)
        self.assertTrue(np.all(np.diff(f.values) < 0))
        self.assertLess(abs(f.mean()), 1e-15)
        self.assertRaises(ValueError, ev_of_callable, lambda t: t, 4)
        self.assertRaises(ValueError, ev_of_callable, lambda t: -t, 0)

    def testJson(self):
        f = ev_of_spectrum([1.5, 0.25, -1.75])
        self.assertEqual(EigenvalueFunction.from_dict(f.to_dict()), f)
        self.assertEqual(f.to_dict()['breakpoints'], ['0', '1/3', '2/3'])

if __name__ == '__main__':
    unittest.main()
