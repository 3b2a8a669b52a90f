# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
import unittest
from fractions import Fraction as F

import numpy as np

from hornbody.horn.counterexample import (CounterexampleParams, lambda_quadruple, _lambdas,
                                          charpoly_value, nu_t, phi, sigma_target, table1,
                                          table1_csv, table1_dict, support_relations,
                                          support_scan, t_nodes, x_nodes, membership_gap,
                                          sigma_gap, r_sweep, sweep_sigma_gaps)
from hornbody.horn.eigenfunc import (DiscreteMeasure, ev_of_measure, measure_of_ev,
                                     affine_combine_ev)

def continuum_gap(s, r, n=200001):
    # W1 distance from sigma to the image of Phi_s, valid for s >= 1/4
    ts = np.linspace(0., 1., n)
    l1,l2 = _lambdas(s, ts)
    A = 1. - r + 2.*r*np.sqrt(s)
    B = 1. - r
    return 0.5 * np.min(np.abs(l1 - A) + np.abs(l2 - B))

class TestBlocks(unittest.TestCase):
    def testLambdas(self):
        for s,t in [(0.5, 0.5), (0.1, 0.9), (0.9, 0.3), (1., 1.)]:
            lams = lambda_quadruple(s, t)
            self.assertTrue(all(a >= b for a,b in zip(lams[:-1], lams[1:])))
            for lam in lams:
                self.assertLess(abs(charpoly_value(s, t, lam)), 1e-12)
            self.assertLess(abs(lams[0] * lams[1] - (1. - t)), 1e-12)

    def testExact(self):
        self.assertEqual(lambda_quadruple(F(1,4), 1), (1, 0, 0, -1))
        self.assertEqual(lambda_quadruple(F(9,16), 1), (F(3,2), 0, 0, F(-3,2)))
        self.assertEqual(nu_t(F(1,3), 0), DiscreteMeasure([-1, 1], [F(1,2), F(1,2)]))
        self.assertRaises(ValueError, lambda_quadruple, 0.5, 1.5)

    def testPhi(self):
        s = 0.5
        self.assertTrue(phi(s, DiscreteMeasure([0.3], [1])).allclose(nu_t(s, 0.3)))
        mu = DiscreteMeasure([0., 1.], [F(1,2), F(1,2)])
        nu = phi(F(1,4), DiscreteMeasure([0, 1], [F(1,2), F(1,2)]))
        self.assertEqual(nu, DiscreteMeasure([-1, 0, 1], [F(3,8), F(1,4), F(3,8)]))
        # nu_0 = (d(1) + d(-1))/2, nu_1 = (d(sqrt 2) + 2 d(0) + d(-sqrt 2))/4
        self.assertEqual(len(phi(s, mu)), 5)
        self.assertRaises(ValueError, phi, s, DiscreteMeasure([0.5, 2.], [0.5, 0.5]))

    def testParams(self):
        self.assertRaises(ValueError, CounterexampleParams, 1.5, 0.5)
        self.assertRaises(ValueError, CounterexampleParams, 0.5, 0)
        self.assertRaises(ValueError, CounterexampleParams, 0.5, 1)

class TestTable1(unittest.TestCase):
    def testQuarter(self):
        self.assertEqual(table1(F(1,4), F(1,2)),
                         [[1, 0, 0, -1], [1, 1, -1, -1], [1, F(1,2), F(-1,2), -1]])

    def testNineSixteenths(self):
        rows = table1(F(9,16), F(1,3))
        self.assertEqual(rows[0], [F(3,2), 0, 0, F(-3,2)])
        self.assertEqual(rows[2], [F(7,6), F(2,3), F(-2,3), F(-7,6)])

    def testCombinationRow(self):
        s = 0.3
        r = 0.7
        row1,row2,row3 = table1(s, r)
        for a,b,c in zip(row1, row2, row3):
            self.assertLess(abs(c - (r*a + (1-r)*b)), 1e-15)
        self.assertLess(abs(row1[0] - 2.*np.sqrt(s)), 1e-15)

    def testSigmaIsCombination(self):
        for s in [F(1,4), F(9,16), F(1,9), F(4,9)]:
            for r in [F(1,3), F(1,2), F(5,7)]:
                f1 = ev_of_measure(nu_t(s, 1))
                f0 = ev_of_measure(nu_t(s, 0))
                sigma = measure_of_ev(affine_combine_ev(f1, f0, r))
                self.assertEqual(sigma, sigma_target(CounterexampleParams(s, r)))

    def testCsv(self):
        lines = table1_csv(F(1,4), F(1,2)).splitlines()
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[0], 'row,"[0,1/4)","[1/4,1/2)","[1/2,3/4)","[3/4,1)"')
        self.assertEqual(lines[1], 'ev_nu1,1,0,0,-1')
        self.assertEqual(lines[2], 'ev_nu0,1,1,-1,-1')
        self.assertEqual(lines[3], 'combination,1,1/2,-1/2,-1')
        d = table1_dict(F(9,16), F(1,3))
        self.assertEqual(d['s'], '9/16')
        self.assertEqual(d['rows'][0]['values'], ['3/2', '0', '0', '-3/2'])

class TestSupportScan(unittest.TestCase):
    def testRelations(self):
        e1,e2 = support_relations(0.25, 0., 0.5)
        self.assertLess(abs(e1), 1e-15)
        self.assertLess(abs(e2 - 0.5), 1e-15)

    def testQuarter(self):
        for r in [F(1,3), F(1,2), F(3,4)]:
            self.assertEqual(support_scan(CounterexampleParams(F(1,4), r)), [0.])

    def testEmpty(self):
        self.assertEqual(support_scan(CounterexampleParams(F(1,2), F(1,2))), [])
        # a zero of the quadratic eliminant factor: squaring artifact only
        self.assertEqual(support_scan(CounterexampleParams(F(1,16), F(1,2))), [])
        self.assertEqual(support_scan(CounterexampleParams(F(3,16), 1 - np.sqrt(3.)/2)), [])

    def testRejects(self):
        self.assertRaises(ValueError, support_scan,
                          CounterexampleParams(0.5, 0.5), t_grid=1)

class TestGrids(unittest.TestCase):
    def testTNodes(self):
        ts = t_nodes(5)
        self.assertEqual(ts[0], 0.)
        self.assertEqual(ts[-1], 1.)
        self.assertTrue(np.all(np.diff(ts) > 0))
        np.testing.assert_array_equal(ts, [0., 1./16, 0.25, 0.5, 9./16, 0.75, 1.])
        for small,big in [(9, 17), (17, 33), (401, 2001)]:
            self.assertTrue(np.all(np.isin(t_nodes(small), t_nodes(big))))
        self.assertRaises(ValueError, t_nodes, 1)

    def testXNodes(self):
        xs = x_nodes(5)
        np.testing.assert_array_equal(xs, [-2., -1., 0., 1., 2.])
        self.assertRaises(ValueError, x_nodes, 1)

class TestMembershipGap(unittest.TestCase):
    def setUp(self):
        np.random.seed(42)

    def testImageGridPoints(self):
        h = 4. / 4095
        rep = membership_gap(0.5, nu_t(0.5, 0))
        self.assertLess(rep.gap, 1e-8)
        ts,ws = rep.support()
        self.assertLess(abs(ws[np.argmin(ts)] - 1.), 1e-6)
        self.assertEqual(ts[0], 0.)
        self.assertTrue(rep.converged)
        self.assertIsNone(rep.r)
        mu = DiscreteMeasure([0.2, 0.8], [F(1,3), F(2,3)])
        self.assertLess(membership_gap(0.5, phi(0.5, mu)).gap, 2. * h)

    def testSigmaContinuum(self):
        cont = continuum_gap(0.5, 0.5)
        self.assertGreater(cont, 0.05)
        params = CounterexampleParams(F(1,2), F(1,2))
        rep = sigma_gap(params, t_grid=401, x_grid=4096)
        dense = sigma_gap(params, t_grid=2001, x_grid=4096)
        self.assertLess(abs(rep.gap - cont), 0.05 * cont)
        self.assertLess(abs(dense.gap - cont), 0.05 * cont)
        self.assertLess(abs(rep.gap - dense.gap), 0.05 * dense.gap)
        self.assertEqual(rep.r, F(1,2))
        d = rep.to_dict()
        self.assertEqual(d['r'], '1/2')
        self.assertAlmostEqual(sum(w for t,w in d['support']), 1.)

    def testSigmaAboveImage(self):
        s = 0.5
        sig = sigma_gap(CounterexampleParams(s, 0.5)).gap
        worst = 0.
        for i in range(20):
            if i % 2:
                t = np.random.uniform(0., 1.)
                target = nu_t(s, t)
            else:
                t = np.random.uniform(0., 1., size=3)
                target = phi(s, DiscreteMeasure(list(t), [F(1,3)]*3))
            worst = max(worst, membership_gap(s, target).gap)
        self.assertGreater(sig, 10. * worst)

    def testRefinementMonotone(self):
        params = CounterexampleParams(0.5, 0.3)
        gaps = [sigma_gap(params, t_grid=n, x_grid=1024).gap for n in [9, 17, 33, 65]]
        for a,b in zip(gaps[:-1], gaps[1:]):
            self.assertLessEqual(b, a + 1e-6)

    def testSubgradient(self):
        params = CounterexampleParams(0.5, 0.5)
        kw = dict(t_grid=33, x_grid=512)
        lp = sigma_gap(params, **kw)
        sg = sigma_gap(params, method='subgradient', max_iter=2000, **kw)
        self.assertEqual(sg.method, 'subgradient')
        self.assertGreaterEqual(sg.gap, lp.gap - 1e-6)
        self.assertLessEqual(sg.lower_bound, lp.gap + 1e-9)
        self.assertLess(sg.gap, 1.5 * lp.gap)

    def testRejects(self):
        far = DiscreteMeasure([3.], [1])
        self.assertRaises(ValueError, membership_gap, 0.5, far)
        self.assertRaises(ValueError, membership_gap, 0.5, nu_t(0.5, 0.5), method='newton')
        self.assertRaises(ValueError, membership_gap, 0.5, nu_t(0.5, 0.5), t_grid=1)
        self.assertRaises(ValueError, membership_gap, 1.5, nu_t(0.5, 0.5))

class TestSweep(unittest.TestCase):
    def testRSweep(self):
        self.assertEqual(r_sweep(3), [F(1,4), F(1,2), F(3,4)])
        self.assertEqual(len(r_sweep(99)), 99)
        self.assertRaises(ValueError, r_sweep, 0)

    def testParallelMatchesSerial(self):
        kw = dict(t_grid=17, x_grid=256)
        rs = [F(1,3), F(1,2), F(2,3)]
        serial = sweep_sigma_gaps(0.5, rs, nthreads=1, **kw)
        par = sweep_sigma_gaps(0.5, rs, nthreads=2, **kw)
        self.assertEqual([rep.r for rep in par], rs)
        for a,b in zip(serial, par):
            self.assertAlmostEqual(a.gap, b.gap, places=12)
        self.assertTrue(all(rep.gap > 0 for rep in serial))

if __name__ == '__main__':
    unittest.main()
