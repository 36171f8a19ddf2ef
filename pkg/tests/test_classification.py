import os
import unittest

import numpy as np

from source import classification
from source.classification import Strategy
from source.classification import census
from source.classification import class_counts
from source.classification import classify
from source.classification import cross_check
from source.classification import default_workers
from source.classification import search_classes
from source.corpus import corpus
from source.equivalence import canonical_key
from source.equivalence import p_equivalent
from source.matrices import classify_membership
from source.matrices import theta
from source.matrices import theta_iterate
from source.standard_form import block_report
from source.standard_form import decompose
from source.standard_form import is_hs_form

SLOW = bool(os.environ.get("THETA_LAB_SLOW"))


class TestSmallKappa(unittest.TestCase):
    def test_five_cycle(self):
        classes = classify(2, 1)
        self.assertEqual(len(classes), 1)
        self.assertEqual(classes[0].name, "c5")
        self.assertEqual(classes[0].fundamental_period, 1)
        self.assertTrue(np.array_equal(classes[0].representative, corpus("c5_hs").matrix))
        self.assertEqual([c.name for c in classify(2, 5)], ["c5"])

    def test_petersen(self):
        classes = classify(3, 1)
        self.assertEqual(len(classes), 1)
        self.assertEqual(classes[0].names, ["petersen", "desargues"])
        self.assertTrue(classes[0].hs_form)
        self.assertTrue(is_hs_form(classes[0].representative))
        self.assertTrue(p_equivalent(classes[0].representative, corpus("petersen_hs").matrix)[0])

    def test_period_three(self):
        classes = classify(3, 3)
        self.assertEqual(sorted(c.fundamental_period for c in classes), [1, 3])
        t2 = next(c for c in classes if c.fundamental_period == 3)
        self.assertEqual(t2.name, "t2_10_3F")
        self.assertFalse(t2.hs_form)
        self.assertTrue(p_equivalent(t2.representative, corpus("a2_t2").matrix)[0])

    def test_representatives_solve_the_equation(self):
        for kappa, m in ((2, 1), (3, 3), (3, 6)):
            for solution in classify(kappa, m):
                A = solution.representative
                self.assertTrue(np.array_equal(theta_iterate(A, m), A))
                self.assertTrue(block_report(decompose(A)).ok)

    def test_solutions_satisfy_lsz(self):
        for kappa, m in ((2, 1), (3, 3), (3, 6)):
            for solution in classify(kappa, m):
                membership = classify_membership(solution.representative)
                self.assertTrue(membership.lsz, solution.name)
                self.assertTrue(membership.is_D_kappa, solution.name)
                self.assertEqual(membership.kappa, kappa)

    def test_divisibility(self):
        for d, m in ((1, 2), (1, 3), (3, 6), (2, 6)):
            smaller = {c.key for c in classify(3, d)}
            larger = {c.key for c in classify(3, m)}
            self.assertTrue(smaller.issubset(larger), (d, m))

    def test_period_two_only_petersen(self):
        periods = [c.fundamental_period for c in classify(3, 2)]
        self.assertIn(1, periods)
        self.assertTrue(all(2 % p == 0 for p in periods))

    def test_closed_under_theta(self):
        classes = classify(3, 3)
        keys = {c.key for c in classes}
        for solution in classes:
            self.assertIn(canonical_key(theta(solution.representative)), keys)

    def test_sorted_by_key(self):
        keys = [c.key for c in classify(3, 6)]
        self.assertEqual(keys, sorted(keys))

    def test_arguments(self):
        with self.assertRaises(ValueError):
            classify(5, 1)
        with self.assertRaises(ValueError):
            classify(3, 0)
        with self.assertRaises(ValueError):
            classify(3, 9)
        with self.assertRaises(ValueError):
            search_classes(4, Strategy.orderly)


class TestWorkers(unittest.TestCase):
    def test_independent_of_worker_count(self):
        serial = [(c.key, c.fundamental_period) for c in classify(3, 6, workers=1)]
        classification._RESULTS.clear()
        parallel = [(c.key, c.fundamental_period) for c in classify(3, 6, workers=2)]
        self.assertEqual(serial, parallel)

    def test_default_workers(self):
        previous = os.environ.get("THETA_LAB_WORKERS")
        try:
            os.environ["THETA_LAB_WORKERS"] = "3"
            self.assertEqual(default_workers(), 3)
            os.environ["THETA_LAB_WORKERS"] = "many"
            self.assertEqual(default_workers(), 1)
        finally:
            if previous is None:
                os.environ.pop("THETA_LAB_WORKERS", None)
            else:
                os.environ["THETA_LAB_WORKERS"] = previous


class TestOrderlyCensus(unittest.TestCase):
    def test_strategies_agree(self):
        for kappa in (2, 3):
            self.assertTrue(cross_check(kappa, 6), kappa)
            self.assertEqual(class_counts(kappa, Strategy.orderly)[1], 1)

    def test_orderly_classify(self):
        searched = [c.key for c in classify(3, 3)]
        enumerated = [c.key for c in classify(3, 3, strategy=Strategy.orderly)]
        self.assertEqual(searched, enumerated)

    def test_census(self):
        self.assertEqual(len(census(2)), 1)
        frame = census(3)
        self.assertEqual(list(frame.columns), ["key", "names", "triangles", "girth", "terwilliger", "period"])
        petersen = frame[frame["names"] == "petersen,desargues"].iloc[0]
        self.assertEqual(petersen["girth"], 5)
        self.assertEqual(petersen["period"], 1)
        t2 = frame[frame["names"] == "t2_10_3F"].iloc[0]
        self.assertEqual(t2["triangles"], 3)
        self.assertEqual(t2["period"], 3)
        t1_key = canonical_key(corpus("a1_t1").matrix).hex()
        self.assertIn(t1_key, set(frame["key"]))


@unittest.skipUnless(SLOW, "set THETA_LAB_SLOW=1 for the kappa = 4 search")
class TestKappaFour(unittest.TestCase):
    def test_no_fixed_point(self):
        self.assertEqual(classify(4, 1), [])

    def test_configuration_1971(self):
        classes = classify(4, 2)
        self.assertEqual(len(classes), 1)
        self.assertEqual(classes[0].name, "cfg_1971")
        self.assertEqual(classes[0].fundamental_period, 2)
        self.assertTrue(classes[0].hs_form)
        self.assertTrue(p_equivalent(classes[0].representative, corpus("s_1971").matrix)[0])
        self.assertTrue(block_report(decompose(classes[0].representative)).ok)


if __name__ == "__main__":
    unittest.main()
