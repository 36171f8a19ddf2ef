import unittest

import numpy as np

from source.corpus import corpus
from source.equivalence import Permutation
from source.equivalence import conjugate
from source.equivalence import p_equivalent
from source.errors import NonConstantSums
from source.errors import StepLimit
from source.matrices import is_in_D
from source.matrices import theta
from source.patterns import get_random_d_matrix
from source.solver import EXCEPTION
from source.solver import FAMILY_MOORE
from source.solver import FAMILY_TWIN
from source.solver import DioSolution
from source.solver import dio_sweep
from source.solver import fundamental_period
from source.solver import is_solution
from source.solver import orbit

K5 = np.ones((5, 5), dtype=np.int64) - np.eye(5, dtype=np.int64)


class TestOrbit(unittest.TestCase):
    def test_fixed_points(self):
        for name in ("c5_hs", "petersen_hs"):
            report = orbit(corpus(name).matrix)
            self.assertEqual((report.period, report.preperiod), (1, 0), name)
            self.assertTrue(report.is_cycle)
            self.assertEqual(report.summary(), "period 1")

    def test_period_three(self):
        report = orbit(corpus("a2_t2").matrix)
        self.assertEqual((report.period, report.preperiod), (3, 0))
        self.assertEqual(report.steps, 3)
        self.assertTrue(np.array_equal(report.iterates[3], report.iterates[0]))
        self.assertFalse(np.array_equal(report.iterates[1], report.iterates[0]))

    def test_counterexample_falls_onto_petersen(self):
        report = orbit(corpus("a1_t1").matrix)
        self.assertEqual((report.period, report.preperiod), (1, 1))
        self.assertFalse(report.is_cycle)
        self.assertEqual(report.summary(), "preperiod 1, period 1")
        self.assertTrue(p_equivalent(report.iterates[1], corpus("petersen_hs").matrix)[0])

    def test_leaves_class(self):
        report = orbit(K5)
        self.assertEqual(report.leaves_class_at, 1)
        self.assertTrue(report.negative_diagonal)
        self.assertIsNone(report.period)
        self.assertEqual(report.summary(), "leaves class at step 1")

    def test_no_return_after_leaving(self):
        rng = np.random.RandomState(9)
        left = 0
        for case in range(60):
            n = int(rng.randint(4, 8))
            A = get_random_d_matrix(n, int(rng.randint(2, n)), seed=case)
            try:
                report = orbit(A, max_steps=12)
            except StepLimit:
                continue
            if report.leaves_class_at is None:
                continue
            left += 1
            self.assertTrue(report.negative_diagonal)
            current = report.iterates[-1]
            # int64 holds three more squarings of entries this small
            for _ in range(3):
                current = theta(current)
                self.assertTrue(np.any(np.diag(current) < 0))
                self.assertFalse(is_in_D(current))
                self.assertFalse(np.array_equal(current, A))
        self.assertGreater(left, 0)

    def test_step_limit(self):
        with self.assertRaises(StepLimit):
            orbit(corpus("a2_t2").matrix, max_steps=2)
        with self.assertRaises(StepLimit):
            orbit(corpus("petersen_hs").matrix, max_steps=0)

    def test_requires_constant_sums(self):
        with self.assertRaises(NonConstantSums):
            orbit([[1, 0], [1, 0]])


class TestSolutions(unittest.TestCase):
    def test_is_solution(self):
        A2 = corpus("a2_t2").matrix
        self.assertTrue(is_solution(A2, 3))
        self.assertFalse(is_solution(A2, 1))
        self.assertTrue(is_solution(A2, 6))
        self.assertFalse(is_solution([[1, 0], [1, 0]], 1))
        self.assertFalse(is_solution([[2, -1], [-1, 2]], 1))
        self.assertFalse(is_solution(corpus("a1_t1").matrix, 1))
        with self.assertRaises(ValueError):
            is_solution(A2, 0)

    def test_invariant_under_relabelling(self):
        rng = np.random.RandomState(10)
        for name, m in (("c5_hs", 1), ("petersen_hs", 1), ("a2_t2", 3), ("s_1971", 2)):
            A = corpus(name).matrix
            for _ in range(5):
                self.assertTrue(is_solution(conjugate(A, Permutation.random(A.shape[0], rng)), m), name)

    def test_fundamental_period(self):
        self.assertEqual(fundamental_period(corpus("s_1971").matrix), 2)
        self.assertEqual(fundamental_period(corpus("a2_t2").matrix), 3)
        self.assertIsNone(fundamental_period(corpus("a1_t1").matrix))
        self.assertIsNone(fundamental_period(K5))


class TestDiophantine(unittest.TestCase):
    def test_families(self):
        sweep = dio_sweep(12, 4, (2, 4))
        self.assertIn(DioSolution(n=10, m=1, kappa=3, family=FAMILY_MOORE), sweep.family_1)
        self.assertIn(DioSolution(n=11, m=2, kappa=4, family=FAMILY_TWIN), sweep.family_2)
        self.assertNotIn((11, 1, 4), [(s.n, s.m, s.kappa) for s in sweep.solutions])
        self.assertTrue(all(s.verify() for s in sweep.solutions))

    def test_full_sweep_has_no_exceptions(self):
        sweep = dio_sweep(200, 8, (-14, 14))
        self.assertEqual(sweep.exceptions, [])
        self.assertTrue(all(s.m % 2 == 0 for s in sweep.family_2))
        frame = sweep.to_frame()
        self.assertEqual(list(frame.columns), ["n", "m", "kappa", "family"])
        self.assertEqual(len(frame), len(sweep.solutions))
        self.assertNotIn(EXCEPTION, set(frame["family"]))

    def test_bounds(self):
        with self.assertRaises(ValueError):
            dio_sweep(0, 8, (1, 2))


if __name__ == "__main__":
    unittest.main()
