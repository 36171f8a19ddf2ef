import unittest

import numpy as np

from source.corpus import corpus
from source.corpus import corpus_names
from source.equivalence import Permutation
from source.equivalence import brute_force_p_equivalent
from source.equivalence import canonical_form
from source.equivalence import canonical_key
from source.equivalence import conjugate
from source.equivalence import p_equivalent
from source.equivalence import permutation_matrix
from source.errors import OrderMismatch
from source.patterns import get_random_d_matrix


class TestPermutation(unittest.TestCase):
    def test_cycles(self):
        pi = Permutation([1, 2, 0, 4, 3, 5])
        self.assertEqual(pi.cycles(), [[0, 1, 2], [3, 4]])
        self.assertEqual(str(pi), "(0 1 2)(3 4)")
        self.assertEqual(str(Permutation.identity(3)), "()")

    def test_group_laws(self):
        rng = np.random.RandomState(3)
        for _ in range(20):
            pi = Permutation.random(7, rng)
            sigma = Permutation.random(7, rng)
            self.assertTrue(pi.inverse().compose(pi).is_identity())
            self.assertEqual(pi.compose(sigma)(4), pi(sigma(4)))

    def test_not_a_permutation(self):
        with self.assertRaises(ValueError):
            Permutation([0, 0, 1])

    def test_orders(self):
        with self.assertRaises(OrderMismatch):
            Permutation.identity(3).compose(Permutation.identity(4))
        with self.assertRaises(OrderMismatch):
            conjugate(np.eye(3, dtype=np.int64), Permutation.identity(4))


class TestConjugate(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.RandomState(11)
        self.A = get_random_d_matrix(7, 3, seed=5)

    def test_convention(self):
        pi = Permutation.random(7, self.rng)
        B = conjugate(self.A, pi)
        for i in range(7):
            for j in range(7):
                self.assertEqual(B[pi(i), pi(j)], self.A[i, j])

    def test_permutation_matrix(self):
        pi = Permutation.random(7, self.rng)
        S = permutation_matrix(pi)
        self.assertTrue(np.array_equal(conjugate(self.A, pi), S.T @ self.A @ S))

    def test_composition(self):
        sigma = Permutation.random(7, self.rng)
        tau = Permutation.random(7, self.rng)
        twice = conjugate(conjugate(self.A, sigma), tau)
        self.assertTrue(np.array_equal(twice, conjugate(self.A, tau.compose(sigma))))


class TestCanonicalForm(unittest.TestCase):
    def test_witness(self):
        for name in corpus_names():
            A = corpus(name).matrix
            certificate = canonical_form(A)
            self.assertTrue(np.array_equal(conjugate(A, certificate.witness), certificate.canonical_matrix))

    def test_invariant_under_conjugation(self):
        rng = np.random.RandomState(2)
        for name in corpus_names():
            A = corpus(name).matrix
            key = canonical_key(A)
            for _ in range(10):
                B = conjugate(A, Permutation.random(A.shape[0], rng))
                self.assertEqual(canonical_key(B), key, name)

    def test_idempotent(self):
        certificate = canonical_form(corpus("a2_t2").matrix)
        again = canonical_form(certificate.canonical_matrix)
        self.assertTrue(np.array_equal(again.canonical_matrix, certificate.canonical_matrix))

    def test_asymmetric(self):
        A = get_random_d_matrix(6, 2, seed=9)
        self.assertEqual(canonical_key(A), canonical_key(conjugate(A, Permutation([5, 4, 3, 2, 1, 0]))))
        self.assertEqual(canonical_key(A.T), canonical_key(conjugate(A.T, Permutation([1, 2, 3, 4, 5, 0]))))


class TestPEquivalence(unittest.TestCase):
    def test_witness_is_verified(self):
        rng = np.random.RandomState(4)
        A = corpus("petersen_hs").matrix
        B = conjugate(A, Permutation.random(10, rng))
        equivalent, witness = p_equivalent(A, B)
        self.assertTrue(equivalent)
        self.assertTrue(np.array_equal(conjugate(A, witness), B))

    def test_distinct_graphs(self):
        self.assertEqual(p_equivalent(corpus("petersen_hs").matrix, corpus("a2_t2").matrix), (False, None))
        self.assertFalse(p_equivalent(corpus("a1_t1").matrix, corpus("a2_t2").matrix)[0])
        self.assertFalse(p_equivalent(corpus("c5_hs").matrix, corpus("a2_t2").matrix)[0])

    def test_brute_force_agrees(self):
        rng = np.random.RandomState(8)
        for case in range(60):
            n = int(rng.randint(2, 7))
            kappa = int(rng.randint(0, n + 1))
            A = get_random_d_matrix(n, kappa, seed=int(rng.randint(10 ** 6)))
            if case % 2:
                B = conjugate(A, Permutation.random(n, rng))
            else:
                B = get_random_d_matrix(n, kappa, seed=int(rng.randint(10 ** 6)))
            expected, witness = brute_force_p_equivalent(A, B)
            self.assertEqual(p_equivalent(A, B)[0], expected)
            if expected:
                self.assertTrue(np.array_equal(conjugate(A, witness), B))

    def test_symmetric_and_transitive(self):
        rng = np.random.RandomState(12)

        def next_matrix(previous, n, kappa):
            if rng.randint(2):
                return conjugate(previous, Permutation.random(n, rng))
            return get_random_d_matrix(n, kappa, seed=int(rng.randint(10 ** 6)))

        chained = 0
        for _ in range(80):
            n = int(rng.randint(3, 9))
            kappa = int(rng.randint(1, n))
            A = get_random_d_matrix(n, kappa, seed=int(rng.randint(10 ** 6)))
            B = next_matrix(A, n, kappa)
            C = next_matrix(B, n, kappa)
            ab, bc, ac = p_equivalent(A, B)[0], p_equivalent(B, C)[0], p_equivalent(A, C)[0]
            self.assertEqual(ab, p_equivalent(B, A)[0])
            self.assertEqual(bc, p_equivalent(C, B)[0])
            if ab and bc:
                chained += 1
                self.assertTrue(ac)
        self.assertGreater(chained, 0)

    def test_brute_force_limit(self):
        with self.assertRaises(ValueError):
            brute_force_p_equivalent(np.eye(9, dtype=np.int64), np.eye(9, dtype=np.int64))


if __name__ == "__main__":
    unittest.main()
