import unittest

import numpy as np

from source import classification
from source.corpus import corpus
from source.equivalence import Permutation
from source.equivalence import conjugate
from source.equivalence import p_equivalent
from source.errors import BadP
from source.errors import DigonError
from source.errors import NoCentre
from source.errors import NotAdjacency
from source.errors import NotHS
from source.standard_form import assemble
from source.standard_form import block_report
from source.standard_form import decompose
from source.standard_form import is_hs_form
from source.standard_form import to_hs_form
from source.standard_form import triangle_free_centres

# 4-regular, no 4-cycle, and every vertex lies on a triangle
TRIANGLED_17 = [
    (0, 3), (0, 4), (0, 8), (0, 11), (1, 9), (1, 11), (1, 14), (1, 16), (2, 7), (2, 11), (2, 13), (2, 15),
    (3, 5), (3, 11), (3, 12), (4, 8), (4, 13), (4, 16), (5, 6), (5, 15), (5, 16), (6, 8), (6, 14), (6, 15),
    (7, 9), (7, 10), (7, 15), (8, 10), (9, 10), (9, 16), (10, 12), (12, 13), (12, 14), (13, 14),
]


def _graph(edges, n=17):
    A = np.zeros((n, n), dtype=np.int64)
    for u, v in edges:
        A[u, v] = A[v, u] = 1
    return A


class TestAssemble(unittest.TestCase):
    def test_configuration_1971(self):
        form = assemble(corpus("p_1971").matrix, 4)
        self.assertTrue(np.array_equal(form.assembled, corpus("s_1971").matrix))
        self.assertEqual(form.block_size, 3)
        self.assertEqual(len(list(form.blocks())), 16)
        self.assertTrue(np.array_equal(form.block(0, 1), np.eye(3, dtype=np.int64)))

    def test_five_cycle(self):
        form = assemble([[0, 1], [1, 0]], 2)
        self.assertTrue(np.array_equal(form.assembled, corpus("c5_hs").matrix))

    def test_bad_p(self):
        P = np.array(corpus("p_1971").matrix)
        cases = [
            (P, 3),
            (P[:11, :11], 4),
            (np.where(P == 1, 2, 0), 4),
            (np.triu(P), 4),
            (P + np.eye(12, dtype=np.int64), 4),
            (np.zeros((12, 12), dtype=np.int64), 4),
            ([[0]], 1),
        ]
        for matrix, kappa in cases:
            with self.assertRaises(BadP):
                assemble(matrix, kappa)


class TestDecompose(unittest.TestCase):
    def test_witness(self):
        A = corpus("a2_t2").matrix
        form = decompose(A)
        self.assertTrue(np.array_equal(conjugate(A, form.witness), form.assembled))

    def test_independent_of_labelling(self):
        rng = np.random.RandomState(5)
        A = corpus("petersen_hs").matrix
        reference = decompose(A).assembled
        for _ in range(10):
            B = conjugate(A, Permutation.random(10, rng))
            self.assertTrue(np.array_equal(decompose(B).assembled, reference))

    def test_hs_form_of_petersen(self):
        rng = np.random.RandomState(6)
        A = corpus("petersen_hs").matrix
        reference = to_hs_form(decompose(A))
        self.assertTrue(is_hs_form(reference.assembled))
        self.assertTrue(p_equivalent(reference.assembled, A)[0])
        B = conjugate(A, Permutation.random(10, rng))
        form = to_hs_form(decompose(B))
        self.assertTrue(np.array_equal(form.assembled, reference.assembled))
        self.assertTrue(np.array_equal(conjugate(B, form.witness), form.assembled))

    def test_t2_has_no_hs_form(self):
        A = corpus("a2_t2").matrix
        self.assertEqual(triangle_free_centres(A), [0])
        with self.assertRaises(NotHS):
            to_hs_form(decompose(A))

    def test_rejects(self):
        for A in (np.ones((5, 5), dtype=np.int64), np.zeros((10, 10), dtype=np.int64), np.eye(4, dtype=np.int64)):
            with self.assertRaises(NotAdjacency):
                decompose(A)

    def test_four_cycle(self):
        # the prism over C5
        A = np.zeros((10, 10), dtype=np.int64)
        for i in range(5):
            for u, v in ((i, (i + 1) % 5), (5 + i, 5 + (i + 1) % 5), (i, 5 + i)):
                A[u, v] = A[v, u] = 1
        with self.assertRaises(DigonError):
            decompose(A)

    def test_every_vertex_in_a_triangle(self):
        A = _graph(TRIANGLED_17)
        self.assertTrue(np.array_equal(A.sum(axis=1), np.full(17, 4)))
        self.assertEqual(triangle_free_centres(A), [])
        with self.assertRaises(NoCentre):
            decompose(A)
        representative, hs_form = classification._representative(A)
        self.assertTrue(np.array_equal(representative, A))
        self.assertFalse(hs_form)


class TestHSForm(unittest.TestCase):
    def test_corpus(self):
        self.assertTrue(is_hs_form(corpus("c5_hs").matrix))
        self.assertTrue(is_hs_form(corpus("petersen_hs").matrix))
        self.assertTrue(is_hs_form(corpus("s_1971").matrix))
        self.assertFalse(is_hs_form(corpus("a2_t2").matrix))
        self.assertFalse(is_hs_form(corpus("a1_t1").matrix))
        self.assertFalse(is_hs_form(np.eye(3, dtype=np.int64)))

    def test_1971_is_its_own_hs_form(self):
        S = corpus("s_1971").matrix
        form = to_hs_form(decompose(S))
        self.assertTrue(is_hs_form(form.assembled))
        self.assertTrue(p_equivalent(form.assembled, S)[0])


class TestBlockReport(unittest.TestCase):
    def test_solutions(self):
        for name in ("petersen_hs", "a2_t2", "s_1971"):
            report = block_report(decompose(corpus(name).matrix))
            self.assertTrue(report.ok, name)

    def test_hs_forms_have_zero_diagonal_blocks(self):
        report = block_report(assemble(corpus("p_1971").matrix, 4))
        self.assertTrue({(0, 0), (1, 1), (2, 2), (3, 3)}.issubset(report.zero_blocks))
        self.assertEqual(block_report(decompose(corpus("a2_t2").matrix)).zero_blocks, [])


if __name__ == "__main__":
    unittest.main()
