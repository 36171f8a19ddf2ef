import tempfile
import unittest
from pathlib import Path

import numpy as np

from source.errors import MatrixFormatError
from source.matrix_io import format_matrix
from source.matrix_io import parse_matrix
from source.matrix_io import read_matrix
from source.matrix_io import write_matrix


class TestParse(unittest.TestCase):
    def test_document(self):
        document = parse_matrix("# a 4-cycle\n# labels: a b c d\n4\n0 1 0 1\n1 0 1 0\n0 1 0 1\n1 0 1 0\n")
        self.assertEqual(document.labels, ["a", "b", "c", "d"])
        self.assertEqual(document.comments, ["a 4-cycle"])
        self.assertEqual(document.matrix.shape, (4, 4))
        self.assertEqual(int(document.matrix.sum()), 8)

    def test_integer_entries(self):
        document = parse_matrix("2\n-1 2\n2 -1")
        self.assertTrue(np.array_equal(document.matrix, [[-1, 2], [2, -1]]))
        with self.assertRaises(MatrixFormatError):
            parse_matrix("2\n-1 2\n2 -1", binary=True)

    def test_trailing_blank_line(self):
        self.assertEqual(parse_matrix("2\n0 1\n1 0\n\n").matrix.shape, (2, 2))

    def test_rejects(self):
        bad = [
            "",
            "# only a comment\n",
            "x\n0\n",
            "0\n",
            "2\n0 1\n",
            "2\n0 1 0\n1 0 1\n",
            "2\n0  1\n1 0\n",
            "2\n0 1\n1 a\n",
            "# labels: a b c\n2\n0 1\n1 0\n",
        ]
        for text in bad:
            with self.assertRaises(MatrixFormatError, msg=repr(text)):
                parse_matrix(text)


class TestWrite(unittest.TestCase):
    def test_format(self):
        text = format_matrix([[0, 1], [1, 0]], labels=["a", "b"], comments=["swap"])
        self.assertEqual(text, "# swap\n# labels: a b\n2\n0 1\n1 0\n")

    def test_round_trip(self):
        A = np.array([[1, -2, 3], [0, 0, 0], [4, 5, -6]])
        with tempfile.TemporaryDirectory() as tmp:
            path = write_matrix(Path(tmp) / "sub" / "a.mat", A, labels=["x", "y", "z"], comments=["demo"])
            document = read_matrix(path)
            self.assertTrue(np.array_equal(document.matrix, A))
            self.assertEqual(document.labels, ["x", "y", "z"])
            self.assertEqual(format_matrix(document.matrix, document.labels, document.comments), path.read_text())

    def test_missing_file(self):
        with self.assertRaises(MatrixFormatError):
            read_matrix("/nonexistent/matrix.mat")


if __name__ == "__main__":
    unittest.main()
