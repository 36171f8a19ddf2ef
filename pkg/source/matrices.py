"""Exact integer matrices, the operator Theta and class membership.

Matrices are plain ``numpy`` arrays of dtype ``int64``. A (0,1)-matrix is an
integer array whose entries are all 0 or 1; ``as_binary`` checks that and
``row_bitsets`` gives the set-of-columns view (one Python int per row) used by
the combinatorial code.
"""
import logging
from dataclasses import dataclass
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np

from .errors import NonConstantSums
from .errors import NotBinary

logger = logging.getLogger(__name__)

IntMatrix = np.ndarray
BinMatrix = np.ndarray


@dataclass(frozen=True)
class ClassMembership:
    """Membership flags of a square integer matrix.

    ``kappa`` is the common row/column sum when there is one, otherwise None.
    """

    is_Z_kappa: bool
    kappa: Optional[int]
    is_D_kappa: bool
    is_symmetric: bool
    zero_diagonal: bool
    j2_free: bool

    @property
    def lsz(self) -> bool:
        """True when the conditions (L), (S) and (Z) all hold."""
        return self.j2_free and self.is_symmetric and self.zero_diagonal

    def as_dict(self) -> dict:
        return {
            "is_Z_kappa": self.is_Z_kappa,
            "kappa": self.kappa,
            "is_D_kappa": self.is_D_kappa,
            "is_symmetric": self.is_symmetric,
            "zero_diagonal": self.zero_diagonal,
            "j2_free": self.j2_free,
        }


def as_int_matrix(A) -> IntMatrix:
    """Return ``A`` as a square int64 array.

    Args:
        A: Anything ``numpy.asarray`` accepts, e.g. a nested list.

    Returns:
        A new square array of dtype int64.
    """
    M = np.array(A, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {M.shape}")
    return M


def as_binary(A) -> BinMatrix:
    """Return ``A`` as a (0,1)-matrix, failing loudly on any other entry."""
    M = as_int_matrix(A)
    bad = np.argwhere((M != 0) & (M != 1))
    if len(bad):
        i, j = bad[0]
        raise NotBinary(f"entry ({i},{j}) is {M[i, j]}, expected 0 or 1")
    return M


def is_binary(A: IntMatrix) -> bool:
    return bool(np.all((A == 0) | (A == 1)))


def row_bitsets(A: BinMatrix) -> List[int]:
    """Encode each row as an int whose bit ``j`` is set iff ``A[i][j] == 1``."""
    return [sum(1 << int(j) for j in np.flatnonzero(row == 1)) for row in A]


def from_bitsets(rows: List[int], n: int) -> BinMatrix:
    M = np.zeros((n, n), dtype=np.int64)
    for i, bits in enumerate(rows):
        for j in range(n):
            if bits >> j & 1:
                M[i, j] = 1
    return M


def popcount(x: int) -> int:
    return bin(x).count("1")


def row_col_sums(A: IntMatrix) -> Tuple[List[int], List[int], Optional[int]]:
    """Row sums, column sums and the common value when all 2n sums coincide.

    Args:
        A: A square integer matrix.

    Returns:
        rows: The n row sums.
        cols: The n column sums.
        kappa: The common value of all sums, or None.
    """
    A = as_int_matrix(A)
    rows = A.sum(axis=1).tolist()
    cols = A.sum(axis=0).tolist()
    values = set(rows) | set(cols)
    kappa = values.pop() if len(values) == 1 else None
    return rows, cols, kappa


def is_j2_free(A: BinMatrix) -> bool:
    """True iff no two rows share two or more columns holding a 1."""
    rows = row_bitsets(as_int_matrix(A))
    for i in range(len(rows)):
        for k in range(i + 1, len(rows)):
            if popcount(rows[i] & rows[k]) >= 2:
                return False
    return True


def delta(n: int, kappa: int) -> int:
    """The deficiency n - kappa^2 + kappa - 1."""
    return n - kappa * kappa + kappa - 1


def delta_iterate(n: int, kappa: int, m: int) -> int:
    """delta applied ``m`` times at fixed ``n``."""
    for _ in range(m):
        kappa = delta(n, kappa)
    return kappa


def constant_sum(A: IntMatrix) -> int:
    """The common row/column sum of ``A``; NonConstantSums if there is none."""
    rows, cols, kappa = row_col_sums(A)
    if kappa is None:
        raise NonConstantSums(f"row sums {rows} and column sums {cols} are not all equal")
    return kappa


def theta(A: IntMatrix) -> IntMatrix:
    """Apply Theta(A) = (kappa - 1) I + J - A A^T.

    Args:
        A: A square integer matrix with all row and column sums equal to kappa.

    Returns:
        A new symmetric matrix whose row and column sums equal delta(kappa).
    """
    A = as_int_matrix(A)
    kappa = constant_sum(A)
    n = A.shape[0]
    return (kappa - 1) * np.eye(n, dtype=np.int64) + np.ones((n, n), dtype=np.int64) - A @ A.T


def theta_iterate(A: IntMatrix, m: int) -> IntMatrix:
    """The m-fold composition of Theta; ``m == 0`` returns a copy of ``A``."""
    if m < 0:
        raise ValueError("m must be non-negative")
    A = as_int_matrix(A)
    for _ in range(m):
        A = theta(A)
    return A


def is_in_D(A: IntMatrix, kappa: int = None) -> bool:
    """Membership of the class of (0,1)-matrices with constant sums (kappa)."""
    if not is_binary(A):
        return False
    common = row_col_sums(A)[2]
    if common is None:
        return False
    return kappa is None or common == kappa


def classify_membership(A: IntMatrix) -> ClassMembership:
    """Compute every class predicate of ``A`` exactly."""
    A = as_int_matrix(A)
    kappa = row_col_sums(A)[2]
    binary = is_binary(A)
    ones = (A == 1).astype(np.int64)
    return ClassMembership(
        is_Z_kappa=kappa is not None,
        kappa=kappa,
        is_D_kappa=kappa is not None and binary,
        is_symmetric=bool(np.array_equal(A, A.T)),
        zero_diagonal=bool(np.all(np.diag(A) == 0)),
        j2_free=is_j2_free(ones),
    )


def to_bitstring(A: BinMatrix) -> bytes:
    """Row-major bit string of a (0,1)-matrix, comparable lexicographically."""
    return np.packbits(np.asarray(A, dtype=np.uint8).ravel()).tobytes()
