"""Permutations, conjugation and p-equivalence of square matrices.

Conjugating a matrix ``A`` by a permutation ``pi`` relabels vertex ``v`` as
``pi(v)``::

    conjugate(A, pi)[i][j] == A[pi^-1(i)][pi^-1(j)]

which is S^-1 A S for the permutation matrix S with S[i][pi(i)] = 1.

``canonical_form`` picks one representative of every conjugation orbit of
(0,1)-matrices: an equitable colour refinement followed by a search over the
individualisation tree, keeping the lexicographically smallest row-major bit
string. Automorphisms found on the way prune children lying in one orbit of
the pointwise stabiliser of the current path. Asymmetric matrices are handled
as digraphs, so out- and in-neighbourhoods refine separately.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from .errors import OrderMismatch
from .matrices import BinMatrix
from .matrices import IntMatrix
from .matrices import as_binary
from .matrices import as_int_matrix
from .matrices import to_bitstring

logger = logging.getLogger(__name__)


class Permutation:
    """A bijection of {0, ..., n-1} given by its images."""

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int]):
        image = tuple(int(i) for i in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a permutation")
        self.image = image

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def random(cls, n: int, rng: np.random.RandomState) -> "Permutation":
        return cls(rng.permutation(n))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def __len__(self) -> int:
        return len(self.image)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, cycle)) + ")" for cycle in cycles)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(inv)

    def compose(self, other: "Permutation") -> "Permutation":
        """``self`` after ``other``: i -> self(other(i))."""
        if self.n != other.n:
            raise OrderMismatch(f"cannot compose permutations of orders {self.n} and {other.n}")
        return Permutation(self.image[j] for j in other.image)

    def cycles(self) -> List[List[int]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = [False] * self.n
        cycles = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.image[i]
            if len(cycle) > 1:
                cycles.append(cycle)
        return cycles

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))


def permutation_matrix(pi: Permutation) -> IntMatrix:
    """The matrix S with S[i][pi(i)] = 1."""
    S = np.zeros((pi.n, pi.n), dtype=np.int64)
    S[np.arange(pi.n), list(pi.image)] = 1
    return S


def conjugate(A: IntMatrix, pi: Permutation) -> IntMatrix:
    """Return S^-1 A S, i.e. the matrix with entry A[pi^-1(i)][pi^-1(j)] at (i, j)."""
    A = as_int_matrix(A)
    if A.shape[0] != pi.n:
        raise OrderMismatch(f"matrix of order {A.shape[0]} and permutation of order {pi.n}")
    inv = list(pi.inverse().image)
    return A[np.ix_(inv, inv)]


@dataclass(frozen=True, eq=False)
class CanonicalCertificate:
    """The canonical representative of a matrix and the permutation reaching it."""

    canonical_matrix: BinMatrix
    witness: Permutation

    @property
    def key(self) -> bytes:
        return to_bitstring(self.canonical_matrix)


def _refine(cells: List[List[int]], out_nbrs: List[List[int]], in_nbrs: List[List[int]]) -> List[List[int]]:
    """Split cells until the ordered partition is equitable.

    Vertices of a cell are separated by the sorted colours of their out- and
    in-neighbours; the sub-cells keep the order of their signatures so the
    result only depends on the structure, never on the vertex names.
    """
    while True:
        colour = {}
        for index, cell in enumerate(cells):
            for v in cell:
                colour[v] = index
        refined = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups = {}
            for v in cell:
                signature = (
                    tuple(sorted(colour[w] for w in out_nbrs[v])),
                    tuple(sorted(colour[w] for w in in_nbrs[v])),
                )
                groups.setdefault(signature, []).append(v)
            for signature in sorted(groups):
                refined.append(groups[signature])
        if len(refined) == len(cells):
            return refined
        cells = refined


def _initial_cells(A: BinMatrix) -> List[List[int]]:
    n = A.shape[0]
    rows = A.sum(axis=1)
    cols = A.sum(axis=0)
    groups = {}
    for v in range(n):
        groups.setdefault((int(rows[v]), int(cols[v]), int(A[v, v])), []).append(v)
    return [groups[key] for key in sorted(groups)]


class _OrbitPartition:
    """Union-find over vertices, merged along automorphism generators."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a: int, b: int):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


class _Canoniser:
    def __init__(self, A: BinMatrix):
        self.A = A
        self.n = A.shape[0]
        self.out_nbrs = [np.flatnonzero(A[v]).tolist() for v in range(self.n)]
        self.in_nbrs = [np.flatnonzero(A[:, v]).tolist() for v in range(self.n)]
        self.best_key = None
        self.best_order = None
        self.automorphisms: List[Tuple[int, ...]] = []
        self.leaves = 0

    def run(self) -> Tuple[bytes, List[int]]:
        cells = _refine(_initial_cells(self.A), self.out_nbrs, self.in_nbrs)
        self._search(cells, [])
        return self.best_key, self.best_order

    def _leaf(self, cells: List[List[int]]):
        self.leaves += 1
        order = [cell[0] for cell in cells]
        key = to_bitstring(self.A[np.ix_(order, order)])
        if self.best_key is None or key < self.best_key:
            self.best_key, self.best_order = key, order
        elif key == self.best_key:
            # vertex best_order[k] -> order[k] preserves the matrix
            gamma = [0] * self.n
            for u, v in zip(self.best_order, order):
                gamma[u] = v
            self.automorphisms.append(tuple(gamma))

    def _search(self, cells: List[List[int]], path: List[int]):
        if len(cells) == self.n:
            self._leaf(cells)
            return
        target = next(index for index, cell in enumerate(cells) if len(cell) > 1)
        explored = []
        for v in sorted(cells[target]):
            if explored and self._same_orbit(path, explored, v):
                continue
            explored.append(v)
            rest = [w for w in cells[target] if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            self._search(_refine(child, self.out_nbrs, self.in_nbrs), path + [v])

    def _same_orbit(self, path: List[int], explored: List[int], v: int) -> bool:
        orbits = _OrbitPartition(self.n)
        for gamma in self.automorphisms:
            if all(gamma[p] == p for p in path):
                for u in range(self.n):
                    orbits.union(u, gamma[u])
        root = orbits.find(v)
        return any(orbits.find(u) == root for u in explored)


def canonical_form(A: BinMatrix) -> CanonicalCertificate:
    """Canonical representative of the conjugation orbit of ``A``.

    Args:
        A: A square (0,1)-matrix, symmetric or not.

    Returns:
        The canonical matrix and a witness ``pi`` with conjugate(A, pi) equal to it.
    """
    A = as_binary(A)
    key, order = _canonical_order(A.tobytes(), A.shape[0])
    image = [0] * len(order)
    for position, v in enumerate(order):
        image[v] = position
    witness = Permutation(image)
    canonical = A[np.ix_(order, order)]
    canonical.setflags(write=False)
    return CanonicalCertificate(canonical_matrix=canonical, witness=witness)


@lru_cache(maxsize=4096)
def _canonical_order(data: bytes, n: int) -> Tuple[bytes, Tuple[int, ...]]:
    A = np.frombuffer(data, dtype=np.int64).reshape(n, n)
    canoniser = _Canoniser(A)
    key, order = canoniser.run()
    logger.debug("canonised order %d matrix with %d leaves", n, canoniser.leaves)
    return key, tuple(order)


def canonical_key(A: BinMatrix) -> bytes:
    """Bit string of the canonical matrix; equal keys mean p-equivalent matrices."""
    return canonical_form(A).key


def p_equivalent(A: BinMatrix, B: BinMatrix) -> Tuple[bool, Optional[Permutation]]:
    """Decide whether B = conjugate(A, pi) for some pi.

    Returns:
        A flag and, when it is set, a verified witness ``pi``.
    """
    A = as_binary(A)
    B = as_binary(B)
    if A.shape != B.shape:
        return False, None
    cert_a = canonical_form(A)
    cert_b = canonical_form(B)
    if not np.array_equal(cert_a.canonical_matrix, cert_b.canonical_matrix):
        return False, None
    witness = cert_b.witness.inverse().compose(cert_a.witness)
    if not np.array_equal(conjugate(A, witness), B):
        raise AssertionError("canonical witness failed to verify")
    return True, witness


def brute_force_p_equivalent(A: BinMatrix, B: BinMatrix) -> Tuple[bool, Optional[Permutation]]:
    """Decide p-equivalence by trying all n! permutations (n <= 8)."""
    A = as_int_matrix(A)
    B = as_int_matrix(B)
    if A.shape != B.shape:
        return False, None
    n = A.shape[0]
    if n > 8:
        raise ValueError("the exhaustive scan is limited to order 8")
    inverses = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    images = A[inverses[:, :, None], inverses[:, None, :]]
    hits = np.flatnonzero(np.all(images == B, axis=(1, 2)))
    if not len(hits):
        return False, None
    return True, Permutation(inverses[hits[0]]).inverse()
