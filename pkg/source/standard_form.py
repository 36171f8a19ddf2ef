"""Standard forms S(P) of kappa-regular C4-free graphs on kappa^2 + 1 vertices.

With respect to a centre v0 of radius 2 that lies in no triangle, its
neighbours v1, ..., v_kappa and the kappa - 1 further neighbours v_i1, ... of
each v_i, the adjacency matrix reads::

    S(P) = | 0     1_k   0   |
           | 1_k^T 0     K   |        K = I_kappa (x) 1_(kappa-1)
           | 0     K^T   P   |

P is the adjacency matrix among the second neighbourhood, viewed as a
kappa x kappa grid of (kappa-1) x (kappa-1) blocks. ``decompose`` and
``to_hs_form`` return the labelling with the lexicographically smallest
row-major bit string, so p-equivalent inputs give identical outputs.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterator
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np

from .equivalence import Permutation
from .equivalence import conjugate
from .errors import BadP
from .errors import DigonError
from .errors import NoCentre
from .errors import NotAdjacency
from .errors import NotHS
from .matrices import BinMatrix
from .matrices import as_binary
from .matrices import is_binary
from .matrices import is_j2_free
from .matrices import row_col_sums

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StandardForm:
    """S(P) together with the relabelling that produced it, when known.

    ``witness`` maps the decomposed input onto ``assembled``:
    conjugate(input, witness) == assembled.
    """

    kappa: int
    P: BinMatrix
    assembled: BinMatrix
    witness: Optional[Permutation] = None

    @property
    def block_size(self) -> int:
        return self.kappa - 1

    def block(self, i: int, j: int) -> BinMatrix:
        """Block P_ij, counting from 0."""
        b = self.block_size
        return self.P[i * b:(i + 1) * b, j * b:(j + 1) * b]

    def blocks(self) -> Iterator[Tuple[int, int, BinMatrix]]:
        for i in range(self.kappa):
            for j in range(self.kappa):
                yield i, j, self.block(i, j)


@dataclass(frozen=True)
class BlockReport:
    """Block constraints of a standard form of a solution.

    ``partial_permutation``: every block has at most one 1 per row and column.
    ``zero_block_rule``: next to a zero block, the other blocks of its block
    row and block column are permutation matrices.
    """

    partial_permutation: bool
    zero_block_rule: bool
    zero_blocks: List[Tuple[int, int]]

    @property
    def ok(self) -> bool:
        return self.partial_permutation and self.zero_block_rule


def _frame(kappa: int) -> BinMatrix:
    """S(0): the standard form with an all-zero P."""
    n = kappa * kappa + 1
    b = kappa - 1
    S = np.zeros((n, n), dtype=np.int64)
    S[0, 1:kappa + 1] = 1
    S[1:kappa + 1, 0] = 1
    K = np.kron(np.eye(kappa, dtype=np.int64), np.ones((1, b), dtype=np.int64))
    S[1:kappa + 1, kappa + 1:] = K
    S[kappa + 1:, 1:kappa + 1] = K.T
    return S


def assemble(P: BinMatrix, kappa: int) -> StandardForm:
    """Build S(P).

    Args:
        P: Symmetric (0,1)-matrix of order kappa^2 - kappa with zero diagonal
            and all row sums kappa - 1.
        kappa: At least 2.

    Raises:
        BadP: ``P`` does not satisfy the preconditions.
    """
    if kappa < 2:
        raise BadP(f"kappa must be at least 2, got {kappa}")
    P = np.array(P, dtype=np.int64)
    m = kappa * kappa - kappa
    if P.shape != (m, m):
        raise BadP(f"P must have order {m} for kappa = {kappa}, got shape {P.shape}")
    if not is_binary(P):
        raise BadP("P must be a (0,1)-matrix")
    if not np.array_equal(P, P.T):
        raise BadP("P must be symmetric")
    if np.any(np.diag(P)):
        raise BadP("P must have a zero diagonal")
    if row_col_sums(P)[2] != kappa - 1:
        raise BadP(f"every row of P must sum to {kappa - 1}")
    S = _frame(kappa)
    S[kappa + 1:, kappa + 1:] = P
    P.setflags(write=False)
    S.setflags(write=False)
    return StandardForm(kappa=kappa, P=P, assembled=S)


def _kappa_of_order(n: int) -> Optional[int]:
    kappa = math.isqrt(n - 1)
    return kappa if kappa >= 2 and kappa * kappa + 1 == n else None


def _check_candidate_graph(A: BinMatrix) -> int:
    """Validate a kappa-regular C4-free adjacency matrix on kappa^2 + 1 vertices; return kappa."""
    if not np.array_equal(A, A.T) or np.any(np.diag(A)):
        raise NotAdjacency("expected a symmetric matrix with zero diagonal")
    kappa = row_col_sums(A)[2]
    if kappa is None or kappa < 2 or A.shape[0] != kappa * kappa + 1:
        raise NotAdjacency(f"expected a kappa-regular graph on kappa^2 + 1 vertices, got order {A.shape[0]}")
    if not is_j2_free(A):
        raise DigonError("the graph contains a 4-cycle")
    return kappa


def _families(A: BinMatrix, v0: int) -> Optional[List[List[int]]]:
    """The neighbours v_i of ``v0`` and, for each, its other neighbours v_ij.

    Returns None unless the families are disjoint, avoid v0 and its
    neighbours, and cover the whole vertex set.
    """
    n = A.shape[0]
    heads = np.flatnonzero(A[v0]).tolist()
    families = []
    seen = {v0, *heads}
    for head in heads:
        family = [w for w in np.flatnonzero(A[head]).tolist() if w != v0]
        if seen.intersection(family):
            return None
        seen.update(family)
        families.append(family)
    if len(seen) != n:
        return None
    return [[head] + family for head, family in zip(heads, families)]


def _lexmin(A: BinMatrix, layouts: List[List[int]]) -> Tuple[bytes, List[int]]:
    """The layout (second-neighbourhood order) whose P has the smallest bit string."""
    orders = np.array(layouts, dtype=np.intp)
    P = A[orders[:, :, None], orders[:, None, :]]
    packed = np.packbits(P.reshape(len(layouts), -1).astype(np.uint8), axis=1)
    best = min(range(len(layouts)), key=lambda r: packed[r].tobytes())
    return packed[best].tobytes(), layouts[best]


def _form_from_order(A: BinMatrix, kappa: int, order: List[int]) -> StandardForm:
    inverse = [0] * len(order)
    for position, v in enumerate(order):
        inverse[v] = position
    witness = Permutation(inverse)
    assembled = conjugate(A, witness)
    form = assemble(assembled[kappa + 1:, kappa + 1:], kappa)
    if not np.array_equal(form.assembled, assembled):
        raise AssertionError("relabelled matrix does not have the standard shape")
    return StandardForm(kappa=kappa, P=form.P, assembled=form.assembled, witness=witness)


def triangle_free_centres(A: BinMatrix) -> List[int]:
    """Vertices of radius at most 2 that lie in no triangle."""
    squared = A @ A
    reach = (A + squared + np.eye(A.shape[0], dtype=np.int64)) > 0
    return [
        v for v in range(A.shape[0])
        if not np.any(squared[v] * A[v]) and bool(np.all(reach[v]))
    ]


def decompose(A: BinMatrix) -> StandardForm:
    """Relabel a kappa-regular C4-free graph on kappa^2 + 1 vertices into standard form.

    Every triangle-free centre of radius 2 and every ordering of the
    neighbours and of each family is tried; the smallest bit string wins.

    Raises:
        NoCentre: No vertex is a triangle-free centre of radius 2.
    """
    A = as_binary(A)
    kappa = _check_candidate_graph(A)
    best_key, best_order = None, None
    for v0 in triangle_free_centres(A):
        families = _families(A, v0)
        # families overlap or miss a vertex
        if families is None:
            continue
        for family_order in itertools.permutations(families):
            # heads stay first in each family, their members are permuted
            inner = [list(itertools.permutations(family[1:])) for family in family_order]
            layouts = [list(itertools.chain.from_iterable(choice)) for choice in itertools.product(*inner)]
            key, layout = _lexmin(A, layouts)
            if best_key is None or key < best_key:
                best_key = key
                best_order = [v0] + [family[0] for family in family_order] + layout
    if best_order is None:
        raise NoCentre("no vertex is a centre with radius 2 outside every triangle")
    return _form_from_order(A, kappa, best_order)


def to_hs_form(S: StandardForm) -> StandardForm:
    """Relabel a standard form into the smallest Hoffman-Singleton form.

    The first family is one whose block P_11 is zero; the other families are
    ordered so that v_1j is adjacent to v_ij, which makes P_1i the identity.

    Raises:
        NotHS: No labelling has all diagonal blocks zero and identity blocks
            in the first block row.
    """
    A = np.asarray(S.assembled)
    kappa = S.kappa
    layouts = {}
    for v0 in triangle_free_centres(A):
        families = _families(A, v0)
        if families is None:
            continue
        members = [family[1:] for family in families]
        if any(np.any(A[np.ix_(f, f)]) for f in members):
            continue
        for first in range(kappa):
            others = [i for i in range(kappa) if i != first]
            for first_order in itertools.permutations(members[first]):
                matched = _match_families(A, first_order, [members[i] for i in others])
                if matched is None:
                    continue
                for other_order in itertools.permutations(range(kappa - 1)):
                    layout = list(first_order)
                    heads = [families[first][0]]
                    for k in other_order:
                        layout.extend(matched[k])
                        heads.append(families[others[k]][0])
                    layouts[tuple([v0] + heads + layout)] = layout
    if not layouts:
        raise NotHS("no diagonal-zero labelling with identity blocks in the first block row exists")
    orders = list(layouts)
    key, layout = _lexmin(A, [layouts[order] for order in orders])
    order = next(order for order in orders if layouts[order] == layout)
    form = _form_from_order(A, kappa, list(order))
    if S.witness is not None:
        form = StandardForm(form.kappa, form.P, form.assembled, form.witness.compose(S.witness))
    return form


def _match_families(A: BinMatrix, first_order, families: List[List[int]]) -> Optional[List[List[int]]]:
    """Order each family so its j-th member is adjacent to ``first_order[j]``."""
    matched = []
    for family in families:
        ordered = []
        for v in first_order:
            partners = [w for w in family if A[v, w]]
            if len(partners) != 1:
                return None
            ordered.append(partners[0])
        if len(set(ordered)) != len(family):
            return None
        matched.append(ordered)
    return matched


def is_hs_form(A: BinMatrix) -> bool:
    """Check the block pattern of a Hoffman-Singleton form, nothing else."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or not is_binary(A):
        return False
    kappa = _kappa_of_order(A.shape[0])
    if kappa is None:
        return False
    frame = _frame(kappa)
    top = kappa + 1
    if not np.array_equal(A[:top], frame[:top]) or not np.array_equal(A[:, :top], frame[:, :top]):
        return False
    P = A[top:, top:]
    if not np.array_equal(P, P.T):
        return False
    b = kappa - 1
    identity = np.eye(b, dtype=A.dtype)
    for i in range(kappa):
        if np.any(P[i * b:(i + 1) * b, i * b:(i + 1) * b]):
            return False
        if i and not np.array_equal(P[0:b, i * b:(i + 1) * b], identity):
            return False
    return True


def _is_partial_permutation(block: BinMatrix) -> bool:
    return bool(np.all(block.sum(axis=0) <= 1) and np.all(block.sum(axis=1) <= 1))


def _is_permutation(block: BinMatrix) -> bool:
    return bool(np.all(block.sum(axis=0) == 1) and np.all(block.sum(axis=1) == 1))


def block_report(S: StandardForm) -> BlockReport:
    """Check the partial-permutation and zero-block rules on every block of P."""
    partial = all(_is_partial_permutation(block) for _, _, block in S.blocks())
    zero_blocks = [(i, j) for i, j, block in S.blocks() if not np.any(block)]
    rule = True
    for i, j in zero_blocks:
        row = [S.block(i, k) for k in range(S.kappa) if k != j]
        column = [S.block(k, j) for k in range(S.kappa) if k != i]
        if not all(_is_permutation(block) for block in row + column):
            rule = False
    return BlockReport(partial_permutation=partial, zero_block_rule=rule, zero_blocks=zero_blocks)
