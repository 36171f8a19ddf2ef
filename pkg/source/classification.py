"""Exhaustive classification of the solutions of Theta^m(A) = A for kappa <= 4.

Every solution with kappa <= 4 is the adjacency matrix of a kappa-regular
C4-free graph on kappa^2 + 1 vertices with a triangle-free centre of radius 2,
so it has a standard form S(P). The main strategy enumerates the matrices P
row by row; the second strategy enumerates all kappa-regular C4-free graphs
on kappa^2 + 1 vertices directly and serves as an independent cross-check.

Both searches keep the graph as one bitset per vertex and prune with:

* degrees: no vertex exceeds kappa;
* J2-freeness: two vertices never share two neighbours;
* Theta: a vertex keeps at least kappa partners without a common neighbour,
  since those pairs are the edges of Theta(A).

Found graphs are reduced to canonical forms, so the output only depends on the
isomorphism classes met, never on the order of the search or the number of
workers.
"""
import logging
import multiprocessing as mp
import os
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from .corpus import corpus
from .equivalence import canonical_form
from .errors import NoCentre
from .errors import NotHS
from .geometry import Graph
from .geometry import girth
from .geometry import is_terwilliger
from .geometry import triangle_census
from .matrices import BinMatrix
from .matrices import from_bitsets
from .matrices import popcount
from .solver import MAX_PERIOD
from .solver import fundamental_period
from .standard_form import decompose
from .standard_form import to_hs_form

logger = logging.getLogger(__name__)

WORKERS_ENV = "THETA_LAB_WORKERS"
KAPPAS = (2, 3, 4)
ORDERLY_KAPPAS = (2, 3)

_KNOWN = {
    "c5_hs": ["c5"],
    "petersen_hs": ["petersen", "desargues"],
    "a2_t2": ["t2_10_3F"],
    "s_1971": ["cfg_1971"],
}


class Strategy(Enum):
    standard_form = 0
    orderly = 1


@dataclass(eq=False)
class SolutionClass:
    """One p-equivalence class of solutions.

    ``representative`` is the HS-form when the class has one, otherwise the
    lexicographically smallest standard form.
    """

    representative: BinMatrix
    kappa: int
    m: int
    fundamental_period: int
    names: List[str] = field(default_factory=list)
    key: bytes = b""
    hs_form: bool = True

    @property
    def name(self) -> str:
        return self.names[0]


@dataclass(frozen=True)
class _Found:
    key: bytes
    matrix: bytes
    period: Optional[int]


def default_workers() -> int:
    value = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning("ignoring %s=%r, expected an integer", WORKERS_ENV, value)
        return 1


class _Search:
    """Row-by-row backtracking over kappa-regular graphs kept as bitset rows.

    The rows in ``rows`` are completed in order, each by choosing its missing
    partners among the later rows. Vertices a subclass reports in the same
    ``pool`` are interchangeable at that moment, so only the first of them is
    tried at each choice point.
    """

    def __init__(self, kappa: int, n: int, nbrs: List[int], rows: List[int]):
        self.kappa = kappa
        self.n = n
        self.nbrs = list(nbrs)
        self.rows = rows
        self.edges: List[Tuple[int, int]] = []
        self.nodes = 0
        self.found: Dict[bytes, _Found] = {}
        self.stop_at: Optional[int] = None
        self.prefixes: List[List[Tuple[int, int]]] = []

    def allowed(self, r: int, c: int) -> bool:
        return True

    def pool(self, r: int, c: int) -> Optional[int]:
        return None

    def degree(self, v: int) -> int:
        return popcount(self.nbrs[v])

    def can_join(self, r: int, c: int) -> bool:
        nbrs = self.nbrs
        if nbrs[r] >> c & 1 or self.degree(c) >= self.kappa:
            return False
        # a neighbour of c must not meet r, and a neighbour of r must not meet c
        for a, b in ((r, c), (c, r)):
            bits = nbrs[b]
            while bits:
                low = bits & -bits
                if nbrs[a] & nbrs[low.bit_length() - 1]:
                    return False
                bits ^= low
        return True

    def join(self, r: int, c: int):
        self.nbrs[r] |= 1 << c
        self.nbrs[c] |= 1 << r
        self.edges.append((r, c))

    def split(self, r: int, c: int):
        self.nbrs[r] &= ~(1 << c)
        self.nbrs[c] &= ~(1 << r)
        self.edges.pop()

    def theta_feasible(self) -> bool:
        nbrs = self.nbrs
        for u in range(self.n):
            partners = 0
            for w in range(self.n):
                if w != u and not nbrs[u] & nbrs[w]:
                    partners += 1
                    if partners >= self.kappa:
                        break
            else:
                return False
        return True

    def collect_prefixes(self, depth: int) -> List[List[Tuple[int, int]]]:
        """Edge lists completing the first ``depth`` rows; each seeds one task."""
        self.stop_at = depth
        self.prefixes = []
        self._row(0)
        self.stop_at = None
        return self.prefixes

    def run(self, start: int = 0):
        self._row(start)

    def _row(self, index: int):
        self.nodes += 1
        if index == self.stop_at:
            self.prefixes.append(list(self.edges))
            return
        if index == len(self.rows):
            self.leaf()
            return
        r = self.rows[index]
        self._fill(index, r, index + 1, self.kappa - self.degree(r))

    def _fill(self, index: int, r: int, start: int, need: int):
        if need == 0:
            if self.theta_feasible():
                self._row(index + 1)
            return
        # too few columns left for the missing ones
        if len(self.rows) - start < need:
            return
        tried_pools = set()
        for k in range(start, len(self.rows)):
            c = self.rows[k]
            if not self.allowed(r, c):
                continue
            pool = self.pool(r, c)
            # one representative per pool of interchangeable columns
            if pool is not None:
                if pool in tried_pools:
                    continue
                tried_pools.add(pool)
            if not self.can_join(r, c):
                continue
            self.join(r, c)
            self._fill(index, r, k + 1, need - 1)
            self.split(r, c)

    def leaf(self):
        A = from_bitsets(self.nbrs, self.n)
        certificate = canonical_form(A)
        if certificate.key in self.found:
            return
        period = fundamental_period(A, MAX_PERIOD)
        matrix = np.asarray(certificate.canonical_matrix, dtype=np.int64)
        self.found[certificate.key] = _Found(key=certificate.key, matrix=matrix.tobytes(), period=period)
        logger.debug("new class %s, period %s", certificate.key.hex()[:12], period)


class _StandardFormSearch(_Search):
    """Search over P with the frame of S(P) fixed.

    Vertex 0 is the centre, 1..kappa its neighbours (the heads) and family i
    holds the kappa - 1 vertices below head i + 1. Family 0 is relabelled
    first so that its internal edges pair slots (0, 1), (2, 3), ... in that
    order; every other family is then relabelled after its partners in family
    0, which puts the blocks P_0k inside the identity. Later, vertices of one
    family that only see their head are interchangeable.
    """

    def __init__(self, kappa: int):
        n = kappa * kappa + 1
        b = kappa - 1
        nbrs = [0] * n
        for i in range(1, kappa + 1):
            nbrs[0] |= 1 << i
            nbrs[i] |= 1
            for j in range(b):
                v = kappa + 1 + (i - 1) * b + j
                nbrs[i] |= 1 << v
                nbrs[v] |= 1 << i
        super().__init__(kappa, n, nbrs, rows=list(range(kappa + 1, n)))
        self.b = b

    def family(self, v: int) -> int:
        return (v - self.kappa - 1) // self.b

    def slot(self, v: int) -> int:
        return (v - self.kappa - 1) % self.b

    def allowed(self, r: int, c: int) -> bool:
        if self.family(r) != 0:
            return True
        s, t = self.slot(r), self.slot(c)
        if self.family(c) != 0:
            return t == s
        if s % 2 or t != s + 1:
            return False
        return s == 0 or bool(self.nbrs[r - 2] >> (r - 1) & 1)

    def pool(self, r: int, c: int) -> Optional[int]:
        if self.family(r) == 0 or self.degree(c) != 1:
            return None
        return self.family(c)


class _OrderlySearch(_Search):
    """Search over all kappa-regular C4-free graphs on kappa^2 + 1 vertices.

    Untouched vertices are interchangeable, so a row only ever takes the first
    untouched vertex left at each choice point.
    """

    def __init__(self, kappa: int):
        n = kappa * kappa + 1
        super().__init__(kappa, n, [0] * n, rows=list(range(n)))

    def pool(self, r: int, c: int) -> Optional[int]:
        return 0 if self.nbrs[c] == 0 else None


def _make_search(kappa: int, strategy: Strategy) -> _Search:
    if strategy == Strategy.standard_form:
        return _StandardFormSearch(kappa)
    if strategy == Strategy.orderly:
        return _OrderlySearch(kappa)
    raise NotImplementedError(f"Strategy {strategy.name} not implemented.")


def _split_depth(kappa: int, strategy: Strategy) -> int:
    # family 0 is cheap; tasks start after it and the first row of family 1
    if strategy == Strategy.standard_form:
        return kappa
    return 2


def _run_task(task: Tuple[int, int, int, List[Tuple[int, int]]]) -> Tuple[int, List[_Found]]:
    kappa, strategy_value, depth, edges = task
    search = _make_search(kappa, Strategy(strategy_value))
    for r, c in edges:
        search.join(r, c)
    search.run(start=depth)
    return search.nodes, list(search.found.values())


_RESULTS: Dict[Tuple[int, Strategy], List[_Found]] = {}


def search_classes(kappa: int, strategy: Strategy = Strategy.standard_form, workers: int = None,
                   progress: bool = False) -> List[_Found]:
    """Every isomorphism class a strategy meets, with its fundamental period.

    The standard-form strategy meets the graphs with a triangle-free centre of
    radius 2; the orderly strategy meets every kappa-regular C4-free graph on
    kappa^2 + 1 vertices. Results are cached per process.

    Args:
        kappa: Valency.
        strategy: Search strategy.
        workers: Number of worker processes; defaults to ``default_workers()``.
        progress: Show a tqdm progress bar over the tasks.

    Returns:
        The classes sorted by canonical key.
    """
    allowed = KAPPAS if strategy == Strategy.standard_form else ORDERLY_KAPPAS
    if kappa not in allowed:
        raise ValueError(f"the {strategy.name} search covers kappa in {allowed}, got {kappa}")
    cached = _RESULTS.get((kappa, strategy))
    if cached is not None:
        return cached
    workers = workers or default_workers()
    depth = _split_depth(kappa, strategy)
    prefixes = _make_search(kappa, strategy).collect_prefixes(depth)
    tasks = [(kappa, strategy.value, depth, edges) for edges in prefixes]
    logger.info("kappa=%d %s search: %d tasks on %d worker(s)", kappa, strategy.name, len(tasks), workers)

    found: Dict[bytes, _Found] = {}
    nodes = 0
    pool = mp.Pool(workers) if workers > 1 else None
    try:
        results = pool.imap_unordered(_run_task, tasks) if pool else map(_run_task, tasks)
        for task_nodes, items in tqdm(results, total=len(tasks), disable=not progress, desc=f"kappa={kappa}"):
            nodes += task_nodes
            for item in items:
                found.setdefault(item.key, item)
    finally:
        if pool:
            pool.close()
            pool.join()

    ordered = [found[key] for key in sorted(found)]
    logger.info("kappa=%d %s search: %d nodes, %d classes", kappa, strategy.name, nodes, len(ordered))
    _RESULTS[(kappa, strategy)] = ordered
    return ordered


def _known_keys() -> Dict[bytes, List[str]]:
    return {canonical_form(corpus(name).matrix).key: names for name, names in _KNOWN.items()}


def _representative(matrix: BinMatrix) -> Tuple[BinMatrix, bool]:
    try:
        form = decompose(matrix)
    except NoCentre:
        return matrix, False
    try:
        return np.array(to_hs_form(form).assembled), True
    except NotHS:
        return np.array(form.assembled), False


def _matrix(item: _Found, n: int) -> BinMatrix:
    return np.frombuffer(item.matrix, dtype=np.int64).reshape(n, n).copy()


def classify(kappa: int, m: int, workers: int = None, strategy: Strategy = Strategy.standard_form,
             progress: bool = False) -> List[SolutionClass]:
    """All p-equivalence classes of A in D(kappa^2 + 1, kappa) with Theta^m(A) = A.

    Args:
        kappa: 2, 3 or 4.
        m: 1 to 8.
        workers: Worker processes for the search; defaults to THETA_LAB_WORKERS or 1.
        strategy: Standard-form search or the orderly census.
        progress: Show a progress bar.

    Returns:
        The classes sorted by the bit string of their canonical forms.
    """
    if kappa not in KAPPAS:
        raise ValueError(f"kappa must be one of {KAPPAS}, got {kappa}")
    if not 1 <= m <= MAX_PERIOD:
        raise ValueError(f"m must lie between 1 and {MAX_PERIOD}, got {m}")
    n = kappa * kappa + 1
    known = _known_keys()
    classes = []
    for item in search_classes(kappa, strategy, workers, progress):
        if item.period is None or m % item.period:
            continue
        representative, hs = _representative(_matrix(item, n))
        representative.setflags(write=False)
        names = list(known.get(item.key, [])) or [f"class_{len(classes) + 1}"]
        classes.append(
            SolutionClass(
                representative=representative,
                kappa=kappa,
                m=m,
                fundamental_period=item.period,
                names=names,
                key=item.key,
                hs_form=hs,
            )
        )
        logger.info("kappa=%d m=%d: %s (period %d)", kappa, m, names[0], item.period)
    return classes


def census(kappa: int, workers: int = None, progress: bool = False) -> pd.DataFrame:
    """Every kappa-regular C4-free graph on kappa^2 + 1 vertices up to isomorphism.

    Returns:
        One row per class with its canonical key, corpus names, triangle
        count, girth, Terwilliger flag (mu = 1) and fundamental period
        (empty when the graph is no solution for any m <= 8).
    """
    n = kappa * kappa + 1
    known = _known_keys()
    rows = []
    for item in search_classes(kappa, Strategy.orderly, workers, progress):
        graph = Graph(_matrix(item, n))
        rows.append(
            {
                "key": item.key.hex(),
                "names": ",".join(known.get(item.key, [])),
                "triangles": triangle_census(graph)[0],
                "girth": girth(graph),
                "terwilliger": is_terwilliger(graph, 1),
                "period": item.period,
            }
        )
    return pd.DataFrame(rows, columns=["key", "names", "triangles", "girth", "terwilliger", "period"])


def class_counts(kappa: int, strategy: Strategy, m_max: int = 6, workers: int = None) -> Dict[int, int]:
    """Number of solution classes for every m <= m_max."""
    periods = [item.period for item in search_classes(kappa, strategy, workers) if item.period is not None]
    return {m: sum(1 for p in periods if m % p == 0) for m in range(1, m_max + 1)}


def cross_check(kappa: int, m_max: int = 6, workers: int = None) -> bool:
    """Both strategies agree on the class counts for every m <= m_max."""
    searched = class_counts(kappa, Strategy.standard_form, m_max, workers)
    enumerated = class_counts(kappa, Strategy.orderly, m_max, workers)
    if searched != enumerated:
        logger.error("kappa=%d: standard-form counts %s, orderly counts %s", kappa, searched, enumerated)
    return searched == enumerated
