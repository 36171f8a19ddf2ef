"""Graph and configuration views of (0,1)-matrices.

A configuration n_kappa is stored as its incidence matrix (points are rows,
lines are columns), a graph as its adjacency matrix. The configuration graph
joins two points when no line contains both; the neighbourhood geometry reads
an adjacency matrix back as an incidence matrix.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from typing import List
from typing import Optional
from typing import Tuple
from typing import Union

import networkx as nx
import numpy as np

from .errors import DigonError
from .errors import NonConstantSums
from .errors import NotAdjacency
from .matrices import BinMatrix
from .matrices import as_binary
from .matrices import delta
from .matrices import is_j2_free
from .matrices import row_bitsets
from .matrices import row_col_sums
from .matrices import theta

logger = logging.getLogger(__name__)

Number = Union[int, float]


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple undirected graph given by a symmetric adjacency matrix with zero diagonal."""

    adjacency: BinMatrix
    labels: Optional[List[str]] = field(default=None, compare=False)

    def __post_init__(self):
        A = as_binary(self.adjacency)
        if not np.array_equal(A, A.T):
            raise NotAdjacency("an adjacency matrix must be symmetric")
        if np.any(np.diag(A)):
            raise NotAdjacency("an adjacency matrix must have a zero diagonal")
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def degrees(self) -> List[int]:
        return self.adjacency.sum(axis=1).tolist()

    def neighbours(self, v: int) -> List[int]:
        return np.flatnonzero(self.adjacency[v]).tolist()

    def to_networkx(self) -> nx.Graph:
        return nx.from_numpy_array(np.asarray(self.adjacency))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)


@dataclass(frozen=True, eq=False)
class Configuration:
    """A configuration n_kappa given by a J2-free incidence matrix with constant sums kappa."""

    incidence: BinMatrix
    labels: Optional[List[str]] = field(default=None, compare=False)

    def __post_init__(self):
        C = as_binary(self.incidence)
        if row_col_sums(C)[2] is None:
            raise NonConstantSums("every point and every line of a configuration needs kappa incidences")
        if not is_j2_free(C):
            raise DigonError("two points lie on two common lines", _find_digon(C))
        C.setflags(write=False)
        object.__setattr__(self, "incidence", C)

    @property
    def n(self) -> int:
        return self.incidence.shape[0]

    @property
    def kappa(self) -> int:
        return row_col_sums(self.incidence)[2]


def _find_digon(C: BinMatrix) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Two rows and two columns spanning a 2x2 all-ones submatrix, if any."""
    rows = row_bitsets(C)
    for i, k in itertools.combinations(range(len(rows)), 2):
        common = rows[i] & rows[k]
        if common & (common - 1):
            columns = [j for j in range(C.shape[0]) if common >> j & 1][:2]
            return (i, k), tuple(columns)
    return None


def digon(G: Graph) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """A 4-cycle of ``G`` as two points and two lines of its neighbourhood geometry."""
    return _find_digon(G.adjacency)


def configuration_graph(C: Configuration) -> Graph:
    """The non-collinearity graph Gamma(C), with adjacency Theta(incidence)."""
    return Graph(theta(C.incidence), labels=C.labels)


def deficiency(C: Configuration) -> int:
    return delta(C.n, C.kappa)


def neighbourhood_geometry(G: Graph) -> Configuration:
    """Reinterpret the adjacency matrix of ``G`` as an incidence matrix.

    Raises:
        DigonError: ``G`` contains a 4-cycle.
        NonConstantSums: ``G`` is not regular.
    """
    found = digon(G)
    if found is not None:
        (p1, p2), (l1, l2) = found
        raise DigonError(
            f"points {G.label(p1)}, {G.label(p2)} share the lines {G.label(l1)}, {G.label(l2)}", found
        )
    return Configuration(G.adjacency, labels=G.labels)


def is_n_admissible(G: Graph) -> bool:
    """True iff ``G`` is C4-free, i.e. its adjacency matrix is J2-free."""
    return is_j2_free(G.adjacency)


def is_gamma_n_admissible(G: Graph) -> bool:
    """True iff ``G`` is a C4-free kappa-regular graph on kappa^2 + 1 vertices."""
    kappa = row_col_sums(G.adjacency)[2]
    return kappa is not None and G.n == kappa * kappa + 1 and is_n_admissible(G)


def is_n_gamma_admissible(C: Configuration) -> bool:
    """True iff ``C`` is of type (kappa^2 + 1)_kappa and its configuration graph is C4-free."""
    return C.n == C.kappa * C.kappa + 1 and is_n_admissible(configuration_graph(C))


def girth(G: Graph) -> Number:
    """Length of a shortest cycle; ``math.inf`` for a forest."""
    return nx.girth(G.to_networkx())


def diameter(G: Graph) -> Number:
    """Largest distance between two vertices; ``math.inf`` when disconnected."""
    graph = G.to_networkx()
    if not nx.is_connected(graph):
        return math.inf
    return nx.diameter(graph)


def eccentricity(G: Graph, v: int) -> Number:
    lengths = nx.single_source_shortest_path_length(G.to_networkx(), v)
    if len(lengths) < G.n:
        return math.inf
    return max(lengths.values())


def is_centre_radius2(G: Graph, v: int) -> bool:
    """True iff every vertex lies within distance 2 of ``v``."""
    reached = nx.single_source_shortest_path_length(G.to_networkx(), v, cutoff=2)
    return len(reached) == G.n


def centres_radius2(G: Graph) -> List[int]:
    return [v for v in range(G.n) if is_centre_radius2(G, v)]


def triangle_census(G: Graph) -> Tuple[int, List[int]]:
    """Number of triangles and the number of triangles through each vertex."""
    per_vertex = nx.triangles(G.to_networkx())
    counts = [per_vertex[v] for v in range(G.n)]
    return sum(counts) // 3, counts


def is_terwilliger(G: Graph, mu: int) -> bool:
    """True iff ``G`` is non-complete and every pair at distance 2 has a common
    neighbourhood inducing a clique on exactly ``mu`` vertices."""
    n = G.n
    if int(G.adjacency.sum()) == n * (n - 1):
        return False
    rows = row_bitsets(G.adjacency)
    for v, w in itertools.combinations(range(n), 2):
        if rows[v] >> w & 1:
            continue
        common = rows[v] & rows[w]
        if not common:
            continue
        members = [u for u in range(n) if common >> u & 1]
        if len(members) != mu:
            return False
        for a, b in itertools.combinations(members, 2):
            if not rows[a] >> b & 1:
                return False
    return True


def has_polarity_form(C: Configuration) -> bool:
    """True iff the incidence matrix is symmetric with a zero diagonal.

    Such a labelling pairs point i with line i in a self-polarity without
    absolute elements.
    """
    A = C.incidence
    return bool(np.array_equal(A, A.T) and not np.any(np.diag(A)))
