"""Built-in named matrices.

The matrices are transcribed into "mat v1" files under ``lib/corpus``, one
per name, with the row labels of the original figures. Their SHA-256
checksums are pinned here so a damaged file is reported by name.
"""
import hashlib
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import Dict
from typing import List
from typing import Optional

from .errors import UnknownName
from .matrices import BinMatrix
from .matrix_io import read_matrix
from .matrix_io import write_matrix

CORPUS_DIR = Path(__file__).parent / "lib" / "corpus"


@dataclass(frozen=True, eq=False)
class NamedMatrix:
    name: str
    matrix: BinMatrix
    provenance: str
    labels: Optional[List[str]] = None
    expected: Dict[str, object] = field(default_factory=dict)


_PROVENANCE = {
    "c5_hs": (
        "Hoffman-Singleton form of the 5-cycle, the unique solution of Theta(A) = A for kappa = 2",
        {"kappa": 2, "lsz": True},
    ),
    "petersen_hs": (
        "Hoffman-Singleton form of the Petersen graph; also an incidence matrix of the Desargues configuration",
        {"kappa": 3, "lsz": True},
    ),
    "a1_t1": (
        "adjacency matrix A1 of the Terwilliger graph T1: satisfies (L), (S), (Z) but Theta(A1) != A1",
        {"kappa": 3, "lsz": True},
    ),
    "a2_t2": (
        "adjacency matrix A2 of the Terwilliger graph T2, incidence matrix of 10_3F; Theta^3(A2) = A2",
        {"kappa": 3, "lsz": True},
    ),
    "p_1971": (
        "block matrix P of the HS-form of the 17_4 configuration #1971 (symmetric, row sums 3)",
        {"kappa": 3},
    ),
    "s_1971": (
        "S_HS(P) for P = p_1971: the solution of Theta^2(A) = A for kappa = 4",
        {"kappa": 4, "lsz": True},
    ),
}

CHECKSUMS = {
    "a1_t1": "d704039e2cab4449938a2a0c74024642d0dd5d977f7f441cc9fbb74bde62aa69",
    "a2_t2": "621f4326679f1e7f54a3d53c4d5d3d57aed4a697852a2eb3e8dfbfbf476c025f",
    "c5_hs": "28ab0a5f7c6ba56070a3ec00e4b5d97b2ce987bdd7e4bbac87811739b6996843",
    "p_1971": "2e65e58cb49f5fa7d004478a96db9968577fe1c8be6b383f168b244bde9c0301",
    "petersen_hs": "8fe4e1e70c6f3baae5f3de41b5401ba944d8d86b6823f23199393e1366693fa7",
    "s_1971": "289ec2e285bc949567cf19437df085112898d8961c10765bb923d86462883b5a",
}


def corpus_names() -> List[str]:
    return sorted(_PROVENANCE)


def corpus_path(name: str) -> Path:
    if name not in _PROVENANCE:
        raise UnknownName(f"unknown corpus matrix {name!r}; choose from {', '.join(corpus_names())}")
    return CORPUS_DIR / f"{name}.mat"


def checksum(name: str) -> str:
    return hashlib.sha256(corpus_path(name).read_bytes()).hexdigest()


def checksum_ok(name: str) -> bool:
    return checksum(name) == CHECKSUMS[name]


def corpus(name: str) -> NamedMatrix:
    """Load a named matrix.

    Args:
        name: One of ``corpus_names()``.

    Returns:
        The transcribed matrix with its labels and provenance.
    """
    path = corpus_path(name)
    document = read_matrix(path, binary=True)
    document.matrix.setflags(write=False)
    provenance, expected = _PROVENANCE[name]
    return NamedMatrix(
        name=name,
        matrix=document.matrix,
        provenance=provenance,
        labels=document.labels,
        expected=dict(expected),
    )


def export(name: str, path) -> Path:
    """Write a named matrix to ``path`` in "mat v1" format with its labels and provenance."""
    named = corpus(name)
    return write_matrix(path, named.matrix, labels=named.labels, comments=[f"{name}: {named.provenance}"])
