"""Reproduction suite: every classification result and certificate as a named check.

A check returns a pass flag and a one-line detail; the suite records both with
the run time. ``full`` runs every check, ``quick`` skips the kappa = 4
classification.
"""
import logging
import time
from dataclasses import dataclass
from dataclasses import field
from typing import Callable
from typing import Dict
from typing import List
from typing import Tuple

import numpy as np

from .classification import classify
from .classification import cross_check
from .corpus import corpus
from .corpus import checksum_ok
from .corpus import corpus_names
from .equivalence import brute_force_p_equivalent
from .equivalence import canonical_form
from .equivalence import Permutation
from .equivalence import conjugate
from .equivalence import p_equivalent
from .errors import UnknownSuite
from .geometry import Graph
from .geometry import diameter
from .geometry import girth
from .geometry import has_polarity_form
from .geometry import is_centre_radius2
from .geometry import is_terwilliger
from .geometry import neighbourhood_geometry
from .geometry import triangle_census
from .matrices import classify_membership
from .matrices import delta
from .matrices import is_in_D
from .matrices import row_col_sums
from .matrices import theta
from .patterns import DEFAULT_SEED
from .patterns import get_random_d_matrix
from .patterns import get_random_regular_graph
from .patterns import get_random_z_matrix
from .solver import dio_sweep
from .standard_form import assemble
from .standard_form import block_report
from .standard_form import decompose
from .standard_form import to_hs_form

logger = logging.getLogger(__name__)

OPERATOR_CASES = 10_000
ORACLE_PAIRS = 1_000
CONJUGATES = 100
GRAPH_SAMPLES = 50

CheckOutcome = Tuple[bool, str]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


@dataclass
class SuiteReport:
    suite: str
    seed: int
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed(self) -> List[str]:
        return [result.name for result in self.results if not result.passed]


@dataclass
class _Context:
    seed: int
    workers: int = None

    def rng(self, offset: int = 0) -> np.random.RandomState:
        return np.random.RandomState(self.seed + offset)


def check_corpus_checksums(ctx: _Context) -> CheckOutcome:
    broken = [name for name in corpus_names() if not checksum_ok(name)]
    if broken:
        return False, f"checksum mismatch: {', '.join(broken)}"
    return True, f"{len(corpus_names())} files intact"


def check_fixed_points(ctx: _Context) -> CheckOutcome:
    c5 = classify(2, 1, workers=ctx.workers)
    petersen = classify(3, 1, workers=ctx.workers)
    if len(c5) != 1 or c5[0].name != "c5":
        return False, f"kappa=2: expected the 5-cycle, got {[c.name for c in c5]}"
    if len(petersen) != 1 or not p_equivalent(petersen[0].representative, corpus("petersen_hs").matrix)[0]:
        return False, f"kappa=3: expected the Petersen graph, got {[c.name for c in petersen]}"
    return True, "kappa=2: c5, kappa=3: petersen"


def check_no_fixed_point_kappa4(ctx: _Context) -> CheckOutcome:
    found = classify(4, 1, workers=ctx.workers)
    return not found, f"kappa=4: {len(found)} classes"


def check_period_three(ctx: _Context) -> CheckOutcome:
    classes = classify(3, 3, workers=ctx.workers)
    periods = sorted(c.fundamental_period for c in classes)
    if periods != [1, 3]:
        return False, f"expected periods [1, 3], got {periods}"
    t2 = next(c for c in classes if c.fundamental_period == 3)
    if not p_equivalent(t2.representative, corpus("a2_t2").matrix)[0]:
        return False, "period-3 class is not p-equivalent to a2_t2"
    configuration = neighbourhood_geometry(Graph(t2.representative))
    if (configuration.n, configuration.kappa) != (10, 3) or not has_polarity_form(configuration):
        return False, "period-3 class is not a 10_3 configuration in polarity form"
    return True, "petersen (period 1), t2_10_3F (period 3)"


def check_period_two_kappa4(ctx: _Context) -> CheckOutcome:
    classes = classify(4, 2, workers=ctx.workers)
    if len(classes) != 1:
        return False, f"expected 1 class, got {len(classes)}"
    expected = assemble(corpus("p_1971").matrix, 4).assembled
    if not p_equivalent(classes[0].representative, expected)[0]:
        return False, "the class is not p-equivalent to S(p_1971)"
    return True, f"1 class: {classes[0].name}"


def check_counterexample(ctx: _Context) -> CheckOutcome:
    A1 = corpus("a1_t1").matrix
    image = theta(A1)
    if np.array_equal(image, A1):
        return False, "Theta(a1_t1) = a1_t1"
    if not np.array_equal(theta(image), image):
        return False, "Theta(a1_t1) is not a fixed point"
    if not p_equivalent(image, corpus("petersen_hs").matrix)[0]:
        return False, "Theta(a1_t1) is not p-equivalent to petersen_hs"
    if not classify_membership(A1).lsz:
        return False, "a1_t1 fails (L), (S) or (Z)"
    return True, "a1_t1 satisfies (L), (S), (Z) and falls onto the Petersen fixed point"


def check_operator_laws(ctx: _Context) -> CheckOutcome:
    rng = ctx.rng(1)
    for case in range(OPERATOR_CASES):
        n = int(rng.randint(2, 9))
        seed = int(rng.randint(2 ** 31 - 1))
        if case % 2:
            kappa = int(rng.randint(0, n + 1))
            A = get_random_d_matrix(n, kappa, seed)
        else:
            kappa = int(rng.randint(-3, n + 3))
            A = get_random_z_matrix(n, kappa, seed)
        image = theta(A)
        if row_col_sums(image)[2] != delta(n, kappa):
            return False, f"case {case}: Theta left Z(n, delta(kappa))"
        if not np.array_equal(image, image.T):
            return False, f"case {case}: Theta(A) is not symmetric"
        diagonal = np.diag(image)
        if np.any(diagonal > 0) or bool(np.all(diagonal == 0)) != is_in_D(A, kappa):
            return False, f"case {case}: diagonal rule violated"
        pi = Permutation.random(n, rng)
        if not np.array_equal(theta(conjugate(A, pi)), conjugate(image, pi)):
            return False, f"case {case}: Theta does not commute with conjugation"
    return True, f"{OPERATOR_CASES} random cases"


def check_equivalence_oracle(ctx: _Context) -> CheckOutcome:
    rng = ctx.rng(2)
    for case in range(ORACLE_PAIRS):
        n = int(rng.randint(2, 9))
        kappa = int(rng.randint(0, n + 1))
        A = get_random_d_matrix(n, kappa, int(rng.randint(2 ** 31 - 1)))
        if case % 2:
            B = conjugate(A, Permutation.random(n, rng))
        else:
            B = get_random_d_matrix(n, kappa, int(rng.randint(2 ** 31 - 1)))
        if p_equivalent(A, B)[0] != brute_force_p_equivalent(A, B)[0]:
            return False, f"pair {case} (n={n}): canonical form disagrees with the exhaustive scan"
    for name in corpus_names():
        A = corpus(name).matrix
        key = canonical_form(A).key
        for _ in range(CONJUGATES):
            if canonical_form(conjugate(A, Permutation.random(A.shape[0], rng))).key != key:
                return False, f"canonical form of {name} changed under conjugation"
    return True, f"{ORACLE_PAIRS} pairs, {CONJUGATES} conjugates per corpus matrix"


def check_geometry_certificates(ctx: _Context) -> CheckOutcome:
    petersen = Graph(corpus("petersen_hs").matrix)
    if (girth(petersen), diameter(petersen), triangle_census(petersen)[0]) != (5, 2, 0):
        return False, "petersen: expected girth 5, diameter 2, no triangles"
    if not is_terwilliger(petersen, 1):
        return False, "petersen is not Terwilliger with mu = 1"
    t2_entry = corpus("a2_t2")
    t2 = Graph(t2_entry.matrix, labels=t2_entry.labels)
    if girth(t2) != 3 or not is_terwilliger(t2, 1):
        return False, "t2: expected girth 3 and Terwilliger with mu = 1"
    free = [v for v, count in enumerate(triangle_census(t2)[1]) if count == 0]
    if len(free) != 1 or not is_centre_radius2(t2, free[0]):
        return False, f"t2: triangle-free vertices {free}"
    t1 = Graph(corpus("a1_t1").matrix)
    if not is_terwilliger(t1, 1) or triangle_census(t1)[0] != 2:
        return False, "t1: expected Terwilliger with mu = 1 and exactly 2 triangles"
    rng = ctx.rng(4)
    for _ in range(GRAPH_SAMPLES):
        A = get_random_regular_graph(10, 3, int(rng.randint(2 ** 31 - 1)))
        G = Graph(A)
        if triangle_census(G)[0] * 6 != int(np.trace(A @ A @ A)):
            return False, "triangle census disagrees with trace(A^3) / 6"
        if (diameter(G) == 2) != (girth(G) == 5):
            return False, "a random cubic graph on 10 vertices breaks diameter 2 <=> girth 5"
    return True, f"petersen, t1 and t2 certified; t2 centre {t2.label(free[0])}"


def _block_rules(classes) -> bool:
    return all(block_report(decompose(c.representative)).ok for c in classes)


def check_standard_forms(ctx: _Context) -> CheckOutcome:
    rng = ctx.rng(3)
    petersen = corpus("petersen_hs").matrix
    reference = to_hs_form(decompose(petersen)).assembled
    for _ in range(CONJUGATES):
        B = conjugate(petersen, Permutation.random(petersen.shape[0], rng))
        if not np.array_equal(to_hs_form(decompose(B)).assembled, reference):
            return False, "a conjugate of petersen_hs has a different HS-form"
    if not _block_rules(classify(2, 1, workers=ctx.workers) + classify(3, 3, workers=ctx.workers)):
        return False, "a class violates the block rules"
    return True, f"{CONJUGATES} conjugates share one HS-form; block rules hold"


def check_standard_forms_kappa4(ctx: _Context) -> CheckOutcome:
    if not _block_rules(classify(4, 2, workers=ctx.workers)):
        return False, "a kappa=4 class violates the block rules"
    return True, "block rules hold for kappa=4"


def check_diophantine_sweep(ctx: _Context) -> CheckOutcome:
    sweep = dio_sweep(200, 8, (-14, 14))
    if not all(solution.verify() for solution in sweep.solutions):
        return False, "a reported solution does not recompute"
    detail = f"{len(sweep.family_1)} family-1, {len(sweep.family_2)} family-2, {len(sweep.exceptions)} exceptions"
    return True, detail


def check_cross_strategy(ctx: _Context) -> CheckOutcome:
    for kappa in (2, 3):
        if not cross_check(kappa, 6, workers=ctx.workers):
            return False, f"kappa={kappa}: strategies disagree"
    return True, "kappa=2,3: class counts agree for m <= 6"


_QUICK = [
    ("corpus_checksums", check_corpus_checksums),
    ("fixed_points", check_fixed_points),
    ("period_three", check_period_three),
    ("counterexample", check_counterexample),
    ("operator_laws", check_operator_laws),
    ("equivalence_oracle", check_equivalence_oracle),
    ("geometry_certificates", check_geometry_certificates),
    ("standard_forms", check_standard_forms),
    ("diophantine_sweep", check_diophantine_sweep),
    ("cross_strategy", check_cross_strategy),
]

SUITES: Dict[str, List[Tuple[str, Callable[[_Context], CheckOutcome]]]] = {
    "quick": _QUICK,
    "full": _QUICK + [
        ("no_fixed_point_kappa4", check_no_fixed_point_kappa4),
        ("period_two_kappa4", check_period_two_kappa4),
        ("standard_forms_kappa4", check_standard_forms_kappa4),
    ],
}


def run_suite(suite: str = "full", seed: int = DEFAULT_SEED, workers: int = None,
              only: List[str] = None) -> SuiteReport:
    """Run the named checks of a suite.

    Args:
        suite: "full" or "quick".
        seed: Seed for the randomised checks.
        workers: Worker processes for the classification checks.
        only: Restrict the run to these check names.

    Returns:
        The results in suite order.

    Raises:
        UnknownSuite: The suite does not exist.
    """
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(sorted(SUITES))}")
    ctx = _Context(seed=seed, workers=workers)
    report = SuiteReport(suite=suite, seed=seed)
    for name, check in SUITES[suite]:
        if only and name not in only:
            continue
        start = time.perf_counter()
        try:
            passed, detail = check(ctx)
        except Exception as e:
            logger.exception("check %s raised", name)
            passed, detail = False, f"{type(e).__name__}: {e}"
        seconds = time.perf_counter() - start
        report.results.append(CheckResult(name=name, passed=passed, detail=detail, seconds=seconds))
        if passed:
            logger.info("check %s passed in %.1fs: %s", name, seconds, detail)
        else:
            logger.warning("check %s failed: %s", name, detail)
    return report
