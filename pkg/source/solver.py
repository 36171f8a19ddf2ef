"""Theta-orbits, solutions of Theta^m(A) = A and the Diophantine sweep of delta."""
import logging
from dataclasses import dataclass
from dataclasses import field
from typing import List
from typing import Optional
from typing import Tuple

import numpy as np
import pandas as pd

from .errors import NonConstantSums
from .errors import StepLimit
from .matrices import BinMatrix
from .matrices import IntMatrix
from .matrices import as_binary
from .matrices import delta_iterate
from .matrices import is_in_D
from .matrices import theta

logger = logging.getLogger(__name__)

MAX_PERIOD = 8

FAMILY_MOORE = "family-1"
FAMILY_TWIN = "family-2"
EXCEPTION = "exception"


@dataclass
class OrbitReport:
    """The Theta-iterates of a matrix.

    ``iterates[0]`` is the input. When the orbit is eventually periodic,
    ``iterates[preperiod]`` is the first iterate on the cycle and ``period``
    its length. ``leaves_class_at`` is the first step whose iterate is no
    longer a (0,1)-matrix with constant sums; every later iterate has a
    negative diagonal entry, so the input cannot recur. ``negative_diagonal``
    is that check on the next iterate.
    """

    iterates: List[IntMatrix]
    period: Optional[int] = None
    preperiod: int = 0
    leaves_class_at: Optional[int] = None
    negative_diagonal: Optional[bool] = None

    @property
    def steps(self) -> int:
        return len(self.iterates) - 1

    @property
    def is_cycle(self) -> bool:
        """True iff the input itself lies on the cycle."""
        return self.period is not None and self.preperiod == 0

    def summary(self) -> str:
        if self.leaves_class_at is not None:
            return f"leaves class at step {self.leaves_class_at}"
        if self.preperiod:
            return f"preperiod {self.preperiod}, period {self.period}"
        return f"period {self.period}"


def orbit(A: BinMatrix, max_steps: int = MAX_PERIOD) -> OrbitReport:
    """Iterate Theta until an iterate recurs or leaves the (0,1)-matrices.

    Args:
        A: A (0,1)-matrix with constant row and column sums.
        max_steps: Number of Theta applications allowed.

    Returns:
        The orbit with its exact period and preperiod, or the leaving step.

    Raises:
        StepLimit: Neither happened within ``max_steps``.
    """
    A = as_binary(A)
    if not is_in_D(A):
        raise NonConstantSums("the orbit of a matrix starts inside the (0,1)-matrices with constant sums")
    report = OrbitReport(iterates=[A])
    seen = {A.tobytes(): 0}
    current = A
    for step in range(1, max_steps + 1):
        current = theta(current)
        report.iterates.append(current)
        # no later iterate is binary again
        if not is_in_D(current):
            report.leaves_class_at = step
            report.negative_diagonal = bool(np.any(np.diag(theta(current)) < 0))
            logger.debug("orbit leaves the class at step %d", step)
            return report
        # the first repeat fixes preperiod and period
        key = current.tobytes()
        if key in seen:
            report.preperiod = seen[key]
            report.period = step - seen[key]
            return report
        seen[key] = step
    raise StepLimit(f"orbit undecided after {max_steps} steps")


def fundamental_period(A: BinMatrix, max_steps: int = MAX_PERIOD) -> Optional[int]:
    """The least p <= max_steps with Theta^p(A) = A, or None.

    Stops as soon as an iterate is not a (0,1)-matrix.
    """
    A = np.asarray(A)
    current = A
    for step in range(1, max_steps + 1):
        current = theta(current)
        if np.any((current != 0) & (current != 1)):
            return None
        if np.array_equal(current, A):
            return step
    return None


def is_solution(A: IntMatrix, m: int) -> bool:
    """Exact test of Theta^m(A) = A for a (0,1)-matrix with constant sums."""
    if m < 1:
        raise ValueError("m must be positive")
    A = np.asarray(A)
    if not is_in_D(A):
        return False
    period = fundamental_period(A, max_steps=m)
    return period is not None and m % period == 0


@dataclass(frozen=True)
class DioSolution:
    """A triple with delta^m(kappa) = kappa at fixed n."""

    n: int
    m: int
    kappa: int
    family: str

    def verify(self) -> bool:
        return delta_iterate(self.n, self.kappa, self.m) == self.kappa


@dataclass
class DioSweep:
    bounds: Tuple[int, int, Tuple[int, int]]
    family_1: List[DioSolution] = field(default_factory=list)
    family_2: List[DioSolution] = field(default_factory=list)
    exceptions: List[DioSolution] = field(default_factory=list)

    @property
    def solutions(self) -> List[DioSolution]:
        return self.family_1 + self.family_2 + self.exceptions

    def to_frame(self) -> pd.DataFrame:
        rows = [vars(s) for s in self.solutions]
        return pd.DataFrame(rows, columns=["n", "m", "kappa", "family"])


def _family(n: int, m: int, kappa: int) -> str:
    if n == kappa * kappa + 1:
        return FAMILY_MOORE
    if n == (kappa - 1) ** 2 + 2 and m % 2 == 0:
        return FAMILY_TWIN
    return EXCEPTION


def dio_sweep(n_max: int, m_max: int, kappa_range: Tuple[int, int]) -> DioSweep:
    """Enumerate every (n, m, kappa) in range with delta^m(kappa) = kappa.

    Args:
        n_max: Largest n (n starts at 1).
        m_max: Largest m (m starts at 1).
        kappa_range: Inclusive bounds (low, high) for kappa.

    Returns:
        The solutions split into the family n = kappa^2 + 1, the family
        n = (kappa - 1)^2 + 2 with m even, and everything else.
    """
    if n_max < 1 or m_max < 1:
        raise ValueError("bounds must be positive")
    low, high = kappa_range
    sweep = DioSweep(bounds=(n_max, m_max, (low, high)))
    for n in range(1, n_max + 1):
        for kappa in range(low, high + 1):
            value = kappa
            for m in range(1, m_max + 1):
                value = n - value * value + value - 1
                if value != kappa:
                    continue
                solution = DioSolution(n=n, m=m, kappa=kappa, family=_family(n, m, kappa))
                if solution.family == FAMILY_MOORE:
                    sweep.family_1.append(solution)
                elif solution.family == FAMILY_TWIN:
                    sweep.family_2.append(solution)
                else:
                    logger.warning("delta^%d(%d) = %d at n = %d outside both families", m, kappa, kappa, n)
                    sweep.exceptions.append(solution)
    return sweep
