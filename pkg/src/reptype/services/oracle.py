"""Independent oracles for the exact kernels.

None of these feed a verdict. They exist so the test suite and the
``oracle`` command can cross-check the exact engine:

* ``numeric_norm`` bounds the norm from above with floating point probes;
* ``enumerate_connected_posets`` lists posets up to isomorphism;
* ``exclusion_classify`` decides poset type by searching for critical
  subposets instead of computing rho.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from reptype.core.config import settings
from reptype.core.errors import check_cap
from reptype.services.critical import CriticalSetService
from reptype.theory.enumeration import enumerate_posets
from reptype.theory.posets import Poset, RepType, contains_critical
from reptype.theory.relations import Relation

logger = logging.getLogger(__name__)

MAX_NUMERIC_SIZE = 8


@dataclass(frozen=True)
class NumericResult:
    value: float
    iterations: int
    residual: float
    point: tuple[float, ...] = ()


def _pair_descent(M: np.ndarray, x: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, int, float]:
    """Move mass between two coordinates at a time with exact line minimisation."""
    support = np.flatnonzero(x > 0)
    step = 0.0
    for sweep in range(1, max_sweeps + 1):
        step = 0.0
        for i, j in combinations(support, 2):
            # f(x + t(e_j - e_i)) = f(x) + 2t g + t^2 a, feasible for -x_j <= t <= x_i
            g = M[j] @ x - M[i] @ x
            a = M[i, i] + M[j, j] - 2 * M[i, j]
            lo, hi = -x[j], x[i]
            if a > 0:
                t = min(max(-g / a, lo), hi)
            else:
                t = lo if 2 * lo * g + lo * lo * a < 2 * hi * g + hi * hi * a else hi
            gain = -(2 * t * g + t * t * a)
            if gain > 0:
                x[i] -= t
                x[j] += t
                step = max(step, gain)
        if step < tol:
            return x, sweep, step
    return x, max_sweeps, step


def numeric_norm(R: Relation, grid_depth: Optional[int] = None) -> NumericResult:
    """Upper bound on the norm from probes started at every face barycentre.

    Every probe stays on the simplex, so the result never undershoots the
    exact minimum. A minimum in the relative interior of a face is a minimum of
    a form that is convex on that face, so the probe started there reaches it.
    """
    check_cap("numeric oracle", R.n, MAX_NUMERIC_SIZE)
    depth = settings.numeric_grid_depth if grid_depth is None else grid_depth
    tol = 4.0 ** (-depth)
    A = np.array(R.incidence, dtype=float)
    M = (A + A.T) / 2

    best = NumericResult(float("inf"), 0, 0.0)
    total = 0
    for size in range(1, R.n + 1):
        for face in combinations(range(R.n), size):
            x = np.zeros(R.n)
            x[list(face)] = 1.0 / size
            x, sweeps, residual = _pair_descent(M, x, tol, settings.numeric_max_iterations)
            total += sweeps
            value = float(x @ M @ x)
            if value < best.value:
                best = NumericResult(value, total, residual, tuple(float(c) for c in x))
    logger.debug("numeric norm n=%d depth=%d: %.12g after %d sweeps", R.n, depth, best.value, total)
    return NumericResult(best.value, total, best.residual, best.point)


def enumerate_connected_posets(n: int) -> list[Poset]:
    """One representative per isomorphism class of connected posets on n points."""
    check_cap("poset enumeration", n, settings.max_enumeration_size)
    return enumerate_posets(n, connected=True)


class OracleService:
    """Critical-subposet classification backed by the reference lists."""

    def __init__(self, critical: Optional[CriticalSetService] = None) -> None:
        self.critical = critical or CriticalSetService()

    def exclusion_classify(self, S: Poset) -> RepType:
        """Finite iff no K embeds; tame iff some K and no N embeds."""
        check_cap("poset", S.n, settings.max_poset_size)
        if contains_critical(S, self.critical.tame_critical()):
            return RepType.WILD
        if contains_critical(S, self.critical.finite_critical()):
            return RepType.TAME
        return RepType.FINITE
