"""The separating functions rho and mu on extended naturals.

``rho(n) = 2n / (n + 1)`` with ``rho(inf) = 2`` and ``rho(0) = 0``; it is
extended additively to tuples. ``mu`` is the symmetric cubic
``n1n2 + n1n3 + n2n3 + n1n2n3`` with the conventions ``mu(inf, 0, 0) = 4`` and
``mu(inf, n, m) = inf`` whenever ``n != 0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

from reptype.core.errors import InputError, NonIntegral
from reptype.theory.exact import INF, ExtNat, Infinity

logger = logging.getLogger(__name__)

FOUR = Fraction(4)


def ext_key(value: ExtNat) -> tuple[int, int]:
    """Sort key placing ``INF`` above every finite value."""
    return (1, 0) if isinstance(value, Infinity) else (0, int(value))


def sort_desc(values: Iterable[ExtNat]) -> tuple[ExtNat, ...]:
    return tuple(sorted(values, key=ext_key, reverse=True))


# ---------------------------------------------------------------------------
# rho
# ---------------------------------------------------------------------------

def rho_point(n: ExtNat) -> Fraction:
    if isinstance(n, Infinity):
        return Fraction(2)
    if n < 0:
        raise InputError(f"rho is defined for n >= 0, got {n}")
    return Fraction(2 * n, n + 1)


def rho_tuple(args: Iterable[ExtNat]) -> Fraction:
    return sum((rho_point(n) for n in args), Fraction(0))


# ---------------------------------------------------------------------------
# mu
# ---------------------------------------------------------------------------

def mu3(n1: ExtNat, n2: ExtNat, n3: ExtNat) -> ExtNat:
    a, b, c = sort_desc((n1, n2, n3))
    if isinstance(a, Infinity):
        return 4 if b == 0 and c == 0 else INF
    return a * b + a * c + b * c + a * b * c  # type: ignore[operator]


# ---------------------------------------------------------------------------
# Three-way equivalence of the separating conditions
# ---------------------------------------------------------------------------

class Regime(str, Enum):
    STRICT = "strict"
    EQUAL = "equal"
    NEITHER = "neither"


def _regime(sign: int) -> Regime:
    """``sign`` > 0 means the strict inequality holds."""
    if sign > 0:
        return Regime.STRICT
    return Regime.EQUAL if sign == 0 else Regime.NEITHER


@dataclass(frozen=True)
class SeparationVerdict:
    """Regime reported by each of the three equivalent formulations."""

    rho: Regime
    reciprocal: Regime
    mu: Regime

    @property
    def agree(self) -> bool:
        return self.rho == self.reciprocal == self.mu


def separation_verdict(n1: int, n2: int, n3: int) -> SeparationVerdict:
    args = (n1, n2, n3)
    if any(isinstance(n, Infinity) or n < 1 for n in args):
        raise InputError("separation arguments must be finite and >= 1")
    rho = rho_tuple(args)
    recip = sum((Fraction(1, n + 1) for n in args), Fraction(0))
    mu = mu3(n1 - 1, n2 - 1, n3 - 1)
    return SeparationVerdict(
        rho=_regime((FOUR > rho) - (FOUR < rho)),
        reciprocal=_regime((recip > 1) - (recip < 1)),
        mu=_regime((4 > mu) - (4 < mu)),  # type: ignore[operator]
    )


def separation_agree(n1: int, n2: int, n3: int) -> bool:
    return separation_verdict(n1, n2, n3).agree


def solve_rho_eq4(bound: int = 30) -> set[tuple[ExtNat, ...]]:
    """All multisets over ``{1..bound} + {inf}`` of size <= 4 with rho = 4.

    Every finite entry of a solution is at most 5, so any ``bound >= 5`` gives
    the complete answer.
    """
    values: list[ExtNat] = [INF, *range(1, bound + 1)]
    solutions: set[tuple[ExtNat, ...]] = set()
    for size in range(1, 5):
        for combo in combinations_with_replacement(values, size):
            if rho_tuple(combo) == FOUR:
                solutions.add(sort_desc(combo))
    logger.debug("rho = 4 has %d solutions below bound %d", len(solutions), bound)
    return solutions


def triangle_group_order(n1: int, n2: int, n3: int) -> ExtNat:
    """Order of the group with three involutions and pairwise product orders n_i."""
    args = (n1, n2, n3)
    if any(isinstance(n, Infinity) or n < 2 for n in args):
        raise InputError("triangle group parameters must be finite and >= 2")
    rho = rho_tuple(n - 1 for n in args)
    if rho >= FOUR:
        return INF
    order = Fraction(8) / (FOUR - rho)
    if order.denominator != 1:
        raise NonIntegral(f"order formula gave {order} for {args}")
    return order.numerator
