"""Exact number tower used by every kernel.

* ``Fraction`` is the rational type (canonical, hashable, exact).
* ``INF`` is the absorbing infinity of extended naturals: ``INF + n == INF``,
  ``INF - n == INF``, and it compares above every rational.
* ``QuadRat`` is an element ``a + b*sqrt(5)`` of the quadratic field with an
  exact sign test.
* ``CosSq(p)`` is the irrational ``4cos^2(pi/p)`` for ``p >= 7``; it is compared
  with rationals through certified ``mpmath.iv`` enclosures.
* ``HatSum`` is a finite sum ``QuadRat + sum c_p * CosSq(p)`` as produced by
  rho-degrees of Coxeter graphs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Optional, Union

from mpmath import iv, libmp, mp

from reptype.core.config import settings
from reptype.core.errors import RefinementExhausted, SchemaError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Extended naturals
# ---------------------------------------------------------------------------

class Infinity:
    """The single element ``inf`` of the extended naturals."""

    __slots__ = ()
    _instance: Optional["Infinity"] = None

    def __new__(cls) -> "Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("reptype.inf")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __lt__(self, other: object) -> bool:
        if isinstance(other, (Infinity, Rational, QuadRat)):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if isinstance(other, Infinity):
            return True
        if isinstance(other, (Rational, QuadRat)):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if isinstance(other, Infinity):
            return False
        if isinstance(other, (Rational, QuadRat)):
            return True
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if isinstance(other, (Infinity, Rational, QuadRat)):
            return True
        return NotImplemented

    def __add__(self, other: object) -> "Infinity":
        if isinstance(other, (Infinity, Rational)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> "Infinity":
        if isinstance(other, (Infinity, Rational)):
            return self
        return NotImplemented

    def __rsub__(self, other: object) -> "Infinity":
        raise ValueError("cannot subtract inf from a finite value")

    def __mul__(self, other: object) -> Union["Infinity", int]:
        # 0 * inf = 0
        if isinstance(other, Infinity):
            return self
        if isinstance(other, Rational):
            if other < 0:
                raise ValueError("negative multiple of inf")
            return 0 if other == 0 else self
        return NotImplemented

    __rmul__ = __mul__

    def __float__(self) -> float:
        return float("inf")

    def __reduce__(self) -> tuple:
        return (Infinity, ())


INF = Infinity()

ExtNat = Union[int, Infinity]
Weight = Union[Fraction, int, Infinity]


def is_inf(value: object) -> bool:
    return isinstance(value, Infinity)


def parse_extnat(value: object) -> ExtNat:
    """Read an extended natural from JSON/CLI input (``"inf"`` or an integer)."""
    if isinstance(value, Infinity):
        return value
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return INF
        try:
            value = int(text)
        except ValueError:
            raise SchemaError(f"not an extended natural: {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"not an extended natural: {value!r}")
    if value < 0:
        raise SchemaError(f"extended natural must be >= 0, got {value}")
    return value


def parse_weight(value: object) -> Weight:
    """Read a rational-or-infinite label (``"inf"``, ``3``, ``"5/2"``)."""
    if isinstance(value, str) and "/" in value:
        try:
            return Fraction(value)
        except ValueError:
            raise SchemaError(f"not a rational: {value!r}") from None
    return parse_extnat(value)


# ---------------------------------------------------------------------------
# Ordering
# ---------------------------------------------------------------------------

class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, sign: int) -> "Ordering":
        return cls((sign > 0) - (sign < 0))


# ---------------------------------------------------------------------------
# Q(sqrt 5)
# ---------------------------------------------------------------------------

def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadRat:
    """``a + b*sqrt(5)`` with rational ``a`` and ``b``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def of(cls, value: Union["QuadRat", Rational]) -> "QuadRat":
        if isinstance(value, QuadRat):
            return value
        return cls(Fraction(value))

    def sign(self) -> int:
        """Exact sign, comparing a^2 against 5b^2 when the parts disagree."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        lhs, rhs = self.a * self.a, 5 * self.b * self.b
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other: object) -> "QuadRat":
        if isinstance(other, QuadRat):
            return QuadRat(self.a + other.a, self.b + other.b)
        if isinstance(other, Rational):
            return QuadRat(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "QuadRat":
        return QuadRat(-self.a, -self.b)

    def __sub__(self, other: object) -> "QuadRat":
        if isinstance(other, (QuadRat, Rational)):
            return self + (-QuadRat.of(other))
        return NotImplemented

    def __rsub__(self, other: object) -> "QuadRat":
        if isinstance(other, Rational):
            return QuadRat.of(other) - self
        return NotImplemented

    def __mul__(self, other: object) -> "QuadRat":
        if isinstance(other, QuadRat):
            return QuadRat(
                self.a * other.a + 5 * self.b * other.b,
                self.a * other.b + self.b * other.a,
            )
        if isinstance(other, Rational):
            return QuadRat(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def _cmp(self, other: object) -> Optional[int]:
        if isinstance(other, (QuadRat, Rational)):
            return (self - other).sign()
        return None

    def __eq__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0  # type: ignore[return-value]

    def __lt__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0  # type: ignore[return-value]

    def __le__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0  # type: ignore[return-value]

    def __gt__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0  # type: ignore[return-value]

    def __ge__(self, other: object) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0  # type: ignore[return-value]

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 5 ** 0.5

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        root = "sqrt5" if self.b == 1 else f"{format_rational(self.b)}*sqrt5"
        if self.a == 0:
            return root
        return f"{format_rational(self.a)}+{root}"


# 4cos^2(pi/5) = (3 + sqrt 5) / 2
GOLDEN_HAT = QuadRat(Fraction(3, 2), Fraction(1, 2))


# ---------------------------------------------------------------------------
# Certified 4cos^2(pi/p)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _cos_sq_enclosure(p: int, prec: int) -> tuple[Fraction, Fraction]:
    saved = iv.prec
    iv.prec = prec
    try:
        c = iv.cos(iv.pi / p)
        value = 4 * c * c
        lo, hi = value._mpi_
    finally:
        iv.prec = saved
    return Fraction(*libmp.to_rational(lo)), Fraction(*libmp.to_rational(hi))


@dataclass(frozen=True)
class CosSq:
    """The irrational ``4cos^2(pi/p)`` for an integer ``p >= 7``."""

    p: int

    def __post_init__(self) -> None:
        if self.p < 7:
            raise ValueError(f"CosSq is reserved for p >= 7, got {self.p}")

    def enclosure(self, step: int) -> tuple[Fraction, Fraction]:
        """Rational bounds valid at ``cos_base_precision + step`` bits."""
        return _cos_sq_enclosure(self.p, settings.cos_base_precision + step)

    def __float__(self) -> float:
        with mp.workprec(64):
            return float(4 * mp.cos(mp.pi / self.p) ** 2)

    def __str__(self) -> str:
        return f"4cos^2(pi/{self.p})"


HatValue = Union[Fraction, QuadRat, CosSq]


@dataclass(frozen=True)
class HatSum:
    """``quad + sum(coeff * CosSq(p))`` with non-negative rational coefficients."""

    quad: QuadRat = field(default_factory=lambda: QuadRat(Fraction(0)))
    cos_terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def of(cls, value: Union["HatSum", HatValue, int]) -> "HatSum":
        if isinstance(value, HatSum):
            return value
        if isinstance(value, CosSq):
            return cls(QuadRat(Fraction(0)), ((value.p, Fraction(1)),))
        return cls(QuadRat.of(value))

    def __add__(self, other: object) -> "HatSum":
        if isinstance(other, (HatSum, QuadRat, CosSq, Rational)):
            rhs = HatSum.of(other)
            terms: dict[int, Fraction] = dict(self.cos_terms)
            for p, c in rhs.cos_terms:
                terms[p] = terms.get(p, Fraction(0)) + c
            merged = tuple(sorted((p, c) for p, c in terms.items() if c != 0))
            return HatSum(self.quad + rhs.quad, merged)
        return NotImplemented

    __radd__ = __add__

    def scale(self, factor: Rational) -> "HatSum":
        c = Fraction(factor)
        if c < 0:
            raise ValueError("HatSum only supports non-negative scaling")
        terms = tuple((p, k * c) for p, k in self.cos_terms if k * c != 0)
        return HatSum(self.quad * c, terms)

    def is_exact(self) -> bool:
        return not self.cos_terms

    def bounds(self, step: Optional[int]) -> tuple[QuadRat, QuadRat]:
        """Lower/upper bound; ``step=None`` uses the coarse open range (3, 4)."""
        lo, hi = self.quad, self.quad
        for p, c in self.cos_terms:
            low, high = (Fraction(3), Fraction(4)) if step is None else CosSq(p).enclosure(step)
            lo, hi = lo + c * low, hi + c * high
        return lo, hi

    def __float__(self) -> float:
        return float(self.quad) + sum(float(c) * float(CosSq(p)) for p, c in self.cos_terms)

    def __str__(self) -> str:
        parts = [] if self.quad == 0 and self.cos_terms else [str(self.quad)]
        for p, c in self.cos_terms:
            parts.append(str(CosSq(p)) if c == 1 else f"{format_rational(c)}*{CosSq(p)}")
        return "+".join(parts)


# ---------------------------------------------------------------------------
# Comparison against rational thresholds
# ---------------------------------------------------------------------------

def rat_cmp(
    a: Union[Weight, QuadRat, CosSq, HatSum],
    b: Rational,
    max_steps: Optional[int] = None,
) -> Ordering:
    """Exact ordering of ``a`` against the rational ``b``."""
    threshold = Fraction(b)
    if isinstance(a, Infinity):
        return Ordering.GREATER
    if isinstance(a, Rational):
        return Ordering.of(_sign(Fraction(a) - threshold))
    if isinstance(a, QuadRat):
        return Ordering.of((a - threshold).sign())

    value = HatSum.of(a)
    if value.is_exact():
        return Ordering.of((value.quad - threshold).sign())

    # Coarse range first: every CosSq lies strictly inside (3, 4).
    lo, hi = value.bounds(None)
    if (lo - threshold).sign() >= 0:
        return Ordering.GREATER
    if (hi - threshold).sign() <= 0:
        return Ordering.LESS

    steps = settings.cos_refinement_steps if max_steps is None else max_steps
    for step in range(steps + 1):
        lo, hi = value.bounds(step)
        if (lo - threshold).sign() > 0:
            logger.debug("rat_cmp(%s, %s) decided at step %d", value, threshold, step)
            return Ordering.GREATER
        if (hi - threshold).sign() < 0:
            logger.debug("rat_cmp(%s, %s) decided at step %d", value, threshold, step)
            return Ordering.LESS
    raise RefinementExhausted(f"could not separate {value} from {threshold} in {steps} steps")


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def format_rational(x: Rational) -> str:
    q = Fraction(x)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_value(value: object, decimal: bool = False) -> str:
    """Render an exact value; ``decimal`` appends a float annotation."""
    if isinstance(value, Infinity):
        return "inf"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, Rational):
        text = format_rational(value)
        exact_int = Fraction(value).denominator == 1
    else:
        text = str(value)
        exact_int = False
    if decimal and not exact_int and isinstance(value, (Rational, QuadRat, CosSq, HatSum)):
        return f"{text} ({float(value):.10g})"
    return text
