"""Norm of a binary relation and the function P.

The norm ``||R||`` is the minimum of ``f_R(x) = sum R(i, j) x_i x_j`` over the
standard simplex. It is computed exactly by enumerating supports: on each face
the stationarity system

    sum_{j in T} r_ij x_j = 2*lam   (i in T),   sum_{j in T} x_j = 1

is solved with fraction-free elimination, non-negative solutions are kept as
candidates, and the least candidate value is the norm. Singular faces are
skipped; their value recurs on a smaller face.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from reptype.core.config import settings
from reptype.core.errors import DimensionMismatch, InputError, SchemaError, check_cap
from reptype.theory.exact import INF, Infinity

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """A binary relation on ``{0, ..., n-1}`` stored as a boolean matrix."""

    n: int
    incidence: tuple[tuple[bool, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise SchemaError("relation size must be >= 0")
        if len(self.incidence) != self.n or any(len(row) != self.n for row in self.incidence):
            raise DimensionMismatch(f"incidence matrix is not {self.n}x{self.n}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Relation":
        rows = [[False] * n for _ in range(n)]
        for pair in pairs:
            i, j = pair
            if not (0 <= i < n and 0 <= j < n):
                raise SchemaError(f"pair ({i}, {j}) is outside 0..{n - 1}")
            rows[i][j] = True
        return cls(n, tuple(tuple(r) for r in rows))

    @classmethod
    def from_matrix(cls, rows: Sequence[str]) -> "Relation":
        n = len(rows)
        parsed = []
        for text in rows:
            if len(text) != n or set(text) - {"0", "1"}:
                raise SchemaError(f"matrix row {text!r} is not a 0/1 string of length {n}")
            parsed.append(tuple(ch == "1" for ch in text))
        return cls(n, tuple(parsed))

    @classmethod
    def complete(cls, n: int) -> "Relation":
        return cls(n, tuple(tuple(True for _ in range(n)) for _ in range(n)))

    @classmethod
    def equality(cls, n: int) -> "Relation":
        return cls(n, tuple(tuple(i == j for j in range(n)) for i in range(n)))

    def R(self, i: int, j: int) -> int:
        return int(self.incidence[i][j])

    def r(self, i: int, j: int) -> int:
        """Symmetrised incidence, ``2*R(i, i)`` on the diagonal."""
        return self.R(i, j) + self.R(j, i)

    @property
    def is_reflexive(self) -> bool:
        return all(self.incidence[i][i] for i in range(self.n))

    @property
    def is_complete(self) -> bool:
        return all(all(row) for row in self.incidence)

    def restrict(self, indices: Sequence[int]) -> "Relation":
        idx = list(indices)
        return Relation(len(idx), tuple(tuple(self.incidence[i][j] for j in idx) for i in idx))

    def remove(self, s: int) -> "Relation":
        return self.restrict([i for i in range(self.n) if i != s])

    def to_matrix(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self.incidence]


@dataclass(frozen=True)
class Candidate:
    """A non-negative stationary point of ``f_R`` on one face."""

    support: tuple[int, ...]
    coords: tuple[Fraction, ...]
    value: Fraction


@dataclass(frozen=True)
class NormCertificate:
    value: Fraction
    witness: tuple[Fraction, ...]
    support: tuple[int, ...]

    @property
    def p(self) -> Union[Fraction, Infinity]:
        return INF if self.value == 0 else 1 / self.value


@dataclass
class FaithfulnessReport:
    faithful: bool
    p: Union[Fraction, Infinity]
    witness: Optional[int] = None
    reduced: dict[int, Union[Fraction, Infinity]] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Quadratic form
# ---------------------------------------------------------------------------

def quadratic_value(R: Relation, x: Sequence[Fraction]) -> Fraction:
    if len(x) != R.n:
        raise DimensionMismatch(f"vector of length {len(x)} for relation of size {R.n}")
    total = Fraction(0)
    for i in range(R.n):
        if x[i] == 0:
            continue
        row = R.incidence[i]
        total += x[i] * sum((x[j] for j in range(R.n) if row[j]), Fraction(0))
    return total


def _solve_bareiss(a: list[list[int]], b: list[int]) -> Optional[list[Fraction]]:
    """Solve ``a x = b`` over Q for an integer matrix; ``None`` when singular."""
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    prev = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if m[r][k] != 0), None)
        if pivot is None:
            return None
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n + 1):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x: list[Fraction] = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n]) - sum((m[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        x[i] = acc / m[i][i]
    return x


def _face_candidate(R: Relation, support: tuple[int, ...]) -> Optional[Candidate]:
    k = len(support)
    a = [[R.r(i, j) for j in support] + [-1] for i in support]
    a.append([1] * k + [0])
    solution = _solve_bareiss(a, [0] * k + [1])
    if solution is None:
        return None
    xs, mu = solution[:k], solution[k]
    if any(v < 0 for v in xs):
        return None
    coords = [Fraction(0)] * R.n
    for i, v in zip(support, xs):
        coords[i] = v
    # f_R(x) = x^T r x / 2 = mu / 2 on a stationary face
    return Candidate(support, tuple(coords), mu / 2)


def stationary_candidates(R: Relation, cap: Optional[int] = None) -> list[Candidate]:
    """Non-negative stationary points on every nonsingular face."""
    check_cap("relation", R.n, settings.max_relation_size if cap is None else cap)
    found: list[Candidate] = []
    faces = 0
    for size in range(1, R.n + 1):
        for support in combinations(range(R.n), size):
            faces += 1
            cand = _face_candidate(R, support)
            if cand is not None:
                found.append(cand)
    logger.debug("relation n=%d: %d faces, %d candidates", R.n, faces, len(found))
    return found


def _best(candidates: Iterable[Candidate]) -> Optional[Candidate]:
    best: Optional[Candidate] = None
    for cand in candidates:
        if best is None or (cand.value, cand.coords) < (best.value, best.coords):
            best = cand
    return best


def _certificate(cand: Candidate) -> NormCertificate:
    support = tuple(i for i, v in enumerate(cand.coords) if v != 0)
    return NormCertificate(cand.value, cand.coords, support)


# ---------------------------------------------------------------------------
# Norm and P
# ---------------------------------------------------------------------------

def norm(R: Relation, cap: Optional[int] = None) -> NormCertificate:
    if R.n < 1:
        raise InputError("norm needs a relation on at least one element")
    best = _best(stationary_candidates(R, cap))
    assert best is not None  # vertices are always nonsingular
    return _certificate(best)


def p_value(R: Relation, cap: Optional[int] = None) -> Union[Fraction, Infinity]:
    if R.n == 0:
        return Fraction(0)
    if not R.is_reflexive:
        logger.warning("P of a non-reflexive relation is infinite (norm 0)")
        return INF
    return norm(R, cap).p


def disjoint_union(R1: Relation, R2: Relation) -> Relation:
    n = R1.n + R2.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < R1.n and j < R1.n:
                row.append(R1.incidence[i][j])
            elif i >= R1.n and j >= R1.n:
                row.append(R2.incidence[i - R1.n][j - R1.n])
            else:
                row.append(False)
        rows.append(tuple(row))
    return Relation(n, tuple(rows))


def twins(R: Relation) -> set[tuple[int, int]]:
    pairs = set()
    for a, b in combinations(range(R.n), 2):
        if all(R.r(a, s) == R.r(b, s) for s in range(R.n) if s not in (a, b)):
            pairs.add((a, b))
    return pairs


def is_p_faithful(R: Relation, cap: Optional[int] = None) -> FaithfulnessReport:
    """Compare P(S) with P(S - {s}) for every s, reusing one face enumeration."""
    if not R.is_reflexive:
        raise InputError("P-faithfulness is defined for reflexive relations")
    candidates = stationary_candidates(R, cap)
    full = _best(candidates)
    assert full is not None
    p_full = 1 / full.value

    report = FaithfulnessReport(faithful=True, p=p_full)
    for s in range(R.n):
        # faces avoiding s are exactly the faces of R - {s}
        sub = _best(c for c in candidates if s not in c.support)
        p_sub: Union[Fraction, Infinity] = Fraction(0) if sub is None else 1 / sub.value
        report.reduced[s] = p_sub
        if report.faithful and p_sub == p_full:
            report.faithful = False
            report.witness = s
    return report
