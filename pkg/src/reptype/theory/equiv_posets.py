"""Posets with an equivalence relation.

Points in a class of size one are *small*, the others *big*. Normality of
big points, the weight function p and the values rho / mu decide the
representation type. Chains are checked through :meth:`EquivPoset.pair_ok`,
which admits every comparable pair here and only rank-one pairs for posets
with a biequivalence (see :mod:`reptype.theory.dyadic`).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from reptype.core.errors import ClassTooSmall, NotReducible, SchemaError
from reptype.theory.exact import INF, ExtNat, Infinity
from reptype.theory.posets import (
    Poset,
    RepType,
    bits,
    chain,
    classify_by_value,
    disjoint_union,
    make_poset,
    popcount,
    rho_weighted,
)
from reptype.theory.separating import rho_point

logger = logging.getLogger(__name__)

SMALL = "small"

Value = Union[Fraction, Infinity]


@dataclass(frozen=True)
class EquivPoset:
    """A poset together with a partition of its points into classes."""

    base: Poset
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = sorted(i for cls in self.classes for i in cls)
        if seen != list(range(self.base.n)):
            raise SchemaError("equivalence classes must partition the points")
        normalized = tuple(sorted(tuple(sorted(c)) for c in self.classes))
        object.__setattr__(self, "classes", normalized)

    @classmethod
    def from_classes(cls, base: Poset, classes: Iterable[Sequence[int]]) -> "EquivPoset":
        """Unlisted points become singleton classes."""
        listed = [tuple(c) for c in classes if c]
        covered = {i for c in listed for i in c}
        if len(covered) != sum(len(c) for c in listed):
            raise SchemaError("a point appears in two equivalence classes")
        listed.extend((i,) for i in range(base.n) if i not in covered)
        return cls(base, tuple(listed))

    @classmethod
    def plain(cls, base: Poset) -> "EquivPoset":
        return cls(base, tuple((i,) for i in range(base.n)))

    # -- points ------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def class_of(self) -> tuple[tuple[int, ...], ...]:
        lookup: dict[int, tuple[int, ...]] = {}
        for cls in self.classes:
            for i in cls:
                lookup[i] = cls
        return tuple(lookup[i] for i in range(self.n))

    def dim(self, s: int) -> int:
        return len(self.class_of[s])

    @property
    def dimension(self) -> int:
        return max((len(c) for c in self.classes), default=0)

    def is_big(self, s: int) -> bool:
        return self.dim(s) > 1

    def star(self, s: int) -> int:
        """The partner of a point of dimension 2."""
        cls = self.class_of[s]
        if len(cls) != 2:
            raise SchemaError(f"point {self.base.labels[s]} has dimension {len(cls)}, not 2")
        return cls[0] if cls[1] == s else cls[1]

    @cached_property
    def small_mask(self) -> int:
        return sum(1 << i for i in range(self.n) if not self.is_big(i))

    def incomparables(self, x: int) -> set[int]:
        return set(bits(self.base.incomp[x]))

    # -- chains ------------------------------------------------------------

    def pair_ok(self, a: int, b: int) -> bool:
        """Whether ``a < b`` may sit together in a chain."""
        return True

    def is_one_chain(self, mask: int) -> bool:
        if not self.base.is_chain(mask):
            return False
        return all(self.pair_ok(a, b) for a in bits(mask) for b in bits(self.base.up[a] & mask))

    def set_weight(self, mask: int, weights: Optional[dict[int, ExtNat]] = None) -> ExtNat:
        """p(Y): the weight sum over a 1-chain, inf otherwise."""
        weights = self.weights if weights is None else weights
        if not self.is_one_chain(mask):
            return INF
        total: ExtNat = 0
        for i in bits(mask):
            total = total + weights[i]  # type: ignore[operator]
        return total

    # -- normality ---------------------------------------------------------

    @cached_property
    def normality(self) -> dict[int, int]:
        """Least i for which each normal big point is i-normal."""
        degree: dict[int, int] = {}
        big = [i for i in range(self.n) if self.is_big(i)]
        for t in big:
            around = self.base.incomp[t]
            if around & ~self.small_mask == 0 and self.base.is_chain(around):
                degree[t] = 1
        level = 1
        while True:
            level += 1
            fresh = {}
            for t in big:
                if t in degree:
                    continue
                around = self.base.incomp[t]
                if not self.is_one_chain(around):
                    continue
                ok = True
                for x in bits(around):
                    if not self.is_big(x):
                        continue
                    if self.dim(x) > 2 or degree.get(self.star(x), level) >= level:
                        ok = False
                        break
                if ok:
                    fresh[t] = level
            if not fresh:
                break
            degree.update(fresh)
        return degree

    def normality_degree(self, t: int) -> Union[int, str, None]:
        if not self.is_big(t):
            return SMALL
        return self.normality.get(t)

    def is_normal(self, t: int) -> bool:
        return t in self.normality

    def conormality_degree(self, t: int) -> Optional[int]:
        if self.dim(t) != 2:
            return None
        return self.normality.get(self.star(t))

    @cached_property
    def weights(self) -> dict[int, ExtNat]:
        """The weight function p: 1 on small points, built up along conormality."""
        p: dict[int, ExtNat] = {}
        conormal: list[tuple[int, int]] = []
        for s in range(self.n):
            if not self.is_big(s):
                p[s] = 1
                continue
            level = self.conormality_degree(s)
            if level is None:
                p[s] = INF
            else:
                conormal.append((level, s))
        for _, s in sorted(conormal):
            around = self.base.incomp[self.star(s)]
            pending = [y for y in bits(around) if y not in p]
            if pending:
                # only reached when the ordering of conormal degrees is broken
                raise SchemaError(f"weight of {self.base.labels[s]} depends on undefined points")
            p[s] = 2 + self.set_weight(around, p)  # type: ignore[operator]
        return p

    # -- rho / mu ------------------------------------------------------------

    def rho(self) -> Value:
        pair_ok = None if type(self).pair_ok is EquivPoset.pair_ok else self.pair_ok
        return rho_weighted(self.base, self.weights, pair_ok)

    def mu_class(self, cls: Sequence[int]) -> Value:
        if len(cls) <= 2:
            raise ClassTooSmall(f"mu needs a class of more than two points, got {len(cls)}")
        total = Fraction(0)
        for d in cls:
            total += rho_point(self.set_weight(self.base.incomp[d]) + 1)  # type: ignore[operator]
        return total

    def mu(self) -> Value:
        values = [self.mu_class(c) for c in self.classes if len(c) > 2]
        return max(values, default=Fraction(0))


def p_tilde(S: EquivPoset) -> dict[int, ExtNat]:
    return dict(S.weights)


def classify_eqposet(S: EquivPoset) -> RepType:
    rho, mu = S.rho(), S.mu()
    worst = INF if isinstance(rho, Infinity) or isinstance(mu, Infinity) else max(rho, mu)
    logger.debug("classify_eqposet: rho=%s mu=%s", rho, mu)
    return classify_by_value(worst)


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

def _rebuild(
    S: EquivPoset,
    keep: list[int],
    block: Poset,
    anchor: int,
    block_label: str,
) -> EquivPoset:
    """Replace ``anchor`` by ``block``; block points inherit the anchor's comparabilities."""
    old = S.base
    n_keep = len(keep)
    labels = [old.labels[i] for i in keep] + [f"{block_label}{lab}" for lab in block.labels]
    pos = {o: k for k, o in enumerate(keep)}
    pairs: list[tuple[int, int]] = []
    for a in keep:
        for b in bits(old.up[a]):
            if b in pos:
                pairs.append((pos[a], pos[b]))
    for j in range(block.n):
        for k in bits(block.up[j]):
            pairs.append((n_keep + j, n_keep + k))
        for a in keep:
            if old.less(anchor, a):
                pairs.append((n_keep + j, pos[a]))
            elif old.less(a, anchor):
                pairs.append((pos[a], n_keep + j))
    base = make_poset(n_keep + block.n, pairs, labels)
    classes = []
    for cls in S.classes:
        mapped = [pos[i] for i in cls if i in pos]
        if mapped and len(mapped) == len(cls):
            classes.append(tuple(mapped))
    return EquivPoset.from_classes(base, classes)


def reduce_normal1(S: EquivPoset, x: int) -> EquivPoset:
    """Drop the 1-normal point x and blow x* up into a chain of p(x*) small points."""
    if S.dim(x) != 2 or S.normality_degree(x) != 1:
        raise NotReducible(f"point {S.base.labels[x]} is not a 1-normal point of dimension 2")
    partner = S.star(x)
    size = 2 + popcount(S.base.incomp[x])
    keep = [i for i in range(S.n) if i not in (x, partner)]
    block = chain(size)
    block = Poset(block.n, block.up, tuple(f".{j}" for j in range(1, size + 1)))
    return _rebuild(S, keep, block, partner, S.base.labels[partner])


def grid(a: int, b: int) -> Poset:
    """Cardinal product of an a-chain and a b-chain."""
    labels = [f"({i},{j})" for i in range(a) for j in range(b)]
    pairs = []
    for i in range(a):
        for j in range(b):
            if i + 1 < a:
                pairs.append((i * b + j, (i + 1) * b + j))
            if j + 1 < b:
                pairs.append((i * b + j, i * b + j + 1))
    return make_poset(a * b, pairs, labels)


def reduce_dim3(S: EquivPoset, y: int) -> EquivPoset:
    """Drop the 1-normal partners u, v of y and replace y by a grid of small points."""
    if S.dim(y) != 3:
        raise NotReducible(f"point {S.base.labels[y]} has dimension {S.dim(y)}, not 3")
    u, v = (i for i in S.class_of[y] if i != y)
    if S.normality_degree(u) != 1 or S.normality_degree(v) != 1:
        raise NotReducible(f"partners of {S.base.labels[y]} are not both 1-normal")
    rows = 2 + popcount(S.base.incomp[u])
    cols = 2 + popcount(S.base.incomp[v])
    keep = [i for i in range(S.n) if i not in (y, u, v)]
    return _rebuild(S, keep, grid(rows, cols), y, S.base.labels[y])


def grid_union_poset(u: int, a: int, b: int) -> Poset:
    """A (u-1)-chain beside the product of an (a+1)-chain and a (b+1)-chain."""
    if min(u, a, b) < 1:
        raise SchemaError("grid_union_poset needs u, a, b >= 1")
    return disjoint_union(chain(u - 1), grid(a + 1, b + 1))


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------

def is_perfectly_chain(S: EquivPoset) -> bool:
    for cls in S.classes:
        if len(cls) == 2 and not any(S.is_normal(i) for i in cls):
            return False
        if len(cls) == 3 and sum(1 for i in cls if S.normality_degree(i) == 1) < 2:
            return False
    return True


def is_quasiantichain(S: EquivPoset) -> bool:
    if S.dimension != 2:
        return False
    return not any(S.is_normal(i) for i in range(S.n) if S.is_big(i))
