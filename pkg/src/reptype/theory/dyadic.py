"""Posets with a biequivalence and dyadic sets.

A biequivalence ``~~`` is an equivalence on the pairs ``(s, t)`` with
``s <= t``. Degenerate pairs ``(s, s)`` carry the point equivalence ``~``;
strict pairs carry the rank: ``x <| y`` when ``(x, y)`` is alone in its class,
``x => y`` otherwise. 1-chains are chains whose comparable pairs all have
rank one.

A dyadic set has classes of at most two points, each class comparable. Its
``=>`` pairs are the edges; finiteness is decided from rho of the underlying
poset with equivalence and the three edge conditions below.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import chain as iter_chain
from itertools import combinations, product
from typing import Iterable, Iterator, Literal, Optional, Sequence, Union

import networkx as nx

from reptype.core.config import settings
from reptype.core.errors import AxiomViolation, NotComparable, SchemaError, check_cap
from reptype.theory.equiv_posets import EquivPoset
from reptype.theory.exact import INF, ExtNat, Infinity
from reptype.theory.posets import Poset, bits, make_poset, popcount
from reptype.theory.separating import mu3, sort_desc

logger = logging.getLogger(__name__)

Pair = tuple[int, int]
Edge = tuple[int, int]
EdgeOrder = Literal["containment", "literal"]
ConditionAScope = Literal["all", "long"]
MotifMode = Literal["ordered", "strict"]


class PairRelation(str, Enum):
    TRIANGLE = "<|"
    DOUBLE_ARROW = "=>"
    INCOMPARABLE = "><"
    ABOVE = ">"


# ---------------------------------------------------------------------------
# Biequivalence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BiequivPoset(EquivPoset):
    """Poset with point classes and classes of strict pairs (only non-trivial ones listed)."""

    pair_classes: tuple[tuple[Pair, ...], ...] = ()

    def __post_init__(self) -> None:
        super().__post_init__()
        seen: set[Pair] = set()
        normalized = []
        for cls in self.pair_classes:
            members = tuple(sorted(set(tuple(p) for p in cls)))  # type: ignore[misc]
            for s, t in members:
                if not self.base.less(s, t):
                    raise SchemaError(f"pair ({s}, {t}) is not a strict comparison")
                if (s, t) in seen:
                    raise SchemaError(f"pair ({s}, {t}) appears in two classes")
                seen.add((s, t))
            if len(members) > 1:
                normalized.append(members)
        object.__setattr__(self, "pair_classes", tuple(sorted(normalized)))

    @classmethod
    def build(
        cls,
        base: Poset,
        pair_classes: Iterable[Sequence[Sequence[int]]],
        classes: Iterable[Sequence[int]] = (),
        validate: bool = True,
    ):  # type: ignore[no-untyped-def]
        """Split classes into point classes (degenerate pairs) and strict pair classes."""
        point_classes = [list(c) for c in classes]
        strict: list[list[Pair]] = []
        for raw in pair_classes:
            pairs = [(int(p[0]), int(p[1])) for p in raw]
            degenerate = [s for s, t in pairs if s == t]
            if degenerate and len(degenerate) != len(pairs):
                raise AxiomViolation("iii", f"degenerate and strict pairs share a class: {pairs}")
            if degenerate:
                point_classes.append(degenerate)
            else:
                strict.append(pairs)
        merged = _merge_classes(base.n, point_classes)
        result = cls(base, merged, tuple(tuple(c) for c in strict))
        if validate:
            result.validate()
        return result

    # -- pair classes ------------------------------------------------------

    @cached_property
    def pair_class_of(self) -> dict[Pair, tuple[Pair, ...]]:
        return {p: cls for cls in self.pair_classes for p in cls}

    def pair_class(self, s: int, t: int) -> tuple[Pair, ...]:
        """Class of ``(s, t)`` with ``s <= t``."""
        if s == t:
            return tuple((c, c) for c in self.class_of[s])
        if not self.base.less(s, t):
            raise NotComparable(f"({self.base.labels[s]}, {self.base.labels[t]}) is not a pair s <= t")
        return self.pair_class_of.get((s, t), ((s, t),))

    def equiv(self, p: Pair, q: Pair) -> bool:
        return q in self.pair_class(*p)

    def rank(self, x: int, y: int) -> int:
        return len(self.pair_class(x, y))

    def relation(self, x: int, y: int) -> PairRelation:
        if x != y and not self.base.comparable(x, y):
            return PairRelation.INCOMPARABLE
        if x != y and self.base.less(y, x):
            return PairRelation.ABOVE
        return PairRelation.TRIANGLE if self.rank(x, y) == 1 else PairRelation.DOUBLE_ARROW

    def pair_ok(self, a: int, b: int) -> bool:
        return self.rank(a, b) == 1

    @property
    def biequiv_rank(self) -> int:
        return max((len(c) for c in self.pair_classes), default=1)

    def tilde(self) -> EquivPoset:
        """Forget the pair classes, keeping the order and the point classes."""
        return EquivPoset(self.base, self.classes)

    # -- axioms ------------------------------------------------------------

    def validate(self) -> None:
        validate_biequivalence(self)

    def all_classes(self) -> Iterator[tuple[Pair, ...]]:
        for cls in self.classes:
            yield tuple((c, c) for c in cls)
        yield from self.pair_classes

    # -- restriction -------------------------------------------------------

    def restrict(self, mask: int):  # type: ignore[no-untyped-def]
        """Sub-structure on the points of ``mask`` (same class as ``self``)."""
        keep = list(bits(mask))
        pos = {old: new for new, old in enumerate(keep)}
        base = self.base.restrict(keep)
        classes = [[pos[i] for i in c if i in pos] for c in self.classes]
        pairs = []
        for cls in self.pair_classes:
            mapped = [(pos[s], pos[t]) for s, t in cls if s in pos and t in pos]
            if len(mapped) > 1:
                pairs.append(tuple(mapped))
        return type(self)(base, tuple(tuple(c) for c in classes if c), tuple(pairs))


def _merge_classes(n: int, groups: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    for group in groups:
        members = list(group)
        for i in members:
            if not 0 <= i < n:
                raise SchemaError(f"point {i} is outside 0..{n - 1}")
        graph.add_edges_from(zip(members, members[1:]))
    return tuple(tuple(sorted(c)) for c in nx.connected_components(graph))


def validate_biequivalence(B: BiequivPoset) -> None:
    """Check axioms i and ii, then the derived iii and iv."""
    labels = B.base.labels

    def show(p: Pair) -> str:
        return f"({labels[p[0]]},{labels[p[1]]})"

    for cls in B.pair_classes:
        firsts = [s for s, _ in cls]
        seconds = [t for _, t in cls]
        if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
            raise AxiomViolation("i", "pairs " + ", ".join(map(show, cls)) + " share a component")

    for cls in B.all_classes():
        for (s1, t1), (s2, t2) in combinations(cls, 2):
            for (a1, b1), (a2, b2) in (((s1, t1), (s2, t2)), ((s2, t2), (s1, t1))):
                interval1 = [x for x in range(B.n) if B.base.leq(a1, x) and B.base.leq(x, b1)]
                interval2 = [x for x in range(B.n) if B.base.leq(a2, x) and B.base.leq(x, b2)]
                for x1 in interval1:
                    matches = [
                        x2 for x2 in interval2
                        if B.equiv((a1, x1), (a2, x2)) and B.equiv((x1, b1), (x2, b2))
                    ]
                    if len(matches) != 1:
                        raise AxiomViolation(
                            "ii",
                            f"{show((a1, b1))} ~ {show((a2, b2))} interpolates {labels[x1]} "
                            f"in {len(matches)} ways",
                        )

    for cls in B.pair_classes:
        for (s1, t1), (s2, t2) in combinations(cls, 2):
            if s2 not in B.class_of[s1] or t2 not in B.class_of[t1]:
                raise AxiomViolation("iv", f"{show((s1, t1))} ~ {show((s2, t2))} with inequivalent ends")


def is_transitive_biequiv(B: BiequivPoset) -> bool:
    for cls in B.pair_classes:
        for (s1, t1), (s2, t2) in combinations(cls, 2):
            for u1 in bits(B.base.up[t1]):
                for t, u2 in B.pair_class(t1, u1):
                    if t != t2 or (t1, u1) == (t2, u2):
                        continue
                    if not B.equiv((s1, u1), (s2, u2)):
                        return False
    return True


def p_hat(B: BiequivPoset) -> dict[int, ExtNat]:
    return dict(B.weights)


@dataclass(frozen=True)
class NecessaryBounds:
    rho: Union[Fraction, Infinity]
    mu: Union[Fraction, Infinity]

    @property
    def holds(self) -> bool:
        return not isinstance(self.rho, Infinity) and self.rho < 4 and not isinstance(
            self.mu, Infinity
        ) and self.mu < 4


def necessary_bounds(B: BiequivPoset) -> NecessaryBounds:
    """rho and mu with the 1-chain weights; both below 4 is necessary for finiteness."""
    check_cap("dyadic", B.n, settings.max_dyadic_points)
    return NecessaryBounds(rho=B.rho(), mu=B.mu())


# ---------------------------------------------------------------------------
# Dyadic sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DyadicSet(BiequivPoset):
    """Biequivalence of dimension <= 2 in which s and s* are comparable."""

    def validate(self) -> None:
        super().validate()
        labels = self.base.labels
        for cls in self.classes:
            if len(cls) > 2:
                raise AxiomViolation("dyadic", f"class {[labels[i] for i in cls]} has dimension > 2")
            if len(cls) == 2 and not self.base.comparable(*cls):
                raise AxiomViolation("dyadic", f"{labels[cls[0]]} and {labels[cls[1]]} are incomparable")
        for x, y in self.edges:
            xs, ys = self.dual_edge((x, y))
            if self.base.less(x, xs) and not self.base.less(y, ys):
                raise AxiomViolation("dyadic", f"edge ({labels[x]},{labels[y]}) reverses its dual")

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(p for cls in self.pair_classes for p in cls))

    def dual_edge(self, edge: Edge) -> Edge:
        cls = self.pair_class(*edge)
        return cls[0] if cls[1] == edge else cls[1]

    def interval(self, edge: Edge) -> int:
        x, y = edge
        return self.base.up[x] & self.base.down[y]

    def length(self, edge: Edge) -> int:
        return popcount(self.interval(edge))


def edge_leq(D: DyadicSet, sigma: Edge, tau: Edge, order: EdgeOrder = "containment") -> bool:
    (x, y), (xb, yb) = sigma, tau
    leq = D.base.leq
    if order == "literal":
        return leq(xb, x) and leq(yb, y)
    return leq(xb, x) and leq(y, yb)


@dataclass(frozen=True)
class EdgeKind:
    short: bool
    maximal: bool

    @property
    def long(self) -> bool:
        return not self.short


def edge_shortness(D: DyadicSet, order: Optional[EdgeOrder] = None) -> dict[Edge, EdgeKind]:
    order = settings.edge_order if order is None else order
    kinds = {}
    for sigma in D.edges:
        others = [tau for tau in D.edges if tau != sigma]
        short = not any(edge_leq(D, tau, sigma, order) for tau in others)
        maximal = not any(edge_leq(D, sigma, tau, order) for tau in others)
        kinds[sigma] = EdgeKind(short=short, maximal=maximal)
    return kinds


def strips(D: DyadicSet, order: Optional[EdgeOrder] = None) -> list[tuple[int, ...]]:
    """Maximal runs d_1 => ... => d_t of short edges with no edge into d_1 or out of d_t."""
    kinds = edge_shortness(D, order)
    heads = {y for _, y in D.edges}
    tails = {x for x, _ in D.edges}
    short_out: dict[int, list[int]] = {}
    for (x, y), kind in kinds.items():
        if kind.short:
            short_out.setdefault(x, []).append(y)

    found: list[tuple[int, ...]] = []

    def walk(path: list[int]) -> None:
        last = path[-1]
        if last not in tails:
            found.append(tuple(path))
            return
        for nxt in short_out.get(last, []):
            walk(path + [nxt])

    for d in range(D.n):
        if D.is_big(d) and d not in heads:
            walk([d])
    return sorted(found)


# ---------------------------------------------------------------------------
# Equipment and bordering sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Equipment:
    edge: Edge
    interval: int
    length: int
    eq_set: int
    eq: ExtNat
    eq_minus: int
    eq_plus: int

    @property
    def equipped(self) -> bool:
        return self.eq_set != 0

    @property
    def linearly_equipped(self) -> bool:
        return not isinstance(self.eq, Infinity)


def eq_value(D: DyadicSet, x: int, y: int) -> ExtNat:
    """eq(x, y): weight of the points incomparable to both x and y."""
    return D.set_weight(D.base.incomp[x] & D.base.incomp[y])


def equipment(D: DyadicSet, sigma: Edge) -> Equipment:
    x, y = sigma
    inner = D.interval(sigma)
    eq_set = D.base.incomp[x] & D.base.incomp[y]
    minus = D.base.incomp[y]
    plus = D.base.incomp[x]
    for z in bits(inner):
        minus &= D.base.incomp[z]
        plus &= D.base.incomp[z]
    return Equipment(
        edge=sigma,
        interval=inner,
        length=popcount(inner),
        eq_set=eq_set,
        eq=D.set_weight(eq_set),
        eq_minus=minus,
        eq_plus=plus,
    )


@dataclass(frozen=True)
class BorderingSet:
    z_minus: int = 0
    z_plus: int = 0
    z_e: int = 0

    @property
    def points(self) -> int:
        return self.z_minus | self.z_plus | self.z_e


def _one_chains(D: DyadicSet, mask: int) -> list[int]:
    found = [0]
    for size in range(1, popcount(mask) + 1):
        for subset in combinations(list(bits(mask)), size):
            m = sum(1 << i for i in subset)
            if D.is_one_chain(m):
                found.append(m)
    return found


def _apart(D: DyadicSet, a: int, b: int) -> bool:
    return all(D.base.incomp[i] & b == b for i in bits(a))


def bordering_sets(D: DyadicSet, sigma: Edge) -> Iterator[BorderingSet]:
    ctx = equipment(D, sigma)
    finite = sum(1 << i for i, w in D.weights.items() if not isinstance(w, Infinity))
    check_cap("bordering candidates", popcount((ctx.eq_minus | ctx.eq_plus | ctx.eq_set) & finite),
              settings.max_bordering_points)
    z_es = _one_chains(D, ctx.eq_set & finite)
    if ctx.length >= 2:
        z_minuses, z_pluses = [0], [0]
    else:
        z_minuses = _one_chains(D, ctx.eq_minus & finite)
        z_pluses = _one_chains(D, ctx.eq_plus & finite)
    for zm, zp, ze in product(z_minuses, z_pluses, z_es):
        if _apart(D, zm, zp) and _apart(D, zm, ze) and _apart(D, zp, ze):
            yield BorderingSet(zm, zp, ze)


@dataclass(frozen=True)
class EdgeParameters:
    """The numbers entering mu(sigma, X)."""

    length: int
    eq: ExtNat
    eq_star: ExtNat
    eq_minus: ExtNat
    eq_plus: ExtNat

    @property
    def eq_star_total(self) -> ExtNat:
        return self.eq_star + self.eq_minus + self.eq_plus  # type: ignore[operator]

    @property
    def mu(self) -> ExtNat:
        return mu3(self.eq, self.eq_star_total, self.length)

    def normalized(self) -> "EdgeParameters":
        """Swap the one-sided terms so that eq_minus >= eq_plus."""
        lo, hi = sort_desc((self.eq_minus, self.eq_plus))[::-1]
        return EdgeParameters(self.length, self.eq, self.eq_star, hi, lo)

    def as_tuple(self) -> tuple[ExtNat, ...]:
        return (self.length, self.eq, self.eq_star, self.eq_minus, self.eq_plus)


def edge_parameters(D: DyadicSet, sigma: Edge, X: BorderingSet) -> EdgeParameters:
    ctx = equipment(D, sigma)
    cap = abs(2 - ctx.length)
    star = eq_value(D, *D.dual_edge(sigma))
    return EdgeParameters(
        length=ctx.length,
        eq=D.set_weight(X.z_e),
        eq_star=star,
        eq_minus=min(D.set_weight(X.z_minus), cap),  # type: ignore[type-var]
        eq_plus=min(D.set_weight(X.z_plus), cap),  # type: ignore[type-var]
    )


def mu_sigma(D: DyadicSet, sigma: Edge, X: BorderingSet) -> ExtNat:
    return edge_parameters(D, sigma, X).mu


# ---------------------------------------------------------------------------
# Finiteness
# ---------------------------------------------------------------------------

@dataclass
class ConditionFailure:
    condition: str
    edge: Optional[Edge] = None
    detail: dict = field(default_factory=dict)


@dataclass
class DyadicVerdict:
    finite: bool
    rho_tilde: Union[Fraction, Infinity]
    failure: Optional[ConditionFailure] = None
    bounds: Optional[NecessaryBounds] = None
    components: list["DyadicVerdict"] = field(default_factory=list)

    @property
    def reason(self) -> Optional[str]:
        return None if self.failure is None else self.failure.condition


def check_condition_a(D: DyadicSet, scope: Optional[ConditionAScope] = None,
                      order: Optional[EdgeOrder] = None) -> Optional[ConditionFailure]:
    scope = settings.condition_a_scope if scope is None else scope
    kinds = edge_shortness(D, order)
    for sigma in D.edges:
        if scope == "long" and kinds[sigma].short:
            continue
        for X in bordering_sets(D, sigma):
            params = edge_parameters(D, sigma, X)
            value = params.mu
            if isinstance(value, Infinity) or value >= 4:
                return ConditionFailure(
                    "A", sigma, {"mu": value, "parameters": params.normalized(), "bordering": X}
                )
    return None


def check_condition_b(D: DyadicSet) -> Optional[ConditionFailure]:
    for sigma in D.edges:
        ctx = equipment(D, sigma)
        if ctx.length != 1 or ctx.eq != 3:
            continue
        for end in sigma:
            outside = D.base.incomp[end]
            for u in bits(ctx.eq_set):
                outside &= D.base.incomp[u]
            if outside:
                return ConditionFailure("B", sigma, {"end": end, "incomparable": list(bits(outside))})
    return None


def motif_occurrences(D: DyadicSet, mode: Optional[MotifMode] = None) -> Iterator[tuple[Edge, Edge]]:
    """Edges (a, b), (c, d) with b <= c (b < c when strict), not dual to each other."""
    mode = settings.condition_c_motif if mode is None else mode
    for first in D.edges:
        dual = D.dual_edge(first)
        b = first[1]
        for second in D.edges:
            if second in (first, dual):
                continue
            c = second[0]
            linked = D.base.less(b, c) if mode == "strict" else D.base.leq(b, c)
            if linked:
                yield first, second


def check_condition_c(D: DyadicSet, mode: Optional[MotifMode] = None) -> Optional[ConditionFailure]:
    for (a, b), (c, d) in motif_occurrences(D, mode):
        a_s, b_s = D.dual_edge((a, b))
        c_s, d_s = D.dual_edge((c, d))
        values = (eq_value(D, a, d), eq_value(D, a_s, b_s), eq_value(D, c_s, d_s))
        if mu3(*values) != 0:
            return ConditionFailure("C", (a, b), {"second": (c, d), "eq": values})
    return None


def classify_dyadic(
    D: DyadicSet,
    order: Optional[EdgeOrder] = None,
    scope: Optional[ConditionAScope] = None,
    motif: Optional[MotifMode] = None,
) -> DyadicVerdict:
    check_cap("dyadic", D.n, settings.max_dyadic_points)
    parts = split_components(D)
    if parts is not None:
        verdicts = [classify_dyadic(part, order, scope, motif) for part in parts]
        failed = next((v for v in verdicts if not v.finite), None)
        rho_values = [v.rho_tilde for v in verdicts]
        rho_t = INF if any(isinstance(r, Infinity) for r in rho_values) else max(rho_values)
        return DyadicVerdict(
            finite=failed is None,
            rho_tilde=rho_t,
            failure=None if failed is None else failed.failure,
            bounds=necessary_bounds(D),
            components=verdicts,
        )

    rho_t = D.tilde().rho()
    verdict = DyadicVerdict(finite=False, rho_tilde=rho_t, bounds=necessary_bounds(D))
    if isinstance(rho_t, Infinity) or rho_t >= 4:
        verdict.failure = ConditionFailure("rho", None, {"rho": rho_t})
        return verdict
    failure = (
        check_condition_a(D, scope, order)
        or check_condition_b(D)
        or check_condition_c(D, motif)
    )
    verdict.failure = failure
    verdict.finite = failure is None
    return verdict


# ---------------------------------------------------------------------------
# Decomposition and criticality
# ---------------------------------------------------------------------------

def split_components(D: BiequivPoset) -> Optional[list]:  # type: ignore[type-arg]
    """Ordinal summands held together by incomparability and (bi)equivalence.

    Returns the parts bottom first when there are at least two, every point of
    a lower part lies strictly below every point of a higher part, and each
    such pair has rank one; otherwise None.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(D.n))
    for i in range(D.n):
        graph.add_edges_from((i, j) for j in bits(D.base.incomp[i]))
    for cls in D.classes:
        graph.add_edges_from(zip(cls, cls[1:]))
    for cls in D.pair_classes:
        ends = list(iter_chain.from_iterable(cls))
        graph.add_edges_from(zip(ends, ends[1:]))
    comps = [sorted(c) for c in nx.connected_components(graph)]
    if len(comps) < 2:
        return None
    comps.sort(key=lambda c: min(popcount(D.base.down[i]) for i in c))
    for lower, upper in combinations(comps, 2):
        for u, v in product(lower, upper):
            # a class or pair class can straddle another summand
            if not D.base.less(u, v) or D.rank(u, v) != 1:
                return None
    return [D.restrict(sum(1 << i for i in c)) for c in comps]


def _star_closed_masks(D: DyadicSet) -> Iterator[int]:
    """Maximal proper *-subsets: drop one point class."""
    for cls in D.classes:
        yield D.base.full_mask & ~sum(1 << i for i in cls)


def _strengthenings(D: DyadicSet) -> Iterator[DyadicSet]:
    for i in range(D.n):
        for j in bits(D.base.incomp[i]):
            pairs = [(a, b) for a in range(D.n) for b in bits(D.base.up[a])] + [(i, j)]
            base = make_poset(D.n, pairs, D.base.labels)
            try:
                candidate = DyadicSet(base, D.classes, D.pair_classes)
                candidate.validate()
            except (AxiomViolation, SchemaError):
                continue
            yield candidate


def _weakenings(D: DyadicSet) -> Iterator[DyadicSet]:
    for k in range(len(D.pair_classes)):
        rest = D.pair_classes[:k] + D.pair_classes[k + 1:]
        candidate = DyadicSet(D.base, D.classes, rest)
        try:
            candidate.validate()
        except AxiomViolation:
            continue
        yield candidate
    for k, cls in enumerate(D.classes):
        if len(cls) < 2:
            continue
        classes = D.classes[:k] + tuple((i,) for i in cls) + D.classes[k + 1:]
        try:
            candidate = DyadicSet(D.base, classes, D.pair_classes)
            candidate.validate()
        except AxiomViolation:
            continue
        yield candidate


def is_critical_dyadic(D: DyadicSet) -> bool:
    check_cap("dyadic", D.n, settings.max_dyadic_points)
    if classify_dyadic(D).finite:
        return False
    for mask in _star_closed_masks(D):
        if mask and not classify_dyadic(D.restrict(mask)).finite:
            return False
    for neighbour in iter_chain(_strengthenings(D), _weakenings(D)):
        if not classify_dyadic(neighbour).finite:
            return False
    return True


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _comparable_matchings(S: Poset) -> Iterator[list[tuple[int, int]]]:
    pairs = [(a, b) for a in range(S.n) for b in bits(S.up[a])]

    def extend(start: int, used: int, chosen: list[tuple[int, int]]) -> Iterator[list[tuple[int, int]]]:
        yield list(chosen)
        for k in range(start, len(pairs)):
            a, b = pairs[k]
            if used >> a & 1 or used >> b & 1:
                continue
            yield from extend(k + 1, used | 1 << a | 1 << b, chosen + [(a, b)])

    yield from extend(0, 0, [])


def enumerate_dyadic_sets(max_points: int, min_points: int = 1) -> Iterator[DyadicSet]:
    """Every valid dyadic set on up to ``max_points`` points, posets taken up to isomorphism."""
    from reptype.theory.enumeration import enumerate_posets

    check_cap("dyadic enumeration", max_points, settings.max_enumeration_size)
    for n in range(min_points, max_points + 1):
        for S in enumerate_posets(n):
            for matching in _comparable_matchings(S):
                partner = {}
                for a, b in matching:
                    partner[a], partner[b] = b, a
                candidates = []
                for x in partner:
                    for y in bits(S.up[x]):
                        if y in partner and (x, y) < (partner[x], partner[y]) and S.less(partner[x], partner[y]):
                            candidates.append(((x, y), (partner[x], partner[y])))
                classes = tuple(tuple(sorted(p)) for p in matching) + tuple(
                    (i,) for i in range(n) if i not in partner
                )
                for size in range(len(candidates) + 1):
                    for chosen in combinations(candidates, size):
                        try:
                            D = DyadicSet(S, classes, tuple(chosen))
                            D.validate()
                        except (AxiomViolation, SchemaError):
                            continue
                        yield D


def enumerate_mu4_groups() -> list[frozenset[tuple[int, ...]]]:
    """Parameter tuples (l, eq, eq*, eq-, eq+) with mu = 4 in the edge condition.

    One-sided terms satisfy eq- >= eq+, are bounded by |2 - l| and vanish for
    l >= 2. Tuples without one-sided terms are grouped with their (eq, eq*) swap.
    """
    found: set[tuple[int, ...]] = set()
    for length in range(0, 5):
        bound = 0 if length >= 2 else abs(2 - length)
        for eq, eq_star in product(range(5), repeat=2):
            for eq_minus in range(bound + 1):
                for eq_plus in range(eq_minus + 1):
                    params = EdgeParameters(length, eq, eq_star, eq_minus, eq_plus)
                    if params.mu == 4:
                        found.add(params.as_tuple())  # type: ignore[arg-type]
    groups: list[frozenset[tuple[int, ...]]] = []
    seen: set[tuple[int, ...]] = set()
    for tup in sorted(found):
        if tup in seen:
            continue
        length, eq, eq_star, eq_minus, eq_plus = tup
        group = {tup}
        if eq_minus == eq_plus == 0:
            swapped = (length, eq_star, eq, 0, 0)
            if swapped in found:
                group.add(swapped)
        seen |= group
        groups.append(frozenset(group))
    return groups
