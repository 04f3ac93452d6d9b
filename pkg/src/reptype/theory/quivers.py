"""Marked quivers.

Every vertex of a quiver carries a marking: a linear one (a chain of ``n``
small points), a poset with equivalence, or a dyadic set. Semilinear
markings are summed up by a vertex weight ``v`` and the quiver is decided by
the rho-degrees of the resulting v-graph. A quiver with one non-semilinear
vertex must be a path ending at that vertex; the marking together with the
number ``t`` read off the path then decides the type.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import networkx as nx

from reptype.core.errors import Disconnected, NotSemilinear, SchemaError, ShapeViolation
from reptype.theory.dyadic import (
    DyadicSet,
    bordering_sets,
    classify_dyadic,
    edge_shortness,
    equipment,
)
from reptype.theory.equiv_posets import EquivPoset, classify_eqposet
from reptype.theory.exact import INF, ExtNat, Infinity, Ordering, rat_cmp
from reptype.theory.graphs import GraphEdge, LabeledGraph, worst_vertex
from reptype.theory.posets import RepType, n_hat_copies, ordinal_summands, popcount, summands_are_small

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearMark:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise SchemaError("a linear marking needs n >= 1")


@dataclass(frozen=True)
class PosetMark:
    poset: EquivPoset


@dataclass(frozen=True)
class DyadicMark:
    dyadic: DyadicSet


Marking = Union[LinearMark, PosetMark, DyadicMark]


@dataclass
class Quiver:
    vertices: list[str]
    arrows: list[tuple[str, str]]

    def __post_init__(self) -> None:
        if not self.arrows:
            raise SchemaError("a quiver needs at least one arrow")
        known = set(self.vertices)
        for t, h in self.arrows:
            if t not in known or h not in known:
                raise SchemaError(f"arrow {t}->{h} has an unknown end")
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arrows)
        if not nx.is_connected(graph):
            raise Disconnected("quiver is not connected")


@dataclass
class MarkedQuiver:
    quiver: Quiver
    marks: dict[str, Marking] = field(default_factory=dict)

    def mark(self, x: str) -> Marking:
        return self.marks.get(x, LinearMark(1))


@dataclass
class QuiverVerdict:
    rep_type: RepType
    route: str
    t: Optional[int] = None
    vertex: Optional[str] = None
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Semilinear markings
# ---------------------------------------------------------------------------

def is_semilinear(S: EquivPoset) -> bool:
    """dim <= 2; a point has at most one incomparable point, and then it is small."""
    if S.dimension > 2:
        return False
    for i in range(S.n):
        around = S.base.incomp[i]
        if popcount(around) > 1:
            return False
        if around and S.is_big(i):
            return False
    return True


def is_linear(S: EquivPoset) -> bool:
    return S.dimension <= 1 and S.base.is_chain()


def mark_weight(mark: Marking) -> Optional[ExtNat]:
    """v of the vertex: n for linear, inf for properly semilinear, None otherwise."""
    if isinstance(mark, LinearMark):
        return mark.n
    poset = mark.poset if isinstance(mark, PosetMark) else mark.dyadic
    if isinstance(mark, DyadicMark) and mark.dyadic.edges:
        return None
    if is_linear(poset):
        return poset.n
    return INF if is_semilinear(poset) else None


def gamma_vgraph(MQ: MarkedQuiver) -> LabeledGraph:
    v: dict[str, ExtNat] = {}
    for x in MQ.quiver.vertices:
        weight = mark_weight(MQ.mark(x))
        if weight is None:
            raise NotSemilinear(f"vertex {x!r} is not semilinearly marked")
        v[x] = weight
    edges = [GraphEdge((t,) if t == h else (t, h)) for t, h in MQ.quiver.arrows]
    return LabeledGraph(list(MQ.quiver.vertices), edges, v)


def classify_semilinear(MQ: MarkedQuiver) -> QuiverVerdict:
    worst = worst_vertex(gamma_vgraph(MQ))
    rep = {
        Ordering.LESS: RepType.FINITE,
        Ordering.EQUAL: RepType.TAME,
        Ordering.GREATER: RepType.WILD,
    }[worst.ordering]
    return QuiverVerdict(rep, "rho-degree", vertex=worst.vertex,
                         notes=[f"max rho-degree {worst.value} at {worst.vertex}"])


# ---------------------------------------------------------------------------
# One non-semilinear vertex
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathShape:
    t: int
    path: tuple[str, ...]
    x_is_head: bool


def path_shape(MQ: MarkedQuiver, x: str) -> PathShape:
    """Check that the quiver is a path starting at x with the right weights."""
    Q = MQ.quiver
    graph = nx.MultiGraph()
    graph.add_nodes_from(Q.vertices)
    graph.add_edges_from(Q.arrows)
    size = len(Q.vertices)
    if any(t == h for t, h in Q.arrows) or len(Q.arrows) != size - 1 or size < 2:
        raise ShapeViolation("the quiver is not a path on at least two vertices")
    if max(d for _, d in graph.degree()) > 2:
        raise ShapeViolation("the quiver has a branch point")
    if graph.degree(x) != 1:
        raise ShapeViolation(f"{x!r} is not an end of the path")
    path = [x]
    while len(path) < size:
        nxt = [y for y in graph.neighbors(path[-1]) if y not in path]
        path.append(nxt[0])
    for a in path[1:-1]:
        if mark_weight(MQ.mark(a)) != 1:
            raise ShapeViolation(f"inner vertex {a!r} does not have v = 1")
    end = mark_weight(MQ.mark(path[-1]))
    if end is None or isinstance(end, Infinity):
        raise ShapeViolation(f"end vertex {path[-1]!r} is not linearly marked")
    t, h = next(arrow for arrow in Q.arrows if x in arrow)
    return PathShape(t=size + end - 3, path=tuple(path), x_is_head=(h == x))


def dual_mark(mark: Union[PosetMark, DyadicMark]) -> Union[PosetMark, DyadicMark]:
    """Order-reversed marking, pair classes carried along."""
    if isinstance(mark, PosetMark):
        S = mark.poset
        return PosetMark(EquivPoset(S.base.dual(), S.classes))
    D = mark.dyadic
    pairs = tuple(tuple((t, s) for s, t in cls) for cls in D.pair_classes)
    return DyadicMark(DyadicSet(D.base.dual(), D.classes, pairs))


def _threshold(t: int) -> Fraction:
    return 3 - Fraction(t - 1, t + 1)


def _small_summand_shape(S: EquivPoset) -> bool:
    """Ordinal sum of (1), (1,1), (1,2) with the placement rules for big points."""
    if next(n_hat_copies(S.base), None) is not None or not summands_are_small(S.base):
        return False
    for part in ordinal_summands(S.base):
        mask = sum(1 << i for i in part)
        if len(part) == 3:
            if any(S.is_big(i) for i in part):
                return False
        elif len(part) == 2 and S.base.is_antichain(mask):
            for s in part:
                if S.is_big(s) and S.base.incomp[S.star(s)]:
                    return False
    return True


def classify_eqposet_marked(S: EquivPoset, t: int) -> RepType:
    """Type of a quiver marked by S at the end of a path with parameter t >= 1."""
    rho = S.rho()
    if t == 1:
        if S.dimension <= 2 and rat_cmp(rho, Fraction(3)) is Ordering.LESS:
            return RepType.FINITE
        if S.dimension <= 3 and _tame_t1(S, rho):
            return RepType.TAME
        return RepType.WILD
    if S.dimension > 2:
        return RepType.WILD
    position = rat_cmp(rho, _threshold(t))
    if 2 <= t <= 4 and position is Ordering.LESS:
        if t < 4 or _small_summand_shape(S):
            return RepType.FINITE
    if 2 <= t <= 5 and position is Ordering.EQUAL:
        if t < 5 or _small_summand_shape(S):
            return RepType.TAME
    return RepType.WILD


def _tame_t1(S: EquivPoset, rho: Union[Fraction, Infinity]) -> bool:
    if S.dimension < 3:
        return rat_cmp(rho, Fraction(3)) is Ordering.EQUAL
    for cls in S.classes:
        if len(cls) == 3 and any(S.base.incomp[s] for s in cls):
            return False
    return rat_cmp(rho, Fraction(3)) is not Ordering.GREATER


def classify_dyadic_marked(D: DyadicSet, t: int) -> RepType:
    """Finite or NotFinite for a quiver marked by a dyadic set with edges."""
    if t != 1:
        return RepType.NOT_FINITE
    rho = D.rho()
    if rat_cmp(rho, Fraction(3)) is not Ordering.LESS:
        return RepType.NOT_FINITE
    for sigma, kind in edge_shortness(D).items():
        if not kind.short or equipment(D, sigma).equipped:
            return RepType.NOT_FINITE
        for X in bordering_sets(D, sigma):
            if X.z_minus and X.z_plus:
                if D.set_weight(X.z_minus) != 1 or D.set_weight(X.z_plus) != 1:
                    return RepType.NOT_FINITE
    return RepType.FINITE


def classify(MQ: MarkedQuiver) -> QuiverVerdict:
    """Route to the rho-degree criterion or to the path criteria."""
    odd = [x for x in MQ.quiver.vertices if mark_weight(MQ.mark(x)) is None]
    if not odd:
        return classify_semilinear(MQ)
    if len(odd) > 1:
        return QuiverVerdict(RepType.WILD, "path", notes=[f"non-semilinear vertices {odd}"])
    x = odd[0]
    try:
        shape = path_shape(MQ, x)
    except ShapeViolation as exc:
        return QuiverVerdict(RepType.WILD, "path", vertex=x, notes=[str(exc)])

    mark = MQ.mark(x)
    assert isinstance(mark, (PosetMark, DyadicMark))
    notes = []
    if not shape.x_is_head:
        mark = dual_mark(mark)
        logger.warning("using the dual marking at %s; its type is assumed to match", x)
        notes.append("dual marking used; equal type of a marking and its dual is assumed")
    verdict = QuiverVerdict(RepType.WILD, "path", t=shape.t, vertex=x, notes=notes)

    if isinstance(mark, DyadicMark) and mark.dyadic.edges:
        D = mark.dyadic
        if shape.t == 0:
            verdict.rep_type = RepType.FINITE if classify_dyadic(D).finite else RepType.NOT_FINITE
        else:
            verdict.rep_type = classify_dyadic_marked(D, shape.t)
        return verdict

    S = mark.poset if isinstance(mark, PosetMark) else mark.dyadic.tilde()
    if shape.t == 0:
        verdict.rep_type = classify_eqposet(S)
    else:
        verdict.rep_type = classify_eqposet_marked(S, shape.t)
    return verdict
