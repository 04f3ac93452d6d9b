"""(v,f)-graphs, rho-degrees and the Dynkin / Coxeter classifications.

A graph may have loops and parallel edges. Vertices carry ``v`` in the
extended naturals (default 1) and edges carry ``f >= 1`` (default 1), which
after the Coxeter hat transform may be an element of Q(sqrt5) or
``4cos^2(pi/p)``. The rho-degree of a vertex decides everything:

* all rho-degrees below 4: Dynkin scheme (finite-type Coxeter graph);
* maximum exactly 4: extended Dynkin scheme (affine Coxeter graph);
* otherwise wild (neither).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

import networkx as nx

from reptype.core.config import settings
from reptype.core.errors import BadMatrix, Disconnected, NotCoxeter, SchemaError, check_cap
from reptype.theory.exact import (
    GOLDEN_HAT,
    INF,
    CosSq,
    ExtNat,
    HatSum,
    Infinity,
    Ordering,
    QuadRat,
    parse_extnat,
    rat_cmp,
)
from reptype.theory.separating import rho_point, rho_tuple

logger = logging.getLogger(__name__)

FWeight = Union[Fraction, int, Infinity, QuadRat, CosSq]
DegreeValue = Union[Fraction, Infinity, HatSum]


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GraphEdge:
    ends: tuple[str, ...]
    f: FWeight = 1

    @property
    def is_loop(self) -> bool:
        return len(self.ends) == 1

    def other(self, x: str) -> str:
        if self.is_loop:
            return x
        a, b = self.ends
        return b if a == x else a


@dataclass
class LabeledGraph:
    """A multigraph with vertex labels ``v`` and edge labels ``f``."""

    vertices: list[str]
    edges: list[GraphEdge] = field(default_factory=list)
    v: dict[str, ExtNat] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.vertices:
            raise SchemaError("a graph needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise SchemaError("vertex names must be distinct")
        known = set(self.vertices)
        for edge in self.edges:
            if len(edge.ends) not in (1, 2) or any(e not in known for e in edge.ends):
                raise SchemaError(f"edge {list(edge.ends)} has unknown or missing ends")
            if isinstance(edge.f, (Rational, Infinity)) and edge.f < 1:
                raise SchemaError(f"edge {list(edge.ends)} has f = {edge.f} < 1")
        for x, value in self.v.items():
            if x not in known:
                raise SchemaError(f"v given for unknown vertex {x!r}")
            if value < 1:
                raise SchemaError(f"vertex {x!r} has v = {value} < 1")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Sequence],  # (a, b) or (a, b, f); (a,) or (a, a) is a loop
        vertices: Optional[Iterable[str]] = None,
        v: Optional[Mapping[str, ExtNat]] = None,
    ) -> "LabeledGraph":
        names: list[str] = list(vertices) if vertices is not None else []
        parsed = []
        for raw in edges:
            a = raw[0]
            b = raw[1] if len(raw) > 1 else a
            f = raw[2] if len(raw) > 2 else 1
            ends = (str(a),) if a == b else (str(a), str(b))
            for end in ends:
                if vertices is None and end not in names:
                    names.append(end)
            parsed.append(GraphEdge(ends, f))
        return cls(names, parsed, dict(v or {}))

    def vweight(self, x: str) -> ExtNat:
        return self.v.get(x, 1)

    def incident(self, x: str) -> list[int]:
        return [k for k, e in enumerate(self.edges) if x in e.ends]

    def multigraph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for x in self.vertices:
            graph.add_node(x, v=self.vweight(x))
        for k, e in enumerate(self.edges):
            a, b = (e.ends[0], e.ends[0]) if e.is_loop else e.ends
            graph.add_edge(a, b, key=k, f=e.f)
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.multigraph())

    @property
    def has_loops(self) -> bool:
        return any(e.is_loop for e in self.edges)

    @property
    def has_parallel_edges(self) -> bool:
        seen = set()
        for e in self.edges:
            key = frozenset(e.ends)
            if key in seen:
                return True
            seen.add(key)
        return False

    @property
    def is_plain(self) -> bool:
        """All v and f equal to 1."""
        return all(self.vweight(x) == 1 for x in self.vertices) and all(e.f == 1 for e in self.edges)


@dataclass(frozen=True)
class VertexDegree:
    vertex: str
    value: DegreeValue
    ordering: Ordering

    @property
    def approx(self) -> float:
        return float("inf") if isinstance(self.value, Infinity) else float(self.value)


class GraphKind(str, Enum):
    DYNKIN = "Dynkin"
    EXTENDED_DYNKIN = "ExtendedDynkin"
    WILD = "Wild"
    FINITE_TYPE = "FiniteType"
    AFFINE_TYPE = "AffineType"
    NEITHER = "Neither"


@dataclass
class GraphClass:
    kind: GraphKind
    name: Optional[str] = None
    witness: Optional[VertexDegree] = None


Namer = Callable[[LabeledGraph, Sequence[str]], Optional[str]]


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------

def degree(G: LabeledGraph, x: str) -> int:
    """Number of incident edges; a loop counts once."""
    return len(G.incident(x))


def f_degree(G: LabeledGraph, x: str) -> DegreeValue:
    return _weighted_sum((G.edges[k].f, Fraction(1)) for k in G.incident(x))


def is_cyclic_edge(G: LabeledGraph, k: int) -> bool:
    edge = G.edges[k]
    if edge.is_loop:
        return True
    graph = G.multigraph()
    graph.remove_edge(*edge.ends, key=k)
    return nx.has_path(graph, *edge.ends)


def tail_component(G: LabeledGraph, y: str, k: int) -> set[str]:
    """Vertices on the ``y`` side once the non-cyclic edge ``k`` is removed."""
    edge = G.edges[k]
    graph = G.multigraph()
    graph.remove_edge(*edge.ends, key=k)
    return set(nx.node_connected_component(graph, y))


def _tail_edges(G: LabeledGraph, tail: set[str]) -> list[GraphEdge]:
    return [e for e in G.edges if all(end in tail for end in e.ends)]


def is_simple_pair(G: LabeledGraph, x: str, k: int) -> bool:
    edge = G.edges[k]
    if edge.is_loop or x not in edge.ends or is_cyclic_edge(G, k):
        return False
    y = edge.other(x)
    if degree(G, y) > 2:
        return False
    tail = tail_component(G, y, k)
    inner = _tail_edges(G, tail)
    if any(e.is_loop for e in inner) or len(inner) != len(tail) - 1:
        return False
    sub = nx.Graph()
    sub.add_nodes_from(tail)
    sub.add_edges_from(e.ends for e in inner)
    return nx.is_connected(sub) and max(d for _, d in sub.degree()) <= 2


def is_vf_simple(G: LabeledGraph, x: str, k: int) -> bool:
    if not is_simple_pair(G, x, k):
        return False
    tail = tail_component(G, G.edges[k].other(x), k)
    if any(G.vweight(a) != 1 for a in tail if degree(G, a) != 1):
        return False
    return all(e.f == 1 for e in _tail_edges(G, tail))


def partial_degree(G: LabeledGraph, x: str, k: int) -> Fraction:
    edge = G.edges[k]
    if x not in edge.ends:
        raise SchemaError(f"edge {k} is not incident to {x!r}")
    if edge.is_loop:
        return Fraction(4)
    if is_vf_simple(G, x, k):
        tail = tail_component(G, edge.other(x), k)
        total: ExtNat = 0
        for z in tail:
            total = total + G.vweight(z)  # type: ignore[operator]
        return rho_point(total)
    return Fraction(2)


def _weighted_sum(terms: Iterable[tuple[FWeight, Fraction]]) -> DegreeValue:
    rational = Fraction(0)
    irrational = HatSum()
    exact = True
    for f, d in terms:
        if isinstance(f, Infinity):
            return INF
        if isinstance(f, Rational):
            rational += Fraction(f) * d
        else:
            irrational = irrational + HatSum.of(f).scale(d)
            exact = False
    return rational if exact else irrational + rational


def rho_degree(G: LabeledGraph, x: str) -> DegreeValue:
    own = G.vweight(x) - 1  # type: ignore[operator]
    base = rho_point(own)
    value = _weighted_sum((G.edges[k].f, partial_degree(G, x, k)) for k in G.incident(x))
    if isinstance(value, Infinity):
        return INF
    return value + base


def rho_degrees(G: LabeledGraph) -> dict[str, DegreeValue]:
    check_cap("graph", len(G.vertices), settings.max_graph_vertices)
    return {x: rho_degree(G, x) for x in G.vertices}


def worst_vertex(G: LabeledGraph) -> VertexDegree:
    """The vertex of largest rho-degree, with its exact position against 4."""
    best: Optional[VertexDegree] = None
    for x, value in rho_degrees(G).items():
        entry = VertexDegree(x, value, rat_cmp(value, 4))
        if best is None or (entry.ordering, entry.approx) > (best.ordering, best.approx):
            best = entry
    assert best is not None
    return best


def _require_connected(G: LabeledGraph) -> None:
    if not G.is_connected():
        raise Disconnected("graph is not connected")


# ---------------------------------------------------------------------------
# Integral f-graphs
# ---------------------------------------------------------------------------

def classify_integral_fgraph(G: LabeledGraph, namer: Optional[Namer] = None) -> GraphClass:
    _require_connected(G)
    if any(G.vweight(x) != 1 for x in G.vertices):
        raise SchemaError("an f-graph has v = 1 at every vertex")
    for e in G.edges:
        if not (isinstance(e.f, Infinity) or (isinstance(e.f, Rational) and Fraction(e.f).denominator == 1)):
            raise SchemaError(f"edge {list(e.ends)} has non-integral f = {e.f}")
    worst = worst_vertex(G)
    kind = {
        Ordering.LESS: GraphKind.DYNKIN,
        Ordering.EQUAL: GraphKind.EXTENDED_DYNKIN,
        Ordering.GREATER: GraphKind.WILD,
    }[worst.ordering]
    result = GraphClass(kind, witness=worst)
    if namer is not None and kind is not GraphKind.WILD:
        result.name = namer(G, ("I",) if kind is GraphKind.DYNKIN else ("II",))
        if result.name is None:
            logger.error("no catalog name for %s graph with %d vertices", kind.value, len(G.vertices))
    return result


def expand_vgraph(G: LabeledGraph) -> LabeledGraph:
    """Replace vertex weights by attached tails (finite v) or two pendants (infinite v)."""
    if any(e.f != 1 for e in G.edges):
        raise SchemaError("expansion is defined for v-graphs (all f = 1)")
    vertices = list(G.vertices)
    edges = list(G.edges)
    for x in G.vertices:
        m = G.vweight(x)
        if isinstance(m, Infinity):
            for k in (1, 2):
                name = f"b{k}^{x}"
                vertices.append(name)
                edges.append(GraphEdge((x, name)))
        elif m > 1:
            prev = x
            for k in range(2, m + 1):
                name = f"a{k}^{x}"
                vertices.append(name)
                edges.append(GraphEdge((prev, name)))
                prev = name
    return LabeledGraph(vertices, edges)


# ---------------------------------------------------------------------------
# Coxeter graphs
# ---------------------------------------------------------------------------

def hat_value(m: ExtNat) -> FWeight:
    """4cos^2(pi/m) in exact form."""
    if isinstance(m, Infinity):
        return Fraction(4)
    exact = {3: Fraction(1), 4: Fraction(2), 6: Fraction(3), 5: GOLDEN_HAT}
    if m in exact:
        return exact[m]
    return CosSq(m)


def check_coxeter(G: LabeledGraph) -> None:
    if G.has_loops or G.has_parallel_edges:
        raise NotCoxeter("a Coxeter graph has no loops or parallel edges")
    for e in G.edges:
        ok = isinstance(e.f, Infinity) or (isinstance(e.f, int) and e.f >= 3)
        if not ok:
            raise NotCoxeter(f"edge {list(e.ends)} has label {e.f}; labels are integers >= 3 or inf")


def hat_transform(G: LabeledGraph) -> LabeledGraph:
    check_coxeter(G)
    edges = [GraphEdge(e.ends, hat_value(e.f)) for e in G.edges]  # type: ignore[arg-type]
    return LabeledGraph(list(G.vertices), edges, dict(G.v))


def classify_coxeter(G: LabeledGraph, namer: Optional[Namer] = None) -> GraphClass:
    _require_connected(G)
    worst = worst_vertex(hat_transform(G))
    kind = {
        Ordering.LESS: GraphKind.FINITE_TYPE,
        Ordering.EQUAL: GraphKind.AFFINE_TYPE,
        Ordering.GREATER: GraphKind.NEITHER,
    }[worst.ordering]
    result = GraphClass(kind, witness=worst)
    if namer is not None and kind is not GraphKind.NEITHER:
        result.name = namer(G, ("III",) if kind is GraphKind.FINITE_TYPE else ("IV",))
    return result


def _parse_matrix(m: Sequence[Sequence[object]]) -> list[list[ExtNat]]:
    n = len(m)
    rows: list[list[ExtNat]] = []
    for i, row in enumerate(m):
        if len(row) != n:
            raise BadMatrix(f"row {i} has {len(row)} entries, expected {n}")
        try:
            rows.append([parse_extnat(x) for x in row])
        except SchemaError as exc:
            raise BadMatrix(str(exc)) from None
    for i in range(n):
        if rows[i][i] != 1:
            raise BadMatrix(f"diagonal entry ({i},{i}) must be 1")
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise BadMatrix(f"matrix is not symmetric at ({i},{j})")
            if rows[i][j] < 2:
                raise BadMatrix(f"entry ({i},{j}) must be >= 2 or inf")
    return rows


def coxeter_matrix_to_graph(m: Sequence[Sequence[object]]) -> LabeledGraph:
    rows = _parse_matrix(m)
    n = len(rows)
    if n == 0:
        raise BadMatrix("matrix is empty")
    names = [f"s{i + 1}" for i in range(n)]
    edges = [
        GraphEdge((names[i], names[j]), rows[i][j])
        for i in range(n)
        for j in range(i + 1, n)
        if rows[i][j] >= 3
    ]
    return LabeledGraph(names, edges)


def _component_is_finite(G: LabeledGraph, nodes: set[str]) -> bool:
    sub = G.multigraph().subgraph(nodes)
    t = len(nodes)
    if t == 1:
        return True
    g = dict(sub.degree())
    leaves = [x for x, d in g.items() if d == 1]
    special = [(a, b, f) for a, b, f in sub.edges(data="f") if isinstance(f, Infinity) or f > 3]
    if not leaves:
        return False
    if not special:
        branch = [x for x, d in g.items() if d > 2]
        if len(branch) > 1:
            return False
        if not branch:
            return True
        x = branch[0]
        rest = sub.copy()
        rest.remove_node(x)
        parts = [len(c) for c in nx.connected_components(rest)]
        return len(parts) == g[x] and rho_tuple(parts) < 4
    if len(special) > 1 or any(d > 2 for d in g.values()):
        return False
    a, b, n_ab = special[0]
    if isinstance(n_ab, Infinity):
        return False
    end = min(g[a], g[b])
    if n_ab >= 6:
        return t == 2
    if n_ab == 5:
        return t <= 4 and end == 1
    return t <= 4 or end == 1


def coxeter_group_is_finite(m: Sequence[Sequence[object]]) -> bool:
    """Finiteness of the group with generators of order 2 and (a_i a_j)^n_ij = 1.

    Decided directly on the presentation, component by component.
    """
    G = coxeter_matrix_to_graph(m)
    return all(
        _component_is_finite(G, set(c)) for c in nx.connected_components(G.multigraph())
    )


# ---------------------------------------------------------------------------
# Building blocks for catalogs
# ---------------------------------------------------------------------------

def path_graph(n: int, labels: Optional[Mapping[int, FWeight]] = None, default: FWeight = 1) -> LabeledGraph:
    """``x1 - x2 - ... - xn``; ``labels[k]`` is f on the edge ``x_k - x_{k+1}``.

    Negative keys count from the far end (-1 is the last edge).
    """
    names = [f"x{i}" for i in range(1, n + 1)]
    labels = dict(labels or {})
    edges = []
    for k in range(1, n):
        f = labels.get(k, labels.get(k - n, default))
        edges.append(GraphEdge((names[k - 1], names[k]), f))
    return LabeledGraph(names, edges)


def cycle_graph(n: int, default: FWeight = 1) -> LabeledGraph:
    """n vertices on a cycle; one vertex gives a loop, two give a double edge."""
    names = [f"x{i}" for i in range(1, n + 1)]
    if n == 1:
        return LabeledGraph(names, [GraphEdge((names[0],), default)])
    edges = [GraphEdge((names[i], names[(i + 1) % n]), default) for i in range(n)]
    return LabeledGraph(names, edges)


def star_graph(arms: Sequence[int], default: FWeight = 1) -> LabeledGraph:
    """A centre with simple arms of the given lengths."""
    names = ["c"]
    edges = []
    for a, length in enumerate(arms, start=1):
        prev = "c"
        for k in range(1, length + 1):
            name = f"y{a}.{k}"
            names.append(name)
            edges.append(GraphEdge((prev, name), default))
            prev = name
    return LabeledGraph(names, edges)


def forked_path(n: int, far_label: Optional[FWeight] = None, far_fork: bool = False,
                default: FWeight = 1) -> LabeledGraph:
    """n vertices: two leaves on ``x1``'s neighbour, a path, and at the far end
    either a labelled last edge or a second fork."""
    spine = n - 2 if far_fork else n - 1
    labels = {} if far_label is None else {-1: far_label}
    G = path_graph(spine, labels, default)
    names, edges = list(G.vertices), list(G.edges)
    names.append("u1")
    edges.append(GraphEdge(("u1", names[1]), default))
    if far_fork:
        names.append("u2")
        edges.append(GraphEdge(("u2", names[spine - 2]), default))
    return LabeledGraph(names, edges)
