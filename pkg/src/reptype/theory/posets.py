"""Finite posets, the separating value rho(S) and wattles.

Posets are stored as strict up-sets encoded as integer bitmasks, which keeps
subset scans cheap. networkx is used where a graph algorithm is wanted:
transitive closure/reduction, bipartite matching for the width, and
(sub)graph isomorphism.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Union

import networkx as nx
from networkx.algorithms import bipartite
from networkx.algorithms.isomorphism import DiGraphMatcher

from reptype.core.config import settings
from reptype.core.errors import BadSizes, CycleDetected, SchemaError, check_cap
from reptype.theory.exact import INF, ExtNat, Infinity
from reptype.theory.relations import Relation, is_p_faithful, p_value
from reptype.theory.separating import rho_point

logger = logging.getLogger(__name__)

PairPredicate = Callable[[int, int], bool]


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# Data classes
# ---------------------------------------------------------------------------

class RepType(str, Enum):
    FINITE = "Finite"
    TAME = "Tame"
    WILD = "Wild"
    NOT_FINITE = "NotFinite"


def classify_by_value(value: Union[Fraction, int, Infinity]) -> RepType:
    """Finite below 4, Tame at exactly 4, Wild above."""
    if isinstance(value, Infinity) or value > 4:
        return RepType.WILD
    return RepType.TAME if value == 4 else RepType.FINITE


@dataclass(frozen=True)
class Poset:
    """A finite poset on ``0..n-1``; ``up[i]`` is the mask of elements above ``i``."""

    n: int
    up: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.n)))
        if len(self.labels) != self.n:
            raise SchemaError(f"{len(self.labels)} labels for {self.n} elements")

    # -- construction ----------------------------------------------------

    @classmethod
    def from_pairs(
        cls, n: int, pairs: Iterable[Sequence[int]], labels: Optional[Sequence[str]] = None
    ) -> "Poset":
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        for pair in pairs:
            i, j = pair
            if not (0 <= i < n and 0 <= j < n):
                raise SchemaError(f"pair ({i}, {j}) is outside 0..{n - 1}")
            graph.add_edge(i, j)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise CycleDetected(f"order contains a cycle: {cycle}")
        closure = nx.transitive_closure_dag(graph)
        up = [0] * n
        for i, j in closure.edges:
            up[i] |= 1 << j
        return cls(n, tuple(up), tuple(labels) if labels else ())

    # -- order queries -----------------------------------------------------

    def less(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def leq(self, i: int, j: int) -> bool:
        return i == j or self.less(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return i == j or self.less(i, j) or self.less(j, i)

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for i in range(self.n):
            for j in bits(self.up[i]):
                down[j] |= 1 << i
        return tuple(down)

    @cached_property
    def comp(self) -> tuple[int, ...]:
        """Masks of elements strictly comparable to each element."""
        return tuple(self.up[i] | self.down[i] for i in range(self.n))

    @cached_property
    def incomp(self) -> tuple[int, ...]:
        full = (1 << self.n) - 1
        return tuple(full & ~(self.comp[i] | 1 << i) for i in range(self.n))

    @cached_property
    def topological(self) -> tuple[int, ...]:
        """A linear extension."""
        return tuple(sorted(range(self.n), key=lambda i: popcount(self.down[i])))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def incomparables(self, x: int, within: Optional[int] = None) -> int:
        mask = self.incomp[x]
        return mask if within is None else mask & within

    def is_chain(self, mask: Optional[int] = None) -> bool:
        mask = self.full_mask if mask is None else mask
        return all(not (self.incomp[i] & mask) for i in bits(mask))

    def is_antichain(self, mask: int) -> bool:
        return all(not (self.comp[i] & mask) for i in bits(mask))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_weakly_connected(self.digraph())

    # -- derived structures ----------------------------------------------

    def digraph(self) -> nx.DiGraph:
        """Closure digraph: an arc for every strict comparison."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from((i, j) for i in range(self.n) for j in bits(self.up[i]))
        return graph

    def covers(self) -> list[tuple[int, int]]:
        return sorted(nx.transitive_reduction(self.digraph()).edges)

    def to_relation(self) -> Relation:
        """The reflexive order relation ``<=``."""
        return Relation(
            self.n,
            tuple(tuple(i == j or self.less(i, j) for j in range(self.n)) for i in range(self.n)),
        )

    def restrict(self, indices: Union[int, Sequence[int]]) -> "Poset":
        idx = list(bits(indices)) if isinstance(indices, int) else list(indices)
        pos = {old: new for new, old in enumerate(idx)}
        up = []
        for old in idx:
            mask = 0
            for j in bits(self.up[old]):
                if j in pos:
                    mask |= 1 << pos[j]
            up.append(mask)
        return Poset(len(idx), tuple(up), tuple(self.labels[i] for i in idx))

    def dual(self) -> "Poset":
        return Poset(self.n, self.down, self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def make_poset(n: int, covers: Iterable[Sequence[int]], labels: Optional[Sequence[str]] = None) -> Poset:
    return Poset.from_pairs(n, covers, labels)


def chain(n: int) -> Poset:
    return make_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return make_poset(n, [])


def disjoint_union(*parts: Poset) -> Poset:
    up: list[int] = []
    labels: list[str] = []
    offset = 0
    for part in parts:
        up.extend(mask << offset for mask in part.up)
        labels.extend(part.labels)
        offset += part.n
    if len(set(labels)) != len(labels):
        labels = [str(i) for i in range(offset)]
    return Poset(offset, tuple(up), tuple(labels))


def ordinal_sum(lower: Poset, upper: Poset) -> Poset:
    """Every element of ``lower`` below every element of ``upper``."""
    joined = disjoint_union(lower, upper)
    top = ((1 << upper.n) - 1) << lower.n
    up = tuple(mask | top if i < lower.n else mask for i, mask in enumerate(joined.up))
    return Poset(joined.n, up, joined.labels)


def primitive(sizes: Sequence[int]) -> Poset:
    """Disjoint union of chains ``(n_1, ..., n_t)``."""
    return disjoint_union(*(chain(k) for k in sizes))


# ---------------------------------------------------------------------------
# Width
# ---------------------------------------------------------------------------

def width(S: Poset) -> int:
    """Maximum antichain size via a minimum chain cover (Dilworth/Konig)."""
    if S.n == 0:
        return 0
    graph = nx.Graph()
    left = [("l", i) for i in range(S.n)]
    graph.add_nodes_from(left)
    graph.add_nodes_from(("r", i) for i in range(S.n))
    graph.add_edges_from(
        (("l", i), ("r", j)) for i in range(S.n) for j in bits(S.up[i])
    )
    matching = bipartite.hopcroft_karp_matching(graph, top_nodes=left)
    return S.n - len(matching) // 2


# ---------------------------------------------------------------------------
# Primitive and quasiprimitive subsets
# ---------------------------------------------------------------------------

def maximal_primitive_families(S: Poset, universe: Optional[int] = None) -> Iterator[list[int]]:
    """Yield every maximal primitive subset as its list of chain components.

    A subset is primitive when its comparability components are chains, i.e.
    the induced comparability graph is a disjoint union of cliques.
    """
    universe = S.full_mask if universe is None else universe
    elements = list(bits(universe))

    def placement(clusters: list[int], e: int) -> Optional[int]:
        """Index of the cluster ``e`` joins, ``-1`` for a new one, None if invalid."""
        target = -1
        for k, cluster in enumerate(clusters):
            touching = S.comp[e] & cluster
            if not touching:
                continue
            if touching != cluster or target != -1:
                return None
            target = k
        return target

    def extend(pos: int, clusters: list[int], skipped: list[int]) -> Iterator[list[int]]:
        if pos == len(elements):
            if all(placement(clusters, e) is None for e in skipped):
                yield list(clusters)
            return
        e = elements[pos]
        where = placement(clusters, e)
        if where is not None:
            grown = list(clusters)
            if where == -1:
                grown.append(1 << e)
            else:
                grown[where] |= 1 << e
            yield from extend(pos + 1, grown, skipped)
        # an element that still fits at the end is rejected by the leaf check
        yield from extend(pos + 1, clusters, skipped + [e])

    yield from extend(0, [], [])


def n_hat_copies(S: Poset, universe: Optional[int] = None) -> Iterator[int]:
    """Masks of 4-element subsets inducing N-hat.

    A 4-set induces N-hat exactly when its comparability graph is a path.
    """
    universe = S.full_mask if universe is None else universe
    for quad in combinations(list(bits(universe)), 4):
        mask = sum(1 << q for q in quad)
        degrees = sorted(popcount(S.comp[q] & mask) for q in quad)
        if degrees == [1, 1, 2, 2]:
            yield mask


def _common_incomparables(S: Poset, mask: int) -> int:
    result = S.full_mask
    for q in bits(mask):
        result &= S.incomp[q]
    return result


def longest_chain(S: Poset, mask: int, weight: Optional[Mapping[int, int]] = None) -> int:
    """Maximum total weight of a chain inside ``mask`` (unit weights by default)."""
    best: dict[int, int] = {}
    result = 0
    for i in S.topological:
        if not mask >> i & 1:
            continue
        below = [best[j] for j in bits(S.down[i] & mask)]
        w = 1 if weight is None else weight[i]
        best[i] = w + max(below, default=0)
        result = max(result, best[i])
    return result


def primitive_value(S: Poset, cap: Optional[int] = None) -> Fraction:
    """rho_1: the largest P over primitive subsets."""
    check_cap("poset", S.n, settings.max_poset_size if cap is None else cap)
    best = Fraction(0)
    for family in maximal_primitive_families(S):
        value = sum((rho_point(popcount(c)) for c in family), Fraction(0))
        best = max(best, value)
    return best


def quasiprimitive_value(S: Poset, cap: Optional[int] = None) -> int:
    """rho_2: the longest chain incomparable to some copy of N-hat."""
    check_cap("poset", S.n, settings.max_poset_size if cap is None else cap)
    best = 0
    for copy in n_hat_copies(S):
        best = max(best, longest_chain(S, _common_incomparables(S, copy)))
    return best


def rho_poset(S: Poset, cap: Optional[int] = None) -> Fraction:
    return max(primitive_value(S, cap), Fraction(quasiprimitive_value(S, cap)))


def classify_poset(S: Poset, cap: Optional[int] = None) -> RepType:
    return classify_by_value(rho_poset(S, cap))


# ---------------------------------------------------------------------------
# Weighted rho
# ---------------------------------------------------------------------------

def chain_weight(
    S: Poset, mask: int, weights: Mapping[int, ExtNat], pair_ok: Optional[PairPredicate] = None
) -> ExtNat:
    """p(Z): the weight sum when ``mask`` is an admissible chain, otherwise inf."""
    if not S.is_chain(mask):
        return INF
    members = list(bits(mask))
    if pair_ok is not None:
        for a, b in combinations(members, 2):
            lo, hi = (a, b) if S.less(a, b) else (b, a)
            if not pair_ok(lo, hi):
                return INF
    total: ExtNat = 0
    for m in members:
        total = total + weights[m]  # type: ignore[operator]
    return total


def _max_chain_weight(
    S: Poset, mask: int, weights: Mapping[int, ExtNat], pair_ok: Optional[PairPredicate]
) -> ExtNat:
    if any(isinstance(weights[i], Infinity) for i in bits(mask)):
        return INF
    if pair_ok is not None:
        for i in bits(mask):
            for j in bits(S.up[i] & mask):
                if not pair_ok(i, j):
                    return INF
    return longest_chain(S, mask, {i: int(weights[i]) for i in bits(mask)})  # type: ignore[arg-type]


def rho_weighted(
    S: Poset,
    weights: Mapping[int, ExtNat],
    pair_ok: Optional[PairPredicate] = None,
    universe: Optional[int] = None,
    cap: Optional[int] = None,
) -> Union[Fraction, Infinity]:
    """rho(S, p) over primitive and quasiprimitive subsets.

    ``pair_ok(a, b)`` for ``a < b`` decides which chains are admissible; a
    chain with an inadmissible pair weighs inf. ``None`` admits every chain.
    """
    check_cap("poset", S.n, settings.max_poset_size if cap is None else cap)
    universe = S.full_mask if universe is None else universe
    best: Union[Fraction, Infinity] = Fraction(0)
    for family in maximal_primitive_families(S, universe):
        value = sum(
            (rho_point(chain_weight(S, c, weights, pair_ok)) for c in family), Fraction(0)
        )
        best = max(best, value)
    for copy in n_hat_copies(S, universe):
        z = _max_chain_weight(S, _common_incomparables(S, copy) & universe, weights, pair_ok)
        if isinstance(z, Infinity):
            return INF
        best = max(best, Fraction(z))
    return best


def antichain_weight_bound(S: Poset, weights: Mapping[int, ExtNat]) -> bool:
    """True when every antichain A has |A| + |A_inf| < 4."""
    infinite = {i for i in range(S.n) if isinstance(weights[i], Infinity)}
    for size in range(1, 5):
        for subset in combinations(range(S.n), size):
            mask = sum(1 << i for i in subset)
            if S.is_antichain(mask) and size + len(infinite.intersection(subset)) >= 4:
                return False
    return True


# ---------------------------------------------------------------------------
# Critical subsets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    name: str
    mapping: tuple[tuple[int, int], ...]  # (pattern element, host element)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(host for _, host in self.mapping)


def contains_critical(S: Poset, patterns: Mapping[str, Poset]) -> list[Embedding]:
    """All order embeddings of the named patterns, one per image set."""
    host = S.digraph()
    found: list[Embedding] = []
    for name, pattern in patterns.items():
        if pattern.n > S.n:
            continue
        seen: set[frozenset[int]] = set()
        matcher = DiGraphMatcher(host, pattern.digraph())
        for iso in matcher.subgraph_isomorphisms_iter():
            image = frozenset(iso)
            if image in seen:
                continue
            seen.add(image)
            mapping = tuple(sorted((p, h) for h, p in iso.items()))
            found.append(Embedding(name, mapping))
    return found


# ---------------------------------------------------------------------------
# Wattles
# ---------------------------------------------------------------------------

def _check_wattle(sizes: Sequence[int]) -> None:
    if len(sizes) < 2 or any(k < 2 for k in sizes):
        raise BadSizes(f"wattle needs t > 1 chains of size >= 2, got {tuple(sizes)}")


def make_wattle(sizes: Sequence[int]) -> Poset:
    """Chains Z_1..Z_t (labels ``z<i>.<j>``, bottom to top) with min Z_i < max Z_{i+1}."""
    _check_wattle(sizes)
    labels: list[str] = []
    start: list[int] = []
    pairs: list[tuple[int, int]] = []
    for i, k in enumerate(sizes, start=1):
        start.append(len(labels))
        labels.extend(f"z{i}.{j}" for j in range(1, k + 1))
        pairs.extend((start[-1] + j, start[-1] + j + 1) for j in range(k - 1))
    for i in range(len(sizes) - 1):
        top_next = start[i + 1] + sizes[i + 1] - 1
        pairs.append((start[i], top_next))
    return make_poset(len(labels), pairs, labels)


def n_hat() -> Poset:
    return make_wattle((2, 2))


def wattle_roles(sizes: Sequence[int]) -> dict[str, str]:
    """``minus`` for z_i^-, ``plus`` for z_i^+, ``common`` for the rest."""
    _check_wattle(sizes)
    t = len(sizes)
    roles: dict[str, str] = {}
    for i, k in enumerate(sizes, start=1):
        for j in range(1, k + 1):
            roles[f"z{i}.{j}"] = "common"
        if i < t:
            roles[f"z{i}.1"] = "minus"
        if i > 1:
            roles[f"z{i}.{k}"] = "plus"
    return roles


def _long_positions(sizes: Sequence[int]) -> Optional[tuple[int, int, list[int]]]:
    """(k, m, 1-based long positions) when conditions a) and b) hold."""
    k, t = sizes[0], len(sizes)
    if sizes[-1] != k:
        return None
    if any(s not in (k, k + 1) for s in sizes[1:-1]):
        return None
    longs = [i for i in range(2, t) if sizes[i - 1] == k + 1]
    return k, len(longs), longs


def is_uniform_wattle(sizes: Sequence[int]) -> bool:
    _check_wattle(sizes)
    shape = _long_positions(sizes)
    if shape is None:
        return False
    _, m, longs = shape
    t = len(sizes)
    if gcd(m + 1, t) != 1:
        return False
    return longs == [(i * t) // (m + 1) + 1 for i in range(1, m + 1)]


def uniform_counting_profile(sizes: Sequence[int]) -> bool:
    """Counting form: the number of long chains among Z_2..Z_i is floor(i(m+1)/t)."""
    _check_wattle(sizes)
    shape = _long_positions(sizes)
    if shape is None:
        return False
    _, m, longs = shape
    t = len(sizes)
    if gcd(m + 1, t) != 1:
        return False
    return all(
        sum(1 for u in longs if u <= i) == (i * (m + 1)) // t for i in range(1, t)
    )


@dataclass(frozen=True)
class WattleVector:
    """Positive vector on a uniform wattle, normalised to total 1."""

    vector: dict[str, Fraction] = field(hash=False)
    alpha: Fraction
    beta: Fraction
    gamma: Fraction


def wattle_positive_vector(sizes: Sequence[int]) -> Optional[WattleVector]:
    """Common points weigh alpha, x(z_i^-) + x(z_{i+1}^+) = alpha, every chain sums to beta."""
    if not is_uniform_wattle(sizes):
        return None
    k, t = sizes[0], len(sizes)
    m = sum(1 for s in sizes[1:-1] if s == k + 1)
    gamma = Fraction(1 + m, t)
    roles = wattle_roles(sizes)
    x = {label: Fraction(1) for label, role in roles.items() if role == "common"}
    long_so_far = 0
    for i in range(1, t):
        if 1 < i and sizes[i - 1] == k + 1:
            long_so_far += 1
        minus = i * gamma - long_so_far
        x[f"z{i}.1"] = minus
        x[f"z{i + 1}.{sizes[i]}"] = 1 - minus
    total = sum(x.values(), Fraction(0))
    beta = k - 1 + gamma
    return WattleVector(
        vector={label: v / total for label, v in x.items()},
        alpha=1 / total,
        beta=beta / total,
        gamma=gamma / total,
    )


def match_wattle(S: Poset) -> list[tuple[int, ...]]:
    """Every size sequence whose wattle is isomorphic to ``S``."""
    found: list[tuple[int, ...]] = []
    host = S.digraph()

    def compositions(total: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(2, total + 1):
            for rest in compositions(total - first):
                yield (first, *rest)

    for sizes in compositions(S.n):
        if len(sizes) < 2:
            continue
        if nx.is_isomorphic(host, make_wattle(sizes).digraph()):
            found.append(sizes)
    return found


# ---------------------------------------------------------------------------
# Semilinear posets and ordinal summands
# ---------------------------------------------------------------------------

class Semilinearity(str, Enum):
    SEMILINEAR = "semilinear"
    NOT_SEMILINEAR = "not-semilinear"
    ALREADY_LINEAR = "already-linear"


def is_semilinear_poset(S: Poset) -> Semilinearity:
    if S.is_chain():
        return Semilinearity.ALREADY_LINEAR
    if all(popcount(S.incomp[i]) <= 1 for i in range(S.n)):
        return Semilinearity.SEMILINEAR
    return Semilinearity.NOT_SEMILINEAR


def ordinal_summands(S: Poset) -> list[list[int]]:
    """Components of the incomparability graph, bottom summand first."""
    graph = nx.Graph()
    graph.add_nodes_from(range(S.n))
    graph.add_edges_from((i, j) for i in range(S.n) for j in bits(S.incomp[i]) if i < j)
    parts = [sorted(c) for c in nx.connected_components(graph)]
    # distinct summands are totally ordered
    parts.sort(key=lambda part: popcount(S.down[part[0]]))
    return parts


def avoids_small_obstructions(S: Poset) -> bool:
    """No (1,3), (1,1,1), (2,2) or N-hat subposet."""
    for i in range(S.n):
        if longest_chain(S, S.incomp[i]) >= 3:
            return False
    if width(S) >= 3:
        return False
    for a in range(S.n):
        for b in bits(S.up[a]):
            others = S.incomp[a] & S.incomp[b]
            if any(S.up[c] & others for c in bits(others)):
                return False
    return next(n_hat_copies(S), None) is None


def summands_are_small(S: Poset) -> bool:
    """Every ordinal summand is (1), (1,1) or (1,2)."""
    for part in ordinal_summands(S):
        mask = sum(1 << i for i in part)
        if len(part) > 3 or (len(part) == 3 and S.is_antichain(mask)):
            return False
    return True


# ---------------------------------------------------------------------------
# Shapes of P-faithful posets
# ---------------------------------------------------------------------------

@dataclass
class FaithfulScanReport:
    max_n: int
    checked: dict[int, int] = field(default_factory=dict)
    faithful: list[Poset] = field(default_factory=list)
    counterexamples: list[Poset] = field(default_factory=list)


def is_chain_or_uniform_wattle(S: Poset) -> bool:
    if S.is_chain():
        return True
    return any(is_uniform_wattle(sizes) for sizes in match_wattle(S))


def verify_faithful_shapes(max_n: int, cap: Optional[int] = None) -> FaithfulScanReport:
    """Check that every P-faithful connected poset is a chain or a uniform wattle."""
    from reptype.theory.enumeration import enumerate_posets

    check_cap("enumeration", max_n, settings.max_enumeration_size if cap is None else cap)
    report = FaithfulScanReport(max_n=max_n)
    for n in range(1, max_n + 1):
        posets = enumerate_posets(n, connected=True)
        report.checked[n] = len(posets)
        for S in posets:
            if not is_p_faithful(S.to_relation()).faithful:
                continue
            report.faithful.append(S)
            if not is_chain_or_uniform_wattle(S):
                logger.warning("P-faithful poset that is neither a chain nor a uniform wattle: covers=%s", S.covers())
                report.counterexamples.append(S)
    logger.info(
        "checked %d connected posets up to n=%d, %d P-faithful",
        sum(report.checked.values()), max_n, len(report.faithful),
    )
    return report


def poset_p(S: Poset, cap: Optional[int] = None) -> Union[Fraction, Infinity]:
    return p_value(S.to_relation(), cap)
