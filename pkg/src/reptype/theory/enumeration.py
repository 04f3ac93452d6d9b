"""Posets up to isomorphism.

Each poset on ``n`` points is obtained from one on ``n - 1`` points by adding a
new maximal element above an order ideal. Duplicates are removed by bucketing
on a Weisfeiler-Lehman hash and confirming with an exact isomorphism test.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import networkx as nx

from reptype.theory.posets import Poset, bits

logger = logging.getLogger(__name__)


def _order_ideals(S: Poset) -> list[int]:
    ideals = []
    for mask in range(1 << S.n):
        if all((S.down[i] & ~mask) == 0 for i in bits(mask)):
            ideals.append(mask)
    return ideals


def _extend(S: Poset, ideal: int) -> Poset:
    new = S.n
    up = tuple(mask | (1 << new) if ideal >> i & 1 else mask for i, mask in enumerate(S.up))
    return Poset(S.n + 1, up + (0,))


class _IsoBuckets:
    def __init__(self) -> None:
        self._buckets: dict[str, list[tuple[Poset, nx.DiGraph]]] = {}
        self.items: list[Poset] = []

    def add(self, S: Poset) -> bool:
        graph = S.digraph()
        key = nx.weisfeiler_lehman_graph_hash(graph, iterations=3)
        bucket = self._buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for _, other in bucket):
            return False
        bucket.append((S, graph))
        self.items.append(S)
        return True


@lru_cache(maxsize=16)
def _all_posets(n: int) -> tuple[Poset, ...]:
    if n == 0:
        return (Poset(0, ()),)
    buckets = _IsoBuckets()
    for smaller in _all_posets(n - 1):
        for ideal in _order_ideals(smaller):
            buckets.add(_extend(smaller, ideal))
    logger.debug("%d posets on %d points", len(buckets.items), n)
    return tuple(buckets.items)


def enumerate_posets(n: int, connected: bool = False) -> list[Poset]:
    """All posets on ``n`` points up to isomorphism (optionally only connected ones)."""
    posets = list(_all_posets(n))
    if connected:
        posets = [S for S in posets if S.is_connected()]
    return posets
