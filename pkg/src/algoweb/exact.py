"""Exact MST-weight baselines and the component-count identity.

Prim (lazy-deletion binary heap, O(m log n)) and Kruskal (union-find with
path compression and union by rank) both return the exact total weight of
a minimum spanning tree.  `mst_weight_via_components` evaluates the same
weight through the identity

    mst_weight = n - w + sum_{i=1}^{w-1} c_i

with exact per-threshold component counts: it is the cornerstone the
sampling estimator approximates, and must agree with Prim on every
connected integer-weighted graph.
"""

from __future__ import annotations

from . import backend
from .errors import GraphDisconnectedError
from .graph import Graph


class UnionFind:
    """Disjoint sets over 0..n-1 with path compression and union by rank."""

    __slots__ = ("parent", "rank", "count")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("size must be >= 0")
        self.parent = list(range(n))
        self.rank = [0] * n
        self.count = n  # current number of disjoint sets

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of a and b; True iff they were distinct."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.count -= 1
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def _check_weight_headroom(g: Graph) -> None:
    # tree weight is at most (n - 1) * w_max; accumulators are 64-bit
    if (g.n - 1) * g.w_max >= 2**63:
        raise OverflowError("total MST weight could exceed 64-bit range")


def prim_mst(g: Graph) -> tuple[int, int]:
    """(MST weight, adjacency entries touched).

    Raises :class:`GraphDisconnectedError` when fewer than n vertices are
    reached.  Self-loops are scanned but never enter the tree.
    """
    if g.n < 1:
        raise ValueError("empty graph")
    _check_weight_headroom(g)
    total, touches, visited = backend.prim_mst(g.indptr, g.nbr, g.wt, g.n)
    if visited < g.n:
        raise GraphDisconnectedError(
            f"graph is disconnected ({visited} of {g.n} vertices reached)"
        )
    return int(total), int(touches)


def prim_mst_weight(g: Graph) -> int:
    return prim_mst(g)[0]


def kruskal_mst(g: Graph) -> tuple[int, int]:
    """(MST weight, edges examined); stable ascending weight order."""
    if g.n < 1:
        raise ValueError("empty graph")
    _check_weight_headroom(g)
    su, sv, sw = g._edges_by_weight()
    total, touches, accepted = backend.kruskal_mst(su, sv, sw, g.n)
    if accepted < g.n - 1:
        raise GraphDisconnectedError(
            f"graph is disconnected ({accepted} of {g.n - 1} tree edges found)"
        )
    return int(total), int(touches)


def kruskal_mst_weight(g: Graph) -> int:
    return kruskal_mst(g)[0]


def exact_components(g: Graph, i: int) -> int:
    """Exact number of connected components of the threshold-``i`` subgraph
    (all n vertices, edges of weight <= i)."""
    g._check_threshold(i)
    keep = g.ew <= i
    return int(backend.count_components(g.eu[keep], g.ev[keep], g.n))


def components_sweep(g: Graph):
    """Exact component counts for every threshold in one union-find pass.

    Returns int64[w_max + 1]; entry i is ``exact_components(g, i)``.
    """
    su, sv, sw = g._edges_by_weight()
    return backend.components_sweep(su, sv, sw, g.n, g.w_max)


def mst_weight_via_components(g: Graph) -> int:
    """MST weight through the exact component-count identity.

    Equals ``prim_mst_weight`` on every connected graph; the two sides are
    deliberately computed by unrelated code paths.
    """
    if g.n < 1:
        raise ValueError("empty graph")
    if g.m == 0 or g.w_max == 0:
        if g.n == 1:
            return 0
        raise GraphDisconnectedError("edgeless graph with more than one vertex")
    counts = components_sweep(g)
    if counts[g.w_max] != 1:
        raise GraphDisconnectedError(
            f"graph is disconnected ({int(counts[g.w_max])} components)"
        )
    total = g.n - g.w_max
    for i in range(1, g.w_max):
        total += int(counts[i])
    return total
