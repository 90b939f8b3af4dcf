"""Immutable weighted undirected graph with constant-cost threshold views.

The adjacency of every vertex is sorted ascending by edge weight, and a
per-vertex prefix count table records, for each weight threshold ``i``, how
many incident edges weigh at most ``i``.  Any weight-threshold subgraph is
therefore a prefix view of the adjacency lists: extracting it costs nothing
beyond the one-time freeze, which pays the unavoidable linear preprocessing
up front.

Storage is CSR-style numpy arrays shared with both kernel backends:

* ``indptr``      int64[n + 1]   adjacency slices
* ``nbr``, ``wt`` int32[L]       neighbor ids and weights, weight-sorted
* ``eu, ev, ew``  int32[m]       each undirected edge once, ``u <= v``,
                                 sorted by (u, v, w)

Self-loops are tolerated in input files (stored once, counted once in the
degree), never produced by the generators, and irrelevant to spanning-tree
weight.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from . import backend
from .errors import GraphFormatError

# Above this, the dense (w_max + 1) x n prefix table is replaced by binary
# search over the weight-sorted lists.
DENSE_PREFIX_MAX_W = 128


class Graph:
    """Frozen adjacency-list graph; safe for unrestricted concurrent reads."""

    __slots__ = (
        "n",
        "m",
        "w_max",
        "loop_count",
        "indptr",
        "nbr",
        "wt",
        "eu",
        "ev",
        "ew",
        "edges_le",
        "connected_hint",
        "_prefix_t",
        "_lf_prefix_t",
        "_avg_degree",
    )

    def __init__(self, *args, **kwargs):
        raise TypeError(
            "Graph cannot be constructed directly; use GraphBuilder.freeze(), "
            "algoweb.graph.freeze(builder) or load_ssv()"
        )

    # -- construction -----------------------------------------------------

    @classmethod
    def _from_edge_arrays(cls, n, eu, ev, ew, connected_hint=None):
        if n < 0:
            raise ValueError("vertex count must be >= 0")
        eu = np.asarray(eu, dtype=np.int64)
        ev = np.asarray(ev, dtype=np.int64)
        ew = np.asarray(ew, dtype=np.int64)
        m = len(eu)
        if n >= 2**31:
            raise ValueError("vertex ids beyond int32 range are unsupported")
        if m:
            if eu.min() < 0 or ev.min() < 0 or max(eu.max(), ev.max()) >= n:
                raise ValueError("edge endpoint out of range")
            if ew.min() < 1:
                raise ValueError("edge weights must be >= 1")
            if ew.max() >= 2**31:
                raise ValueError("edge weights beyond int32 range are unsupported")

        g = object.__new__(cls)
        g.n = int(n)
        g.m = int(m)
        g.w_max = int(ew.max()) if m else 0
        g.connected_hint = connected_hint
        g._avg_degree = None

        lo = np.minimum(eu, ev)
        hi = np.maximum(eu, ev)
        order = np.lexsort((ew, hi, lo))
        g.eu = lo[order].astype(np.int32)
        g.ev = hi[order].astype(np.int32)
        g.ew = ew[order].astype(np.int32)

        loops = g.eu == g.ev
        g.loop_count = int(loops.sum())

        # Doubled arc lists; self-loops stored once.
        src = np.concatenate([g.eu[~loops], g.ev[~loops], g.eu[loops]])
        dst = np.concatenate([g.ev[~loops], g.eu[~loops], g.eu[loops]])
        awt = np.concatenate([g.ew[~loops], g.ew[~loops], g.ew[loops]])
        aorder = np.lexsort((dst, awt, src))  # per-vertex (weight, neighbor)
        src = src[aorder]
        g.nbr = dst[aorder].astype(np.int32)
        g.wt = awt[aorder].astype(np.int32)
        counts = np.bincount(src, minlength=n) if m else np.zeros(n, dtype=np.int64)
        g.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=g.indptr[1:])

        w1 = g.w_max + 1
        nonloop_w = g.ew[~loops]
        g.edges_le = np.bincount(nonloop_w, minlength=w1).cumsum().astype(np.int64)

        if g.w_max <= DENSE_PREFIX_MAX_W and n > 0:
            g._prefix_t = _prefix_table(src, g.wt, n, g.w_max)
            if g.loop_count:
                keep = g.nbr != src.astype(np.int32)
                g._lf_prefix_t = _prefix_table(src[keep], g.wt[keep], n, g.w_max)
            else:
                g._lf_prefix_t = g._prefix_t
        else:
            g._prefix_t = None
            g._lf_prefix_t = None
        return g

    # -- basic accessors ---------------------------------------------------

    def degree(self, v: int) -> int:
        """Number of adjacency entries of ``v`` (a self-loop counts once)."""
        self._check_vertex(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def degree_up_to(self, v: int, i: int) -> int:
        """Number of incident edges of ``v`` with weight <= ``i``."""
        self._check_vertex(v)
        self._check_threshold(i)
        if self._prefix_t is not None:
            return int(self._prefix_t[i, v])
        lo, hi = int(self.indptr[v]), int(self.indptr[v + 1])
        return bisect_right(self.wt, i, lo, hi) - lo

    def neighbors_up_to(self, v: int, i: int) -> list[tuple[int, int]]:
        """Incident edges of ``v`` with weight <= ``i``, in weight order.

        Costs O(output) plus the O(1) prefix lookup (binary search when the
        dense table is disabled for very large weight ranges).
        """
        cnt = self.degree_up_to(v, i)
        lo = int(self.indptr[v])
        return [
            (int(self.nbr[e]), int(self.wt[e])) for e in range(lo, lo + cnt)
        ]

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        return self.neighbors_up_to(v, self.w_max)

    def average_degree_exact(self) -> float:
        """Exact average degree via a progressive mean (no large sums)."""
        if self.n < 1:
            raise ValueError("empty graph")
        if self._avg_degree is None:
            indptr = self.indptr.tolist()
            mean = 0.0
            for v in range(self.n):
                mean += (indptr[v + 1] - indptr[v] - mean) / (v + 1)
            self._avg_degree = mean
        return self._avg_degree

    def edge_count_up_to(self, i: int) -> int:
        """Number of non-loop edges with weight <= ``i``."""
        self._check_threshold(i)
        return int(self.edges_le[i])

    def is_connected(self) -> bool:
        """True iff a BFS from vertex 0 reaches every vertex."""
        if self.n < 1:
            raise ValueError("empty graph")
        return backend.bfs_reach(self.indptr, self.nbr, self.n, 0) == self.n

    # -- kernel plumbing ---------------------------------------------------

    def _scan_bounds(self, i: int) -> np.ndarray:
        """int32[n]: adjacency entries per vertex with weight <= i."""
        if self._prefix_t is not None:
            return self._prefix_t[i]
        return self._count_up_to(i, loop_free=False)

    def _reach_degrees(self, i: int) -> np.ndarray:
        """int32[n]: like _scan_bounds but with self-loops excluded."""
        if self._lf_prefix_t is not None:
            return self._lf_prefix_t[i]
        return self._count_up_to(i, loop_free=True)

    def _count_up_to(self, i: int, loop_free: bool) -> np.ndarray:
        mask = self.wt <= i
        if loop_free and self.loop_count:
            src = np.repeat(
                np.arange(self.n, dtype=np.int32), np.diff(self.indptr)
            )
            mask = mask & (self.nbr != src)
        cs = np.concatenate([[0], np.cumsum(mask)])
        return (cs[self.indptr[1:]] - cs[self.indptr[:-1]]).astype(np.int32)

    def _edges_by_weight(self):
        """Canonical edges stably re-sorted ascending by weight."""
        order = np.argsort(self.ew, kind="stable")
        return self.eu[order], self.ev[order], self.ew[order]

    # -- misc ----------------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range [0, {self.n})")

    def _check_threshold(self, i: int) -> None:
        if not 0 <= i <= self.w_max:
            raise ValueError(f"threshold {i} out of range [0, {self.w_max}]")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.eu, other.eu)
            and np.array_equal(self.ev, other.ev)
            and np.array_equal(self.ew, other.ew)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"Graph(n={self.n}, m={self.m}, w_max={self.w_max}"
            + (f", loops={self.loop_count}" if self.loop_count else "")
            + ")"
        )


def _prefix_table(src, wts, n, w_max):
    """(w_max + 1) x n int32 table: row i = per-vertex count of entries
    with weight <= i.  Row-contiguous so kernels get flat columns."""
    w1 = w_max + 1
    flat = np.bincount(src.astype(np.int64) * w1 + wts, minlength=n * w1)
    per_vertex = flat.reshape(n, w1).cumsum(axis=1)
    return np.ascontiguousarray(per_vertex.T, dtype=np.int32)


@dataclass
class GraphBuilder:
    """Mutable edge accumulator; ``freeze`` turns it into a :class:`Graph`.

    Single-owner: not safe to share across threads.
    """

    n: int
    _eu: list[int] = field(default_factory=list, repr=False)
    _ev: list[int] = field(default_factory=list, repr=False)
    _ew: list[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be >= 0")

    def add_edge(self, u: int, v: int, w: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge endpoint ({u}, {v}) out of range for n={self.n}")
        if w < 1:
            raise ValueError(f"edge weight {w} must be >= 1")
        self._eu.append(u)
        self._ev.append(v)
        self._ew.append(w)

    def edge_count(self) -> int:
        return len(self._eu)

    def freeze(self, connected_hint=None) -> Graph:
        """Sort adjacency by (weight, neighbor) and produce the Graph.

        Deterministic: the layout is a pure function of the edge multiset,
        so rebuilding from a saved file yields an identical graph.
        """
        return Graph._from_edge_arrays(
            self.n, self._eu, self._ev, self._ew, connected_hint=connected_hint
        )


def freeze(builder: GraphBuilder) -> Graph:
    """Module-level alias of :meth:`GraphBuilder.freeze`."""
    return builder.freeze()


# ---------------------------------------------------------------------------
# .ssv serialization
# ---------------------------------------------------------------------------
#
# One undirected edge per line: "<src> <dst> <weight>\n", single spaces,
# base-10 unsigned integers, no header; the reverse edge is implicit.


def load_ssv(path) -> Graph:
    """Parse an ``.ssv`` edge list.

    ``n`` is inferred as 1 + the largest vertex id (generated graphs are
    connected, so every vertex appears on some line).  Self-loops are
    accepted and counted once.
    """
    try:
        frame = pd.read_csv(
            path,
            sep=" ",
            header=None,
            dtype=np.int64,
            skip_blank_lines=False,
            engine="c",
        )
    except pd.errors.EmptyDataError:
        raise GraphFormatError(f"{path}: empty .ssv file") from None
    except FileNotFoundError:
        raise
    except (ValueError, pd.errors.ParserError) as exc:
        raise GraphFormatError(f"{path}: malformed .ssv ({exc})") from None
    if frame.shape[1] != 3:
        raise GraphFormatError(
            f"{path}: expected 3 space-separated integers per line, "
            f"got {frame.shape[1]} columns"
        )
    eu = frame[0].to_numpy()
    ev = frame[1].to_numpy()
    ew = frame[2].to_numpy()
    if eu.min() < 0 or ev.min() < 0:
        raise GraphFormatError(f"{path}: negative vertex id")
    if ew.min() < 1:
        bad = int(np.argmax(ew < 1))
        raise GraphFormatError(f"{path}: line {bad + 1}: weight must be >= 1")
    n = int(max(eu.max(), ev.max())) + 1
    return Graph._from_edge_arrays(n, eu, ev, ew)


def save_ssv(g: Graph, path) -> None:
    """Write the canonical serialization: each edge once as ``min max w``,
    lines sorted by (src, dst, weight)."""
    frame = pd.DataFrame({"u": g.eu, "v": g.ev, "w": g.ew})
    frame.to_csv(path, sep=" ", header=False, index=False, lineterminator="\n")
