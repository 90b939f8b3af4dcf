"""Pure-Python kernels.

This module is the reference implementation of everything the compiled
extension (``algoweb._core``) accelerates: the deterministic random stream,
the exact MST baselines, union-find component counting, reachability, and
the per-threshold component estimator.  The two backends consume identical
random streams and perform float operations in the same order, so results
are bit-identical; tests enforce that.

All kernels operate on the raw CSR / edge arrays owned by
:class:`algoweb.graph.Graph` so that either backend can be swapped in
underneath the public API.
"""

from __future__ import annotations

import heapq

import numpy as np

BACKEND_NAME = "python"

_M64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_DERIVE_SALT = 0xA0761D6478BD642F


def mix64(z: int) -> int:
    """Finalizer of the splitmix64 generator (a 64-bit bijection)."""
    z &= _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return z ^ (z >> 31)


def derive_seed(seed: int, label: int) -> int:
    """Deterministically derive an independent child seed.

    Children for distinct labels come from distinct points of a splitmix64
    Weyl sequence, so their streams are statistically independent of each
    other and of the parent stream.
    """
    if label < 0:
        raise ValueError("label must be >= 0")
    base = ((seed & _M64) ^ _DERIVE_SALT) + (label + 1) * _GOLDEN
    return mix64(base)


class Rng:
    """xoshiro256** stream seeded via splitmix64.

    Both algorithms are tiny, platform-independent and have published
    reference outputs, which keeps every run reproducible from a single
    64-bit seed regardless of backend or machine.
    """

    __slots__ = ("_s", "_seed")

    def __init__(self, seed: int):
        seed = int(seed) & _M64
        self._seed = seed
        s = []
        x = seed
        for _ in range(4):
            x = (x + _GOLDEN) & _M64
            s.append(mix64(x))
        if not any(s):  # all-zero state is the one invalid xoshiro state
            s[0] = 1
        self._s = s

    @property
    def seed(self) -> int:
        """The seed this stream was constructed from (not the live state)."""
        return self._seed

    def next_u64(self) -> int:
        s = self._s
        s1 = s[1]
        x = (s1 * 5) & _M64
        result = ((((x << 7) | (x >> 57)) & _M64) * 9) & _M64
        t = (s1 << 17) & _M64
        s[2] ^= s[0]
        s[3] ^= s1
        s[1] = s1 ^ s[2]
        s[0] ^= s[3]
        s[2] ^= t
        x = s[3]
        s[3] = ((x << 45) | (x >> 19)) & _M64
        return result

    def uniform_int(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], modulo-debiased by rejection."""
        if lo > hi:
            raise ValueError(f"inverted range [{lo}, {hi}]")
        span = hi - lo + 1
        if span == 1:
            return lo
        threshold = ((1 << 64) - span) % span  # == 2**64 mod span
        while True:
            x = self.next_u64()
            if x >= threshold:
                return lo + (x % span)

    def coin(self) -> bool:
        """Fair coin; True is heads."""
        return (self.next_u64() >> 63) != 0

    def next_float53(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def derive(self, label: int) -> "Rng":
        """Independent child stream; depends on the seed only, never on
        how far this stream has been consumed."""
        return Rng(derive_seed(self._seed, label))


# ---------------------------------------------------------------------------
# Graph kernels
# ---------------------------------------------------------------------------


def bfs_reach(indptr, nbr, n: int, start: int) -> int:
    """Number of vertices reachable from ``start``."""
    indptr = indptr.tolist()
    nbr = nbr.tolist()
    seen = bytearray(n)
    seen[start] = 1
    queue = [start]
    qpos = 0
    count = 1
    while qpos < len(queue):
        v = queue[qpos]
        qpos += 1
        for e in range(indptr[v], indptr[v + 1]):
            u = nbr[e]
            if not seen[u]:
                seen[u] = 1
                count += 1
                queue.append(u)
    return count


def prim_mst(indptr, nbr, wt, n: int):
    """Lazy-deletion heap Prim.

    Returns ``(total_weight, touches, visited)`` where ``touches`` counts
    adjacency entries scanned and ``visited`` the vertices reached; the
    caller decides whether ``visited < n`` is an error.  Self-loops are
    scanned (counted in ``touches``) but never become tree edges.
    """
    indptr = indptr.tolist()
    nbr = nbr.tolist()
    wt = wt.tolist()
    visited = bytearray(n)
    heap = [(0, 0)]
    total = 0
    touches = 0
    count = 0
    while heap:
        w, v = heapq.heappop(heap)
        if visited[v]:
            continue
        visited[v] = 1
        count += 1
        total += w
        for e in range(indptr[v], indptr[v + 1]):
            touches += 1
            u = nbr[e]
            if u != v and not visited[u]:
                heapq.heappush(heap, (wt[e], u))
    return total, touches, count


class _UF:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = bytearray(n)

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:  # full path compression
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        rank = self.rank
        if rank[ra] < rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if rank[ra] == rank[rb]:
            rank[ra] += 1
        return True


def kruskal_mst(su, sv, sw, n: int):
    """Kruskal over edges pre-sorted ascending by weight.

    Returns ``(total_weight, touches, accepted)``; ``touches`` is the number
    of edges examined before the tree was complete.
    """
    su = su.tolist()
    sv = sv.tolist()
    sw = sw.tolist()
    uf = _UF(n)
    total = 0
    accepted = 0
    touches = 0
    target = n - 1
    for e in range(len(su)):
        if accepted == target:
            break
        touches += 1
        a = su[e]
        b = sv[e]
        if a == b:
            continue
        if uf.union(a, b):
            total += sw[e]
            accepted += 1
    return total, touches, accepted


def count_components(eu, ev, n: int) -> int:
    """Connected components of the graph on n vertices with the given edges."""
    eu = eu.tolist()
    ev = ev.tolist()
    uf = _UF(n)
    comps = n
    for a, b in zip(eu, ev):
        if a != b and uf.union(a, b):
            comps -= 1
    return comps


def components_sweep(su, sv, sw, n: int, w_max: int):
    """Component counts of every weight-threshold subgraph in one pass.

    Edges must be pre-sorted ascending by weight.  Returns an int64 array
    ``out`` of length ``w_max + 1`` with ``out[i]`` = number of connected
    components once all edges of weight <= i are present.
    """
    su = su.tolist()
    sv = sv.tolist()
    sw = sw.tolist()
    out = np.empty(w_max + 1, dtype=np.int64)
    out[0] = n
    uf = _UF(n)
    comps = n
    m = len(su)
    ptr = 0
    for i in range(1, w_max + 1):
        while ptr < m and sw[ptr] <= i:
            a = su[ptr]
            b = sv[ptr]
            if a != b and uf.union(a, b):
                comps -= 1
            ptr += 1
        out[i] = comps
    return out


def estimate_threshold(
    indptr,
    nbr,
    scan_bound,
    deg_lf,
    n: int,
    r_eff: int,
    hub_threshold: float,
    edge_budget: int,
    flip_cap: int,
    sub_seed: int | None,
    perm,
    rng=None,
):
    """Run ``r_eff`` budgeted BFS probes in one weight-threshold subgraph.

    ``scan_bound[v]`` is the number of leading adjacency entries of ``v``
    with weight at or below the threshold (self-loops included, since they
    sit in the list); ``deg_lf[v]`` is the same count without self-loops.
    Roots are drawn without replacement by partially shuffling ``perm`` in
    place.  Each probe either

    * returns 1 when the root is isolated at this threshold,
    * aborts with 0 on a tails flip, a hub, or a budget breach, or
    * exhausts its component after ``a = 2 * m_u`` entry scans having
      survived ``k`` heads flips and contributes ``deg * 2**k / a``.

    The per-round scan allowance starts at one edge (two entry scans) and
    doubles with every heads flip.  Returns the tuple
    ``(sum_beta, entries_scanned, started, completed, hub_aborts,
    budget_aborts, tails_aborts)``.
    """
    if rng is None:
        rng = Rng(sub_seed)
    indptr_l = indptr.tolist()
    nbr_l = nbr.tolist()
    scan_bound_l = scan_bound.tolist()
    deg_lf_l = deg_lf.tolist()

    visited = [0] * n  # epoch marks, reset-free across roots
    cursor = [0] * n
    hard_cap = 2 * edge_budget  # budgets are in edges; scans count entries

    sum_beta = 0.0
    arcs_total = 0
    started = completed = ab_hub = ab_budget = ab_tails = 0

    for j in range(r_eff):
        pos = rng.uniform_int(j, n - 1)
        perm[j], perm[pos] = perm[pos], perm[j]
        root = int(perm[j])
        started += 1

        d_root = deg_lf_l[root]
        if d_root == 0:
            completed += 1
            sum_beta += 1.0
            continue
        epoch = j + 1
        if d_root > hub_threshold:
            ab_hub += 1
            continue

        visited[root] = epoch
        cursor[root] = indptr_l[root]
        queue = [root]
        qpos = 0
        a = 0
        k = 0
        flips = 0
        allowance = 2
        status = 0  # 0 running, 1 complete, 2 hub, 3 budget, 4 tails

        while status == 0:
            cap_now = allowance if allowance < hard_cap else hard_cap
            while qpos < len(queue):
                v = queue[qpos]
                vend = indptr_l[v] + scan_bound_l[v]
                if cursor[v] >= vend:
                    qpos += 1
                    continue
                if a == cap_now:
                    break
                e = cursor[v]
                cursor[v] = e + 1
                u = nbr_l[e]
                if u == v:
                    continue  # self-loop entry: skipped, not counted
                a += 1
                if visited[u] != epoch:
                    visited[u] = epoch
                    if deg_lf_l[u] > hub_threshold:
                        status = 2
                        break
                    cursor[u] = indptr_l[u]
                    queue.append(u)
            if status == 2:
                break
            if qpos == len(queue):
                status = 1
                break
            if a >= hard_cap or flips >= flip_cap:
                status = 3
                break
            flips += 1
            if not rng.coin():
                status = 4
                break
            k += 1
            allowance <<= 1

        arcs_total += a
        if status == 1:
            completed += 1
            sum_beta += (d_root * float(1 << k)) / a
        elif status == 2:
            ab_hub += 1
        elif status == 3:
            ab_budget += 1
        else:
            ab_tails += 1

    return sum_beta, arcs_total, started, completed, ab_hub, ab_budget, ab_tails
