# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: mirror of ``algoweb._pycore``.

Same algorithms, same random streams, same float operation order; the two
backends are interchangeable bit-for-bit.  Hot loops run without the GIL so
the estimator's per-threshold tasks can execute truly in parallel.
"""

from libc.stdint cimport uint64_t, int64_t, int32_t

import numpy as np

BACKEND_NAME = "compiled"


# ---------------------------------------------------------------------------
# Deterministic random stream (splitmix64-seeded xoshiro256**)
# ---------------------------------------------------------------------------

cdef inline uint64_t _rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _mix64_c(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * (<uint64_t>0xBF58476D1CE4E5B9)
    z = (z ^ (z >> 27)) * (<uint64_t>0x94D049BB133111EB)
    return z ^ (z >> 31)


cdef struct XoState:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline void _seed_state(XoState* st, uint64_t seed) noexcept nogil:
    cdef uint64_t x = seed
    x += <uint64_t>0x9E3779B97F4A7C15
    st.s0 = _mix64_c(x)
    x += <uint64_t>0x9E3779B97F4A7C15
    st.s1 = _mix64_c(x)
    x += <uint64_t>0x9E3779B97F4A7C15
    st.s2 = _mix64_c(x)
    x += <uint64_t>0x9E3779B97F4A7C15
    st.s3 = _mix64_c(x)
    if st.s0 == 0 and st.s1 == 0 and st.s2 == 0 and st.s3 == 0:
        st.s0 = 1


cdef inline uint64_t _next(XoState* st) noexcept nogil:
    cdef uint64_t result = _rotl(st.s1 * <uint64_t>5, 7) * <uint64_t>9
    cdef uint64_t t = st.s1 << 17
    st.s2 ^= st.s0
    st.s3 ^= st.s1
    st.s1 ^= st.s2
    st.s0 ^= st.s3
    st.s2 ^= t
    st.s3 = _rotl(st.s3, 45)
    return result


cdef inline uint64_t _bounded(XoState* st, uint64_t span) noexcept nogil:
    # rejection sampling: accept x >= 2**64 mod span, then reduce
    cdef uint64_t threshold = (<uint64_t>0 - span) % span
    cdef uint64_t x
    while True:
        x = _next(st)
        if x >= threshold:
            return x % span


cdef inline int64_t _uniform_int(XoState* st, int64_t lo, int64_t hi) noexcept nogil:
    cdef uint64_t span = (<uint64_t>(hi - lo)) + 1
    if span == 1:
        return lo
    return lo + <int64_t>_bounded(st, span)


cdef inline bint _coin(XoState* st) noexcept nogil:
    return (_next(st) >> 63) != 0


cdef uint64_t _derive_c(uint64_t seed, uint64_t label) noexcept nogil:
    return _mix64_c(
        (seed ^ <uint64_t>0xA0761D6478BD642F)
        + (label + 1) * <uint64_t>0x9E3779B97F4A7C15
    )


def mix64(z):
    """Finalizer of the splitmix64 generator (a 64-bit bijection)."""
    return _mix64_c(<uint64_t>(z & 0xFFFFFFFFFFFFFFFF))


def derive_seed(seed, label):
    """Deterministically derive an independent child seed."""
    if label < 0:
        raise ValueError("label must be >= 0")
    return _derive_c(
        <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF),
        <uint64_t>(label & 0xFFFFFFFFFFFFFFFF),
    )


cdef class Rng:
    """xoshiro256** stream seeded via splitmix64 (compiled twin)."""

    cdef XoState st
    cdef uint64_t _seed

    def __init__(self, seed):
        self._seed = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
        _seed_state(&self.st, self._seed)

    @property
    def seed(self):
        return self._seed

    def next_u64(self):
        return _next(&self.st)

    def uniform_int(self, lo, hi):
        if lo > hi:
            raise ValueError(f"inverted range [{lo}, {hi}]")
        return _uniform_int(&self.st, <int64_t>lo, <int64_t>hi)

    def coin(self):
        return _coin(&self.st)

    def next_float53(self):
        return (_next(&self.st) >> 11) * 1.1102230246251565e-16

    def derive(self, label):
        if label < 0:
            raise ValueError("label must be >= 0")
        return Rng(_derive_c(self._seed, <uint64_t>label))


# ---------------------------------------------------------------------------
# Graph kernels
# ---------------------------------------------------------------------------


def bfs_reach(indptr, nbr, n, start):
    """Number of vertices reachable from ``start``."""
    cdef const int64_t[::1] indptr_v = indptr
    cdef const int32_t[::1] nbr_v = nbr
    cdef int64_t nn = n
    cdef int32_t[::1] queue = np.empty(nn, dtype=np.int32)
    cdef signed char[::1] seen = np.zeros(nn, dtype=np.int8)
    cdef int64_t qpos = 0, qlen = 1, count = 1, v, e
    cdef int32_t u
    queue[0] = <int32_t>start
    seen[<int64_t>start] = 1
    with nogil:
        while qpos < qlen:
            v = queue[qpos]
            qpos += 1
            for e in range(indptr_v[v], indptr_v[v + 1]):
                u = nbr_v[e]
                if seen[u] == 0:
                    seen[u] = 1
                    count += 1
                    queue[qlen] = u
                    qlen += 1
    return count


def prim_mst(indptr, nbr, wt, n):
    """Lazy-deletion heap Prim; returns (total_weight, touches, visited)."""
    cdef const int64_t[::1] indptr_v = indptr
    cdef const int32_t[::1] nbr_v = nbr
    cdef const int32_t[::1] wt_v = wt
    cdef int64_t nn = n
    cdef int64_t arcs = indptr_v[nn]
    cdef uint64_t[::1] heap = np.empty(arcs + 1, dtype=np.uint64)
    cdef signed char[::1] visited = np.zeros(nn, dtype=np.int8)
    cdef int64_t hlen = 0, total = 0, touches = 0, count = 0, v, e, child, parent
    cdef uint64_t key, tmp
    cdef int32_t u

    with nogil:
        heap[0] = 0  # (weight 0) << 32 | vertex 0
        hlen = 1
        while hlen > 0:
            key = heap[0]
            hlen -= 1
            heap[0] = heap[hlen]
            # sift down
            parent = 0
            while True:
                child = 2 * parent + 1
                if child >= hlen:
                    break
                if child + 1 < hlen and heap[child + 1] < heap[child]:
                    child += 1
                if heap[child] >= heap[parent]:
                    break
                tmp = heap[parent]
                heap[parent] = heap[child]
                heap[child] = tmp
                parent = child
            v = <int64_t>(key & <uint64_t>0xFFFFFFFF)
            if visited[v]:
                continue
            visited[v] = 1
            count += 1
            total += <int64_t>(key >> 32)
            for e in range(indptr_v[v], indptr_v[v + 1]):
                touches += 1
                u = nbr_v[e]
                if u != v and visited[u] == 0:
                    # sift up
                    child = hlen
                    heap[hlen] = (<uint64_t>wt_v[e] << 32) | <uint64_t>u
                    hlen += 1
                    while child > 0:
                        parent = (child - 1) // 2
                        if heap[parent] <= heap[child]:
                            break
                        tmp = heap[parent]
                        heap[parent] = heap[child]
                        heap[child] = tmp
                        child = parent
    return total, touches, count


cdef inline int64_t _uf_find(int32_t* uf_parent, int64_t x) noexcept nogil:
    cdef int64_t root = x, nxt
    while uf_parent[root] != root:
        root = uf_parent[root]
    while uf_parent[x] != root:  # full path compression
        nxt = uf_parent[x]
        uf_parent[x] = <int32_t>root
        x = nxt
    return root


cdef inline bint _uf_union(int32_t* uf_parent, signed char* uf_rank,
                           int64_t a, int64_t b) noexcept nogil:
    cdef int64_t ra = _uf_find(uf_parent, a)
    cdef int64_t rb = _uf_find(uf_parent, b)
    cdef int64_t t
    if ra == rb:
        return False
    if uf_rank[ra] < uf_rank[rb]:
        t = ra
        ra = rb
        rb = t
    uf_parent[rb] = <int32_t>ra
    if uf_rank[ra] == uf_rank[rb]:
        uf_rank[ra] += 1
    return True


def kruskal_mst(su, sv, sw, n):
    """Kruskal over weight-sorted edges; returns (weight, touches, accepted)."""
    cdef const int32_t[::1] su_v = su
    cdef const int32_t[::1] sv_v = sv
    cdef const int32_t[::1] sw_v = sw
    cdef int64_t nn = n
    cdef int32_t[::1] parent = np.arange(nn, dtype=np.int32)
    cdef signed char[::1] rank = np.zeros(nn, dtype=np.int8)
    cdef int64_t m = su_v.shape[0]
    cdef int64_t total = 0, accepted = 0, touches = 0, e, target = nn - 1
    cdef int32_t a, b
    with nogil:
        for e in range(m):
            if accepted == target:
                break
            touches += 1
            a = su_v[e]
            b = sv_v[e]
            if a == b:
                continue
            if _uf_union(&parent[0], &rank[0], a, b):
                total += sw_v[e]
                accepted += 1
    return total, touches, accepted


def count_components(eu, ev, n):
    """Connected components of the graph on n vertices with the given edges."""
    cdef const int32_t[::1] eu_v = eu
    cdef const int32_t[::1] ev_v = ev
    cdef int64_t nn = n
    cdef int32_t[::1] parent = np.arange(nn, dtype=np.int32)
    cdef signed char[::1] rank = np.zeros(nn, dtype=np.int8)
    cdef int64_t m = eu_v.shape[0]
    cdef int64_t comps = nn, e
    cdef int32_t a, b
    if nn == 0:
        return 0
    with nogil:
        for e in range(m):
            a = eu_v[e]
            b = ev_v[e]
            if a != b and _uf_union(&parent[0], &rank[0], a, b):
                comps -= 1
    return comps


def components_sweep(su, sv, sw, n, w_max):
    """Per-threshold component counts over weight-sorted edges."""
    cdef const int32_t[::1] su_v = su
    cdef const int32_t[::1] sv_v = sv
    cdef const int32_t[::1] sw_v = sw
    cdef int64_t nn = n
    cdef int64_t wmax = w_max
    out_arr = np.empty(wmax + 1, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    cdef int32_t[::1] parent = np.arange(nn, dtype=np.int32)
    cdef signed char[::1] rank = np.zeros(nn, dtype=np.int8)
    cdef int64_t m = su_v.shape[0]
    cdef int64_t comps = nn, ptr = 0, i
    cdef int32_t a, b
    out[0] = nn
    with nogil:
        for i in range(1, wmax + 1):
            while ptr < m and sw_v[ptr] <= i:
                a = su_v[ptr]
                b = sv_v[ptr]
                if a != b and _uf_union(&parent[0], &rank[0], a, b):
                    comps -= 1
                ptr += 1
            out[i] = comps
    return out_arr


def estimate_threshold(indptr, nbr, scan_bound, deg_lf, n, r_eff,
                       hub_threshold, edge_budget, flip_cap, sub_seed, perm):
    """Budgeted-BFS component probes for one threshold subgraph.

    Compiled twin of ``algoweb._pycore.estimate_threshold``; see there for
    the full contract.  Runs without the GIL.
    """
    cdef const int64_t[::1] indptr_v = indptr
    cdef const int32_t[::1] nbr_v = nbr
    cdef const int32_t[::1] scan_v = scan_bound
    cdef const int32_t[::1] deg_v = deg_lf
    cdef int64_t[::1] perm_v = perm
    cdef int64_t nn = n
    cdef int64_t r = r_eff
    cdef double hub = hub_threshold
    cdef int64_t hard_cap = 2 * <int64_t>edge_budget
    cdef int64_t fcap = flip_cap

    cdef XoState st
    _seed_state(&st, <uint64_t>(int(sub_seed) & 0xFFFFFFFFFFFFFFFF))

    cdef int32_t[::1] visited = np.zeros(nn, dtype=np.int32)
    cdef int64_t[::1] cursor = np.empty(nn, dtype=np.int64)
    cdef int32_t[::1] queue = np.empty(nn, dtype=np.int32)

    cdef double sum_beta = 0.0
    cdef int64_t arcs_total = 0
    cdef int64_t started = 0, completed = 0, ab_hub = 0, ab_budget = 0, ab_tails = 0

    cdef int64_t j, pos, root, d_root, qlen, qpos, v, vend, e, a, k, flips
    cdef int64_t allowance, cap_now, tmp
    cdef int32_t u, epoch
    cdef int status

    with nogil:
        for j in range(r):
            pos = _uniform_int(&st, j, nn - 1)
            tmp = perm_v[j]
            perm_v[j] = perm_v[pos]
            perm_v[pos] = tmp
            root = perm_v[j]
            started += 1

            d_root = deg_v[root]
            if d_root == 0:
                completed += 1
                sum_beta += 1.0
                continue
            epoch = <int32_t>(j + 1)
            if (<double>d_root) > hub:
                ab_hub += 1
                continue

            visited[root] = epoch
            cursor[root] = indptr_v[root]
            queue[0] = <int32_t>root
            qlen = 1
            qpos = 0
            a = 0
            k = 0
            flips = 0
            allowance = 2
            status = 0

            while status == 0:
                cap_now = allowance if allowance < hard_cap else hard_cap
                while qpos < qlen:
                    v = queue[qpos]
                    vend = indptr_v[v] + scan_v[v]
                    if cursor[v] >= vend:
                        qpos += 1
                        continue
                    if a == cap_now:
                        break
                    e = cursor[v]
                    cursor[v] = e + 1
                    u = nbr_v[e]
                    if u == v:
                        continue
                    a += 1
                    if visited[u] != epoch:
                        visited[u] = epoch
                        if (<double>deg_v[u]) > hub:
                            status = 2
                            break
                        cursor[u] = indptr_v[u]
                        queue[qlen] = u
                        qlen += 1
                if status == 2:
                    break
                if qpos == qlen:
                    status = 1
                    break
                if a >= hard_cap or flips >= fcap:
                    status = 3
                    break
                flips += 1
                if not _coin(&st):
                    status = 4
                    break
                k += 1
                allowance = allowance << 1

            arcs_total += a
            if status == 1:
                completed += 1
                sum_beta += ((<double>d_root) * (<double>(<uint64_t>1 << k))) / (<double>a)
            elif status == 2:
                ab_hub += 1
            elif status == 3:
                ab_budget += 1
            else:
                ab_tails += 1

    return sum_beta, arcs_total, started, completed, ab_hub, ab_budget, ab_tails
