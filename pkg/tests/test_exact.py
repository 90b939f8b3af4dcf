"""Exact MST baselines, union-find, and the component-count identity."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algoweb import (
    GeneratorConfig,
    GraphBuilder,
    UnionFind,
    components_sweep,
    exact_components,
    generate,
    kruskal_mst,
    kruskal_mst_weight,
    mst_weight_via_components,
    prim_mst,
    prim_mst_weight,
)
from algoweb.errors import GraphDisconnectedError
from conftest import build_graph


def brute_force_mst_weight(n, edges):
    """Minimum over all spanning (n-1)-edge acyclic subsets; None if none."""
    if n == 1:
        return 0
    best = None
    for subset in combinations(range(len(edges)), n - 1):
        uf = UnionFind(n)
        ok = True
        for idx in subset:
            u, v, _ = edges[idx]
            if u == v or not uf.union(u, v):
                ok = False
                break
        if ok and uf.count == 1:
            weight = sum(edges[i][2] for i in subset)
            best = weight if best is None else min(best, weight)
    return best


def test_prim_examples(triangle, path3):
    assert prim_mst_weight(path3) == 12
    assert prim_mst_weight(triangle) == 3 == brute_force_mst_weight(
        3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]
    )
    k4 = build_graph(4, [(u, v, 1) for u in range(4) for v in range(u + 1, 4)])
    assert prim_mst_weight(k4) == 3


def test_kruskal_examples(triangle, path3):
    assert kruskal_mst_weight(path3) == 12
    assert kruskal_mst_weight(triangle) == 3
    square = build_graph(4, [(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2)])
    assert kruskal_mst_weight(square) == 6


def test_single_vertex():
    g = build_graph(1, [])
    assert prim_mst_weight(g) == 0
    assert kruskal_mst_weight(g) == 0
    assert mst_weight_via_components(g) == 0


def test_disconnected_raises():
    g = build_graph(4, [(0, 1, 1), (2, 3, 1)])
    for fn in (prim_mst_weight, kruskal_mst_weight, mst_weight_via_components):
        with pytest.raises(GraphDisconnectedError):
            fn(g)


def test_self_loops_never_in_tree(tmp_path):
    b = GraphBuilder(2)
    b.add_edge(0, 0, 1)
    b.add_edge(0, 1, 5)
    b.add_edge(1, 1, 1)
    g = b.freeze()
    assert prim_mst_weight(g) == 5
    assert kruskal_mst_weight(g) == 5
    assert mst_weight_via_components(g) == 5


def test_exact_components_triangle(triangle):
    assert exact_components(triangle, 0) == 3
    assert exact_components(triangle, 1) == 2
    assert exact_components(triangle, 2) == 1
    assert exact_components(triangle, 3) == 1


def test_components_sweep_matches_pointwise(triangle):
    counts = components_sweep(triangle)
    assert [int(c) for c in counts] == [
        exact_components(triangle, i) for i in range(triangle.w_max + 1)
    ]


def test_components_monotone_and_final():
    g = generate(GeneratorConfig(model="gaussian", n=300, m=900, w=8, seed=2))
    counts = components_sweep(g).tolist()
    assert all(a >= b for a, b in zip(counts, counts[1:]))
    assert counts[g.w_max] == 1


def test_identity_examples(triangle):
    assert mst_weight_via_components(triangle) == 3
    unit = build_graph(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)])
    assert mst_weight_via_components(unit) == 4  # n - 1 for unit weights


def test_identity_on_generated_graphs():
    # Exact-identity spot check across models; the acceptance suite runs
    # the full 500-instance version.
    cases = 0
    for model in ("uniform", "gaussian", "smallworld", "scalefree"):
        for seed in range(10):
            n = 20 + 17 * seed
            m = None if model == "scalefree" else 2 * n
            g = generate(GeneratorConfig(model=model, n=n, m=m, w=7, seed=seed))
            p = prim_mst_weight(g)
            assert mst_weight_via_components(g) == p
            assert kruskal_mst_weight(g) == p
            cases += 1
    assert cases == 40


def test_prim_touches_all_entries():
    g = generate(GeneratorConfig(model="uniform", n=200, m=800, w=5, seed=9))
    weight, touches = prim_mst(g)
    assert touches == 2 * g.m
    k_weight, k_touches = kruskal_mst(g)
    assert k_weight == weight
    assert 0 < k_touches <= g.m


@st.composite
def connected_small_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    # a random spanning path guarantees connectivity, then extras
    base = [(i, i + 1, draw(st.integers(1, 8))) for i in range(n - 1)]
    extra_count = draw(st.integers(0, min(12, n * (n - 1) // 2) - (n - 1)))
    extras = [
        (draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)),
         draw(st.integers(1, 8)))
        for _ in range(extra_count)
    ]
    edges = base + [(u, v, w) for u, v, w in extras if u != v]
    return n, edges


@given(connected_small_graphs())
@settings(max_examples=120, deadline=None)
def test_prim_kruskal_match_brute_force(case):
    n, edges = case
    g = build_graph(n, edges)
    expected = brute_force_mst_weight(n, edges)
    assert prim_mst_weight(g) == expected
    assert kruskal_mst_weight(g) == expected
    assert mst_weight_via_components(g) == expected


def test_union_find_count_matches_components():
    g = generate(GeneratorConfig(model="uniform", n=100, m=160, w=6, seed=12))
    uf = UnionFind(g.n)
    for u, v in zip(g.eu.tolist(), g.ev.tolist()):
        if u != v:
            uf.union(u, v)
    assert uf.count == exact_components(g, g.w_max) == 1


def test_union_find_unit():
    uf = UnionFind(5)
    assert uf.count == 5
    assert uf.union(0, 1)
    assert not uf.union(1, 0)
    assert uf.count == 4
    assert uf.find(1) == uf.find(0)
    assert uf.connected(0, 1) and not uf.connected(0, 2)
    uf.union(2, 3)
    uf.union(0, 3)
    assert uf.count == 2
    root = uf.find(2)
    assert uf.find(2) == root  # idempotent after compression
