"""Connected weighted random graph generation in four models.

Every model guarantees connectivity by construction.  The uniform,
gaussian and small-world models first grow a uniform random spanning tree
over a random vertex permutation, then add the remaining edges from a
model-specific candidate stream, rejecting self-pairs and duplicates until
exactly the requested edge count is reached.  The scale-free model grows
its own tree by degree-proportional attachment (one edge per arriving
vertex, starting from a two-vertex complete graph), so its edge count is
n - 1 and only n is configurable.

Edge weights are drawn independently at the moment an edge is accepted:
uniformly over [1, w], or proportional to 1/k for the power-law option.
Generation is deterministic given (config, seed); the gaussian model is
the one exception across platforms, since it draws normals through libm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, GraphBuilder
from .rng import SeededRng, FySequence

MODELS = ("uniform", "gaussian", "smallworld", "scalefree")
WEIGHT_DISTS = ("uniform", "powerlaw")

# Gaussian model: one cluster zone in the middle of the id range.
_GAUSS_MEAN_FRACTION = 0.5
_GAUSS_SIGMA_FRACTION = 0.125
# Small-world rewiring probability (canonical small-world regime).
_REWIRE_NUMERATOR, _REWIRE_DENOMINATOR = 1, 10


@dataclass
class GeneratorConfig:
    """Parameters of one generated graph.

    ``m`` is the exact edge count for the uniform/gaussian/smallworld
    models and ignored by scalefree (whose edge count is n - 1).
    """

    model: str
    n: int
    m: int | None
    w: int
    weight_dist: str = "uniform"
    seed: int = 0

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; expected one of {MODELS}")
        if self.weight_dist not in WEIGHT_DISTS:
            raise ValueError(
                f"unknown weight distribution {self.weight_dist!r}; "
                f"expected one of {WEIGHT_DISTS}"
            )
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.w < 1:
            raise ValueError("w must be >= 1")
        if self.model == "scalefree":
            if self.n < 2:
                raise ValueError("scalefree model needs n >= 2")
            return
        if self.m is None:
            raise ValueError(f"model {self.model!r} requires an edge count m")
        if self.m < self.n - 1:
            raise ValueError(f"m={self.m} cannot connect n={self.n} vertices")
        capacity = self.n * (self.n - 1) // 2
        if self.m > capacity:
            raise ValueError(
                f"m={self.m} exceeds simple-graph capacity {capacity} for n={self.n}"
            )


def _make_weight_draw(rng: SeededRng, w: int, weight_dist: str):
    if weight_dist == "uniform":
        return lambda: rng.uniform_int(1, w)
    # powerlaw: P(k) proportional to 1/k over [1, w]
    cdf = []
    acc = 0.0
    for k in range(1, w + 1):
        acc += 1.0 / k
        cdf.append(acc)
    total = cdf[-1]

    def draw() -> int:
        x = rng.next_float53() * total
        lo, hi = 0, w - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if cdf[mid] > x:
                hi = mid
            else:
                lo = mid + 1
        return lo + 1

    return draw


def random_spanning_tree(
    n: int, w: int, weight_dist: str, rng: SeededRng
) -> GraphBuilder:
    """Uniform-attachment random tree over a random vertex permutation.

    Vertices are taken in a fresh random order v0, v1, ...; each new vertex
    attaches to a uniformly chosen vertex already in the tree.  Exactly
    n - 1 edges, connected, acyclic.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    builder = GraphBuilder(n)
    perm = FySequence(n, rng).take(n)
    draw_weight = _make_weight_draw(rng, w, weight_dist)
    for tau in range(n - 1):
        s = rng.uniform_int(0, tau)
        builder.add_edge(perm[s], perm[tau + 1], draw_weight())
    return builder


def _uniform_pairs(n: int, rng: SeededRng) -> Iterator[tuple[int, int]]:
    while True:
        u = rng.uniform_int(0, n - 1)
        v = rng.uniform_int(0, n - 1)
        if u != v:
            yield u, v


def _gaussian_pairs(n: int, rng: SeededRng) -> Iterator[tuple[int, int]]:
    # Box-Muller pairs rounded onto the id range and clamped; both normals
    # of a pair make one candidate edge.
    mu = n * _GAUSS_MEAN_FRACTION
    sigma = n * _GAUSS_SIGMA_FRACTION
    two_pi = 2.0 * math.pi
    while True:
        u1 = rng.next_float53()
        u2 = rng.next_float53()
        radius = math.sqrt(-2.0 * math.log(1.0 - u1))
        theta = two_pi * u2
        a = _clamp_id(mu + sigma * (radius * math.cos(theta)), n)
        b = _clamp_id(mu + sigma * (radius * math.sin(theta)), n)
        if a != b:
            yield a, b


def _clamp_id(x: float, n: int) -> int:
    v = int(math.floor(x + 0.5))
    if v < 0:
        return 0
    if v >= n:
        return n - 1
    return v


def _smallworld_pairs(n: int, m: int, rng: SeededRng) -> Iterator[tuple[int, int]]:
    # Ring lattice of even degree k ~ 2m/n, each lattice edge rewired to a
    # uniform endpoint with probability 1/10.  Finite stream: the caller
    # tops up from uniform pairs when deduplication leaves it short.
    k = int(round(2 * m / n))
    if k % 2:
        k -= 1
    for j in range(1, k // 2 + 1):
        for v in range(n):
            if rng.uniform_int(1, _REWIRE_DENOMINATOR) <= _REWIRE_NUMERATOR:
                for _ in range(64):  # practically always immediate
                    t = rng.uniform_int(0, n - 1)
                    if t != v:
                        yield v, t
                        break
            else:
                t = (v + j) % n
                if t != v:
                    yield v, t


def preferential_pick(endpoints: list[int], rng: SeededRng) -> int:
    """Pick a vertex with probability exactly proportional to its degree.

    ``endpoints`` holds one entry per unit of degree (two per edge), so a
    uniform index is an exact degree-biased choice in O(1).
    """
    return endpoints[rng.uniform_int(0, len(endpoints) - 1)]


def _scalefree_pairs(n: int, rng: SeededRng) -> Iterator[tuple[int, int]]:
    perm = FySequence(n, rng).take(n)
    endpoints = [perm[0], perm[1]]
    yield perm[0], perm[1]
    for t in range(2, n):
        target = preferential_pick(endpoints, rng)
        newcomer = perm[t]
        yield target, newcomer
        endpoints.append(target)
        endpoints.append(newcomer)


def model_edge_sampler(
    model: str, n: int, rng: SeededRng, m: int | None = None
) -> Iterator[tuple[int, int]]:
    """Candidate endpoint pairs for the extra-edge phase of one model.

    Candidates never contain self-pairs; duplicate rejection is the
    caller's job (the generator keeps a hash set of canonical pairs).
    uniform/gaussian streams are infinite; smallworld is the finite
    rewired-lattice stream (needs ``m``); scalefree yields its full
    attachment sequence including the initial two-vertex edge.
    """
    if model == "uniform":
        return _uniform_pairs(n, rng)
    if model == "gaussian":
        return _gaussian_pairs(n, rng)
    if model == "smallworld":
        if m is None:
            raise ValueError("smallworld sampler needs the target edge count m")
        return _smallworld_pairs(n, m, rng)
    if model == "scalefree":
        return _scalefree_pairs(n, rng)
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def generate(cfg: GeneratorConfig) -> Graph:
    """Generate one connected graph per the config; deterministic in seed."""
    cfg.validate()
    rng = SeededRng(cfg.seed)
    draw_weight = _make_weight_draw(rng, cfg.w, cfg.weight_dist)

    if cfg.model == "scalefree":
        builder = GraphBuilder(cfg.n)
        for u, v in _scalefree_pairs(cfg.n, rng):
            builder.add_edge(u, v, draw_weight())
        return builder.freeze(connected_hint=True)

    builder = random_spanning_tree(cfg.n, cfg.w, cfg.weight_dist, rng)
    seen = {
        min(u, v) * cfg.n + max(u, v)
        for u, v in zip(builder._eu, builder._ev)
    }

    def admit_from(pairs: Iterator[tuple[int, int]]) -> None:
        while len(seen) < cfg.m:
            try:
                u, v = next(pairs)
            except StopIteration:
                return
            key = min(u, v) * cfg.n + max(u, v)
            if key in seen:
                continue
            seen.add(key)
            builder.add_edge(u, v, draw_weight())

    if cfg.model == "smallworld":
        admit_from(_smallworld_pairs(cfg.n, cfg.m, rng))
    elif cfg.model == "gaussian":
        admit_from(_gaussian_pairs(cfg.n, rng))
    else:
        admit_from(_uniform_pairs(cfg.n, rng))
    if len(seen) < cfg.m:  # smallworld lattice fell short after dedup
        admit_from(_uniform_pairs(cfg.n, rng))

    return builder.freeze(connected_hint=True)
