"""Sublinear-time MST weight estimation toolkit.

An immutable adjacency-list graph store with free weight-threshold views,
deterministic seeded sampling, connected random-graph generators in four
models, exact MST baselines (Prim, Kruskal, and the component-count
identity), a budgeted-BFS estimator of the MST weight with instrumented
query counters, and a reproducible benchmark harness.

The hot kernels run through a compiled extension when available and fall
back to pure Python otherwise (``ALGOWEB_BACKEND`` overrides); both
backends are bit-identical.
"""

from .backend import backend_name
from .errors import (
    AlgowebError,
    GraphDisconnectedError,
    GraphFormatError,
    InstanceTooSmallError,
    SequenceExhaustedError,
)
from .estimator import (
    EstimateReport,
    EstimatorParams,
    ParameterWarning,
    approx_avg_degree,
    approx_components,
    approx_mst_weight,
    compute_params,
    make_fy_pool,
)
from .exact import (
    UnionFind,
    components_sweep,
    exact_components,
    kruskal_mst,
    kruskal_mst_weight,
    mst_weight_via_components,
    prim_mst,
    prim_mst_weight,
)
from .generators import (
    MODELS,
    WEIGHT_DISTS,
    GeneratorConfig,
    generate,
    model_edge_sampler,
    random_spanning_tree,
)
from .graph import Graph, GraphBuilder, freeze, load_ssv, save_ssv
from .harness import GridSpec, RunRecord, run_grid, summarize
from .rng import FySequence, SeededRng, derive_seed, fy_next, fy_prepare, mix64

__version__ = "0.1.0"

__all__ = [
    "AlgowebError",
    "EstimateReport",
    "EstimatorParams",
    "FySequence",
    "GeneratorConfig",
    "Graph",
    "GraphBuilder",
    "GraphDisconnectedError",
    "GraphFormatError",
    "GridSpec",
    "InstanceTooSmallError",
    "MODELS",
    "ParameterWarning",
    "RunRecord",
    "SeededRng",
    "SequenceExhaustedError",
    "UnionFind",
    "WEIGHT_DISTS",
    "approx_avg_degree",
    "approx_components",
    "approx_mst_weight",
    "backend_name",
    "components_sweep",
    "compute_params",
    "derive_seed",
    "exact_components",
    "freeze",
    "fy_next",
    "fy_prepare",
    "generate",
    "kruskal_mst",
    "kruskal_mst_weight",
    "load_ssv",
    "make_fy_pool",
    "mix64",
    "model_edge_sampler",
    "mst_weight_via_components",
    "prim_mst",
    "prim_mst_weight",
    "random_spanning_tree",
    "run_grid",
    "save_ssv",
    "summarize",
    "__version__",
]
