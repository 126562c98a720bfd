"""Sparse-graph algorithms toolkit.

Four layers, from primitive to composite:

- ``graph`` / ``generators`` / ``io``: degeneracy-ordered graphs, seeded
  graph families, edge-list files.
- ``logic``: the bounded formula family, indiscernibility oracle, and
  type-tree subsequence extraction.
- ``uqw``: the uniform quasi-wideness splitter (small deletion set S, large
  r-independent B).
- ``kernelize`` / ``solvers``: the distance-r dominating set kernelization
  pipeline and the exact/FPT domination and Steiner solvers.

The compute-heavy inner loops have a compiled twin in
``quasiwide._kernels``; set ``QUASIWIDE_FORCE_PURE=1`` to insist on the
pure-Python fallback.
"""

from .errors import (
    ConfigError,
    DensityError,
    InfeasibleError,
    InputError,
    InternalError,
    KernelBuildError,
    QuasiwideError,
)
from .generators import GenSpec, SplitMix64, generate
from .graph import (
    INF,
    Contraction,
    Graph,
    adjacent,
    bfs_limited,
    build_graph,
    contract_balls,
    distance_vector,
    is_r_independent,
)
from .kernelize import (
    CoreConfig,
    DominationCore,
    KernelInstance,
    Representatives,
    build_kernel,
    domination_core,
    find_irrelevant_dominatee,
    kernelize,
    reduce_dominators,
)
from .logic import (
    Delta,
    FormulaId,
    FormulaKind,
    delta_k,
    eval_formula,
    extract_indiscernible,
    is_indiscernible,
    ladder_index,
)
from .solvers import SteinerInstance, brute_cds, cds_fpt, dreyfus_wagner, exact_drds
from .uqw import UqwConfig, UqwResult, uqw_split, uqw_verify

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Contraction",
    "CoreConfig",
    "Delta",
    "DensityError",
    "DominationCore",
    "FormulaId",
    "FormulaKind",
    "GenSpec",
    "Graph",
    "INF",
    "InfeasibleError",
    "InputError",
    "InternalError",
    "KernelBuildError",
    "KernelInstance",
    "QuasiwideError",
    "Representatives",
    "SplitMix64",
    "SteinerInstance",
    "UqwConfig",
    "UqwResult",
    "adjacent",
    "bfs_limited",
    "brute_cds",
    "build_graph",
    "build_kernel",
    "cds_fpt",
    "contract_balls",
    "delta_k",
    "distance_vector",
    "domination_core",
    "dreyfus_wagner",
    "eval_formula",
    "exact_drds",
    "extract_indiscernible",
    "find_irrelevant_dominatee",
    "generate",
    "is_indiscernible",
    "is_r_independent",
    "kernelize",
    "ladder_index",
    "uqw_split",
    "uqw_verify",
    "__version__",
]
