"""All-pairs shortest paths via exponentially encoded matrix products."""

from .codec import (
    EMAX,
    DecodeError,
    EncodedMatrix,
    EncodeParams,
    FeasibilityError,
    NegativeEntryError,
    NonFiniteEntryError,
    PrecisionLimits,
    decode,
    encode,
    max_finite,
    params_for,
    precision_limits,
)
from .graph import (
    INF,
    DensityReport,
    DistMatrix,
    Graph,
    GraphFormatError,
    density,
    parse_edge_list,
    to_distance_matrix,
)
from .kernels import (
    CsrMatrix,
    KernelChoice,
    choose_kernel,
    from_csr,
    multiply_dense_blocked,
    multiply_naive,
    multiply_sparse,
    multiply_strassen,
    to_csr,
)
from .netgen import (
    DiameterReport,
    GenSpec,
    closeness,
    diameter,
    estimate_diameter,
    generate_scale_free,
)
from .solver import (
    EpochStats,
    SolveOptions,
    SolveResult,
    converged,
    distance_product,
    epoch_stats,
    epoch_stats_csv,
    fixed_squaring,
    floyd_warshall,
    power_law_bound,
)

__version__ = "0.1.0"

__all__ = [
    "EMAX",
    "INF",
    "CsrMatrix",
    "DecodeError",
    "DensityReport",
    "DiameterReport",
    "DistMatrix",
    "EncodeParams",
    "EncodedMatrix",
    "EpochStats",
    "FeasibilityError",
    "GenSpec",
    "Graph",
    "GraphFormatError",
    "KernelChoice",
    "NegativeEntryError",
    "NonFiniteEntryError",
    "PrecisionLimits",
    "SolveOptions",
    "SolveResult",
    "choose_kernel",
    "closeness",
    "converged",
    "decode",
    "density",
    "diameter",
    "distance_product",
    "encode",
    "epoch_stats",
    "epoch_stats_csv",
    "estimate_diameter",
    "fixed_squaring",
    "floyd_warshall",
    "from_csr",
    "generate_scale_free",
    "max_finite",
    "multiply_dense_blocked",
    "multiply_naive",
    "multiply_sparse",
    "multiply_strassen",
    "params_for",
    "parse_edge_list",
    "power_law_bound",
    "precision_limits",
    "to_csr",
    "to_distance_matrix",
]
