"""Nonparametric causality analysis via copula entropy.

Estimates mutual information and transfer entropy from time series
without distributional assumptions: samples are rank-transformed onto
the unit cube and the entropy of the resulting empirical copula is
measured with a k-nearest-neighbor estimator. Transfer entropy comes out
as a signed sum of four such copula entropies. An exactly solvable
autoregressive pair (and its Granger form) serves as the test oracle,
and loaders for the hourly air-quality benchmark CSV are included.
"""
from .causality import (
    EmbeddingSpec,
    JointEmbedding,
    build_embedding,
    cmi_four_entropy_baseline,
    lag_scan,
    transfer_entropy,
)
from .copula import ConstantColumnWarning, PseudoObservations, copula_entropy, rank_transform
from .core import (
    EstimatorParams,
    LagScanResult,
    SeriesMatrix,
    TeEstimate,
    validate_matrix,
)
from .errors import CeteError
from .ingest import (
    ByDateRange,
    CompleteWindow,
    FirstCompleteRun,
    PM25_HEADER,
    Pm25Record,
    parse_pm25_csv,
    select_window,
    to_series_matrix,
)
from .knn_entropy import NeighborDistances, kl_entropy, knn_distances
from .oracle import (
    StationaryCov,
    Var2Spec,
    analytic_var_te,
    gaussian_ce,
    granger_variance_ratio,
    simulate_var2,
    standard_normals,
    stationary_covariance,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CeteError",
    "SeriesMatrix",
    "EstimatorParams",
    "TeEstimate",
    "LagScanResult",
    "validate_matrix",
    "PseudoObservations",
    "ConstantColumnWarning",
    "rank_transform",
    "copula_entropy",
    "NeighborDistances",
    "knn_distances",
    "kl_entropy",
    "EmbeddingSpec",
    "JointEmbedding",
    "build_embedding",
    "transfer_entropy",
    "cmi_four_entropy_baseline",
    "lag_scan",
    "Var2Spec",
    "StationaryCov",
    "standard_normals",
    "simulate_var2",
    "stationary_covariance",
    "analytic_var_te",
    "granger_variance_ratio",
    "gaussian_ce",
    "PM25_HEADER",
    "Pm25Record",
    "CompleteWindow",
    "ByDateRange",
    "FirstCompleteRun",
    "parse_pm25_csv",
    "select_window",
    "to_series_matrix",
]
