"""Category-graph estimation from probability samples of nodes.

Workflow: build or load a partitioned graph, draw a sample trace with
one of the five samplers, replay it through an observer (induced or
star), and feed the resulting log to the estimators. The evaluation
harness scores every estimator variant against the exact category
graph.
"""

from .errors import (
    CategraphError,
    EmptyCategory,
    EmptyGraph,
    EmptySample,
    FileFormatError,
    GenerationFailed,
    InfeasibleRegularGraph,
    InsufficientSample,
    InvalidNode,
    InvalidThinning,
    InvalidWeight,
    IsolatedStartNode,
    MissingSizeEstimate,
    SelfPairNotSupported,
    TooManyEdgesRequested,
    UndefinedNRMSE,
    UnknownCategory,
    WrongObservationMode,
)
from .estimate import (
    PROPORTIONAL,
    CategoryGraphEstimate,
    bootstrap_variance,
    est_mean_degrees,
    est_size_induced,
    est_size_star,
    est_volume_fraction_star,
    est_weight_induced,
    est_weight_star,
    estimate_category_graph,
    hh_ratio,
    hh_total,
    reweighted_size,
)
from .evaluate import (
    ExperimentConfig,
    ExperimentReport,
    nrmse,
    run_experiment,
)
from .generate import (
    DEFAULT_CATEGORY_SIZES,
    SyntheticParams,
    add_inter_edges,
    gen_intra_regular,
    permute_labels,
    synthetic_graph,
)
from .graph import (
    CategoryGraph,
    CategoryPartition,
    Graph,
    edge_cut,
    exact_category_graph,
    mean_degree,
    relative_fractions,
    volume,
)
from .observe import INDUCED, STAR, ObservationLog, observe_induced, observe_star
from .sampling import (
    SampleTrace,
    sample_mhrw,
    sample_rw,
    sample_uis,
    sample_wis,
    sample_wrw,
    thin,
)

__version__ = "0.1.0"

__all__ = [
    "CategraphError", "EmptyCategory", "EmptyGraph", "EmptySample",
    "FileFormatError", "GenerationFailed", "InfeasibleRegularGraph",
    "InsufficientSample", "InvalidNode", "InvalidThinning", "InvalidWeight",
    "IsolatedStartNode", "MissingSizeEstimate", "SelfPairNotSupported",
    "TooManyEdgesRequested", "UndefinedNRMSE", "UnknownCategory",
    "WrongObservationMode",
    "PROPORTIONAL", "CategoryGraphEstimate", "bootstrap_variance",
    "est_mean_degrees", "est_size_induced", "est_size_star",
    "est_volume_fraction_star", "est_weight_induced", "est_weight_star",
    "estimate_category_graph", "hh_ratio", "hh_total", "reweighted_size",
    "ExperimentConfig", "ExperimentReport", "nrmse", "run_experiment",
    "DEFAULT_CATEGORY_SIZES", "SyntheticParams", "add_inter_edges",
    "gen_intra_regular", "permute_labels", "synthetic_graph",
    "CategoryGraph", "CategoryPartition", "Graph", "edge_cut",
    "exact_category_graph", "mean_degree", "relative_fractions", "volume",
    "INDUCED", "STAR", "ObservationLog", "observe_induced", "observe_star",
    "SampleTrace", "sample_mhrw", "sample_rw", "sample_uis", "sample_wis",
    "sample_wrw", "thin",
]
