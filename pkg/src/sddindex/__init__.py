"""Variable symmetric division deg index and companion degree-based indices."""
from .bounds import (
    BoundReport,
    EdgeClassCounts,
    NotApplicableError,
    ParameterError,
    ParityViolation,
    Theorem,
    certify,
    check_all,
    check_monotonicity,
    classify_edges,
    dd_two_sided,
    delta_plus_one_exact,
    isd_lower,
    m1_sandwich,
    m2_sandwich,
    nk_lower,
)
from .ensembles import (
    ClosedFormPrediction,
    EnsembleSpec,
    ModelKind,
    ModelSpec,
    PredictionKind,
    SweepRow,
    collapse,
    ensemble_average,
    predict,
    sample_br,
    sample_er,
    sweep,
)
from .graph import (
    DegreeExtremes,
    EdgelessGraphError,
    Graph,
    GraphError,
    connected_components,
    degree_extremes,
    from_edge_list,
    is_componentwise_regular,
    is_regular,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from .indices import (
    IndexKind,
    IndexResult,
    edge_term,
    isd_a,
    isi,
    log_nk_star,
    m1_alpha,
    m2_alpha,
    sdd_alpha,
)

__version__ = "0.1.0"
