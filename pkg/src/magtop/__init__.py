"""Exact-arithmetic magnitude, sequence homology, and combinatorial
models of the associated homotopy type for finite metric spaces."""

from .causal import (
    CausalPoint,
    CausalPoset,
    InvalidLength,
    SimplicialComplex,
    SimplicialPair,
    achievable_lengths,
    disjoint_split,
    essential_poset,
    inner_pair,
    interval_complex,
    lightlike_sequences,
    order_complex_pair,
    pair_achievable_lengths,
    seq_time_stamps,
    sequences_up_to,
)
from .docs import (
    DocumentError,
    facets_from_doc,
    format_rational,
    gluing_from_doc,
    load_doc,
    load_fixture,
    parse_rational,
    space_from_doc,
    twist_from_doc,
)
from .frames import (
    EmptyComplex,
    FourCutObstruction,
    Frame,
    HasseGraph,
    frame_of,
    framed_betti_prediction,
    hasse_graph,
    singular_sequences,
    thin_frames,
)
from .homology import (
    ChainComplex,
    HomologySummary,
    VerifyReport,
    betti_table,
    homology,
    magnitude_chain_complex,
    magnitude_homology_total,
    relative_chain_complex,
    smith_normal_form,
    verify_chain_iso,
    verify_kunneth,
    verify_suspension_shift,
)
from .metric import (
    INFINITE,
    GluingSpec,
    IntervalPoset,
    LabelError,
    MetricError,
    MetricSpace,
    four_cuts,
    from_distance_matrix,
    from_weighted_graph,
    glue,
    interval,
    is_pawful,
    is_smooth,
    product,
    random_metric_space,
    restriction,
    seq_length,
)
from .morse import (
    AcyclicReport,
    BoundedReport,
    Matching,
    NotAMatching,
    NotASycamoreTwist,
    SequenceClass,
    SycamoreReport,
    SycamoreTwist,
    classify_sequence,
    critical_cells,
    lightlike_simplices,
    projecting_matching,
    sycamore_tau,
    verify_acyclic,
    verify_bounded,
    verify_sycamore,
)
from .mv import (
    AdditivityReport,
    GatedGluing,
    NotGated,
    check_gated,
    interior_part_betti,
    verify_mv,
    verify_union,
)
from .series import (
    EulerReport,
    HahnPolynomial,
    RecoverReport,
    SeriesMatrix,
    SizeMismatch,
    euler_check,
    format_series,
    magnitude,
    perturbative_inverse,
    recover_check,
    weighting,
    z_inverse,
    z_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicReport",
    "AdditivityReport",
    "BoundedReport",
    "CausalPoint",
    "CausalPoset",
    "ChainComplex",
    "DocumentError",
    "EmptyComplex",
    "EulerReport",
    "FourCutObstruction",
    "Frame",
    "GatedGluing",
    "GluingSpec",
    "HahnPolynomial",
    "HasseGraph",
    "HomologySummary",
    "INFINITE",
    "IntervalPoset",
    "InvalidLength",
    "LabelError",
    "Matching",
    "MetricError",
    "MetricSpace",
    "NotAMatching",
    "NotASycamoreTwist",
    "NotGated",
    "RecoverReport",
    "SequenceClass",
    "SeriesMatrix",
    "SimplicialComplex",
    "SimplicialPair",
    "SizeMismatch",
    "SycamoreReport",
    "SycamoreTwist",
    "VerifyReport",
    "achievable_lengths",
    "betti_table",
    "check_gated",
    "classify_sequence",
    "critical_cells",
    "disjoint_split",
    "essential_poset",
    "euler_check",
    "facets_from_doc",
    "format_rational",
    "format_series",
    "four_cuts",
    "frame_of",
    "framed_betti_prediction",
    "from_distance_matrix",
    "from_weighted_graph",
    "glue",
    "gluing_from_doc",
    "hasse_graph",
    "homology",
    "inner_pair",
    "interior_part_betti",
    "interval",
    "interval_complex",
    "is_pawful",
    "is_smooth",
    "lightlike_sequences",
    "lightlike_simplices",
    "load_doc",
    "load_fixture",
    "magnitude",
    "magnitude_chain_complex",
    "magnitude_homology_total",
    "order_complex_pair",
    "pair_achievable_lengths",
    "parse_rational",
    "perturbative_inverse",
    "product",
    "projecting_matching",
    "random_metric_space",
    "recover_check",
    "relative_chain_complex",
    "restriction",
    "seq_length",
    "seq_time_stamps",
    "sequences_up_to",
    "singular_sequences",
    "smith_normal_form",
    "space_from_doc",
    "sycamore_tau",
    "thin_frames",
    "twist_from_doc",
    "verify_acyclic",
    "verify_bounded",
    "verify_chain_iso",
    "verify_kunneth",
    "verify_mv",
    "verify_suspension_shift",
    "verify_sycamore",
    "verify_union",
    "weighting",
    "z_inverse",
    "z_matrix",
]
