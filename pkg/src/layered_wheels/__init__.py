"""Deterministic generators, structural auditors, and width-analysis tools
for layered-wheel graphs: theta/triangle-free and even-hole/K4-free families
with certified girth, hole, treewidth and rank properties."""

from .errors import (
    FeasibilityError,
    InputError,
    IntegrityError,
    ParseError,
    UnsupportedPolicyError,
)
from .gen_ehf import generate_ehf, parity_audit
from .gen_ttf import generate_ttf
from .graph_core import (
    INFINITE,
    GF2Matrix,
    Graph,
    cutrank,
    gf2_rank,
    girth,
    is_fuzzy_triangular,
    small_pattern_report,
)
from .detectors import (
    Budget,
    Witness,
    check_witness,
    enumerate_holes,
    find_prism,
    find_pyramid,
    find_theta,
    pyramid_witness_in_variant,
)
from .wheel_model import (
    EHF,
    EHF_PYRAMID,
    TTF,
    AuditReport,
    LayeredWheel,
    LengthPolicy,
    Span,
    VertexInfo,
    Zone,
    uniformity_audit,
    validate_axioms,
)
from .width_lab import (
    CubicTree,
    MinorCertificate,
    PathDecomposition,
    RankDecomposition,
    balanced_decomposition,
    caterpillar_decomposition,
    find_balanced_edge,
    interval_model,
    minor_certificate,
    path_decomposition,
    random_decomposition,
    rank_decomposition_width,
    rankwidth_audit,
    separated_layer_witness,
    validate_path_decomposition,
    verify_minor_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "Budget",
    "CubicTree",
    "EHF",
    "EHF_PYRAMID",
    "FeasibilityError",
    "GF2Matrix",
    "Graph",
    "INFINITE",
    "InputError",
    "IntegrityError",
    "LayeredWheel",
    "LengthPolicy",
    "MinorCertificate",
    "ParseError",
    "PathDecomposition",
    "RankDecomposition",
    "Span",
    "TTF",
    "UnsupportedPolicyError",
    "VertexInfo",
    "Witness",
    "Zone",
    "balanced_decomposition",
    "caterpillar_decomposition",
    "check_witness",
    "cutrank",
    "enumerate_holes",
    "find_balanced_edge",
    "find_prism",
    "find_pyramid",
    "find_theta",
    "generate_ehf",
    "generate_ttf",
    "gf2_rank",
    "girth",
    "interval_model",
    "is_fuzzy_triangular",
    "minor_certificate",
    "parity_audit",
    "path_decomposition",
    "pyramid_witness_in_variant",
    "random_decomposition",
    "rank_decomposition_width",
    "rankwidth_audit",
    "separated_layer_witness",
    "small_pattern_report",
    "uniformity_audit",
    "validate_axioms",
    "validate_path_decomposition",
    "verify_minor_certificate",
]
