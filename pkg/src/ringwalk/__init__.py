"""Exact quantum walks and fractional revival on unitary Cayley graphs.

The pipeline: parse a finite commutative ring into local factors, build
the unitary Cayley graph, decompose its adjacency matrix into exact
rational spectral idempotents, evaluate the walk operator exp(itA) in
cyclotomic arithmetic, and decide (with verifiable certificates) whether
fractional revival or perfect state transfer occurs between vertex pairs.
"""

__version__ = "0.1.0"

from .classify import (
    ClassificationResult,
    CrossCheckReport,
    classify_ring,
    cross_check,
)
from .cyclotomic import CycloElement, cyclotomic_poly, euler_phi, root_of_unity
from .graphs import (
    DEFAULT_SIZE_CAP,
    SizeCapExceeded,
    UnitaryCayleyGraph,
    VertexIndex,
    adjacency_matrix,
    crt_vertex_map,
    element_vertex,
    is_adjacent,
)
from .rings import (
    LocalDescriptor,
    RingExpressionError,
    RingProduct,
    parse_ring_expr,
    render_ring,
    unit_count,
)
from .revival import (
    RevivalCertificate,
    RevivalDecision,
    SignVector,
    check_certificate,
    decide_qfr,
    search_all_pairs,
    sign_vector,
)
from .spectral import (
    SpectralDecomposition,
    Spectrum,
    idempotents_lagrange,
    idempotents_structured,
    spectrum_of,
    verify_decomposition,
)
from .walk import (
    ExactTime,
    TransitionMatrix,
    exact_column_norm,
    transition_exact,
    transition_float,
    transition_tensor_factored,
)

__all__ = [
    "ClassificationResult",
    "CrossCheckReport",
    "CycloElement",
    "DEFAULT_SIZE_CAP",
    "ExactTime",
    "LocalDescriptor",
    "RevivalCertificate",
    "RevivalDecision",
    "RingExpressionError",
    "RingProduct",
    "SignVector",
    "SizeCapExceeded",
    "SpectralDecomposition",
    "Spectrum",
    "TransitionMatrix",
    "UnitaryCayleyGraph",
    "VertexIndex",
    "adjacency_matrix",
    "check_certificate",
    "classify_ring",
    "cross_check",
    "crt_vertex_map",
    "cyclotomic_poly",
    "decide_qfr",
    "element_vertex",
    "euler_phi",
    "exact_column_norm",
    "idempotents_lagrange",
    "idempotents_structured",
    "is_adjacent",
    "parse_ring_expr",
    "render_ring",
    "root_of_unity",
    "search_all_pairs",
    "sign_vector",
    "spectrum_of",
    "transition_exact",
    "transition_float",
    "transition_tensor_factored",
    "unit_count",
    "verify_decomposition",
]
