"""Exact-arithmetic toolkit for Perron spectracones, Hadamard bases and
constructive solutions of the real nonnegative inverse eigenvalue problem."""

from . import errors
from .errors import SpectratopeError
from .hadamard import (
    NormalizedHadamard,
    SchemeBasis,
    WalshMatrix,
    group_matrix,
    hadamard_of_order,
    is_supported_order,
    next_hadamard_order,
    normalize_hadamard,
    order12,
    perm_basis,
    perm_from_walsh_row,
    scheme_basis,
    scheme_index_product,
    walsh,
)
from .linalg import Permutation, RatMatrix, char_poly, determinant, inverse, kron, similarity, solve
from .perron import (
    ConditionReport,
    PerronSimilarity,
    classify,
    doubly_stochastic_eligible,
    is_m_matrix,
    necessary_conditions,
    relative_gain_array,
)
from .polyhedra import (
    HRep,
    Inequality,
    SimplexSpec,
    cone_membership_direct,
    enumerate_vertices,
    hrep_membership,
    project_p1,
    simplex_volume,
    spectracone_hrep,
    spectratope_hrep,
    walsh_cone_membership,
    wpolytope_hrep,
)
from .realize import (
    RealizationCertificate,
    realize_auto,
    realize_n1,
    realize_n2,
    realize_n3,
    realize_n3_symmetric,
    realize_n4,
    realize_suleimanova,
    realize_suleimanova_padded,
    suleimanova_decomposition,
    trace_zero_3x3_circulant,
    verify_certificate,
)
from .spectrum import Spectrum, normalize

__version__ = "0.1.0"

__all__ = [
    "char_poly",
    "classify",
    "ConditionReport",
    "cone_membership_direct",
    "determinant",
    "doubly_stochastic_eligible",
    "enumerate_vertices",
    "errors",
    "group_matrix",
    "hadamard_of_order",
    "HRep",
    "hrep_membership",
    "Inequality",
    "inverse",
    "is_m_matrix",
    "is_supported_order",
    "kron",
    "necessary_conditions",
    "next_hadamard_order",
    "normalize",
    "normalize_hadamard",
    "NormalizedHadamard",
    "order12",
    "perm_basis",
    "perm_from_walsh_row",
    "Permutation",
    "PerronSimilarity",
    "project_p1",
    "RatMatrix",
    "RealizationCertificate",
    "realize_auto",
    "realize_n1",
    "realize_n2",
    "realize_n3",
    "realize_n3_symmetric",
    "realize_n4",
    "realize_suleimanova",
    "realize_suleimanova_padded",
    "relative_gain_array",
    "scheme_basis",
    "scheme_index_product",
    "SchemeBasis",
    "similarity",
    "simplex_volume",
    "SimplexSpec",
    "solve",
    "spectracone_hrep",
    "spectratope_hrep",
    "SpectratopeError",
    "Spectrum",
    "suleimanova_decomposition",
    "trace_zero_3x3_circulant",
    "verify_certificate",
    "walsh",
    "walsh_cone_membership",
    "WalshMatrix",
    "wpolytope_hrep",
]
