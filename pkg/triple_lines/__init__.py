"""
triple_lines: lines of the second type and triple lines on cubic threefolds

Exact arithmetic over Q(w), Groebner bases, Pluecker charts of G(1,4) and the
classification and census of lines on a cubic hypersurface in P^4.
"""

from .census import (
    CensusReport,
    TheoremReport,
    census_triple_lines,
    fano_chart_ideal,
    fermat_m_factors,
    m_component_intersections,
    sample_second_type_points,
    second_type_curve,
    triple_line_system,
    verify_theorem,
)
from .classify import (
    FirstType,
    MurreNormalForm,
    PhiData,
    ResidualDecomposition,
    ResidualShape,
    SecondType,
    chart_equations,
    classify,
    compute_phi,
    fano_tangent_space,
    m_curve_jacobian_rank,
    m_curve_tangent_space,
    murre_normal_form,
    pencil_oracle,
    restrict_to_plane,
    tangent_resultant,
    type_matrix,
)
from .config import GroebnerBudget, RunConfig, SolverSettings
from .errors import TripleLinesError
from .field import OMEGA, ONE, ZERO, CoefficientField, EisensteinInt, FieldElement, eis_divisors, parse_field_element
from .grassmann import (
    LineSpan,
    PlueckerCoords,
    Stratum,
    pluecker_from_span,
    span_from_pluecker,
    stratum_of,
    stratum_parameterization,
)
from .ideal import GroebnerBasis, Ideal, groebner, minimal_polynomial, solve_zero_dim, univariate_roots
from .poly import MonomialOrder, MPoly, PolyRing, coefficient_extract, partial_derivative, substitute_linear
from .polytext import format_poly, parse_poly
from .threefold import (
    CubicThreefold,
    ProjectiveTransform,
    contains_line,
    fermat_cubic,
    is_smooth,
    murre_shape_cubic,
    singular_witness,
    standardize,
)

__version__ = "1.0.0"

__all__ = [
    "CensusReport",
    "CoefficientField",
    "CubicThreefold",
    "EisensteinInt",
    "FieldElement",
    "FirstType",
    "GroebnerBasis",
    "GroebnerBudget",
    "Ideal",
    "LineSpan",
    "MPoly",
    "MonomialOrder",
    "MurreNormalForm",
    "OMEGA",
    "ONE",
    "PhiData",
    "PlueckerCoords",
    "PolyRing",
    "ProjectiveTransform",
    "ResidualDecomposition",
    "ResidualShape",
    "RunConfig",
    "SecondType",
    "SolverSettings",
    "Stratum",
    "TheoremReport",
    "TripleLinesError",
    "ZERO",
    "census_triple_lines",
    "chart_equations",
    "classify",
    "coefficient_extract",
    "compute_phi",
    "contains_line",
    "eis_divisors",
    "fano_chart_ideal",
    "fano_tangent_space",
    "fermat_cubic",
    "fermat_m_factors",
    "format_poly",
    "groebner",
    "is_smooth",
    "m_component_intersections",
    "m_curve_jacobian_rank",
    "m_curve_tangent_space",
    "minimal_polynomial",
    "murre_normal_form",
    "murre_shape_cubic",
    "parse_field_element",
    "parse_poly",
    "partial_derivative",
    "pencil_oracle",
    "pluecker_from_span",
    "restrict_to_plane",
    "sample_second_type_points",
    "second_type_curve",
    "singular_witness",
    "solve_zero_dim",
    "span_from_pluecker",
    "standardize",
    "stratum_of",
    "stratum_parameterization",
    "substitute_linear",
    "tangent_resultant",
    "triple_line_system",
    "type_matrix",
    "univariate_roots",
    "verify_theorem",
]
