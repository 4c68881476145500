"""
Line classification on a cubic threefold

Everything here works on a line moved to standard position span(e0, e1).
Restricting F and its derivatives to the line gives binary forms whose
coefficients (the phi values) decide whether the line is of the first or the
second type, whether a second-type line is a triple line, and the tangent
spaces of the Fano surface and of the curve of second-type lines.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import (
    InternalConsistencyError,
    LineNotOnCubicError,
    NotSecondTypeError,
    PointOnLineError,
    SingularCubicError,
    SingularityEvidenceError,
)
from .field import ONE, ZERO, FieldElement
from .grassmann import LineSpan, Stratum, StratumChart, stratum_parameterization
from .linalg import Matrix, determinant, kernel, poly_det, rank, rref
from .logging_config import get_logger
from .poly import MonomialOrder, MPoly, PolyRing
from .threefold import (
    CubicThreefold,
    ProjectiveTransform,
    binary_coefficients,
    contains_line,
    parameter_ring,
    restrict,
    standard_transform,
    standardize,
)

logger = get_logger(__name__)

CUBIC_DEGREES: Tuple[Tuple[int, int], ...] = ((3, 0), (2, 1), (1, 2), (0, 3))
QUADRATIC_DEGREES: Tuple[Tuple[int, int], ...] = ((2, 0), (1, 1), (0, 2))
LINEAR_DEGREES: Tuple[Tuple[int, int], ...] = ((1, 0), (0, 1))
NORMAL_VARIABLES = (2, 3, 4)
HESSIAN_PAIRS: Tuple[Tuple[int, int], ...] = ((2, 2), (3, 3), (4, 4), (2, 3), (2, 4), (3, 4))
CHART_COLUMNS = ("p02", "p03", "p04", "p12", "p13", "p14")


@dataclass(frozen=True)
class PhiData:
    """
    Coefficients of F and its derivatives on the standard line.

    phi3[(i, j)]: coefficient of t0^i t1^j in F(t0, t1, 0, 0, 0).
    phi2[(v, (j, k))]: coefficient of t0^j t1^k in dF/dx_v on the line.
    phi1[(i, j, (k, l))]: coefficient of t0^k t1^l in d2F/dx_i dx_j, i <= j.
    """

    phi3: Dict[Tuple[int, int], FieldElement]
    phi2: Dict[Tuple[int, Tuple[int, int]], FieldElement]
    phi1: Dict[Tuple[int, int, Tuple[int, int]], FieldElement]

    def cubic(self, i: int, j: int) -> FieldElement:
        return self.phi3.get((i, j), ZERO)

    def first(self, v: int, j: int, k: int) -> FieldElement:
        # out-of-range degrees such as (3, -1) are zero
        return self.phi2.get((v, (j, k)), ZERO)

    def second(self, i: int, j: int, k: int, l: int) -> FieldElement:
        i, j = min(i, j), max(i, j)
        return self.phi1.get((i, j, (k, l)), ZERO)

    def on_line(self) -> bool:
        return not any(self.phi3.values())


def phi_from_standard(F: MPoly) -> PhiData:
    """phi values of a cubic that is already in standard position"""
    basis = [[ONE if k == i else ZERO for k in range(5)] for i in range(2)]
    ring = parameter_ring(2)
    restricted = restrict(F, basis, ring)
    phi3 = {d: restricted.coefficient(d) for d in CUBIC_DEGREES}
    phi2 = {}
    phi1 = {}
    for v in NORMAL_VARIABLES:
        dv = F.derivative(v)
        on_line = restrict(dv, basis, ring)
        for d in QUADRATIC_DEGREES:
            phi2[(v, d)] = on_line.coefficient(d)
        for w in NORMAL_VARIABLES:
            if w < v:
                continue
            dvw = restrict(dv.derivative(w), basis, ring)
            for d in LINEAR_DEGREES:
                phi1[(v, w, d)] = dvw.coefficient(d)
    return PhiData(phi3, phi2, phi1)


def compute_phi(X: CubicThreefold, L: LineSpan) -> PhiData:
    _, standard = standardize(X, L)
    return phi_from_standard(standard.F)


def type_matrix(D: PhiData) -> Matrix:
    """Rows (2,0), (1,1), (0,2); columns the normal variables x2, x3, x4"""
    if not D.on_line():
        raise LineNotOnCubicError("the type matrix is only defined for lines on the cubic")
    return [[D.first(v, *d) for v in NORMAL_VARIABLES] for d in QUADRATIC_DEGREES]


def triple_forms(D: PhiData, alpha: Sequence[FieldElement]) -> Tuple[FieldElement, FieldElement]:
    """
    The t0*t2^2 and t1*t2^2 coefficients of F(t0 e0 + t1 e1 + t2 alpha):
    half the second derivatives on the diagonal, the full mixed ones off it.
    """
    a = dict(zip(NORMAL_VARIABLES, alpha))
    half = FieldElement(1, 0) / 2
    values = []
    for d in LINEAR_DEGREES:
        total = ZERO
        for i, j in HESSIAN_PAIRS:
            weight = half if i == j else ONE
            total = total + weight * D.second(i, j, *d) * a[i] * a[j]
        values.append(total)
    return values[0], values[1]


class ResidualShape(str, Enum):
    CONIC = "conic"
    DOUBLE_LINE = "double_line"
    TRIPLE_LINE = "triple_line"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ResidualDecomposition:
    """F restricted to a plane through the line, split off powers of t2"""

    plane_cubic: MPoly
    shape: ResidualShape
    residual: Optional[MPoly] = None
    conic_irreducible: Optional[bool] = None

    @property
    def residual_line(self) -> Optional[MPoly]:
        return self.residual if self.shape == ResidualShape.DOUBLE_LINE else None


def _divide_t2(f: MPoly) -> Optional[MPoly]:
    if any(m[2] == 0 for m in f.terms):
        return None
    return MPoly(f.ring, {(m[0], m[1], m[2] - 1): c for m, c in f.terms.items()})


def _conic_matrix(q: MPoly) -> Matrix:
    m = [[ZERO] * 3 for _ in range(3)]
    half = FieldElement(1, 0) / 2
    for mono, c in q.terms.items():
        idx = [k for k, e in enumerate(mono) for _ in range(e)]
        if idx[0] == idx[1]:
            m[idx[0]][idx[0]] = c
        else:
            m[idx[0]][idx[1]] = c * half
            m[idx[1]][idx[0]] = c * half
    return m


def restrict_to_plane(X: CubicThreefold, L: LineSpan, v2: Sequence) -> ResidualDecomposition:
    """Decompose F(t0 v0 + t1 v1 + t2 v2) as a power of t2 times a residual curve"""
    v2 = [FieldElement.coerce(x) for x in v2]
    if rank([list(L.v0), list(L.v1), v2]) != 3:
        raise PointOnLineError("the third point lies on the line; it spans no plane")
    if not contains_line(X, L):
        raise LineNotOnCubicError("the plane section only splits off the line when it lies on X")
    plane = restrict(X.F, [L.v0, L.v1, v2])
    if plane.is_zero():
        return ResidualDecomposition(plane, ResidualShape.DEGENERATE)
    conic = _divide_t2(plane)
    if conic is None:
        raise InternalConsistencyError("t2 does not divide the plane section of a contained line")
    line = _divide_t2(conic)
    if line is None:
        irreducible = bool(determinant(_conic_matrix(conic)))
        return ResidualDecomposition(plane, ResidualShape.CONIC, conic, irreducible)
    constant = _divide_t2(line)
    if constant is None:
        return ResidualDecomposition(plane, ResidualShape.DOUBLE_LINE, line)
    return ResidualDecomposition(plane, ResidualShape.TRIPLE_LINE, constant)


@dataclass(frozen=True)
class FirstType:
    determinant: FieldElement

    name = "FirstType"
    is_triple = False


@dataclass(frozen=True)
class SecondType:
    """alpha spans the kernel of the type matrix, in the standardized normal coordinates"""

    alpha: Tuple[FieldElement, FieldElement, FieldElement]
    is_triple: bool
    residual: ResidualDecomposition
    plane_direction: Tuple[FieldElement, ...]
    matrix_rank: int = 2

    name = "SecondType"


LineType = Union[FirstType, SecondType]


def _normal_direction(g: ProjectiveTransform, alpha: Sequence[FieldElement]) -> Tuple[FieldElement, ...]:
    return g.apply([ZERO, ZERO] + list(alpha))


def classify(
    X: CubicThreefold, L: LineSpan, allow_singular: bool = False, smooth: Optional[bool] = None
) -> LineType:
    """
    First or second type from the determinant of the type matrix; for the
    second type, the triple test on the kernel direction is cross-checked
    against the plane section it predicts.

    smooth is the outcome of is_smooth(X) when the caller has it; a singular X
    is refused unless allow_singular. Without it only the local consequences
    of smoothness (rank-2 type matrix, non-degenerate plane section) are
    asserted.
    """
    if smooth is False and not allow_singular:
        raise SingularCubicError(f"{X} is singular; pass allow_singular to classify its lines")
    if not contains_line(X, L):
        raise LineNotOnCubicError(f"the line {L} does not lie on the cubic")
    g, standard = standardize(X, L)
    D = phi_from_standard(standard.F)
    T = type_matrix(D)
    det = determinant(T)
    if det:
        return FirstType(det)

    matrix_rank = rank(T)
    if matrix_rank != 2 and not allow_singular:
        raise SingularityEvidenceError(
            f"the type matrix has rank {matrix_rank}; a smooth cubic always gives rank 2"
        )
    alpha = tuple(kernel(T)[0])
    q10, q01 = triple_forms(D, alpha)
    is_triple = not q10 and not q01

    reduced = L.row_reduced()
    direction = _normal_direction(g, alpha)
    residual = restrict_to_plane(X, reduced, direction)
    if residual.shape == ResidualShape.DEGENERATE:
        if not allow_singular:
            raise SingularityEvidenceError("the tangent plane lies on the cubic; X is singular")
    elif is_triple != (residual.shape == ResidualShape.TRIPLE_LINE):
        raise InternalConsistencyError(
            f"triple forms say {is_triple} but the plane section is a {residual.shape.value}"
        )
    logger.debug("line_classified", line=str(L), alpha=[str(a) for a in alpha], triple=is_triple)
    return SecondType(alpha, is_triple, residual, direction, matrix_rank)


# tangent spaces


@dataclass(frozen=True)
class TangentSpace:
    dimension: int
    basis: Tuple[Tuple[FieldElement, ...], ...]
    columns: Tuple[str, ...] = CHART_COLUMNS


def fano_jacobian(D: PhiData) -> Matrix:
    """4x6 Jacobian of the containment equations at the standard line"""
    rows = []
    for i, j in CUBIC_DEGREES:
        row = [D.first(v, i, j - 1) for v in NORMAL_VARIABLES]
        row += [-D.first(v, i - 1, j) for v in NORMAL_VARIABLES]
        rows.append(row)
    return rows


def fano_tangent_space(X: CubicThreefold, L: LineSpan) -> TangentSpace:
    if not contains_line(X, L):
        raise LineNotOnCubicError(f"the line {L} does not lie on the cubic")
    D = compute_phi(X, L)
    basis = kernel(fano_jacobian(D), 6)
    return TangentSpace(len(basis), tuple(tuple(v) for v in basis))


# symbolic chart equations


def restrict_symbolic(F: MPoly, rows: Sequence[Sequence[MPoly]], chart_ring: PolyRing) -> MPoly:
    """F(t0*rows[0] + t1*rows[1] + ...) with polynomial rows, in (t0, t1, ..., chart unknowns)"""
    t_names = [f"t{k}" for k in range(len(rows))]
    ring = PolyRing(t_names + list(chart_ring.names), chart_ring.order, chart_ring.field)
    ts = [ring.gen(name) for name in t_names]
    images = []
    for i in range(F.ring.ngens):
        image = ring.zero()
        for t, row in zip(ts, rows):
            entry = row[i].to_ring(ring) if isinstance(row[i], MPoly) else ring.constant(row[i])
            if entry:
                image = image + t * entry
        images.append(image)
    return F.substitute(images)


def t_coefficient(f: MPoly, count: int, degrees: Sequence[int]) -> MPoly:
    return f.coefficient_extract([f"t{k}" for k in range(count)], degrees)


@dataclass(frozen=True)
class ChartEquations:
    chart: StratumChart
    phi: Tuple[MPoly, ...]
    m: MPoly

    @property
    def constraints(self) -> Tuple[MPoly, ...]:
        return self.chart.constraints

    @property
    def ring(self) -> PolyRing:
        return self.chart.ring

    def second_type_generators(self) -> List[MPoly]:
        return list(self.phi) + [self.m] + list(self.constraints)

    def fano_generators(self) -> List[MPoly]:
        return list(self.phi) + list(self.constraints)


def chart_equations(
    X: CubicThreefold, S: Stratum, order: MonomialOrder = MonomialOrder.GREVLEX
) -> ChartEquations:
    """Containment equations and the second-type determinant m in the chart of S"""
    chart = stratum_parameterization(S, order)
    rows = [chart.v0, chart.v1]
    restricted = restrict_symbolic(X.F, rows, chart.ring)
    phi = tuple(t_coefficient(restricted, 2, d).to_ring(chart.ring) for d in CUBIC_DEGREES)
    columns = []
    for v in S.complement:
        dv = restrict_symbolic(X.F.derivative(v), rows, chart.ring)
        columns.append([t_coefficient(dv, 2, d).to_ring(chart.ring) for d in QUADRATIC_DEGREES])
    matrix = [[columns[c][r] for c in range(3)] for r in range(3)]
    m = poly_det(matrix)
    return ChartEquations(chart, phi, m)


def _jacobian_at_origin(polys: Sequence[MPoly]) -> Matrix:
    rows = []
    for f in polys:
        ring = f.ring
        origin = [ZERO] * ring.ngens
        rows.append([f.derivative(name).evaluate(origin) for name in CHART_COLUMNS])
    return rows


def _second_type_jacobian(X: CubicThreefold, L: LineSpan) -> Matrix:
    if not contains_line(X, L):
        raise LineNotOnCubicError(f"the line {L} does not lie on the cubic")
    _, standard = standardize(X, L)
    equations = chart_equations(standard, Stratum(0, 1))
    origin = [ZERO] * equations.ring.ngens
    if equations.m.evaluate(origin):
        raise NotSecondTypeError("m does not vanish: the line is of the first type")
    return _jacobian_at_origin(list(equations.phi) + [equations.m])


def m_curve_jacobian_rank(X: CubicThreefold, L: LineSpan) -> int:
    """Rank of the 5x6 Jacobian of M(X); at most 4 exactly at singular points"""
    return rank(_second_type_jacobian(X, L))


def m_curve_tangent_space(X: CubicThreefold, L: LineSpan) -> TangentSpace:
    basis = kernel(_second_type_jacobian(X, L), 6)
    return TangentSpace(len(basis), tuple(tuple(v) for v in basis))


# normalized frame and Murre coefficients


def normalized_frame(alpha: Sequence[FieldElement]) -> ProjectiveTransform:
    """diag(1, 1, B) where B sends e4 to alpha, fixing the other normal directions"""
    alpha = [FieldElement.coerce(a) for a in alpha]
    pivot = next(k for k, a in enumerate(alpha) if a)
    columns = [[ONE if r == k else ZERO for r in range(3)] for k in range(3) if k != pivot]
    columns.append(alpha)
    matrix = [[ONE if r == c else ZERO for c in range(5)] for r in range(5)]
    for c, col in enumerate(columns):
        for r in range(3):
            matrix[2 + r][2 + c] = col[r]
    return ProjectiveTransform(matrix)


@dataclass(frozen=True)
class MurreNormalForm:
    a0: FieldElement
    a1: FieldElement
    linear_form: Tuple[FieldElement, ...]
    normalized_cubic: CubicThreefold

    @property
    def k(self) -> FieldElement:
        return self.linear_form[4]

    @property
    def is_triple(self) -> bool:
        return not self.a0 and not self.a1


def _normalized(X: CubicThreefold, L: LineSpan) -> Tuple[CubicThreefold, SecondType]:
    verdict = classify(X, L)
    if not isinstance(verdict, SecondType):
        raise NotSecondTypeError("the Murre normal form needs a line of the second type")
    g = standard_transform(L).compose(normalized_frame(verdict.alpha))
    return g.pullback_cubic(X), verdict


def murre_normal_form(X: CubicThreefold, L: LineSpan) -> MurreNormalForm:
    """
    Move the line to standard position with tangent direction e4 and read off
    F = x2*q2 + x3*q3 + x4^2*l.
    """
    normal, verdict = _normalized(X, L)
    D = phi_from_standard(normal.F)
    if any(D.first(4, *d) for d in QUADRATIC_DEGREES):
        raise InternalConsistencyError("e4 is not tangent along the line after normalization")
    half = FieldElement(1, 0) / 2
    a0 = half * D.second(4, 4, 1, 0)
    a1 = half * D.second(4, 4, 0, 1)
    linear = []
    for i in range(5):
        m = [0, 0, 0, 0, 2]
        m[i] += 1
        linear.append(normal.F.coefficient(tuple(m)))
    if linear[0] != a0 or linear[1] != a1:
        raise InternalConsistencyError("the x0*x4^2 and x1*x4^2 coefficients disagree with phi")
    if (not a0 and not a1) != verdict.is_triple:
        raise InternalConsistencyError("Murre coefficients disagree with the triple test")
    return MurreNormalForm(a0, a1, tuple(linear), normal)


def matrix_a(D: PhiData) -> Matrix:
    """4x4 matrix of the x2 and x3 columns of the phi data"""
    p = D.first
    return [
        [ZERO, ZERO, p(2, 2, 0), p(3, 2, 0)],
        [p(2, 2, 0), p(3, 2, 0), p(2, 1, 1), p(3, 1, 1)],
        [p(2, 1, 1), p(3, 1, 1), p(2, 0, 2), p(3, 0, 2)],
        [p(2, 0, 2), p(3, 0, 2), ZERO, ZERO],
    ]


def tangent_resultant(X: CubicThreefold, L: LineSpan) -> FieldElement:
    """det(A) in the frame where the tangent direction is e4; nonzero for smooth X"""
    normal, _ = _normalized(X, L)
    return determinant(matrix_a(phi_from_standard(normal.F)))


# independent check from the pencil of planes


@dataclass(frozen=True)
class PencilVerdict:
    kind: str
    directions: Tuple[Tuple[FieldElement, ...], ...]
    shapes: Tuple[ResidualShape, ...]


def pencil_oracle(X: CubicThreefold, L: LineSpan) -> PencilVerdict:
    """
    Verdict from the planes through L alone: the t2-linear part of
    F(t0 v0 + t1 v1 + t2 v2) with symbolic v2 is a linear system whose
    solutions are the planes tangent along L; each is then split.
    """
    if not contains_line(X, L):
        raise LineNotOnCubicError(f"the line {L} does not lie on the cubic")
    reduced, pivots = rref(L.rows())
    complement = [k for k in range(5) if k not in pivots]
    unknowns = PolyRing(["a2", "a3", "a4"])
    v2 = [unknowns.zero()] * 5
    for c, k in enumerate(complement):
        v2[k] = unknowns.gen(c)
    rows = [
        [unknowns.constant(x) for x in reduced[0]],
        [unknowns.constant(x) for x in reduced[1]],
        v2,
    ]
    plane = restrict_symbolic(X.F, rows, unknowns)
    system = []
    for j, k in QUADRATIC_DEGREES:
        linear = t_coefficient(plane, 3, (j, k, 1)).to_ring(unknowns)
        system.append([linear.coefficient(unknowns.unit(c)) for c in range(3)])
    directions = kernel(system, 3)
    if not directions:
        return PencilVerdict("first", (), ())
    span = LineSpan(tuple(reduced[0]), tuple(reduced[1]))
    shapes = []
    points = []
    for alpha in directions:
        point = [ZERO] * 5
        for c, k in enumerate(complement):
            point[k] = alpha[c]
        points.append(tuple(point))
        shapes.append(restrict_to_plane(X, span, point).shape)
    if ResidualShape.TRIPLE_LINE in shapes:
        kind = "triple"
    elif ResidualShape.DOUBLE_LINE in shapes:
        kind = "double"
    else:
        kind = "degenerate"
    return PencilVerdict(kind, tuple(points), tuple(shapes))
