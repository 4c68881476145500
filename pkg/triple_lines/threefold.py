"""
Cubic threefolds in P^4

Validation, smoothness, line containment and the change of coordinates that
puts a line in standard position {x2 = x3 = x4 = 0}. Also the named cubics
used throughout the tests and the random constructor of cubics that contain
the standard line with a prescribed type.
"""

from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from .config import DEFAULT_SETTINGS, GroebnerBudget, SolverSettings
from .errors import InvalidCubicError
from .field import ONE, ZERO, CoefficientField, FieldElement
from .grassmann import LineSpan, standard_line
from .ideal import Ideal, groebner, solve_zero_dim
from .linalg import Matrix, identity, inverse, mat_mul, mat_vec, random_invertible_matrix, rank, rref, to_matrix
from .logging_config import get_logger
from .poly import MonomialOrder, MPoly, PolyRing
from .polytext import format_poly, parse_poly, poly_from_json, poly_to_json

logger = get_logger(__name__)

AMBIENT_NAMES = ("x0", "x1", "x2", "x3", "x4")


def ambient_ring(field: CoefficientField = CoefficientField.QW) -> PolyRing:
    return PolyRing(AMBIENT_NAMES, MonomialOrder.GREVLEX, field)


AMBIENT = ambient_ring()


def parameter_ring(count: int) -> PolyRing:
    """Ring of the pencil parameters t0, t1, ..."""
    return PolyRing([f"t{k}" for k in range(count)], MonomialOrder.GREVLEX)


def binary_coefficients(f: MPoly, degree: int) -> List[FieldElement]:
    """Coefficients of t0^degree, t0^(degree-1)*t1, ..., t1^degree"""
    return [f.coefficient((degree - k, k)) for k in range(degree + 1)]


def restrict(F: MPoly, vectors: Sequence[Sequence], ring: Optional[PolyRing] = None) -> MPoly:
    """F(t0*vectors[0] + t1*vectors[1] + ...) in the parameter ring"""
    ring = ring or parameter_ring(len(vectors))
    images = []
    for i in range(F.ring.ngens):
        images.append(ring.linear_form([v[i] for v in vectors]))
    return F.substitute(images)


class CubicThreefold:
    """A nonzero homogeneous cubic form in x0..x4"""

    def __init__(self, F: MPoly, field: CoefficientField = CoefficientField.QW):
        if F.ring.ngens != 5:
            raise InvalidCubicError(f"a cubic threefold needs 5 variables, got {F.ring.ngens}")
        ring = ambient_ring(field)
        F = F if F.ring == ring else MPoly(ring, dict(F.terms))
        if F.is_zero():
            raise InvalidCubicError("the zero polynomial does not define a hypersurface")
        if not F.is_homogeneous() or F.total_degree() != 3:
            raise InvalidCubicError(f"{format_poly(F)} is not a homogeneous cubic")
        self.F = F
        self.field = CoefficientField(field)

    @classmethod
    def from_text(cls, text: str, field: CoefficientField = CoefficientField.QW) -> "CubicThreefold":
        return cls(parse_poly(text, ambient_ring(field), field), field)

    @classmethod
    def from_json(cls, data: Any, field: CoefficientField = CoefficientField.QW) -> "CubicThreefold":
        return cls(poly_from_json(data, ambient_ring(field), field), field)

    def to_json(self) -> List[dict]:
        return poly_to_json(self.F)

    @property
    def ring(self) -> PolyRing:
        return self.F.ring

    def gradient(self) -> Tuple[MPoly, ...]:
        return tuple(self.F.derivative(i) for i in range(5))

    def restrict_to_line(self, L: LineSpan) -> MPoly:
        return restrict(self.F, [L.v0, L.v1])

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicThreefold) and self.F == other.F

    def __hash__(self) -> int:
        return hash(self.F)

    def __str__(self) -> str:
        return format_poly(self.F)

    def __repr__(self) -> str:
        return f"CubicThreefold({self})"


class ProjectiveTransform:
    """
    Invertible 5x5 matrix M acting by x = M y.

    pullback(F) is F(M y): the cubic in the new coordinates y. A line given in
    y-coordinates is sent to original coordinates by apply.
    """

    def __init__(self, matrix: Sequence[Sequence]):
        matrix = to_matrix(matrix)
        if len(matrix) != 5 or any(len(row) != 5 for row in matrix) or rank(matrix) != 5:
            raise InvalidCubicError("a projective transformation of P^4 is an invertible 5x5 matrix")
        self.matrix: Matrix = matrix

    @classmethod
    def identity(cls) -> "ProjectiveTransform":
        return cls(identity(5))

    def apply(self, point: Sequence) -> Tuple[FieldElement, ...]:
        return tuple(mat_vec(self.matrix, [FieldElement.coerce(x) for x in point]))

    def apply_line(self, L: LineSpan) -> LineSpan:
        return LineSpan(self.apply(L.v0), self.apply(L.v1))

    def inverse(self) -> "ProjectiveTransform":
        return ProjectiveTransform(inverse(self.matrix))

    def compose(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        """self after other"""
        return ProjectiveTransform(mat_mul(self.matrix, other.matrix))

    def pullback(self, F: MPoly) -> MPoly:
        ring = F.ring
        images = [ring.linear_form(row) for row in self.matrix]
        return F.substitute(images)

    def pullback_cubic(self, X: CubicThreefold) -> CubicThreefold:
        return CubicThreefold(self.pullback(X.F), X.field)

    def is_identity(self) -> bool:
        return self.matrix == identity(5)


def standard_transform(L: LineSpan) -> ProjectiveTransform:
    """
    M whose first two columns are the reduced spanning rows of L, completed
    by standard basis vectors at the non-pivot columns in increasing order.
    """
    reduced, pivots = rref(L.rows())
    columns = [reduced[0], reduced[1]]
    for k in range(5):
        if k not in pivots:
            columns.append([ONE if r == k else ZERO for r in range(5)])
    return ProjectiveTransform([[col[r] for col in columns] for r in range(5)])


def standardize(X: CubicThreefold, L: LineSpan) -> Tuple[ProjectiveTransform, CubicThreefold]:
    g = standard_transform(L)
    if g.is_identity():
        return g, X
    return g, g.pullback_cubic(X)


def contains_line(X: CubicThreefold, L: LineSpan) -> bool:
    return X.restrict_to_line(L).is_zero()


def is_smooth(X: CubicThreefold, budget: Optional[GroebnerBudget] = None) -> bool:
    """The partials have only the origin as common zero"""
    G = groebner(Ideal(X.gradient(), X.ring), budget)
    smooth = G.is_zero_dimensional()
    logger.debug("smoothness_checked", cubic=str(X), smooth=smooth, basis_size=len(G))
    return smooth


def singular_witness(
    X: CubicThreefold, settings: SolverSettings = DEFAULT_SETTINGS
) -> Optional[Tuple[FieldElement, ...]]:
    """A singular point defined over Q(w), searched chart by chart; None if none is found"""
    gradient = X.gradient()
    for k in range(5):
        others = [name for i, name in enumerate(AMBIENT_NAMES) if i != k]
        chart = PolyRing(others, MonomialOrder.GREVLEX, X.field)
        equations = [g.specialize({k: 1}).to_ring(chart) for g in gradient]
        point = _chart_point(Ideal(equations, chart), settings)
        if point is not None:
            full = list(point)
            full.insert(k, ONE)
            return tuple(full)
    return None


def _chart_point(I: Ideal, settings: SolverSettings) -> Optional[Tuple[FieldElement, ...]]:
    for _ in range(I.ring.ngens + 1):
        G = groebner(I, settings.budget)
        if G.is_unit():
            return None
        if G.is_zero_dimensional():
            solutions = solve_zero_dim(I, settings)
            return solutions.points[0] if solutions.points else None
        # positive dimensional: cut by fixing an independent variable
        free = G.independent_set()
        for value in (0, 1, -1):
            trial = I.extended([I.ring.gen(free[0]) - value])
            if not groebner(trial, settings.budget).is_unit():
                I = trial
                break
        else:
            return None
    return None


def fermat_cubic(field: CoefficientField = CoefficientField.QW) -> CubicThreefold:
    return CubicThreefold.from_text("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", field)


def triple_fixture() -> CubicThreefold:
    """Contains the standard line as a triple line"""
    return CubicThreefold.from_text("x0^2*x2 + x1^2*x3 + x2^3 + x3^3 + x4^3")


def double_fixture() -> CubicThreefold:
    """Contains the standard line as a second-type line that is not triple"""
    return CubicThreefold.from_text("x0^2*x2 + x1^2*x3 + x4^2*(x0 + x4) + x2^3 + x3^3")


def first_type_fixture() -> CubicThreefold:
    return CubicThreefold.from_text("x0^2*x2 + x1^2*x3 + x0*x1*x4 + x2^3 + x3^3 + x4^3")


def _random_quadric(rng: np.random.Generator, ring: PolyRing, bound: int = 3) -> MPoly:
    terms = {}
    for i in range(5):
        for j in range(i, 5):
            m = [0] * 5
            m[i] += 1
            m[j] += 1
            terms[tuple(m)] = int(rng.integers(-bound, bound + 1))
    return MPoly(ring, terms)


def _random_linear(rng: np.random.Generator, ring: PolyRing, support: Sequence[int], bound: int = 3):
    return ring.linear_form([int(rng.integers(-bound, bound + 1)) if i in support else 0 for i in range(5)])


def murre_shape_cubic(
    rng: np.random.Generator,
    kind: str = "any",
    conjugate: bool = False,
    require_smooth: bool = True,
    max_attempts: int = 200,
) -> Tuple[CubicThreefold, LineSpan]:
    """
    Random cubic x2*q2 + x3*q3 + x4*q4 containing the standard line.

    kind "second" takes q4 = x4*l so the line is of the second type with
    tangent direction (0,0,1); "triple" also asks l(e0) = l(e1) = 0 and a
    nonzero x4^3 coefficient. With conjugate=True a random change of
    coordinates hides the standard position.
    """
    if kind not in ("any", "second", "triple"):
        raise ValueError(f"unknown cubic kind '{kind}'")
    ring = AMBIENT
    x2, x3, x4 = ring.gen(2), ring.gen(3), ring.gen(4)
    L = standard_line()
    for attempt in range(max_attempts):
        q2 = _random_quadric(rng, ring)
        q3 = _random_quadric(rng, ring)
        on_line = [binary_coefficients(restrict(q, [L.v0, L.v1]), 2) for q in (q2, q3)]
        if rank(on_line) != 2:
            continue
        if kind == "any":
            q4 = _random_quadric(rng, ring)
        elif kind == "second":
            q4 = x4 * _random_linear(rng, ring, range(5))
        else:
            l = _random_linear(rng, ring, (2, 3, 4))
            if not l.coefficient((0, 0, 0, 0, 1)):
                continue
            q4 = x4 * l
        F = x2 * q2 + x3 * q3 + x4 * q4
        if F.is_zero():
            continue
        X = CubicThreefold(F)
        if require_smooth and not is_smooth(X):
            continue
        logger.debug("murre_shape_cubic_built", kind=kind, attempts=attempt + 1)
        if conjugate:
            g = ProjectiveTransform(random_invertible_matrix(rng, 5, bound=2))
            return g.pullback_cubic(X), g.inverse().apply_line(L)
        return X, L
    raise InvalidCubicError(f"no suitable '{kind}' cubic found in {max_attempts} attempts")
