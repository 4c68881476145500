"""
Line classification tests
"""
import pytest

from triple_lines.errors import (
    LineNotOnCubicError,
    NotSecondTypeError,
    PointOnLineError,
    SingularCubicError,
    SingularityEvidenceError,
)
from triple_lines.classify import (
    CUBIC_DEGREES,
    NORMAL_VARIABLES,
    QUADRATIC_DEGREES,
    FirstType,
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
    restrict_symbolic,
    restrict_to_plane,
    t_coefficient,
    tangent_resultant,
    triple_forms,
    type_matrix,
)
from triple_lines.field import ONE, ZERO
from triple_lines.grassmann import LineSpan, Stratum, stratum_parameterization
from triple_lines.linalg import determinant, random_invertible_matrix
from triple_lines.polytext import parse_poly
from triple_lines.threefold import CubicThreefold, ProjectiveTransform, murre_shape_cubic

E4 = (0, 0, 0, 0, 1)


class TestPhiData:
    """phi coefficient test suite"""

    def test_line_off_the_cubic(self, fermat, standard):
        """Test phi3 of the Fermat cubic on span(e0, e1) is (1, 0, 0, 1)"""
        D = compute_phi(fermat, standard)
        assert [D.cubic(*d) for d in CUBIC_DEGREES] == [1, 0, 0, 1]
        assert not D.on_line()
        with pytest.raises(LineNotOnCubicError):
            type_matrix(D)

    def test_triple_fixture_values(self, triple_cubic, standard):
        """Test the first and second derivative values on the standard line"""
        D = compute_phi(triple_cubic, standard)
        assert D.on_line()
        assert D.first(2, 2, 0) == 1
        assert D.first(3, 0, 2) == 1
        nonzero = [(v, d) for v in NORMAL_VARIABLES for d in QUADRATIC_DEGREES if D.first(v, *d)]
        assert nonzero == [(2, (2, 0)), (3, (0, 2))]
        assert D.second(4, 4, 1, 0) == 0 and D.second(4, 4, 0, 1) == 0

    def test_double_fixture_second_derivative(self, double_cubic, standard):
        """Test d2F/dx4^2 = 2*x0 + 6*x4 restricts to 2*t0"""
        D = compute_phi(double_cubic, standard)
        assert D.second(4, 4, 1, 0) == 2
        assert D.second(4, 4, 0, 1) == 0

    def test_second_derivatives_are_symmetric(self, first_type_cubic, standard):
        """Test phi_ij = phi_ji"""
        D = compute_phi(first_type_cubic, standard)
        for i in NORMAL_VARIABLES:
            for j in NORMAL_VARIABLES:
                assert D.second(i, j, 1, 0) == D.second(j, i, 1, 0)

    def test_out_of_range_degrees_are_zero(self, triple_cubic, standard):
        """Test phi_v^(3,-1) and phi_v^(-1,3) read as zero"""
        D = compute_phi(triple_cubic, standard)
        assert D.first(2, 3, -1) == ZERO
        assert D.first(2, -1, 3) == ZERO


class TestClassify:
    """First type, second type and triple line test suite"""

    def test_type_matrices(self, triple_cubic, first_type_cubic, standard):
        """Test the explicit type matrices of the fixtures"""
        T = type_matrix(compute_phi(triple_cubic, standard))
        assert T == [[1, 0, 0], [0, 0, 0], [0, 1, 0]]
        T = type_matrix(compute_phi(first_type_cubic, standard))
        assert T == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
        assert determinant(T) == -1

    def test_first_type(self, first_type_cubic, standard):
        """Test a nonzero determinant gives a first type line"""
        verdict = classify(first_type_cubic, standard)
        assert isinstance(verdict, FirstType)
        assert verdict.determinant == -1
        assert not verdict.is_triple

    def test_triple_line(self, triple_cubic, standard):
        """Test the triple fixture: alpha = e4 and F on the plane is t2^3"""
        verdict = classify(triple_cubic, standard)
        assert isinstance(verdict, SecondType)
        assert verdict.alpha == (0, 0, 1)
        assert verdict.is_triple
        assert verdict.residual.shape == ResidualShape.TRIPLE_LINE
        assert verdict.plane_direction == E4

    def test_double_line(self, double_cubic, standard):
        """Test the double fixture: residual line t0 + t2"""
        verdict = classify(double_cubic, standard)
        assert isinstance(verdict, SecondType)
        assert verdict.alpha == (0, 0, 1)
        assert not verdict.is_triple
        residual = verdict.residual.residual_line
        assert residual == parse_poly("t0 + t2", residual.ring)
        assert triple_forms(compute_phi(double_cubic, standard), verdict.alpha) == (1, 0)

    def test_fermat_triple_line(self, fermat, fermat_triple_line):
        """Test the Fermat line x0 = -x2, x1 = -x3, x4 = 0 is triple"""
        verdict = classify(fermat, fermat_triple_line)
        assert isinstance(verdict, SecondType)
        assert verdict.is_triple
        assert verdict.alpha == (0, 0, 1)
        assert verdict.plane_direction == E4

    def test_line_not_on_cubic(self, fermat, standard):
        """Test classification of a line off the cubic"""
        with pytest.raises(LineNotOnCubicError):
            classify(fermat, standard)

    def test_singular_cubic_refused(self, standard):
        """Test a cubic known to be singular is refused unless allowed"""
        X = CubicThreefold.from_text("x0^2*x2 + x1^2*x3 + x0*x1*x4")
        with pytest.raises(SingularCubicError):
            classify(X, standard, smooth=False)
        assert isinstance(classify(X, standard, allow_singular=True, smooth=False), FirstType)
        assert isinstance(classify(X, standard), FirstType)

    def test_rank_one_type_matrix(self, standard):
        """Test a rank one type matrix is evidence of a singular cubic"""
        X = CubicThreefold.from_text("x0^2*x2 + x2^3 + x3^3 + x4^3")
        with pytest.raises(SingularityEvidenceError):
            classify(X, standard)
        verdict = classify(X, standard, allow_singular=True)
        assert verdict.matrix_rank == 1
        assert verdict.alpha == (0, 1, 0)
        assert verdict.is_triple

    def test_coordinate_change_invariance(self, triple_cubic, double_cubic, first_type_cubic, standard, rng):
        """Test the verdict of g*X at g^-1 L equals the verdict at (X, L)"""
        for X in (triple_cubic, double_cubic, first_type_cubic):
            before = classify(X, standard)
            g = ProjectiveTransform(random_invertible_matrix(rng, 5, bound=2))
            after = classify(g.pullback_cubic(X), g.inverse().apply_line(standard))
            assert type(after) is type(before)
            assert after.is_triple == before.is_triple


class TestPlaneSections:
    """Plane section test suite"""

    def test_fermat_tangent_plane(self, fermat, fermat_triple_line):
        """Test the plane through e4 meets the Fermat cubic in 3L"""
        section = restrict_to_plane(fermat, fermat_triple_line, E4)
        assert section.shape == ResidualShape.TRIPLE_LINE
        assert section.plane_cubic == parse_poly("t2^3", section.plane_cubic.ring)

    def test_double_fixture_plane(self, double_cubic, standard):
        """Test F on the plane through e4 is t2^2 (t0 + t2)"""
        section = restrict_to_plane(double_cubic, standard, E4)
        assert section.shape == ResidualShape.DOUBLE_LINE
        assert section.residual_line == parse_poly("t0 + t2", section.plane_cubic.ring)

    def test_general_plane_gives_a_conic(self, fermat, fermat_triple_line):
        """Test a non-tangent plane leaves an irreducible residual conic"""
        section = restrict_to_plane(fermat, fermat_triple_line, (0, 0, 1, 1, 1))
        assert section.shape == ResidualShape.CONIC
        assert section.conic_irreducible
        assert section.residual_line is None

    def test_reducible_conic(self, fermat, fermat_triple_line):
        """Test a conic without the t1 variable is a pair of lines"""
        section = restrict_to_plane(fermat, fermat_triple_line, (0, 0, 1, 0, 0))
        assert section.shape == ResidualShape.CONIC
        assert section.conic_irreducible is False

    def test_point_on_the_line(self, fermat, fermat_triple_line):
        """Test a third point on the line spans no plane"""
        with pytest.raises(PointOnLineError):
            restrict_to_plane(fermat, fermat_triple_line, (1, 1, -1, -1, 0))


class TestPencilOracle:
    """Pencil of planes cross-check test suite"""

    def test_fixtures(self, triple_cubic, double_cubic, first_type_cubic, standard):
        """Test the pencil verdicts of the three fixtures"""
        assert pencil_oracle(triple_cubic, standard).kind == "triple"
        assert pencil_oracle(double_cubic, standard).kind == "double"
        verdict = pencil_oracle(first_type_cubic, standard)
        assert verdict.kind == "first"
        assert verdict.directions == ()

    def test_fermat(self, fermat, fermat_triple_line):
        """Test the single tangent plane of a Fermat triple line"""
        verdict = pencil_oracle(fermat, fermat_triple_line)
        assert verdict.kind == "triple"
        assert verdict.directions == (E4,)

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", ["any", "second", "triple"])
    def test_agrees_with_classify(self, kind, rng):
        """Test classify and the pencil oracle on seventy random cubics per kind"""
        compared = 0
        for draw in range(140):
            X, L = murre_shape_cubic(rng, kind, conjugate=draw % 2 == 1, require_smooth=False)
            verdict = classify(X, L, allow_singular=True)
            pencil = pencil_oracle(X, L)
            if isinstance(verdict, FirstType):
                assert pencil.kind == "first"
            elif verdict.matrix_rank == 2 and pencil.kind != "degenerate":
                assert pencil.kind == ("triple" if verdict.is_triple else "double")
                assert len(pencil.directions) == 1
            else:
                continue
            if kind == "triple":
                assert verdict.is_triple
            elif kind == "second":
                assert isinstance(verdict, SecondType)
            compared += 1
            if compared == 70:
                break
        assert compared == 70


class TestTangentSpaces:
    """Fano surface and second-type curve tangent space test suite"""

    def test_fano_tangent_space_of_triple_fixture(self, triple_cubic, standard):
        """Test the tangent plane is spanned by the p04 and p14 directions"""
        T = fano_tangent_space(triple_cubic, standard)
        assert T.dimension == 2
        assert T.basis == ((0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1))
        assert T.columns == ("p02", "p03", "p04", "p12", "p13", "p14")

    def test_fano_tangent_space_of_double_fixture(self, double_cubic, standard):
        """Test the Fano surface is smooth at a second type line that is not triple"""
        T = fano_tangent_space(double_cubic, standard)
        assert T.dimension == 2
        assert len(T.basis) == 2

    def test_fano_surface_is_smooth_at_fermat_line(self, fermat, fermat_triple_line):
        """Test dimension two at a Fermat line"""
        assert fano_tangent_space(fermat, fermat_triple_line).dimension == 2

    def test_jacobian_rank_separates_triple_lines(self, triple_cubic, double_cubic, standard):
        """Test rank at most four at a triple line and five at a double line"""
        assert m_curve_jacobian_rank(triple_cubic, standard) <= 4
        assert m_curve_jacobian_rank(double_cubic, standard) == 5
        assert m_curve_tangent_space(double_cubic, standard).dimension == 1

    def test_jacobian_rank_at_fermat_line(self, fermat, fermat_triple_line):
        """Test the Fermat triple line is a singular point of the curve"""
        assert m_curve_jacobian_rank(fermat, fermat_triple_line) <= 4
        assert m_curve_tangent_space(fermat, fermat_triple_line).dimension >= 2

    def test_first_type_has_no_curve_jacobian(self, first_type_cubic, standard):
        """Test first type lines are not on the curve"""
        with pytest.raises(NotSecondTypeError):
            m_curve_jacobian_rank(first_type_cubic, standard)

    def test_tangent_resultant(self, triple_cubic, double_cubic, standard):
        """Test det(A) is nonzero at second type lines of smooth cubics"""
        assert tangent_resultant(triple_cubic, standard) != 0
        assert tangent_resultant(double_cubic, standard) != 0


class TestChartEquations:
    """Symbolic chart equation test suite"""

    def test_fermat_open_chart(self, fermat):
        """Test the four containment equations and the factored m"""
        eq = chart_equations(fermat, Stratum(0, 1))

        def P(text):
            return parse_poly(text, eq.ring)

        assert eq.phi[0] == -P("p12^3 + p13^3 + p14^3 - 1")
        assert eq.phi[1] == 3 * P("p02*p12^2 + p03*p13^2 + p04*p14^2")
        assert eq.phi[2] == -3 * P("p02^2*p12 + p03^2*p13 + p04^2*p14")
        assert eq.phi[3] == P("p02^3 + p03^3 + p04^3 + 1")
        product = P("(p04*p13 - p03*p14)*(p04*p12 - p02*p14)*(p03*p12 - p02*p13)")
        quotient = eq.m.divide_exact(product)
        assert quotient.is_constant() and not quotient.is_zero()
        assert eq.constraints == ()

    def test_equations_vanish_at_a_line(self, fermat, fermat_triple_line):
        """Test the phi and m polynomials vanish at a second type line"""
        eq = chart_equations(fermat, Stratum(0, 1))
        point = stratum_parameterization(Stratum(0, 1)).chart_point(fermat_triple_line)
        assert all(f.evaluate(point) == 0 for f in eq.phi)
        assert eq.m.evaluate(point) == 0

    def test_symbolic_matches_pointwise(self, first_type_cubic):
        """Test chart polynomials at a chart point equal the phi data of that line"""
        S = Stratum(0, 1)
        eq = chart_equations(first_type_cubic, S)
        point = (2, -1, 0, 1, 3, -2)
        L = eq.chart.line_at(point)
        D = compute_phi(first_type_cubic, L)
        assert [f.evaluate(point) for f in eq.phi] == [D.cubic(*d) for d in CUBIC_DEGREES]
        T = [[D.first(v, *d) for v in NORMAL_VARIABLES] for d in QUADRATIC_DEGREES]
        assert eq.m.evaluate(point) == determinant(T)

    def test_derivative_identities(self, first_type_cubic):
        """Test d phi^(i,j)/d p0v = phi_v^(i,j-1) and d phi^(i,j)/d p1v = -phi_v^(i-1,j)"""
        eq = chart_equations(first_type_cubic, Stratum(0, 1))
        rows = [eq.chart.v0, eq.chart.v1]
        first = {}
        for v in NORMAL_VARIABLES:
            dv = restrict_symbolic(first_type_cubic.F.derivative(v), rows, eq.ring)
            for d in QUADRATIC_DEGREES:
                first[(v, d)] = t_coefficient(dv, 2, d).to_ring(eq.ring)
        zero = eq.ring.zero()
        for phi, (i, j) in zip(eq.phi, CUBIC_DEGREES):
            for v in NORMAL_VARIABLES:
                assert phi.derivative(f"p0{v}") == first.get((v, (i, j - 1)), zero)
                assert phi.derivative(f"p1{v}") == -first.get((v, (i - 1, j)), zero)

    def test_other_strata_carry_constraints(self, fermat):
        """Test the lex-earlier coordinates appear as constraints"""
        eq = chart_equations(fermat, Stratum(1, 3))
        assert len(eq.constraints) > 0
        assert eq.second_type_generators()[-len(eq.constraints):] == list(eq.constraints)
        assert len(eq.fano_generators()) == 4 + len(eq.constraints)


class TestMurreNormalForm:
    """Normal form coefficient test suite"""

    def test_double_fixture(self, double_cubic, standard):
        """Test a0 = 1, a1 = 0 for l = x0 + x4"""
        form = murre_normal_form(double_cubic, standard)
        assert (form.a0, form.a1) == (1, 0)
        assert form.linear_form == (1, 0, 0, 0, 1)
        assert not form.is_triple

    def test_triple_fixture(self, triple_cubic, standard):
        """Test a0 = a1 = 0 and k = 1"""
        form = murre_normal_form(triple_cubic, standard)
        assert (form.a0, form.a1) == (0, 0)
        assert form.k == ONE
        assert form.is_triple

    def test_fermat_triple_line(self, fermat, fermat_triple_line):
        """Test both coefficients vanish on a Fermat triple line"""
        form = murre_normal_form(fermat, fermat_triple_line)
        assert form.is_triple
        assert form.k != 0

    def test_first_type_refused(self, first_type_cubic, standard):
        """Test the normal form needs a second type line"""
        with pytest.raises(NotSecondTypeError):
            murre_normal_form(first_type_cubic, standard)

    def test_hidden_standard_position(self, double_cubic, standard, rng):
        """Test a0, a1 vanish together regardless of coordinates"""
        g = ProjectiveTransform(random_invertible_matrix(rng, 5, bound=2))
        form = murre_normal_form(g.pullback_cubic(double_cubic), g.inverse().apply_line(standard))
        assert not form.is_triple
        assert isinstance(form.normalized_cubic, CubicThreefold)
        assert isinstance(g.inverse().apply_line(standard), LineSpan)
