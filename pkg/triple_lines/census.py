"""
Triple-line census

Per Pluecker stratum and per tangent-direction chart, the lines on X with a
plane meeting X in three times the line form a zero-dimensional system. The
census solves all thirty systems, re-checks every solution with classify and
merges them into one canonically ordered report. The curve of second-type
lines, the Fano chart ideal and the theorem check live here too.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .classify import (
    SecondType,
    chart_equations,
    classify,
    m_curve_jacobian_rank,
    restrict_symbolic,
    t_coefficient,
)
from .config import DEFAULT_SETTINGS, SolverSettings
from .errors import (
    InternalConsistencyError,
    NotZeroDimensionalError,
    SingularCubicError,
    TheoremCounterexampleError,
)
from .field import FieldElement
from .grassmann import ALL_STRATA, LineSpan, PlueckerCoords, Stratum, pluecker_from_span, stratum_parameterization
from .ideal import GroebnerBasis, Ideal, groebner, solve_zero_dim
from .logging_config import get_logger
from .poly import MonomialOrder, MPoly, PolyRing
from .threefold import CubicThreefold, fermat_cubic, is_smooth

logger = get_logger(__name__)

ALPHA_CHARTS = (0, 1, 2)
ALPHA_CHART_NAMES: Tuple[Tuple[str, ...], ...] = (("a3", "a4"), ("a4",), ())

# coefficients of t0^i t1^j t2^k: containment, tangency along the line, triple contact
TRIPLE_DEGREES: Tuple[Tuple[int, int, int], ...] = (
    (3, 0, 0),
    (2, 1, 0),
    (1, 2, 0),
    (0, 3, 0),
    (2, 0, 1),
    (1, 1, 1),
    (0, 2, 1),
    (1, 0, 2),
    (0, 1, 2),
)


@dataclass(frozen=True)
class TripleLineSystem:
    stratum: Stratum
    alpha_chart: int
    ideal: Ideal
    chart_size: int

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    def split(self, point: Sequence[FieldElement]) -> Tuple[Tuple[FieldElement, ...], Tuple[FieldElement, ...]]:
        """Chart values and the full tangent direction of a solution"""
        values = tuple(point[: self.chart_size])
        free = list(point[self.chart_size :])
        one, zero = FieldElement(1), FieldElement(0)
        if self.alpha_chart == 0:
            alpha = (one, free[0], free[1])
        elif self.alpha_chart == 1:
            alpha = (zero, one, free[0])
        else:
            alpha = (zero, zero, one)
        return values, alpha


def _alpha_vector(A: int, ring: PolyRing) -> List[MPoly]:
    if A == 0:
        return [ring.one(), ring.gen("a3"), ring.gen("a4")]
    if A == 1:
        return [ring.zero(), ring.one(), ring.gen("a4")]
    if A == 2:
        return [ring.zero(), ring.zero(), ring.one()]
    raise ValueError(f"tangent-direction chart must be 0, 1 or 2, got {A}")


def triple_line_system(X: CubicThreefold, S: Stratum, A: int) -> TripleLineSystem:
    """Lines of stratum S carrying a plane with direction in chart A that meets X in 3 times the line"""
    if A not in ALPHA_CHARTS:
        raise ValueError(f"tangent-direction chart must be 0, 1 or 2, got {A}")
    chart = stratum_parameterization(S)
    ring = PolyRing(list(chart.ring.names) + list(ALPHA_CHART_NAMES[A]), MonomialOrder.GREVLEX, X.field)
    alpha = _alpha_vector(A, ring)
    v2 = [ring.zero()] * 5
    for c, k in enumerate(S.complement):
        v2[k] = alpha[c]
    rows = [[f.to_ring(ring) for f in chart.v0], [f.to_ring(ring) for f in chart.v1], v2]
    plane = restrict_symbolic(X.F, rows, ring)
    equations = [t_coefficient(plane, 3, d).to_ring(ring) for d in TRIPLE_DEGREES]
    equations += [c.to_ring(ring) for c in chart.constraints]
    return TripleLineSystem(S, A, Ideal(equations, ring), chart.ring.ngens)


@dataclass(frozen=True)
class TripleLine:
    stratum: Stratum
    chart_names: Tuple[str, ...]
    chart_values: Tuple[FieldElement, ...]
    alpha: Tuple[FieldElement, ...]
    line: LineSpan

    @property
    def pluecker(self) -> PlueckerCoords:
        return pluecker_from_span(self.line).normalized()

    def sort_key(self):
        return tuple(v.sort_key() for v in self.chart_values)


@dataclass
class StratumCensus:
    stratum: Stratum
    lines: List[TripleLine] = field(default_factory=list)
    unresolved: List[str] = field(default_factory=list)
    positive_dimensional: bool = False

    @property
    def count(self) -> int:
        return len(self.lines)


@dataclass
class CensusReport:
    cubic: str
    field: str
    smooth: bool
    strata: List[StratumCensus]
    elapsed_seconds: float = 0.0

    @property
    def total(self) -> int:
        return sum(s.count for s in self.strata)

    @property
    def complete(self) -> bool:
        return not any(s.unresolved or s.positive_dimensional for s in self.strata)

    def lines(self) -> Iterator[TripleLine]:
        for s in self.strata:
            yield from s.lines

    def counts(self) -> Dict[Tuple[int, int], int]:
        return {s.stratum.pair: s.count for s in self.strata}


@dataclass(frozen=True)
class _ChartResult:
    points: Tuple[Tuple[Tuple[FieldElement, ...], Tuple[FieldElement, ...]], ...]
    unresolved: Tuple[str, ...]
    positive_dimensional: bool = False


def _solve_chart(X: CubicThreefold, pair: Tuple[int, int], A: int, settings: SolverSettings) -> _ChartResult:
    system = triple_line_system(X, Stratum(*pair), A)
    started = time.perf_counter()
    try:
        solutions = solve_zero_dim(system.ideal, settings)
    except NotZeroDimensionalError:
        return _ChartResult((), (), True)
    logger.info(
        "chart_solved",
        stratum=list(pair),
        alpha_chart=A,
        solutions=len(solutions),
        seconds=round(time.perf_counter() - started, 3),
    )
    points = tuple(system.split(p) for p in solutions.points)
    return _ChartResult(points, tuple(str(u) for u in solutions.unresolved))


def census_triple_lines(
    X: CubicThreefold,
    settings: SolverSettings = DEFAULT_SETTINGS,
    jobs: int = 1,
    allow_singular: bool = False,
    strata: Optional[Sequence[Stratum]] = None,
    smooth: Optional[bool] = None,
) -> CensusReport:
    """All triple lines of X over Q(w), one stratum at a time"""
    smooth = is_smooth(X, settings.budget) if smooth is None else smooth
    if not smooth and not allow_singular:
        raise SingularCubicError(
            f"{X} is singular; the triple-line census is only finite for smooth cubics"
        )
    strata = list(strata) if strata is not None else list(ALL_STRATA)
    started = time.perf_counter()

    tasks = [(S.pair, A) for S in strata for A in ALPHA_CHARTS]
    results: Dict[Tuple[Tuple[int, int], int], _ChartResult] = {}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = {task: executor.submit(_solve_chart, X, task[0], task[1], settings) for task in tasks}
            for task, future in futures.items():
                results[task] = future.result()
    else:
        for task in tasks:
            results[task] = _solve_chart(X, task[0], task[1], settings)

    report = CensusReport(str(X), X.field.value, smooth, [])
    seen: Dict[Tuple[FieldElement, ...], Stratum] = {}
    for S in strata:
        chart = stratum_parameterization(S)
        entry = StratumCensus(S)
        for A in ALPHA_CHARTS:
            result = results[(S.pair, A)]
            if result.positive_dimensional:
                if smooth:
                    raise InternalConsistencyError(
                        f"the triple-line system of stratum {S}, direction chart {A} is "
                        "positive dimensional on a smooth cubic"
                    )
                entry.positive_dimensional = True
            entry.unresolved.extend(result.unresolved)
            for values, alpha in result.points:
                line = chart.line_at(values)
                _recheck(X, line, alpha, allow_singular, smooth)
                key = pluecker_from_span(line).projective_key()
                if key in seen:
                    raise InternalConsistencyError(f"line {line} found in strata {seen[key]} and {S}")
                seen[key] = S
                entry.lines.append(TripleLine(S, chart.ring.names, values, alpha, line))
        entry.lines.sort(key=TripleLine.sort_key)
        report.strata.append(entry)
    report.elapsed_seconds = round(time.perf_counter() - started, 3)

    logger.info(
        "census_done",
        cubic=str(X),
        total=report.total,
        counts={str(s.stratum): s.count for s in report.strata},
        complete=report.complete,
        seconds=report.elapsed_seconds,
    )
    return report


def _recheck(X: CubicThreefold, line: LineSpan, alpha, allow_singular: bool, smooth: bool) -> None:
    verdict = classify(X, line, allow_singular=allow_singular, smooth=smooth)
    if not isinstance(verdict, SecondType) or not verdict.is_triple:
        raise InternalConsistencyError(f"census line {line} is not a triple line for classify")
    if tuple(verdict.alpha) != tuple(alpha):
        raise InternalConsistencyError(
            f"census direction {[str(a) for a in alpha]} differs from classify's "
            f"{[str(a) for a in verdict.alpha]} for {line}"
        )


# curves and surfaces in a chart


@dataclass(frozen=True)
class ChartVariety:
    ideal: Ideal
    basis: GroebnerBasis
    dimension: int


def second_type_curve(
    X: CubicThreefold, S: Stratum, settings: SolverSettings = DEFAULT_SETTINGS
) -> ChartVariety:
    """Second-type lines of stratum S: containment, m = 0 and the stratum constraints"""
    equations = chart_equations(X, S)
    ideal = Ideal(equations.second_type_generators(), equations.ring)
    G = groebner(ideal, settings.budget)
    return ChartVariety(ideal, G, G.dimension())


def fano_chart_ideal(
    X: CubicThreefold, S: Stratum, settings: SolverSettings = DEFAULT_SETTINGS
) -> ChartVariety:
    equations = chart_equations(X, S)
    ideal = Ideal(equations.fano_generators(), equations.ring)
    G = groebner(ideal, settings.budget)
    return ChartVariety(ideal, G, G.dimension())


@dataclass(frozen=True)
class MFactorization:
    constant: FieldElement
    quadrics: Tuple[MPoly, MPoly, MPoly]


def fermat_quadrics(ring: PolyRing) -> Tuple[MPoly, MPoly, MPoly]:
    p = {name: ring.gen(name) for name in ring.names}
    q1 = p["p04"] * p["p13"] - p["p03"] * p["p14"]
    q2 = p["p04"] * p["p12"] - p["p02"] * p["p14"]
    q3 = p["p03"] * p["p12"] - p["p02"] * p["p13"]
    return q1, q2, q3


def fermat_m_factors(X: Optional[CubicThreefold] = None) -> MFactorization:
    """m in the open chart of the Fermat cubic is a constant times Q1*Q2*Q3"""
    X = X or fermat_cubic()
    equations = chart_equations(X, Stratum(0, 1))
    quadrics = fermat_quadrics(equations.ring)
    try:
        quotient = equations.m.divide_exact(quadrics[0] * quadrics[1] * quadrics[2])
    except ValueError as exc:
        raise InternalConsistencyError("m is not divisible by Q1*Q2*Q3") from exc
    if not quotient.is_constant():
        raise InternalConsistencyError(f"m / (Q1*Q2*Q3) = {quotient} is not a constant")
    return MFactorization(quotient.constant_value(), quadrics)


def m_component_intersections(
    X: Optional[CubicThreefold] = None,
    quadrics: Optional[Sequence[MPoly]] = None,
    settings: SolverSettings = DEFAULT_SETTINGS,
) -> Dict[Tuple[int, ...], int]:
    """Number of Q(w)-points on M_a ∩ M_b and on M_1 ∩ M_2 ∩ M_3 in the open chart"""
    X = X or fermat_cubic()
    equations = chart_equations(X, Stratum(0, 1))
    quadrics = list(quadrics or fermat_quadrics(equations.ring))
    counts: Dict[Tuple[int, ...], int] = {}
    for chosen in ((1, 2), (1, 3), (2, 3), (1, 2, 3)):
        extra = [quadrics[k - 1] for k in chosen]
        solutions = solve_zero_dim(Ideal(list(equations.phi) + extra, equations.ring), settings)
        if solutions.unresolved:
            logger.warning("component_points_unresolved", components=list(chosen))
        counts[chosen] = len(solutions)
    return counts


# sampling and the singular-point theorem


@dataclass(frozen=True)
class SampleResult:
    lines: Tuple[LineSpan, ...]
    unresolved: int
    slices: int


def sample_second_type_points(
    X: CubicThreefold,
    S: Stratum,
    n: int,
    rng: np.random.Generator,
    settings: SolverSettings = DEFAULT_SETTINGS,
    max_slices: Optional[int] = None,
) -> SampleResult:
    """Second-type lines from random rational hyperplane slices of the curve in stratum S"""
    equations = chart_equations(X, S)
    ring = equations.ring
    generators = equations.second_type_generators()
    max_slices = max_slices if max_slices is not None else 4 * max(n, 1)
    found: Dict[Tuple[FieldElement, ...], LineSpan] = {}
    unresolved = 0
    slices = 0
    while len(found) < n and slices < max_slices:
        slices += 1
        coefficients = [int(c) for c in rng.integers(-5, 6, size=ring.ngens)]
        offset = int(rng.integers(-5, 6))
        if not any(coefficients):
            continue
        hyperplane = ring.linear_form(coefficients) - offset
        try:
            solutions = solve_zero_dim(Ideal(generators + [hyperplane], ring), settings)
        except NotZeroDimensionalError:
            continue
        unresolved += len(solutions.unresolved)
        for point in solutions.points:
            line = equations.chart.line_at(point)
            found.setdefault(pluecker_from_span(line).projective_key(), line)
    lines = tuple(found.values())[:n]
    logger.info("second_type_sampled", stratum=str(S), found=len(lines), slices=slices, unresolved=unresolved)
    return SampleResult(lines, unresolved, slices)


@dataclass(frozen=True)
class PointCheck:
    line: LineSpan
    source: str
    line_type: str
    is_triple: Optional[bool]
    jacobian_rank: Optional[int]

    @property
    def singular_point(self) -> Optional[bool]:
        return None if self.jacobian_rank is None else self.jacobian_rank <= 4

    @property
    def consistent(self) -> bool:
        return self.is_triple is None or self.is_triple == self.singular_point


@dataclass
class TheoremReport:
    cubic: str
    checks: List[PointCheck]
    census_total: Optional[int] = None
    unresolved_samples: int = 0

    @property
    def counterexamples(self) -> List[PointCheck]:
        return [c for c in self.checks if not c.consistent]

    def assert_holds(self) -> None:
        bad = self.counterexamples
        if bad:
            raise TheoremCounterexampleError(
                f"{len(bad)} second-type line(s) where triple and singular disagree",
                [str(c.line) for c in bad],
            )


def check_line(
    X: CubicThreefold,
    L: LineSpan,
    source: str,
    allow_singular: bool = False,
    smooth: Optional[bool] = None,
) -> PointCheck:
    verdict = classify(X, L, allow_singular=allow_singular, smooth=smooth)
    if not isinstance(verdict, SecondType):
        return PointCheck(L, source, verdict.name, None, None)
    return PointCheck(L, source, verdict.name, verdict.is_triple, m_curve_jacobian_rank(X, L))


def verify_theorem(
    X: CubicThreefold,
    settings: SolverSettings = DEFAULT_SETTINGS,
    samples: int = 3,
    rng: Optional[np.random.Generator] = None,
    run_census: bool = True,
    lines: Sequence[LineSpan] = (),
    jobs: int = 1,
    allow_singular: bool = False,
) -> TheoremReport:
    """
    Triple lines against singular points of the curve of second-type lines:
    census lines, explicitly given lines and random samples per stratum.
    """
    smooth = is_smooth(X, settings.budget)
    if not smooth and not allow_singular:
        raise SingularCubicError(f"{X} is singular; the theorem is stated for smooth cubics")
    rng = rng if rng is not None else np.random.default_rng(settings.seed)
    report = TheoremReport(str(X), [])
    if run_census:
        census = census_triple_lines(X, settings, jobs=jobs, allow_singular=allow_singular, smooth=smooth)
        report.census_total = census.total
        for triple in census.lines():
            report.checks.append(check_line(X, triple.line, "census", allow_singular, smooth))
    for L in lines:
        report.checks.append(check_line(X, L, "explicit", allow_singular, smooth))
    if samples:
        for S in ALL_STRATA:
            try:
                sampled = sample_second_type_points(X, S, samples, rng, settings)
            except NotZeroDimensionalError:
                continue
            report.unresolved_samples += sampled.unresolved
            for L in sampled.lines:
                report.checks.append(check_line(X, L, f"sample{S}", allow_singular, smooth))
    logger.info(
        "theorem_checked",
        cubic=str(X),
        checks=len(report.checks),
        counterexamples=len(report.counterexamples),
    )
    return report
