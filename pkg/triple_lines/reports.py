"""
Report schemas

pydantic models for every JSON document the command line writes, builders
from the library's result objects, and the plain-text rendering used when
--json is not given. The text form is derived from the same document.
"""

import json
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel

from .census import CensusReport, PointCheck, TheoremReport, TripleLine
from .classify import LineType, MurreNormalForm, SecondType, TangentSpace
from .field import FieldElement
from .grassmann import LineSpan, pluecker_from_span, stratum_of


def _strings(values: Sequence[FieldElement]) -> List[str]:
    return [str(v) for v in values]


class LineModel(BaseModel):
    span: List[List[str]]
    pluecker: List[str]
    stratum: List[int]


class ClassificationReport(BaseModel):
    line: LineModel
    stratum: str
    on_cubic: bool
    type: str
    determinant: Optional[str] = None
    alpha: Optional[List[str]] = None
    plane_direction: Optional[List[str]] = None
    is_triple: Optional[bool] = None
    residual_shape: Optional[str] = None
    residual_line: Optional[str] = None
    fano_tangent_dim: int
    m_jacobian_rank: Optional[int] = None
    murre_a0: Optional[str] = None
    murre_a1: Optional[str] = None


class CensusLineModel(BaseModel):
    chart: Dict[str, str]
    alpha: List[str]
    line: LineModel


class StratumModel(BaseModel):
    pivot: List[int]
    count: int
    lines: List[CensusLineModel]
    unresolved: List[str]
    positive_dimensional: bool = False


class CensusReportModel(BaseModel):
    cubic: str
    field: str
    smooth: bool
    strata: List[StratumModel]
    total: int
    complete: bool
    elapsed_seconds: float


class PointCheckModel(BaseModel):
    line: LineModel
    source: str
    type: str
    is_triple: Optional[bool] = None
    jacobian_rank: Optional[int] = None
    singular_point: Optional[bool] = None
    consistent: bool


class TheoremReportModel(BaseModel):
    cubic: str
    census_total: Optional[int] = None
    checks: List[PointCheckModel]
    checked: int
    counterexamples: int
    unresolved_samples: int
    holds: bool


class SmoothReport(BaseModel):
    cubic: str
    field: str
    smooth: bool
    witness: Optional[List[str]] = None


class TangentSpaceModel(BaseModel):
    dimension: int
    columns: List[str]
    basis: List[List[str]]


class TangentReport(BaseModel):
    line: LineModel
    type: str
    fano: TangentSpaceModel
    m_curve: Optional[TangentSpaceModel] = None


def line_model(L: LineSpan) -> LineModel:
    P = pluecker_from_span(L)
    return LineModel(
        span=[_strings(L.v0), _strings(L.v1)],
        pluecker=_strings(P.normalized().coords),
        stratum=list(stratum_of(P).pair),
    )


def classification_report(
    L: LineSpan,
    verdict: LineType,
    fano: TangentSpace,
    jacobian_rank: Optional[int] = None,
    murre: Optional[MurreNormalForm] = None,
) -> ClassificationReport:
    line = line_model(L)
    report = ClassificationReport(
        line=line,
        stratum="({},{})".format(*line.stratum),
        on_cubic=True,
        type=verdict.name,
        fano_tangent_dim=fano.dimension,
        m_jacobian_rank=jacobian_rank,
    )
    if isinstance(verdict, SecondType):
        report.alpha = _strings(verdict.alpha)
        report.plane_direction = _strings(verdict.plane_direction)
        report.is_triple = verdict.is_triple
        report.residual_shape = verdict.residual.shape.value
        if verdict.residual.residual_line is not None:
            report.residual_line = str(verdict.residual.residual_line)
    else:
        report.determinant = str(verdict.determinant)
    if murre is not None:
        report.murre_a0 = str(murre.a0)
        report.murre_a1 = str(murre.a1)
    return report


def _census_line(line: TripleLine) -> CensusLineModel:
    return CensusLineModel(
        chart={name: str(v) for name, v in zip(line.chart_names, line.chart_values)},
        alpha=_strings(line.alpha),
        line=line_model(line.line),
    )


def census_report(report: CensusReport) -> CensusReportModel:
    return CensusReportModel(
        cubic=report.cubic,
        field=report.field,
        smooth=report.smooth,
        strata=[
            StratumModel(
                pivot=list(s.stratum.pair),
                count=s.count,
                lines=[_census_line(line) for line in s.lines],
                unresolved=list(s.unresolved),
                positive_dimensional=s.positive_dimensional,
            )
            for s in report.strata
        ],
        total=report.total,
        complete=report.complete,
        elapsed_seconds=report.elapsed_seconds,
    )


def _point_check(check: PointCheck) -> PointCheckModel:
    return PointCheckModel(
        line=line_model(check.line),
        source=check.source,
        type=check.line_type,
        is_triple=check.is_triple,
        jacobian_rank=check.jacobian_rank,
        singular_point=check.singular_point,
        consistent=check.consistent,
    )


def theorem_report(report: TheoremReport) -> TheoremReportModel:
    return TheoremReportModel(
        cubic=report.cubic,
        census_total=report.census_total,
        checks=[_point_check(c) for c in report.checks],
        checked=len(report.checks),
        counterexamples=len(report.counterexamples),
        unresolved_samples=report.unresolved_samples,
        holds=not report.counterexamples,
    )


def tangent_space_model(space: TangentSpace) -> TangentSpaceModel:
    return TangentSpaceModel(
        dimension=space.dimension,
        columns=list(space.columns),
        basis=[_strings(v) for v in space.basis],
    )


def to_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), indent=2) + "\n"


def _render(value: Any, indent: int, lines: List[str], key: str = "") -> None:
    pad = "  " * indent
    label = f"{key}: " if key else ""
    if isinstance(value, dict):
        if key:
            lines.append(f"{pad}{key}:")
            indent += 1
        for k, v in value.items():
            _render(v, indent, lines, k)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        lines.append(f"{pad}{label}[{len(value)}]")
        for i, item in enumerate(value, 1):
            _render(item, indent + 1, lines, f"#{i}")
    elif isinstance(value, list):
        lines.append(f"{pad}{label}{', '.join(str(v) for v in value)}")
    elif value is None:
        lines.append(f"{pad}{label}-")
    else:
        lines.append(f"{pad}{label}{value}")


def render_text(title: str, model: BaseModel) -> str:
    """Indented key/value rendering of a report document"""
    lines = [title, "=" * 50]
    _render(model.model_dump(mode="json"), 0, lines)
    return "\n".join(lines) + "\n"
