"""
Command-line interface

    triple-lines classify --cubic fermat.txt --line-pluecker 1,0,-1,0,1,0,0,1,0,0
    triple-lines census --cubic fermat.txt --stratum 0,1 --json
    triple-lines verify-theorem --cubic triple_example.txt --no-census
    triple-lines smooth --cubic "x0^3"
    triple-lines tangent --cubic fermat.txt --line-span "1,0,-1,0,0;0,1,0,-1,0"

Exit codes: 0 success, 2 bad input, 3 line not on the cubic, 4 resource
budget exceeded, 5 census left factors without roots in Q(w) (the report is
still written), 6 singular cubic refused, 7 theorem counterexample, 1 any
other failure. Reports go to stdout or --output; logs go to stderr.
"""

import argparse
import json
import os
import sys
import tempfile
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from .census import census_triple_lines, verify_theorem
from .classify import SecondType, classify, fano_tangent_space, m_curve_jacobian_rank, m_curve_tangent_space, murre_normal_form
from .config import RunConfig, build_run_config, load_config_file
from .errors import ParseError, SingularCubicError, TripleLinesError
from .field import CoefficientField
from .grassmann import LineSpan, Stratum, parse_pluecker, parse_span, span_from_pluecker
from .logging_config import get_logger, setup_logging
from .reports import (
    SmoothReport,
    TangentReport,
    census_report,
    classification_report,
    line_model,
    render_text,
    tangent_space_model,
    theorem_report,
    to_json,
)
from .threefold import CubicThreefold, is_smooth, singular_witness

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_UNRESOLVED = 5


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cubic", type=str, help="Cubic as a file path, polynomial text or JSON term list")
    common.add_argument("--field", type=str, help="Coefficient field: Q or Q(w) (default Q(w))")
    common.add_argument("--allow-singular", action="store_true", default=None,
                        help="Run on singular cubics instead of refusing them")
    common.add_argument("--gb-max-pairs", type=int, help="Critical-pair budget for Groebner bases")
    common.add_argument("--gb-max-basis", type=int, help="Basis-size budget for Groebner bases")
    common.add_argument("--method", type=str, choices=["eliminate", "lex"], help="Zero-dimensional solver")
    common.add_argument("--seed", type=int, help="Seed for every random choice")
    common.add_argument("--output", type=str, help="Write the report to this file")
    common.add_argument("--json", dest="json_output", action="store_true", default=None,
                        help="Emit JSON instead of text")
    common.add_argument("--config", type=str, help="JSON file with default values for any flag")
    common.add_argument("--log-level", type=str, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--log-file", type=str, help="Also write logs to this file")

    line = argparse.ArgumentParser(add_help=False)
    line.add_argument("--line-span", type=str, help="Two points 'a0,..,a4;b0,..,b4'")
    line.add_argument("--line-pluecker", type=str, help="p01,p02,p03,p04,p12,p13,p14,p23,p24,p34")

    parallel = argparse.ArgumentParser(add_help=False)
    parallel.add_argument("--jobs", type=int, help="Worker processes for the strata")

    parser = argparse.ArgumentParser(
        prog="triple-lines", description="Lines of the second type and triple lines on cubic threefolds"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common, line], help="Classify a line on the cubic")
    census = sub.add_parser("census", parents=[common, parallel], help="Enumerate triple lines")
    census.add_argument("--stratum", type=str, help="Restrict to one Pluecker stratum 'i,j'")
    theorem = sub.add_parser("verify-theorem", parents=[common, line, parallel],
                             help="Check triple lines against singular points of M(X)")
    theorem.add_argument("--samples", type=int, help="Random second-type samples per stratum")
    theorem.add_argument("--no-census", dest="census", action="store_false", default=None,
                         help="Skip the census lines")
    sub.add_parser("smooth", parents=[common], help="Decide smoothness")
    sub.add_parser("tangent", parents=[common, line], help="Tangent spaces at a line")
    return parser


def read_cubic(source: str, field: CoefficientField) -> CubicThreefold:
    """File path, inline polynomial text, or a JSON term list"""
    text = source
    if os.path.isfile(source):
        try:
            with open(source, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ParseError(f"cannot read cubic file {source}: {exc}") from exc
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"cubic JSON is malformed: {exc.msg}", exc.pos) from exc
        return CubicThreefold.from_json(data, field)
    return CubicThreefold.from_text(stripped, field)


def read_line(config: RunConfig, field: CoefficientField, required: bool = True) -> Optional[LineSpan]:
    if config.line_span and config.line_pluecker:
        raise ParseError("give either --line-span or --line-pluecker, not both")
    if config.line_span:
        return parse_span(config.line_span, field)
    if config.line_pluecker:
        return span_from_pluecker(parse_pluecker(config.line_pluecker, field))
    if required:
        raise ParseError(f"'{config.command}' needs --line-span or --line-pluecker")
    return None


CommandResult = Tuple[str, BaseModel, int]


def require_smooth(config: RunConfig, X: CubicThreefold) -> bool:
    """is_smooth(X); a singular cubic is refused unless --allow-singular"""
    smooth = is_smooth(X, config.solver_settings().budget)
    if not smooth and not config.allow_singular:
        raise SingularCubicError(f"{X} is singular; rerun with --allow-singular to classify its lines")
    return smooth


def cmd_classify(config: RunConfig, X: CubicThreefold, field: CoefficientField) -> CommandResult:
    L = read_line(config, field)
    smooth = require_smooth(config, X)
    verdict = classify(X, L, allow_singular=config.allow_singular, smooth=smooth)
    fano = fano_tangent_space(X, L)
    rank = None
    murre = None
    if isinstance(verdict, SecondType):
        rank = m_curve_jacobian_rank(X, L)
        if verdict.matrix_rank == 2:
            murre = murre_normal_form(X, L)
    report = classification_report(L, verdict, fano, rank, murre)
    return "Line classification", report, EXIT_OK


def cmd_census(config: RunConfig, X: CubicThreefold, field: CoefficientField) -> CommandResult:
    strata = [Stratum.parse(config.stratum)] if config.stratum else None
    report = census_triple_lines(
        X, config.solver_settings(), jobs=config.jobs, allow_singular=config.allow_singular, strata=strata
    )
    code = EXIT_OK if report.complete else EXIT_UNRESOLVED
    return "Triple-line census", census_report(report), code


def cmd_verify_theorem(config: RunConfig, X: CubicThreefold, field: CoefficientField) -> CommandResult:
    L = read_line(config, field, required=False)
    report = verify_theorem(
        X,
        config.solver_settings(),
        samples=config.samples,
        rng=np.random.default_rng(config.seed),
        run_census=config.census,
        lines=[L] if L is not None else [],
        jobs=config.jobs,
        allow_singular=config.allow_singular,
    )
    report.assert_holds()
    return "Triple lines and singular points of M(X)", theorem_report(report), EXIT_OK


def cmd_smooth(config: RunConfig, X: CubicThreefold, field: CoefficientField) -> CommandResult:
    settings = config.solver_settings()
    smooth = is_smooth(X, settings.budget)
    witness = None
    if not smooth:
        point = singular_witness(X, settings)
        witness = [str(x) for x in point] if point is not None else None
    report = SmoothReport(cubic=str(X), field=field.value, smooth=smooth, witness=witness)
    return "Smoothness", report, EXIT_OK


def cmd_tangent(config: RunConfig, X: CubicThreefold, field: CoefficientField) -> CommandResult:
    L = read_line(config, field)
    smooth = require_smooth(config, X)
    verdict = classify(X, L, allow_singular=config.allow_singular, smooth=smooth)
    report = TangentReport(
        line=line_model(L),
        type=verdict.name,
        fano=tangent_space_model(fano_tangent_space(X, L)),
    )
    if isinstance(verdict, SecondType):
        report.m_curve = tangent_space_model(m_curve_tangent_space(X, L))
    return "Tangent spaces", report, EXIT_OK


COMMAND_HANDLERS: Dict[str, Callable[[RunConfig, CubicThreefold, CoefficientField], CommandResult]] = {
    "classify": cmd_classify,
    "census": cmd_census,
    "verify-theorem": cmd_verify_theorem,
    "smooth": cmd_smooth,
    "tangent": cmd_tangent,
}


def write_output(text: str, path: Optional[str]) -> None:
    """stdout, or an atomic replace of the target file"""
    if not path:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".triple-lines-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(config: RunConfig) -> int:
    field = CoefficientField.parse(config.field)
    X = read_cubic(config.cubic, field)
    logger.info("command_started", command=config.command, cubic=str(X), field=field.value)
    title, report, code = COMMAND_HANDLERS[config.command](config, X, field)
    text = to_json(report) if config.json_output else render_text(title, report)
    write_output(text, config.output)
    logger.info("command_finished", command=config.command, exit_code=code)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    flags: Dict[str, Any] = dict(vars(args))
    config_path = flags.pop("config", None)
    try:
        file_values = load_config_file(config_path) if config_path else {}
        file_values.pop("command", None)
        config = build_run_config(flags, file_values)
    except TripleLinesError as exc:
        setup_logging()
        logger.error("invalid_arguments", error=str(exc), exit_code=exc.exit_code)
        return exc.exit_code
    setup_logging(config.log_level, config.log_file)
    try:
        return run(config)
    except TripleLinesError as exc:
        logger.error(
            "command_failed",
            command=config.command,
            error_type=type(exc).__name__,
            error=str(exc),
            exit_code=exc.exit_code,
        )
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
