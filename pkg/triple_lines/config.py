"""
Run configuration

pydantic models for the computational budgets, the solver settings and the
full command-line run. A JSON config file may supply any long flag; explicit
flags win over file values.
"""

import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ParseError


class GroebnerBudget(BaseModel):
    """Hard limits for Buchberger; exceeding one is an error, never a truncation"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_pairs: int = Field(default=200_000, gt=0)
    max_basis_size: int = Field(default=20_000, gt=0)
    max_quotient_dim: int = Field(default=20_000, gt=0)


class SolverSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    budget: GroebnerBudget = GroebnerBudget()
    method: Literal["eliminate", "lex"] = "eliminate"
    max_retries: int = Field(default=3, ge=0)
    seed: int = 0


DEFAULT_SETTINGS = SolverSettings()

COMMANDS = ("classify", "census", "verify-theorem", "smooth", "tangent")


class RunConfig(BaseModel):
    """Everything one CLI invocation needs"""

    model_config = ConfigDict(extra="forbid")

    command: Literal["classify", "census", "verify-theorem", "smooth", "tangent"]
    cubic: str
    line_span: Optional[str] = None
    line_pluecker: Optional[str] = None
    field: str = "Q(w)"
    stratum: Optional[str] = None
    allow_singular: bool = False
    jobs: int = Field(default=1, ge=1)
    gb_max_pairs: int = Field(default=GroebnerBudget().max_pairs, gt=0)
    gb_max_basis: int = Field(default=GroebnerBudget().max_basis_size, gt=0)
    method: Literal["eliminate", "lex"] = "eliminate"
    samples: int = Field(default=3, ge=0)
    seed: int = 0
    census: bool = True
    output: Optional[str] = None
    json_output: bool = Field(default=False, alias="json")
    log_level: str = "WARNING"
    log_file: Optional[str] = None

    @field_validator("line_pluecker", "line_span", "stratum")
    @classmethod
    def _strip(cls, value: Optional[str]) -> Optional[str]:
        return value.strip() if isinstance(value, str) else value

    def solver_settings(self) -> SolverSettings:
        return SolverSettings(
            budget=GroebnerBudget(max_pairs=self.gb_max_pairs, max_basis_size=self.gb_max_basis),
            method=self.method,
            seed=self.seed,
        )


def load_config_file(path: str) -> Dict[str, Any]:
    """Read a JSON object of long flag names (dashes or underscores)"""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"config file {path} is not valid JSON: {exc.msg}", exc.pos) from exc
    if not isinstance(data, dict):
        raise ParseError(f"config file {path} must contain a JSON object")
    return {key.replace("-", "_"): value for key, value in data.items()}


def build_run_config(flags: Dict[str, Any], file_values: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Merge config-file values under explicitly given flags and validate"""
    merged: Dict[str, Any] = dict(file_values or {})
    merged.update({key: value for key, value in flags.items() if value is not None})
    if "json_output" in merged:
        merged["json"] = merged.pop("json_output")
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as exc:
        problems: List[str] = [
            f"{'.'.join(str(p) for p in error['loc'])}: {error['msg']}" for error in exc.errors()
        ]
        raise ParseError("invalid configuration: " + "; ".join(problems)) from exc
