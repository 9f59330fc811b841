"""Job specifications: loading, validation, and execution.

A job is a JSON document that names exactly one algorithm input (a trace
file, pre-layout logical counts, or post-layout aggregates), the qubit
parameters (a profile name or a full record), the QEC scheme, the error
budget, and optional distillation units, factory constraints, and
rotation-synthesis constants.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from . import pipeline, profiles
from .counts import LogicalCounts, count_trace, read_trace
from .errors import ConfigError
from .layout import DEFAULT_SYNTHESIS, RotationSynthesisConstants
from .pipeline import ErrorBudget, PostLayoutInput
from .qec import PhysicalQubitParams, QecScheme, get_scheme
from .report import EstimateReport
from .tfactory import DistillationUnit, TFactoryConstraints

__all__ = ["JobSpec", "load_job", "job_from_mapping", "run_job"]

_JOB_FIELDS = {
    "input",
    "qubitParams",
    "qecScheme",
    "errorBudget",
    "distillationUnits",
    "tFactoryConstraints",
    "rotationSynthesis",
}

_INPUT_FIELDS = {"tracePath", "logicalCounts", "postLayout"}


@dataclass(frozen=True)
class JobSpec:
    """A validated estimation job, ready to run."""

    trace_path: Optional[Path]
    logical_counts: Optional[LogicalCounts]
    post_layout: Optional[PostLayoutInput]
    qubit_params: PhysicalQubitParams
    qec_scheme: QecScheme
    error_budget: ErrorBudget
    distillation_units: Optional[tuple[DistillationUnit, ...]]
    constraints: Optional[TFactoryConstraints]
    rotation_synthesis: RotationSynthesisConstants


def _parse_input(data: dict, base_dir: Path):
    if not isinstance(data, dict):
        raise ConfigError("job 'input' must be an object")
    present = _INPUT_FIELDS & data.keys()
    unknown = data.keys() - _INPUT_FIELDS
    if unknown:
        raise ConfigError(f"unknown input field(s): {', '.join(sorted(unknown))}")
    if len(present) != 1:
        raise ConfigError(
            "job input must carry exactly one of tracePath, logicalCounts, "
            f"or postLayout; found {sorted(present) or 'none'}"
        )
    if "tracePath" in data:
        return (base_dir / data["tracePath"], None, None)
    if "logicalCounts" in data:
        return (None, LogicalCounts.from_mapping(data["logicalCounts"]), None)
    return (None, None, PostLayoutInput.from_mapping(data["postLayout"]))


def _parse_qubit_params(value) -> tuple[PhysicalQubitParams, Optional[str]]:
    """Returns the params plus a default scheme name when a profile supplied one."""
    if isinstance(value, str):
        profile = profiles.load_profile(value)
        return profile.qubit_params, profile.default_scheme_name
    if isinstance(value, dict):
        return PhysicalQubitParams.from_mapping(value), None
    raise ConfigError("qubitParams must be a profile name or a parameter object")


def _parse_scheme(value, profile_default: Optional[str]) -> QecScheme:
    if value is None:
        if profile_default is None:
            raise ConfigError(
                "qecScheme is required when qubitParams is not a named profile"
            )
        return get_scheme(profile_default)
    if isinstance(value, str):
        return get_scheme(value)
    if isinstance(value, dict):
        return QecScheme.from_mapping(value)
    raise ConfigError("qecScheme must be a scheme name or a scheme object")


def job_from_mapping(data: dict, base_dir: Union[str, Path] = ".") -> JobSpec:
    """Validate a decoded job document; relative paths resolve against ``base_dir``."""
    if not isinstance(data, dict):
        raise ConfigError("job specification must be a JSON object")
    unknown = data.keys() - _JOB_FIELDS
    if unknown:
        raise ConfigError(f"unknown job field(s): {', '.join(sorted(unknown))}")
    for required in ("input", "qubitParams", "errorBudget"):
        if required not in data:
            raise ConfigError(f"job specification is missing {required!r}")

    trace_path, logical_counts, post_layout = _parse_input(data["input"], Path(base_dir))
    qubit_params, profile_scheme = _parse_qubit_params(data["qubitParams"])
    scheme = _parse_scheme(data.get("qecScheme"), profile_scheme)
    budget = ErrorBudget.from_value(data["errorBudget"])

    units = None
    if "distillationUnits" in data:
        raw_units = data["distillationUnits"]
        if not isinstance(raw_units, list) or not raw_units:
            raise ConfigError("distillationUnits must be a non-empty list")
        units = tuple(DistillationUnit.from_mapping(u) for u in raw_units)

    constraints = None
    if "tFactoryConstraints" in data:
        constraints = TFactoryConstraints.from_mapping(data["tFactoryConstraints"])

    synthesis = DEFAULT_SYNTHESIS
    if "rotationSynthesis" in data:
        raw = data["rotationSynthesis"]
        if not isinstance(raw, dict) or raw.keys() - {"a", "b"}:
            raise ConfigError("rotationSynthesis must be an object with fields a and b")
        synthesis = RotationSynthesisConstants(
            a=float(raw.get("a", DEFAULT_SYNTHESIS.a)),
            b=float(raw.get("b", DEFAULT_SYNTHESIS.b)),
        )

    return JobSpec(
        trace_path=trace_path,
        logical_counts=logical_counts,
        post_layout=post_layout,
        qubit_params=qubit_params,
        qec_scheme=scheme,
        error_budget=budget,
        distillation_units=units,
        constraints=constraints,
        rotation_synthesis=synthesis,
    )


def load_job(path: Union[str, Path]) -> JobSpec:
    """Read and validate a job file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read job file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"job file {path} is not valid JSON: {exc.msg}") from exc
    return job_from_mapping(data, base_dir=path.parent)


def run_job(job: JobSpec, slowdown: float = 1.0) -> EstimateReport:
    """Execute one estimation job."""
    counts = job.logical_counts
    if job.trace_path is not None:
        counts = count_trace(read_trace(job.trace_path))
    return pipeline.estimate(
        counts,
        qubit_params=job.qubit_params,
        qec_scheme=job.qec_scheme,
        error_budget=job.error_budget,
        distillation_units=job.distillation_units,
        constraints=job.constraints,
        rotation_synthesis=job.rotation_synthesis,
        post_layout=job.post_layout,
        slowdown=slowdown,
    )


def run_frontier(job: JobSpec, slowdown_grid) -> pipeline.FrontierResult:
    """Execute one job across a slowdown grid."""
    counts = job.logical_counts
    if job.trace_path is not None:
        counts = count_trace(read_trace(job.trace_path))
    return pipeline.frontier(
        counts,
        slowdown_grid=slowdown_grid,
        qubit_params=job.qubit_params,
        qec_scheme=job.qec_scheme,
        error_budget=job.error_budget,
        distillation_units=job.distillation_units,
        constraints=job.constraints,
        rotation_synthesis=job.rotation_synthesis,
        post_layout=job.post_layout,
    )
