"""Command-line front end.

Subcommands:

* ``estimate`` runs a single job and writes the full report.
* ``sweep`` re-runs a job template over a list of values for one numeric
  field (dotted path) and writes a flat CSV table.
* ``frontier`` runs a job across a slowdown grid and writes the
  Pareto-pruned qubit/runtime points.
* ``profiles`` lists the built-in hardware profiles.

Exit codes: 0 success, 2 configuration error, 3 infeasible estimate,
1 internal error.  Failures emit a machine-readable JSON error object on
stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import jobs, profiles
from .errors import (
    INFEASIBLE_ERRORS,
    ConfigError,
    EstimationStageError,
    EstimatorError,
)
from .report import EstimateReport

__all__ = ["main", "cmd_estimate", "cmd_sweep", "cmd_frontier", "cmd_profiles"]

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3

SWEEP_COLUMNS = (
    "value",
    "physicalQubits",
    "runtime_ns",
    "codeDistance",
    "rqops",
    "numTFactoryCopies",
    "error",
)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(path).write_text(text)


def _error_payload(exc: EstimatorError) -> dict:
    cause = exc.cause if isinstance(exc, EstimationStageError) else exc
    payload = {
        "error": {
            "type": type(cause).__name__,
            "message": str(cause),
        }
    }
    if isinstance(exc, EstimationStageError):
        payload["error"]["stage"] = exc.stage
    return payload


def _exit_code_for(exc: EstimatorError) -> int:
    cause = exc.cause if isinstance(exc, EstimationStageError) else exc
    if isinstance(cause, INFEASIBLE_ERRORS):
        return EXIT_INFEASIBLE
    return EXIT_CONFIG


def _flatten(prefix: str, value, rows: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else key, item, rows)
    elif isinstance(value, list):
        rows.append((prefix, json.dumps(value)))
    else:
        rows.append((prefix, json.dumps(value)))


def _report_table(report: EstimateReport) -> str:
    rows: list[tuple[str, str]] = []
    _flatten("", report.as_mapping(), rows)
    width = max(len(key) for key, _ in rows)
    return "\n".join(f"{key.ljust(width)}  {value}" for key, value in rows) + "\n"


def cmd_estimate(job_path: str, out_path: Optional[str], fmt: str = "structured") -> int:
    """Run one job and write the report; returns the process exit code."""
    job = jobs.load_job(job_path)
    report = jobs.run_job(job)
    if fmt == "table":
        _write_text(out_path, _report_table(report))
    else:
        _write_text(out_path, report.to_json() + "\n")
    return EXIT_OK


def _set_by_path(data: dict, dotted: str, value: float) -> None:
    parts = dotted.split(".")
    node = data
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node:
            raise ConfigError(f"job has no field at {dotted!r}")
        node = node[part]
    leaf = parts[-1]
    if not isinstance(node, dict) or leaf not in node:
        raise ConfigError(f"job has no field at {dotted!r}")
    if not isinstance(node[leaf], (int, float)) or isinstance(node[leaf], bool):
        raise ConfigError(f"field at {dotted!r} is not numeric")
    # keep integer-valued fields integral so counts stay valid
    node[leaf] = int(value) if isinstance(node[leaf], int) and value == int(value) else value


def cmd_sweep(
    job_template_path: str,
    parameter_name: str,
    values: Sequence[float],
    out_csv_path: Optional[str],
) -> int:
    """Run a job once per value of one numeric field and emit a CSV table."""
    if not values:
        raise ConfigError("sweep requires a non-empty values list")
    try:
        template = json.loads(Path(job_template_path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read job file {job_template_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"job file is not valid JSON: {exc.msg}") from exc
    base_dir = Path(job_template_path).parent

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for value in values:
        document = json.loads(json.dumps(template))  # fresh copy per row
        _set_by_path(document, parameter_name, value)
        try:
            report = jobs.run_job(jobs.job_from_mapping(document, base_dir))
        except EstimatorError as exc:
            cause = exc.cause if isinstance(exc, EstimationStageError) else exc
            writer.writerow([value, "", "", "", "", "", f"{type(cause).__name__}: {cause}"])
            continue
        phys = report.physical_resource_estimates
        breakdown = report.resource_estimates_breakdown
        writer.writerow(
            [
                value,
                phys.physical_qubits,
                phys.runtime,
                report.logical_qubit_parameters.code_distance,
                phys.rqops,
                breakdown.num_t_factory_copies,
                "",
            ]
        )
    _write_text(out_csv_path, buffer.getvalue())
    return EXIT_OK


def cmd_frontier(
    job_path: str,
    slowdown_grid: Sequence[float],
    out_path: Optional[str],
    fmt: str = "structured",
) -> int:
    """Run a job across a slowdown grid and write the pruned frontier."""
    job = jobs.load_job(job_path)
    result = jobs.run_frontier(job, slowdown_grid)
    points = [p.as_mapping() for p in result.points]
    errors = [
        {"slowdown": s, "type": type(e).__name__, "message": str(e)}
        for s, e in result.errors
    ]
    if fmt == "table":
        lines = ["slowdown,physicalQubits,runtime_ns"]
        lines += [f"{p['slowdown']},{p['physicalQubits']},{p['runtime']}" for p in points]
        lines += [f"# error at slowdown {e['slowdown']}: {e['message']}" for e in errors]
        _write_text(out_path, "\n".join(lines) + "\n")
    else:
        _write_text(out_path, json.dumps({"points": points, "errors": errors}, indent=2) + "\n")
    return EXIT_OK


def cmd_profiles(fmt: str = "table", out_path: Optional[str] = None) -> int:
    """List the hardware profiles in the active profile directory."""
    listed = profiles.list_profiles()
    if fmt == "structured":
        _write_text(out_path, json.dumps([p.as_mapping() for p in listed], indent=2) + "\n")
        return EXIT_OK
    columns = (
        "name",
        "instructionSet",
        "tGateTime",
        "oneQubitMeasurementTime",
        "cliffordErrorRate",
        "tGateErrorRate",
        "defaultQecScheme",
    )
    rows = [columns]
    for profile in listed:
        params = profile.qubit_params.as_mapping()
        rows.append(
            (
                profile.name,
                params["instructionSet"],
                str(params["tGateTime"]),
                str(params["oneQubitMeasurementTime"]),
                str(params["cliffordErrorRate"]),
                str(params["tGateErrorRate"]),
                profile.default_scheme_name,
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(columns))]
    lines = ["  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)) for row in rows]
    _write_text(out_path, "\n".join(lines) + "\n")
    return EXIT_OK


def _parse_values(text: str) -> list[float]:
    try:
        return [float(chunk) for chunk in text.split(",") if chunk.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad numeric list {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftqc-estimator",
        description="Physical resource estimation for fault-tolerant quantum algorithms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="run one job and write the full report")
    est.add_argument("--job", required=True, help="path to the job JSON file")
    est.add_argument("--out", default=None, help="output path (default: stdout)")
    est.add_argument("--format", choices=("structured", "table"), default="structured")

    swp = sub.add_parser("sweep", help="re-run a job over values of one numeric field")
    swp.add_argument("--job", required=True, help="path to the job template JSON file")
    swp.add_argument("--param", required=True, help="dotted path of the field to sweep")
    swp.add_argument("--values", required=True, help="comma-separated numeric values")
    swp.add_argument("--out", default=None, help="CSV output path (default: stdout)")

    fro = sub.add_parser("frontier", help="qubit/time trade-off over a slowdown grid")
    fro.add_argument("--job", required=True, help="path to the job JSON file")
    fro.add_argument("--slowdown-grid", required=True, help="comma-separated factors >= 1")
    fro.add_argument("--out", default=None, help="output path (default: stdout)")
    fro.add_argument("--format", choices=("structured", "table"), default="structured")

    pro = sub.add_parser("profiles", help="list built-in hardware profiles")
    pro.add_argument("--format", choices=("structured", "table"), default="table")
    pro.add_argument("--out", default=None, help="output path (default: stdout)")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "estimate":
            return cmd_estimate(args.job, args.out, args.format)
        if args.command == "sweep":
            return cmd_sweep(args.job, args.param, _parse_values(args.values), args.out)
        if args.command == "frontier":
            return cmd_frontier(
                args.job, _parse_values(args.slowdown_grid), args.out, args.format
            )
        if args.command == "profiles":
            return cmd_profiles(args.format, args.out)
        parser.error(f"unknown command {args.command!r}")
    except EstimatorError as exc:
        sys.stderr.write(json.dumps(_error_payload(exc)) + "\n")
        return _exit_code_for(exc)
    except Exception as exc:  # internal error: still machine readable
        sys.stderr.write(
            json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n"
        )
        return EXIT_INTERNAL
    return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
