"""End-to-end estimation: logical counts to physical machine.

The pipeline runs in a fixed order: partition the error budget, fix the
rotation-synthesis multiplier, lay out the logical qubits, compute depth
and T-state totals, derive the per-cycle logical error target, select
the code distance, profile the logical qubit, size the T factory fleet,
and total everything up including the rQOPS rate (logical qubits times
logical clock speed).  Identical inputs produce byte-identical reports.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import layout
from . import qec, tfactory
from .counts import LogicalCounts
from .errors import (
    ConfigError,
    EstimationStageError,
    EstimatorError,
    InvalidPartitionError,
)
from .layout import DEFAULT_SYNTHESIS, RotationSynthesisConstants
from .qec import PhysicalQubitParams, QecScheme
from .report import (
    BudgetPartition,
    EstimateReport,
    PhysicalResourceEstimates,
    ResourceEstimatesBreakdown,
)
from .tfactory import EMPTY_PLAN, DistillationUnit, TFactoryConstraints

__all__ = [
    "ErrorBudget",
    "PostLayoutInput",
    "FrontierPoint",
    "FrontierResult",
    "partition_budget",
    "estimate",
    "frontier",
]

_PARTITION_TOLERANCE = 1e-12

ASSUMPTIONS = (
    "Logical error rate per cycle follows the crossing model "
    "crossingPrefactor * (physicalErrorRate / threshold) ^ ((codeDistance + 1) / 2).",
    "The effective physical error rate is the maximum of the Clifford and "
    "readout rates; measurement-based instruction sets also include the idle "
    "rate when provided.",
    "Layout interleaves algorithmic and auxiliary rows: Q algorithmic qubits "
    "become 2 * Q + ceil(sqrt(8 * Q)) + 1 logical qubits.",
    "Each arbitrary rotation is synthesized from T states; its cost is "
    "ceil(a * log2(rotationCount / synthesisBudget) + b) T states.",
    "T factories run concurrently with the algorithm; a factory copy executes "
    "its distillation rounds sequentially, retrying failed rounds, so its "
    "footprint is the widest round and a round with failure probability f "
    "takes duration / (1 - f) on average.",
    "Reported runtime covers logical cycles only; classical processing and "
    "factory warm-up are excluded.",
)


@dataclass(frozen=True)
class ErrorBudget:
    """Total failure-rate budget, optionally with explicit shares.

    Either all three shares (logical, T states, rotations) are given and
    must sum to the total, or none is and the engine splits the total in
    thirds, folding the shares of absent features into the logical part.
    """

    total: float
    logical: Optional[float] = None
    t_states: Optional[float] = None
    rotations: Optional[float] = None

    def __post_init__(self):
        if not 0.0 < self.total < 1.0:
            raise ConfigError(f"error budget total must be in (0, 1), got {self.total!r}")
        parts = (self.logical, self.t_states, self.rotations)
        given = [p for p in parts if p is not None]
        if given and len(given) != 3:
            raise InvalidPartitionError(
                "either give all of logical, tStates, and rotations, or none"
            )
        if any(p < 0 for p in given):
            raise InvalidPartitionError("budget parts must be non-negative")

    @property
    def is_explicit(self) -> bool:
        return self.logical is not None

    @classmethod
    def from_value(cls, value: Union[float, "ErrorBudget", dict]) -> "ErrorBudget":
        if isinstance(value, ErrorBudget):
            return value
        if isinstance(value, dict):
            known = {"total", "logical", "tStates", "rotations"}
            for key in value:
                if key not in known:
                    raise ConfigError(f"unknown error budget field {key!r}")
            if "total" not in value:
                raise ConfigError("error budget requires a total")
            return cls(
                total=float(value["total"]),
                logical=None if value.get("logical") is None else float(value["logical"]),
                t_states=None if value.get("tStates") is None else float(value["tStates"]),
                rotations=None if value.get("rotations") is None else float(value["rotations"]),
            )
        return cls(total=float(value))


@dataclass(frozen=True)
class PostLayoutInput:
    """Directly supplied post-layout aggregates.

    Bypasses counting and layout so published aggregate figures can be
    converted to physical estimates; T-state demand defaults to zero
    when unknown.
    """

    logical_qubits_post_layout: int
    algorithmic_depth: int
    total_t_states: int = 0

    def __post_init__(self):
        if self.logical_qubits_post_layout < 1:
            raise ConfigError("postLayout logicalQubitsPostLayout must be >= 1")
        if self.algorithmic_depth < 1:
            raise ConfigError("postLayout algorithmicDepth must be >= 1")
        if self.total_t_states < 0:
            raise ConfigError("postLayout totalTStates must be >= 0")

    @classmethod
    def from_mapping(cls, data: dict) -> "PostLayoutInput":
        known = {"logicalQubitsPostLayout", "algorithmicDepth", "totalTStates"}
        for key in data:
            if key not in known:
                raise ConfigError(f"unknown postLayout field {key!r}")
        for key in ("logicalQubitsPostLayout", "algorithmicDepth"):
            if key not in data:
                raise ConfigError(f"postLayout input requires {key!r}")
        return cls(
            logical_qubits_post_layout=int(data["logicalQubitsPostLayout"]),
            algorithmic_depth=int(data["algorithmicDepth"]),
            total_t_states=int(data.get("totalTStates", 0)),
        )


def partition_budget(
    budget: ErrorBudget, has_rotations: bool, has_t_states: bool
) -> BudgetPartition:
    """Split the total budget into logical, distillation, and synthesis shares.

    Explicit shares pass through unchanged (after checking their sum).
    The default split is a third each, with the share of any absent
    feature folded into the logical part; the logical share is computed
    as the remainder so the three always sum back to the total.
    """
    if budget.is_explicit:
        total = budget.logical + budget.t_states + budget.rotations
        if abs(total - budget.total) > _PARTITION_TOLERANCE:
            raise InvalidPartitionError(
                f"explicit parts sum to {total!r}, expected {budget.total!r}"
            )
        return BudgetPartition(
            total=budget.total,
            logical=budget.logical,
            t_states=budget.t_states,
            rotations=budget.rotations,
        )
    t_share = budget.total / 3.0 if has_t_states else 0.0
    rot_share = budget.total / 3.0 if has_rotations else 0.0
    logical = budget.total - t_share - rot_share
    return BudgetPartition(
        total=budget.total, logical=logical, t_states=t_share, rotations=rot_share
    )


@contextmanager
def _stage(name: str):
    """Re-raise component errors tagged with the pipeline stage."""
    try:
        yield
    except EstimationStageError:
        raise
    except EstimatorError as exc:
        raise EstimationStageError(name, exc) from exc


def estimate(
    counts: Optional[LogicalCounts] = None,
    *,
    qubit_params: PhysicalQubitParams,
    qec_scheme: QecScheme,
    error_budget: Union[ErrorBudget, float, dict],
    distillation_units: Optional[Sequence[DistillationUnit]] = None,
    constraints: Optional[TFactoryConstraints] = None,
    rotation_synthesis: RotationSynthesisConstants = DEFAULT_SYNTHESIS,
    post_layout: Optional[PostLayoutInput] = None,
    slowdown: float = 1.0,
) -> EstimateReport:
    """Run the full estimation pipeline and build the report.

    Exactly one of ``counts`` (pre-layout logical counts) or
    ``post_layout`` (already laid-out aggregates) must be given.
    ``slowdown`` >= 1 stretches the program runtime up front, trading
    time for fewer T factory copies.  Component failures propagate as
    :class:`EstimationStageError` tagged with the stage that failed.
    """
    if (counts is None) == (post_layout is None):
        raise ConfigError("exactly one of counts or post_layout must be provided")
    if slowdown < 1.0:
        raise ConfigError(f"slowdown must be >= 1, got {slowdown!r}")
    budget = ErrorBudget.from_value(error_budget)
    units = tuple(distillation_units) if distillation_units else tfactory.default_units()

    if counts is not None:
        has_rotations = counts.rotation_count > 0
        has_t_states = (
            counts.t_count + counts.ccz_count + counts.ccix_count + counts.rotation_count
        ) > 0
        with _stage("budget-partition"):
            partition = partition_budget(budget, has_rotations, has_t_states)
        with _stage("rotation-synthesis"):
            # the synthesis budget is only consulted when rotations exist
            algorithmic = layout.estimate_algorithmic(
                counts, partition.rotations, rotation_synthesis
            )
        logical_qubits = algorithmic.logical_qubits_post_layout
        depth = algorithmic.algorithmic_depth
        total_t = algorithmic.total_t_states
    else:
        # post-layout aggregates carry no feature flags; keep the plain
        # three-way split so explicit and default budgets agree
        with _stage("budget-partition"):
            partition = partition_budget(budget, True, True)
        logical_qubits = post_layout.logical_qubits_post_layout
        depth = post_layout.algorithmic_depth
        total_t = post_layout.total_t_states

    with _stage("logical-error-target"):
        target = qec.required_logical_error_rate(partition.logical, logical_qubits, depth)
    physical_rate = qec.effective_physical_error_rate(qubit_params)
    with _stage("code-distance"):
        distance = qec.compute_code_distance(qec_scheme, physical_rate, target)
    with _stage("logical-qubit-profile"):
        profile = qec.logical_qubit_profile(qec_scheme, qubit_params, distance)

    base_runtime = depth * profile.logical_cycle_time * slowdown

    if total_t > 0:
        with _stage("t-state-target"):
            t_target = tfactory.required_t_state_error(partition.t_states, total_t)
        with _stage("t-factory-pipeline"):
            plan = tfactory.search_pipeline(
                units,
                qec_scheme,
                qubit_params,
                input_error=qubit_params.t_gate_error_rate,
                required_error=t_target,
            )
        with _stage("t-factory-sizing"):
            plan, extra_slowdown = tfactory.size_fleet(plan, total_t, base_runtime, constraints)
        slowdown_applied = slowdown * extra_slowdown
    else:
        t_target = None
        plan = EMPTY_PLAN
        slowdown_applied = slowdown

    # exact float identities; tests recompute these expressions bit-for-bit
    runtime = depth * profile.logical_cycle_time * slowdown_applied
    rqops = logical_qubits * profile.logical_clock_speed
    algorithmic_qubits = logical_qubits * profile.physical_qubits_per_logical_qubit
    factory_qubits = plan.factory_physical_qubits

    return EstimateReport(
        physical_resource_estimates=PhysicalResourceEstimates(
            runtime=runtime,
            rqops=rqops,
            physical_qubits=algorithmic_qubits + factory_qubits,
        ),
        resource_estimates_breakdown=ResourceEstimatesBreakdown(
            logical_qubits_post_layout=logical_qubits,
            algorithmic_depth=depth,
            num_t_states=total_t,
            num_t_factory_copies=plan.num_copies,
            algorithmic_physical_qubits=algorithmic_qubits,
            t_factory_physical_qubits=factory_qubits,
            required_logical_error_rate=target,
            required_t_state_error=t_target,
            slowdown_applied=slowdown_applied,
        ),
        logical_qubit_parameters=profile,
        t_factory_parameters=plan,
        pre_layout_logical_resources=counts,
        assumed_error_budget=partition,
        physical_qubit_parameters=qubit_params,
        assumptions=ASSUMPTIONS,
    )


@dataclass(frozen=True)
class FrontierPoint:
    slowdown: float
    physical_qubits: int
    runtime: float
    report: EstimateReport

    def as_mapping(self) -> dict:
        return {
            "slowdown": self.slowdown,
            "physicalQubits": self.physical_qubits,
            "runtime": self.runtime,
        }


@dataclass(frozen=True)
class FrontierResult:
    points: tuple[FrontierPoint, ...]
    errors: tuple[tuple[float, EstimatorError], ...]


def frontier(
    counts: Optional[LogicalCounts] = None,
    *,
    slowdown_grid: Sequence[float],
    **kwargs,
) -> FrontierResult:
    """Qubit/time trade-off curve over a grid of slowdown factors.

    Runs one estimate per factor and Pareto-prunes the results, so the
    returned points have strictly decreasing physical qubits as runtime
    grows.  A factor whose estimate fails is skipped and reported in
    ``errors``.
    """
    grid = list(slowdown_grid)
    if not grid:
        raise ConfigError("slowdown grid must not be empty")
    if any(s < 1.0 for s in grid):
        raise ConfigError("slowdown factors must be >= 1")
    if grid != sorted(grid):
        raise ConfigError("slowdown grid must be sorted ascending")

    raw: list[FrontierPoint] = []
    errors: list[tuple[float, EstimatorError]] = []
    for factor in grid:
        try:
            report = estimate(counts, slowdown=factor, **kwargs)
        except EstimatorError as exc:
            errors.append((factor, exc))
            continue
        raw.append(
            FrontierPoint(
                slowdown=factor,
                physical_qubits=report.physical_resource_estimates.physical_qubits,
                runtime=report.physical_resource_estimates.runtime,
                report=report,
            )
        )

    # Pareto prune: keep a point only if it strictly improves on qubits as
    # runtime increases; duplicates and dominated points drop out.
    pruned: list[FrontierPoint] = []
    best_qubits: Optional[int] = None
    for point in sorted(raw, key=lambda p: (p.runtime, p.physical_qubits, p.slowdown)):
        if best_qubits is None or point.physical_qubits < best_qubits:
            pruned.append(point)
            best_qubits = point.physical_qubits
    return FrontierResult(points=tuple(pruned), errors=tuple(errors))
