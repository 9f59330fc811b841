"""T-state distillation pipelines and factory fleet sizing.

A distillation unit turns many noisy T states into fewer, cleaner ones;
its failure probability, output error rate, footprint, and duration come
from configurable formulas.  The pipeline search chains up to
``max_rounds`` units, feeding each round's output error into the next,
and keeps the cheapest chain (fewest physical qubits per factory copy,
then shortest run, then fewest rounds) that reaches the required T-state
fidelity.

Within one factory copy the rounds execute sequentially, so the copy's
footprint is its widest round and its run duration is the sum of the
rounds' expected durations, where a round with failure probability ``f``
costs ``duration / (1 - f)`` on average (retry-until-success).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping, Optional, Sequence

from . import formulas
from .errors import (
    ConfigError,
    FactoryConstraintInfeasibleError,
    NoFeasiblePipelineError,
    RuntimeTooShortError,
)
from .formulas import FormulaExpr
from .qec import PhysicalQubitParams, QecScheme, evaluate_scheme_formulas

__all__ = [
    "Applicability",
    "DistillationUnit",
    "FactoryRound",
    "TFactoryPlan",
    "TFactoryConstraints",
    "DEFAULT_15_TO_1",
    "default_units",
    "required_t_state_error",
    "search_pipeline",
    "size_fleet",
    "MAX_UNITS",
]

#: Cap on the unit list so the exhaustive search stays instant.
MAX_UNITS = 8


class Applicability(str, Enum):
    PHYSICAL_ONLY = "physicalOnly"
    LOGICAL_ONLY = "logicalOnly"
    BOTH = "both"


@dataclass(frozen=True)
class DistillationUnit:
    """One distillation stage, e.g. a 15-to-1 round.

    The four formulas are evaluated with the distillation variable set:
    the qubit operation times, ``codeDistance``, ``cliffordErrorRate``,
    ``inputErrorRate``, ``physicalQubitsPerLogicalQubit``, and
    ``logicalCycleTime``.
    """

    name: str
    num_input_ts: int
    num_output_ts: int
    failure_probability: FormulaExpr
    output_error_rate: FormulaExpr
    physical_qubits: FormulaExpr
    duration: FormulaExpr
    applicability: Applicability = Applicability.BOTH

    def __post_init__(self):
        if self.num_output_ts < 1 or self.num_input_ts <= self.num_output_ts:
            raise ConfigError(
                f"distillation unit {self.name!r} must concentrate fidelity: "
                f"need 0 < outputs < inputs, got {self.num_input_ts} -> "
                f"{self.num_output_ts}"
            )

    @classmethod
    def from_strings(
        cls,
        name: str,
        num_input_ts: int,
        num_output_ts: int,
        failure_probability: str,
        output_error_rate: str,
        physical_qubits: str,
        duration: str,
        applicability: Applicability = Applicability.BOTH,
    ) -> "DistillationUnit":
        return cls(
            name=name,
            num_input_ts=num_input_ts,
            num_output_ts=num_output_ts,
            failure_probability=formulas.parse_formula(failure_probability),
            output_error_rate=formulas.parse_formula(output_error_rate),
            physical_qubits=formulas.parse_formula(physical_qubits),
            duration=formulas.parse_formula(duration),
            applicability=applicability,
        )

    @classmethod
    def from_mapping(cls, data: Mapping) -> "DistillationUnit":
        required = (
            "name",
            "numInputTs",
            "numOutputTs",
            "failureProbabilityFormula",
            "outputErrorRateFormula",
            "physicalQubitsFormula",
            "durationFormula",
        )
        for key in required:
            if key not in data:
                raise ConfigError(f"distillation unit definition is missing {key!r}")
        try:
            applicability = Applicability(data.get("applicability", "both"))
        except ValueError:
            raise ConfigError(
                f"unknown applicability {data['applicability']!r}; expected "
                "'physicalOnly', 'logicalOnly', or 'both'"
            ) from None
        return cls.from_strings(
            name=data["name"],
            num_input_ts=int(data["numInputTs"]),
            num_output_ts=int(data["numOutputTs"]),
            failure_probability=data["failureProbabilityFormula"],
            output_error_rate=data["outputErrorRateFormula"],
            physical_qubits=data["physicalQubitsFormula"],
            duration=data["durationFormula"],
            applicability=applicability,
        )

    def as_mapping(self) -> dict:
        return {
            "name": self.name,
            "numInputTs": self.num_input_ts,
            "numOutputTs": self.num_output_ts,
            "failureProbabilityFormula": formulas.to_source(self.failure_probability),
            "outputErrorRateFormula": formulas.to_source(self.output_error_rate),
            "physicalQubitsFormula": formulas.to_source(self.physical_qubits),
            "durationFormula": formulas.to_source(self.duration),
            "applicability": self.applicability.value,
        }

    def allowed_distances(self, max_code_distance: int) -> tuple[int, ...]:
        """Code distances this unit may run at; distance 1 means physical level."""
        distances: list[int] = []
        if self.applicability in (Applicability.PHYSICAL_ONLY, Applicability.BOTH):
            distances.append(1)
        if self.applicability in (Applicability.LOGICAL_ONLY, Applicability.BOTH):
            distances.extend(range(3, max_code_distance + 1, 2))
        return tuple(distances)


DEFAULT_15_TO_1 = DistillationUnit.from_strings(
    name="15-to-1",
    num_input_ts=15,
    num_output_ts=1,
    failure_probability="15 * inputErrorRate",
    output_error_rate="35 * inputErrorRate ^ 3",
    physical_qubits="31 * physicalQubitsPerLogicalQubit",
    duration="11 * logicalCycleTime",
)


def default_units() -> tuple[DistillationUnit, ...]:
    return (DEFAULT_15_TO_1,)


@dataclass(frozen=True)
class FactoryRound:
    unit: DistillationUnit
    code_distance: int
    num_parallel_units: int

    def as_mapping(self) -> dict:
        return {
            "unitName": self.unit.name,
            "codeDistance": self.code_distance,
            "numParallelUnits": self.num_parallel_units,
        }


@dataclass(frozen=True)
class TFactoryPlan:
    """A distillation chain plus the fleet that executes it.

    ``rounds`` through ``t_states_per_run`` describe one factory copy;
    ``num_copies`` and ``runs_per_copy`` are filled in by
    :func:`size_fleet`.  Supply always covers demand:
    ``num_copies * runs_per_copy * t_states_per_run >= totalTStates``.
    """

    rounds: tuple[FactoryRound, ...]
    output_error_rate: float
    duration_per_run: float  # ns, expected including retries
    physical_qubits_per_copy: int
    t_states_per_run: int
    num_copies: int = 0
    runs_per_copy: int = 0

    @property
    def factory_physical_qubits(self) -> int:
        return self.num_copies * self.physical_qubits_per_copy

    def as_mapping(self) -> dict:
        return {
            "rounds": [r.as_mapping() for r in self.rounds],
            "outputErrorRate": self.output_error_rate,
            "durationPerRun": self.duration_per_run,
            "physicalQubitsPerCopy": self.physical_qubits_per_copy,
            "tStatesPerRun": self.t_states_per_run,
            "numCopies": self.num_copies,
            "runsPerCopy": self.runs_per_copy,
        }


#: Placeholder plan for workloads that consume no T states.
EMPTY_PLAN = TFactoryPlan(
    rounds=(),
    output_error_rate=0.0,
    duration_per_run=0.0,
    physical_qubits_per_copy=0,
    t_states_per_run=0,
)


@dataclass(frozen=True)
class TFactoryConstraints:
    """User limits on the factory fleet.

    When ``max_t_factory_copies`` is hit, the program may be slowed down
    by up to ``max_logical_cycle_slowdown`` (default: no slowdown) so
    fewer copies suffice.
    """

    max_t_factory_copies: Optional[int] = None
    max_logical_cycle_slowdown: Optional[float] = None

    @classmethod
    def from_mapping(cls, data: Mapping) -> "TFactoryConstraints":
        known = {"maxTFactoryCopies", "maxLogicalCycleSlowdown"}
        for key in data:
            if key not in known:
                raise ConfigError(f"unknown T factory constraint {key!r}")
        copies = data.get("maxTFactoryCopies")
        slowdown = data.get("maxLogicalCycleSlowdown")
        if copies is not None and int(copies) < 1:
            raise ConfigError(f"maxTFactoryCopies must be >= 1, got {copies!r}")
        if slowdown is not None and float(slowdown) < 1.0:
            raise ConfigError(
                f"maxLogicalCycleSlowdown must be >= 1, got {slowdown!r}"
            )
        return cls(
            max_t_factory_copies=None if copies is None else int(copies),
            max_logical_cycle_slowdown=None if slowdown is None else float(slowdown),
        )


def required_t_state_error(error_budget_t_states: float, total_t_states: int) -> float:
    """Per-state error target from the distillation budget share."""
    if not 0.0 < error_budget_t_states < 1.0:
        raise ValueError(f"budget must be in (0, 1), got {error_budget_t_states!r}")
    if total_t_states < 1:
        raise ValueError(f"need at least one T state, got {total_t_states}")
    return error_budget_t_states / total_t_states


# Variables whose value changes with the round's code distance.
_DISTANCE_VARIABLES = frozenset(
    {"codeDistance", "physicalQubitsPerLogicalQubit", "logicalCycleTime"}
)


def _distance_free(unit: DistillationUnit) -> bool:
    used = formulas.variables(unit.failure_probability) | formulas.variables(
        unit.output_error_rate
    )
    return not (used & _DISTANCE_VARIABLES)


class _RoundCoster:
    """Caches per-distance scheme values and evaluates unit formulas."""

    def __init__(self, scheme: QecScheme, params: PhysicalQubitParams):
        self.scheme = scheme
        self.params = params
        self.base_env = params.time_variables()
        self.base_env["cliffordErrorRate"] = params.clifford_error_rate
        self._scheme_cache: dict[int, Optional[tuple[float, int]]] = {}

    def scheme_values(self, distance: int) -> Optional[tuple[float, int]]:
        if distance not in self._scheme_cache:
            try:
                value = evaluate_scheme_formulas(self.scheme, self.params, distance)
            except ConfigError:
                # scheme formulas only promise positivity for distance >= 3;
                # a physical-level round is then simply unavailable
                if distance != 1:
                    raise
                value = None
            self._scheme_cache[distance] = value
        return self._scheme_cache[distance]

    def env(self, distance: int, input_error: float) -> Optional[dict[str, float]]:
        values = self.scheme_values(distance)
        if values is None:
            return None
        cycle_time, footprint = values
        env = dict(self.base_env)
        env["codeDistance"] = float(distance)
        env["physicalQubitsPerLogicalQubit"] = float(footprint)
        env["logicalCycleTime"] = cycle_time
        env["inputErrorRate"] = input_error
        return env

    def error_free_env(self, input_error: float) -> dict[str, float]:
        env = dict(self.base_env)
        env["inputErrorRate"] = input_error
        return env

    def transfer(self, unit: DistillationUnit, env: Mapping[str, float]) -> Optional[tuple[float, float]]:
        """(failure probability, output error) of one round, or None if invalid."""
        failure = formulas.evaluate(unit.failure_probability, env)
        if not 0.0 <= failure < 1.0:
            return None
        output = formulas.evaluate(unit.output_error_rate, env)
        if not 0.0 < output < 1.0:
            return None
        return failure, output

    def cost(
        self, unit: DistillationUnit, distance: int, input_error: float, failure: float
    ) -> Optional[tuple[int, float]]:
        """(physical qubits of one unit, expected duration ns), or None."""
        env = self.env(distance, input_error)
        if env is None:
            return None
        qubits = formulas.evaluate(unit.physical_qubits, env)
        duration = formulas.evaluate(unit.duration, env)
        if qubits < 1.0 or duration <= 0.0:
            return None
        return math.ceil(qubits), duration / (1.0 - failure)


def _parallel_units(sequence: Sequence[DistillationUnit]) -> list[int]:
    """Units per round so each round feeds the next; the last runs once."""
    counts = [1] * len(sequence)
    for k in range(len(sequence) - 2, -1, -1):
        needed = counts[k + 1] * sequence[k + 1].num_input_ts
        counts[k] = -(-needed // sequence[k].num_output_ts)
    return counts


def _build_plan(
    sequence: Sequence[DistillationUnit],
    distances: Sequence[int],
    parallel: Sequence[int],
    output_error: float,
    qubits_per_copy: int,
    duration: float,
) -> TFactoryPlan:
    rounds = tuple(
        FactoryRound(unit=u, code_distance=d, num_parallel_units=m)
        for u, d, m in zip(sequence, distances, parallel)
    )
    return TFactoryPlan(
        rounds=rounds,
        output_error_rate=output_error,
        duration_per_run=duration,
        physical_qubits_per_copy=qubits_per_copy,
        t_states_per_run=sequence[-1].num_output_ts,
    )


def _search_distance_free(
    units: Sequence[DistillationUnit],
    coster: _RoundCoster,
    input_error: float,
    required_error: float,
    max_rounds: int,
) -> Optional[tuple[tuple, TFactoryPlan]]:
    """Search when no unit's error formulas depend on the code distance.

    The error chain then depends only on the unit sequence, so distances
    can be optimized independently: the minimal feasible footprint cap is
    ``max_k min_d qubits_k(d)``, and under that cap each round picks its
    cheapest-duration option.  This returns the same optimum as full
    enumeration of (unit, distance) chains.
    """
    best: Optional[tuple[tuple, TFactoryPlan]] = None
    max_distance = coster.scheme.max_code_distance
    for length in range(1, max_rounds + 1):
        for sequence in itertools.product(units, repeat=length):
            error = input_error
            failures: list[float] = []
            inputs: list[float] = []
            ok = True
            for unit in sequence:
                inputs.append(error)
                result = coster.transfer(unit, coster.error_free_env(error))
                if result is None:
                    ok = False
                    break
                failure, error = result
                failures.append(failure)
            if not ok or error > required_error:
                continue
            parallel = _parallel_units(sequence)
            options: list[list[tuple[int, float, int]]] = []
            for k, unit in enumerate(sequence):
                opts = []
                for d in unit.allowed_distances(max_distance):
                    cost = coster.cost(unit, d, inputs[k], failures[k])
                    if cost is None:
                        continue
                    qubits, duration = cost
                    opts.append((parallel[k] * qubits, duration, d))
                if not opts:
                    ok = False
                    break
                options.append(opts)
            if not ok:
                continue
            cap = max(min(q for q, _, _ in opts) for opts in options)
            distances: list[int] = []
            total_duration = 0.0
            for opts in options:
                _, duration, d = min(
                    ((q, dur, d) for q, dur, d in opts if q <= cap),
                    key=lambda o: (o[1], o[0], o[2]),
                )
                distances.append(d)
                total_duration += duration
            key = (cap, total_duration, length)
            if best is None or key < best[0]:
                plan = _build_plan(sequence, distances, parallel, error, cap, total_duration)
                best = (key, plan)
    return best


def _search_exhaustive(
    units: Sequence[DistillationUnit],
    coster: _RoundCoster,
    input_error: float,
    required_error: float,
    max_rounds: int,
) -> Optional[tuple[tuple, TFactoryPlan]]:
    """Full enumeration over (unit, distance) chains up to ``max_rounds``."""
    best: Optional[tuple[tuple, TFactoryPlan]] = None
    max_distance = coster.scheme.max_code_distance

    # chain entries: (unit, distance, input error, output error, unit qubits, duration)
    def visit(chain: list[tuple], error: float) -> None:
        nonlocal best
        for unit in units:
            for d in unit.allowed_distances(max_distance):
                env = coster.env(d, error)
                if env is None:
                    continue
                result = coster.transfer(unit, env)
                if result is None:
                    continue
                failure, output = result
                cost = coster.cost(unit, d, error, failure)
                if cost is None:
                    continue
                qubits, duration = cost
                # any completion needs at least one unit per round
                if best is not None and qubits > best[0][0]:
                    continue
                entry = (unit, d, error, output, qubits, duration)
                chain.append(entry)
                if output <= required_error:
                    sequence = [e[0] for e in chain]
                    parallel = _parallel_units(sequence)
                    copy_qubits = max(m * e[4] for m, e in zip(parallel, chain))
                    total_duration = sum(e[5] for e in chain)
                    key = (copy_qubits, total_duration, len(chain))
                    if best is None or key < best[0]:
                        plan = _build_plan(
                            sequence,
                            [e[1] for e in chain],
                            parallel,
                            output,
                            copy_qubits,
                            total_duration,
                        )
                        best = (key, plan)
                if len(chain) < max_rounds:
                    visit(chain, output)
                chain.pop()

    visit([], input_error)
    return best


def search_pipeline(
    units: Sequence[DistillationUnit],
    scheme: QecScheme,
    params: PhysicalQubitParams,
    input_error: float,
    required_error: float,
    max_rounds: int = 3,
) -> TFactoryPlan:
    """Find the cheapest distillation chain reaching the required error.

    Enumerates 1 to ``max_rounds`` rounds, each round any unit at any
    allowed code distance, chaining output error into the next round's
    input.  Among feasible chains the winner minimizes physical qubits
    per copy, then run duration, then round count.  Raises
    :class:`NoFeasiblePipelineError` when nothing reaches the target.
    """
    if not units:
        raise ConfigError("at least one distillation unit is required")
    if len(units) > MAX_UNITS:
        raise ConfigError(f"at most {MAX_UNITS} distillation units are supported")
    if not 0.0 < input_error < 1.0:
        raise ValueError(f"input error must be in (0, 1), got {input_error!r}")
    if not 0.0 < required_error < 1.0:
        raise ValueError(f"required error must be in (0, 1), got {required_error!r}")
    if max_rounds < 1:
        raise ValueError(f"max_rounds must be >= 1, got {max_rounds}")

    coster = _RoundCoster(scheme, params)
    if all(_distance_free(u) for u in units):
        best = _search_distance_free(units, coster, input_error, required_error, max_rounds)
    else:
        best = _search_exhaustive(units, coster, input_error, required_error, max_rounds)
    if best is None:
        raise NoFeasiblePipelineError(
            f"no distillation chain of <= {max_rounds} rounds reaches error "
            f"{required_error:g} from input error {input_error:g}"
        )
    return best[1]


def size_fleet(
    plan: TFactoryPlan,
    total_t_states: int,
    algorithm_runtime: float,
    constraints: Optional[TFactoryConstraints] = None,
) -> tuple[TFactoryPlan, float]:
    """Size the factory fleet against the algorithm runtime.

    Returns the completed plan and the logical-cycle slowdown factor that
    was applied (1.0 when none).  Each copy runs
    ``floor(runtime / duration_per_run)`` times; enough copies are
    provisioned to cover ``total_t_states``.  If that exceeds the copy
    limit, the runtime is stretched by the smallest sufficient factor up
    to the allowed slowdown.
    """
    if total_t_states < 0:
        raise ValueError(f"total T states must be >= 0, got {total_t_states}")
    if total_t_states == 0:
        return replace(plan, num_copies=0, runs_per_copy=0), 1.0
    if algorithm_runtime <= 0.0:
        raise ValueError(f"runtime must be positive, got {algorithm_runtime!r}")
    constraints = constraints or TFactoryConstraints()
    duration = plan.duration_per_run
    per_run = plan.t_states_per_run

    runs = int(algorithm_runtime // duration)
    if runs >= 1:
        copies = -(-total_t_states // (runs * per_run))
        max_copies = constraints.max_t_factory_copies
        if max_copies is None or copies <= max_copies:
            return replace(plan, num_copies=copies, runs_per_copy=runs), 1.0

    if constraints.max_t_factory_copies is None:
        raise RuntimeTooShortError(duration, algorithm_runtime)

    # smallest stretch giving each copy enough runs to stay within the limit
    needed_runs = -(-total_t_states // (per_run * constraints.max_t_factory_copies))
    slowdown = needed_runs * duration / algorithm_runtime
    limit = constraints.max_logical_cycle_slowdown or 1.0
    if slowdown > limit:
        if duration > algorithm_runtime * limit:
            raise RuntimeTooShortError(duration, algorithm_runtime * limit)
        raise FactoryConstraintInfeasibleError(
            f"{constraints.max_t_factory_copies} copies need slowdown "
            f"{slowdown:g}, above the allowed {limit:g}"
        )
    slowdown = max(slowdown, 1.0)
    copies = -(-total_t_states // (needed_runs * per_run))
    return replace(plan, num_copies=copies, runs_per_copy=needed_runs), slowdown
