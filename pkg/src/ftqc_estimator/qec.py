"""Code distance selection and per-logical-qubit physical costs.

A QEC scheme is two numeric parameters (crossing pre-factor ``a`` and
error-correction threshold ``p*``) plus two formulas over the physical
operation times and the code distance: the logical cycle time and the
number of physical qubits per logical qubit.  The logical error rate per
cycle at distance ``d`` follows the crossing model
``a * (p / p*) ^ ((d + 1) / 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

from . import formulas
from .errors import AboveThresholdError, ConfigError, DistanceExhaustedError
from .formulas import FormulaExpr

__all__ = [
    "InstructionSet",
    "PhysicalQubitParams",
    "QecScheme",
    "LogicalQubitProfile",
    "SURFACE_CODE",
    "FLOQUET_CODE",
    "get_scheme",
    "builtin_scheme_names",
    "effective_physical_error_rate",
    "required_logical_error_rate",
    "logical_error_rate",
    "compute_code_distance",
    "evaluate_scheme_formulas",
    "logical_qubit_profile",
]


class InstructionSet(str, Enum):
    GATE_BASED = "gateBased"
    MAJORANA = "majorana"


# Operation times each instruction set must provide (all in ns).
_REQUIRED_TIMES = {
    InstructionSet.GATE_BASED: (
        "one_qubit_gate_time",
        "two_qubit_gate_time",
        "one_qubit_measurement_time",
        "t_gate_time",
    ),
    InstructionSet.MAJORANA: (
        "one_qubit_measurement_time",
        "two_qubit_measurement_time",
        "t_gate_time",
    ),
}

_TIME_KEYS = {
    "one_qubit_gate_time": "oneQubitGateTime",
    "two_qubit_gate_time": "twoQubitGateTime",
    "one_qubit_measurement_time": "oneQubitMeasurementTime",
    "two_qubit_measurement_time": "twoQubitMeasurementTime",
    "t_gate_time": "tGateTime",
}

_RATE_KEYS = {
    "clifford_error_rate": "cliffordErrorRate",
    "readout_error_rate": "readoutErrorRate",
    "t_gate_error_rate": "tGateErrorRate",
    "idle_error_rate": "idleErrorRate",
}


@dataclass(frozen=True)
class PhysicalQubitParams:
    """Operation times (ns) and error rates of the physical qubits.

    Gate-based sets are characterized by one- and two-qubit gate, T-gate,
    and single-qubit measurement times; measurement-based (Majorana) sets
    by one- and two-qubit measurement and T-gate times.  Times not in the
    instruction set may be omitted.
    """

    instruction_set: InstructionSet
    one_qubit_gate_time: Optional[float] = None
    two_qubit_gate_time: Optional[float] = None
    one_qubit_measurement_time: Optional[float] = None
    two_qubit_measurement_time: Optional[float] = None
    t_gate_time: Optional[float] = None
    clifford_error_rate: float = 0.0
    readout_error_rate: float = 0.0
    t_gate_error_rate: float = 0.0
    idle_error_rate: Optional[float] = None

    def __post_init__(self):
        for attr in _REQUIRED_TIMES[self.instruction_set]:
            value = getattr(self, attr)
            if value is None or value <= 0:
                raise ConfigError(
                    f"{self.instruction_set.value} qubits require "
                    f"{_TIME_KEYS[attr]} > 0, got {value!r}"
                )
        for attr, key in _RATE_KEYS.items():
            value = getattr(self, attr)
            if value is None:
                continue
            if not 0.0 <= value < 1.0:
                raise ConfigError(f"{key} must be in [0, 1), got {value!r}")

    def time_variables(self) -> dict[str, float]:
        """Formula bindings for the operation times that are present."""
        env = {}
        for attr, key in _TIME_KEYS.items():
            value = getattr(self, attr)
            if value is not None and attr != "t_gate_time":
                env[key] = float(value)
        return env

    def as_mapping(self) -> dict:
        data: dict = {"instructionSet": self.instruction_set.value}
        for attr, key in _TIME_KEYS.items():
            data[key] = getattr(self, attr)
        for attr, key in _RATE_KEYS.items():
            data[key] = getattr(self, attr)
        return data

    @classmethod
    def from_mapping(cls, data: Mapping) -> "PhysicalQubitParams":
        if "instructionSet" not in data:
            raise ConfigError("qubit parameters require an instructionSet")
        try:
            instruction_set = InstructionSet(data["instructionSet"])
        except ValueError:
            raise ConfigError(
                f"unknown instruction set {data['instructionSet']!r}; "
                f"expected 'gateBased' or 'majorana'"
            ) from None
        kwargs: dict = {"instruction_set": instruction_set}
        known = {**_TIME_KEYS, **_RATE_KEYS}
        for attr, key in known.items():
            if key in data and data[key] is not None:
                kwargs[attr] = float(data[key])
        for key in data:
            if key != "instructionSet" and key not in known.values():
                raise ConfigError(f"unknown qubit parameter field {key!r}")
        return cls(**kwargs)


def effective_physical_error_rate(params: PhysicalQubitParams) -> float:
    """Single physical error rate fed to the crossing model.

    The conservative aggregate: the worst of the Clifford and readout
    rates; measurement-based sets also fold in the idle rate when one is
    provided.
    """
    rate = max(params.clifford_error_rate, params.readout_error_rate)
    if params.instruction_set is InstructionSet.MAJORANA and params.idle_error_rate is not None:
        rate = max(rate, params.idle_error_rate)
    return rate


@dataclass(frozen=True)
class QecScheme:
    """A quantum error correction scheme.

    Both formulas may reference the operation-time variables and
    ``codeDistance``; they must evaluate to positive values for every odd
    distance up to ``max_code_distance``.
    """

    name: str
    crossing_prefactor: float
    error_correction_threshold: float
    logical_cycle_time: FormulaExpr
    physical_qubits_per_logical_qubit: FormulaExpr
    max_code_distance: int = 51

    def __post_init__(self):
        if self.crossing_prefactor <= 0:
            raise ConfigError(
                f"crossing prefactor must be positive, got {self.crossing_prefactor!r}"
            )
        if not 0.0 < self.error_correction_threshold < 1.0:
            raise ConfigError(
                "error correction threshold must be in (0, 1), got "
                f"{self.error_correction_threshold!r}"
            )
        if self.max_code_distance < 3 or self.max_code_distance % 2 == 0:
            raise ConfigError(
                f"max code distance must be an odd integer >= 3, got "
                f"{self.max_code_distance!r}"
            )

    @classmethod
    def from_strings(
        cls,
        name: str,
        crossing_prefactor: float,
        error_correction_threshold: float,
        logical_cycle_time: str,
        physical_qubits_per_logical_qubit: str,
        max_code_distance: int = 51,
    ) -> "QecScheme":
        return cls(
            name=name,
            crossing_prefactor=crossing_prefactor,
            error_correction_threshold=error_correction_threshold,
            logical_cycle_time=formulas.parse_formula(logical_cycle_time),
            physical_qubits_per_logical_qubit=formulas.parse_formula(
                physical_qubits_per_logical_qubit
            ),
            max_code_distance=max_code_distance,
        )

    @classmethod
    def from_mapping(cls, data: Mapping) -> "QecScheme":
        required = (
            "name",
            "crossingPrefactor",
            "errorCorrectionThreshold",
            "logicalCycleTime",
            "physicalQubitsPerLogicalQubit",
        )
        for key in required:
            if key not in data:
                raise ConfigError(f"QEC scheme definition is missing {key!r}")
        return cls.from_strings(
            name=data["name"],
            crossing_prefactor=float(data["crossingPrefactor"]),
            error_correction_threshold=float(data["errorCorrectionThreshold"]),
            logical_cycle_time=data["logicalCycleTime"],
            physical_qubits_per_logical_qubit=data["physicalQubitsPerLogicalQubit"],
            max_code_distance=int(data.get("maxCodeDistance", 51)),
        )

    def as_mapping(self) -> dict:
        return {
            "name": self.name,
            "crossingPrefactor": self.crossing_prefactor,
            "errorCorrectionThreshold": self.error_correction_threshold,
            "logicalCycleTime": formulas.to_source(self.logical_cycle_time),
            "physicalQubitsPerLogicalQubit": formulas.to_source(
                self.physical_qubits_per_logical_qubit
            ),
            "maxCodeDistance": self.max_code_distance,
        }


SURFACE_CODE = QecScheme.from_strings(
    name="surface_code",
    crossing_prefactor=0.03,
    error_correction_threshold=0.01,
    logical_cycle_time="(4 * twoQubitGateTime + 2 * oneQubitMeasurementTime) * codeDistance",
    physical_qubits_per_logical_qubit="2 * codeDistance ^ 2",
)

FLOQUET_CODE = QecScheme.from_strings(
    name="floquet_code",
    crossing_prefactor=0.07,
    error_correction_threshold=0.01,
    logical_cycle_time="3 * codeDistance * oneQubitMeasurementTime",
    physical_qubits_per_logical_qubit="4 * codeDistance ^ 2 + 8 * (codeDistance - 1)",
)

_SCHEMES = {
    "surface_code": SURFACE_CODE,
    "floquet_code": FLOQUET_CODE,
    # the floquet code is also known by its inventors' names
    "hastings_haah": FLOQUET_CODE,
}


def builtin_scheme_names() -> tuple[str, ...]:
    return ("surface_code", "floquet_code")


def get_scheme(name: str) -> QecScheme:
    """Look up a built-in scheme by name (aliases allowed)."""
    try:
        return _SCHEMES[name]
    except KeyError:
        raise ConfigError(
            f"unknown QEC scheme {name!r}; built-ins: {', '.join(sorted(_SCHEMES))}"
        ) from None


@dataclass(frozen=True)
class LogicalQubitProfile:
    """Per-logical-qubit costs of a scheme at a chosen code distance."""

    code_distance: int
    physical_qubits_per_logical_qubit: int
    logical_cycle_time: float  # ns
    logical_clock_speed: float  # Hz, = 1e9 / cycle time
    logical_error_rate_per_cycle: float

    def as_mapping(self) -> dict:
        return {
            "codeDistance": self.code_distance,
            "physicalQubitsPerLogicalQubit": self.physical_qubits_per_logical_qubit,
            "logicalCycleTime": self.logical_cycle_time,
            "logicalClockSpeed": self.logical_clock_speed,
            "logicalErrorRatePerCycle": self.logical_error_rate_per_cycle,
        }


def required_logical_error_rate(
    error_budget_logical: float, logical_qubits: int, depth: int
) -> float:
    """Per-qubit-per-cycle error target from the logical budget share."""
    if not 0.0 < error_budget_logical < 1.0:
        raise ValueError(f"budget must be in (0, 1), got {error_budget_logical!r}")
    if logical_qubits < 1 or depth < 1:
        raise ValueError(
            f"need at least one qubit and one cycle, got {logical_qubits} x {depth}"
        )
    return error_budget_logical / (logical_qubits * depth)


def logical_error_rate(scheme: QecScheme, physical_error_rate: float, code_distance: int) -> float:
    """Crossing-model logical error rate per cycle at a given distance."""
    ratio = physical_error_rate / scheme.error_correction_threshold
    return scheme.crossing_prefactor * ratio ** ((code_distance + 1) // 2)


def compute_code_distance(
    scheme: QecScheme, physical_error_rate: float, target_per_cycle_rate: float
) -> int:
    """Smallest odd distance whose logical error rate meets the target.

    The physical rate must be strictly below the scheme threshold,
    otherwise increasing the distance cannot suppress errors
    (:class:`AboveThresholdError`).  Searches odd distances from 3 up to
    the scheme maximum and raises :class:`DistanceExhaustedError` when
    none suffices.
    """
    if physical_error_rate <= 0.0:
        raise ValueError(
            f"physical error rate must be positive, got {physical_error_rate!r}"
        )
    if physical_error_rate >= scheme.error_correction_threshold:
        raise AboveThresholdError(physical_error_rate, scheme.error_correction_threshold)
    if not 0.0 < target_per_cycle_rate < 1.0:
        raise ValueError(
            f"target rate must be in (0, 1), got {target_per_cycle_rate!r}"
        )
    for distance in range(3, scheme.max_code_distance + 1, 2):
        if logical_error_rate(scheme, physical_error_rate, distance) <= target_per_cycle_rate:
            return distance
    raise DistanceExhaustedError(scheme.max_code_distance)


def evaluate_scheme_formulas(
    scheme: QecScheme, params: PhysicalQubitParams, code_distance: int
) -> tuple[float, int]:
    """Evaluate (cycle time ns, physical qubits per logical qubit) at a distance.

    Accepts any distance >= 1 so that distillation rounds can cost a
    physical-level stage with ``codeDistance = 1``; both values must come
    out positive.
    """
    env = params.time_variables()
    env["codeDistance"] = float(code_distance)
    cycle_time = formulas.evaluate(scheme.logical_cycle_time, env)
    footprint = formulas.evaluate(scheme.physical_qubits_per_logical_qubit, env)
    if cycle_time <= 0.0 or footprint <= 0.0:
        raise ConfigError(
            f"scheme {scheme.name!r} formulas must be positive at distance "
            f"{code_distance}: cycle {cycle_time!r}, footprint {footprint!r}"
        )
    return cycle_time, math.ceil(footprint)


def logical_qubit_profile(
    scheme: QecScheme, params: PhysicalQubitParams, code_distance: int
) -> LogicalQubitProfile:
    """Physical cost profile of one logical qubit at an odd distance.

    The clock speed is the inverse cycle time converted to Hertz; the
    per-cycle logical error rate uses the effective physical error rate
    of ``params``.
    """
    if code_distance % 2 == 0 or not 3 <= code_distance <= scheme.max_code_distance:
        raise ValueError(
            f"code distance must be odd and within [3, {scheme.max_code_distance}], "
            f"got {code_distance}"
        )
    cycle_time, footprint = evaluate_scheme_formulas(scheme, params, code_distance)
    return LogicalQubitProfile(
        code_distance=code_distance,
        physical_qubits_per_logical_qubit=footprint,
        logical_cycle_time=cycle_time,
        logical_clock_speed=1e9 / cycle_time,
        logical_error_rate_per_cycle=logical_error_rate(
            scheme, effective_physical_error_rate(params), code_distance
        ),
    )
