"""Estimate report data model and serialization.

A report always carries the same eight groups, so consumers can rely on
a fixed schema even for degenerate workloads: physical resource
estimates, the resource breakdown, logical qubit parameters, T factory
parameters, pre-layout logical resources, the assumed error budget, the
physical qubit parameters, and the estimation assumptions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .counts import LogicalCounts
from .qec import LogicalQubitProfile, PhysicalQubitParams
from .tfactory import TFactoryPlan

__all__ = [
    "BudgetPartition",
    "PhysicalResourceEstimates",
    "ResourceEstimatesBreakdown",
    "EstimateReport",
]


@dataclass(frozen=True)
class BudgetPartition:
    """Total error budget and its three shares.

    The shares always sum back to the total: the logical share is
    computed as the remainder after the distillation and synthesis
    shares are fixed.
    """

    total: float
    logical: float
    t_states: float
    rotations: float

    def as_mapping(self) -> dict:
        return {
            "total": self.total,
            "logical": self.logical,
            "tStates": self.t_states,
            "rotations": self.rotations,
        }


@dataclass(frozen=True)
class PhysicalResourceEstimates:
    """Headline outputs: runtime (ns), rQOPS, and physical qubits."""

    runtime: float
    rqops: float
    physical_qubits: int

    def as_mapping(self) -> dict:
        return {
            "runtime": self.runtime,
            "rqops": self.rqops,
            "physicalQubits": self.physical_qubits,
        }


@dataclass(frozen=True)
class ResourceEstimatesBreakdown:
    logical_qubits_post_layout: int
    algorithmic_depth: int
    num_t_states: int
    num_t_factory_copies: int
    algorithmic_physical_qubits: int
    t_factory_physical_qubits: int
    required_logical_error_rate: float
    required_t_state_error: Optional[float]
    slowdown_applied: float

    def as_mapping(self) -> dict:
        return {
            "logicalQubitsPostLayout": self.logical_qubits_post_layout,
            "algorithmicDepth": self.algorithmic_depth,
            "numTStates": self.num_t_states,
            "numTFactoryCopies": self.num_t_factory_copies,
            "algorithmicPhysicalQubits": self.algorithmic_physical_qubits,
            "tFactoryPhysicalQubits": self.t_factory_physical_qubits,
            "requiredLogicalErrorRate": self.required_logical_error_rate,
            "requiredTStateError": self.required_t_state_error,
            "slowdownApplied": self.slowdown_applied,
        }


@dataclass(frozen=True)
class EstimateReport:
    """Full estimation result.

    Invariants: ``physicalQubits`` is the sum of the algorithmic and
    factory qubits, ``rqops`` equals logical qubits times logical clock
    speed, and ``runtime`` equals depth times cycle time times the
    applied slowdown; all three hold as exact float identities.
    """

    physical_resource_estimates: PhysicalResourceEstimates
    resource_estimates_breakdown: ResourceEstimatesBreakdown
    logical_qubit_parameters: LogicalQubitProfile
    t_factory_parameters: TFactoryPlan
    pre_layout_logical_resources: Optional[LogicalCounts]
    assumed_error_budget: BudgetPartition
    physical_qubit_parameters: PhysicalQubitParams
    assumptions: tuple[str, ...]

    def as_mapping(self) -> dict:
        # group order is part of the schema; serialization must be stable
        return {
            "physicalResourceEstimates": self.physical_resource_estimates.as_mapping(),
            "resourceEstimatesBreakdown": self.resource_estimates_breakdown.as_mapping(),
            "logicalQubitParameters": self.logical_qubit_parameters.as_mapping(),
            "tFactoryParameters": self.t_factory_parameters.as_mapping(),
            "preLayoutLogicalResources": (
                None
                if self.pre_layout_logical_resources is None
                else self.pre_layout_logical_resources.as_mapping()
            ),
            "assumedErrorBudget": self.assumed_error_budget.as_mapping(),
            "physicalQubitParameters": self.physical_qubit_parameters.as_mapping(),
            "assumptions": list(self.assumptions),
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        """Serialize deterministically: same report, same bytes."""
        return json.dumps(self.as_mapping(), indent=indent)
