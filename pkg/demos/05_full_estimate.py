"""
End-to-end estimation
=====================

From logical counts to a full machine: budget partitioning, rotation
synthesis, layout, code distance, T factories, and the headline numbers
(physical qubits, runtime, rQOPS).
"""

from ftqc_estimator import LogicalCounts, estimate, get_scheme, load_profile

profile = load_profile("qubit_maj_ns_e4")

# a T- and rotation-heavy workload on 500 algorithmic qubits
counts = LogicalCounts(
    num_qubits=500,
    t_count=2_000_000,
    rotation_count=50_000,
    rotation_depth=12_000,
    ccz_count=800_000,
    measurement_count=100_000,
)

report = estimate(
    counts,
    qubit_params=profile.qubit_params,
    qec_scheme=get_scheme(profile.default_scheme_name),
    error_budget=1e-4,
)

phys = report.physical_resource_estimates
breakdown = report.resource_estimates_breakdown
qubit = report.logical_qubit_parameters

print("physical qubits:", f"{phys.physical_qubits:,}")
print("  algorithmic:  ", f"{breakdown.algorithmic_physical_qubits:,}")
print("  T factories:  ", f"{breakdown.t_factory_physical_qubits:,}")
print("runtime:", f"{phys.runtime * 1e-9:.2f} s")
print("rQOPS:", f"{phys.rqops:.3e}")
print()
print("logical qubits after layout:", breakdown.logical_qubits_post_layout)
print("algorithmic depth (cycles):", f"{breakdown.algorithmic_depth:,}")
print("T states consumed:", f"{breakdown.num_t_states:,}")
print("code distance:", qubit.code_distance)
print("T factory copies:", breakdown.num_t_factory_copies)

# the same figures, machine-readable; identical inputs always produce
# byte-identical documents
document = report.to_json()
print("\nreport bytes:", len(document))
