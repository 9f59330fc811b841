"""
Code distance selection
=======================

The logical error rate per cycle follows the crossing model
a * (p / p_threshold) ^ ((d + 1) / 2).  Given an error budget, the engine
picks the smallest odd distance whose rate meets the per-qubit-per-cycle
target and derives the logical qubit's physical cost from the scheme
formulas.
"""

from ftqc_estimator import (
    FLOQUET_CODE,
    SURFACE_CODE,
    compute_code_distance,
    load_profile,
    logical_qubit_profile,
    required_logical_error_rate,
)

maj = load_profile("qubit_maj_ns_e4").qubit_params

# tighter targets need larger distances
for target in (1e-6, 1e-9, 1e-12, 1e-15):
    d = compute_code_distance(FLOQUET_CODE, 1e-4, target)
    profile = logical_qubit_profile(FLOQUET_CODE, maj, d)
    print(
        f"target {target:8.0e}  ->  distance {d:2d}, "
        f"{profile.physical_qubits_per_logical_qubit:5d} physical qubits/logical, "
        f"cycle {profile.logical_cycle_time:7.0f} ns, "
        f"clock {profile.logical_clock_speed:10.0f} Hz"
    )

# a 2048-bit multiplication working set: 20597 logical qubits for about
# 5.4 million cycles within a 1e-4/3 logical budget share
target = required_logical_error_rate(1e-4 / 3, 20597, 5_440_000)
print("\nworkload target per qubit-cycle:", f"{target:.3e}")
print("selected distance:", compute_code_distance(FLOQUET_CODE, 1e-4, target))

# the gate-based surface code trades different constants
gate = load_profile("qubit_gate_ns_e4").qubit_params
d = compute_code_distance(SURFACE_CODE, 1e-4, target)
profile = logical_qubit_profile(SURFACE_CODE, gate, d)
print(
    f"surface code: distance {d}, {profile.physical_qubits_per_logical_qubit} "
    f"physical qubits/logical, cycle {profile.logical_cycle_time:.0f} ns"
)
