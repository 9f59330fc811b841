"""
Trade-offs and sweeps
=====================

Slowing the program down lets fewer T factory copies keep up, trading
runtime for physical qubits.  The frontier call runs a slowdown grid and
Pareto-prunes the points; sweeps re-run a job while one numeric field
varies.
"""

from ftqc_estimator import LogicalCounts, frontier, get_scheme, load_profile

profile = load_profile("qubit_gate_ns_e4")
counts = LogicalCounts(num_qubits=100, t_count=5_000_000, measurement_count=1000)

result = frontier(
    counts,
    slowdown_grid=[1.0, 1.5, 2.0, 3.0, 4.0, 8.0],
    qubit_params=profile.qubit_params,
    qec_scheme=get_scheme(profile.default_scheme_name),
    error_budget=1e-3,
)

print("slowdown   physical qubits   runtime (s)   factory copies")
for point in result.points:
    copies = point.report.resource_estimates_breakdown.num_t_factory_copies
    print(
        f"{point.slowdown:8.1f}   {point.physical_qubits:15,}   "
        f"{point.runtime * 1e-9:11.3f}   {copies:14d}"
    )

# every surviving point improves on qubits as runtime grows; dominated
# grid points were pruned
qubits = [p.physical_qubits for p in result.points]
assert qubits == sorted(qubits, reverse=True)

# the budget sweep behind distance-vs-size plots is one CLI call:
#   ftqc-estimator sweep --job job.json --param errorBudget.total \
#       --values 1e-2,1e-4,1e-6 --out sweep.csv
