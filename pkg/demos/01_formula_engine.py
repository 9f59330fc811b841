"""
Formula strings
===============

QEC schemes and distillation units are configured with small arithmetic
formulas.  This script parses a few, evaluates them against named
variables, and shows that serialization round-trips exactly.
"""

from ftqc_estimator import formulas

# the footprint of one surface-code logical qubit, as a formula string
footprint = formulas.parse_formula("2 * codeDistance ^ 2")
print("physical qubits at distance 11:", formulas.evaluate(footprint, {"codeDistance": 11}))

# a cycle-time formula mixes operation times with the code distance
cycle = formulas.parse_formula(
    "(4 * twoQubitGateTime + 2 * oneQubitMeasurementTime) * codeDistance"
)
env = {"twoQubitGateTime": 50.0, "oneQubitMeasurementTime": 100.0, "codeDistance": 11}
print("cycle time (ns):", formulas.evaluate(cycle, env))

# "^" binds tighter than "*", which binds tighter than "+"
print("2 + 3 * 4 ^ 2 =", formulas.evaluate(formulas.parse_formula("2 + 3 * 4 ^ 2"), {}))

# trees serialize back to text and reparse to the identical tree
text = formulas.to_source(cycle)
print("serialized:", text)
print("round-trip stable:", formulas.parse_formula(text) == cycle)

# parse errors carry the character position of the problem
try:
    formulas.parse_formula("2 ** codeDistance")
except formulas.FormulaSyntaxError as exc:
    print("rejected:", exc)
