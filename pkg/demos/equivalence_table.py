"""
Szegedy and coined walks side by side
=====================================

Build both families of operators on a few small graphs and confirm that each
Szegedy operator equals its coined counterpart entry by entry.
"""

from qwequiv import generate, run_equivalence_suite
from qwequiv.graph import from_edge_list, marked_prefix

# the four-vertex "triangle with a tail" graph
g = from_edge_list("0 1\n1 2\n1 3\n2 3\n")
print(run_equivalence_suite(g, marked_prefix(4, 1)).to_text())

# a vertex-transitive example with two marked vertices
g = generate("petersen")
report = run_equivalence_suite(g, marked_prefix(10, 2))
for check in report.checks:
    print(check.line())
