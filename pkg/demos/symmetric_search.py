"""
When one query per step is enough
=================================

On graphs where every neighbour of the marked vertex looks the same, the
walk SCQ (query, coin, shift) produces exactly the trajectory of the absorbing
walk U_SKW. Remove the symmetry and the two drift apart.
"""

from qwequiv import generate, symmetric_search_check
from qwequiv.graph import MarkedSet, from_edge_list

for family, n in (("complete", 16), ("hypercube", 4), ("petersen", None), ("paley", 13)):
    g = generate(family, n)
    print(f"{family:10s}", symmetric_search_check(g, MarkedSet({0}), steps=100).line())

# the triangle-with-a-tail graph has no such symmetry around vertex 1
g = from_edge_list("0 1\n1 2\n1 3\n2 3\n")
print(f"{'paw':10s}", symmetric_search_check(g, MarkedSet({1}), steps=20).line())
