"""
Search on the complete graph
============================

Follow the success probability of the absorbing walk W' and the one-query walk
Wq2 on K_N and compare the first peaks with the closed-form values.
"""

import numpy as np

from qwequiv import build_basis, default_horizon, evolve, find_peak, generate, predicted_peak, uniform_state, walk_operator
from qwequiv.graph import marked_prefix

N = 256
g = generate("complete", N)
basis = build_basis(g)
psi0 = uniform_state(basis)

for k in (1, 4):
    marked = marked_prefix(N, k)
    for kind in ("szegedy_Wprime", "szegedy_Wq2"):
        op = walk_operator(kind, g, basis, marked)
        # about two rise times: long runs revisit near-perfect revivals
        traj = evolve(op, psi0, default_horizon(kind, N, k), basis, marked)
        sim, pred = find_peak(traj), predicted_peak(kind, N, k)
        print(f"k={k} {kind:15s} simulated t={sim.t_star:3d} p={sim.p_star:.4f}"
              f"   predicted t={pred.t_star:6.2f} p={pred.p_star:.2f}")

# the one-query walk needs about sqrt(2) times more steps but reaches p ~ 1
marked = marked_prefix(N, 1)
wq2 = evolve(walk_operator("szegedy_Wq2", g, basis, marked), psi0, 14, basis, marked)
print("Wq2, k=1:", np.round(wq2.probs, 3))
