"""
Search dynamics: success-probability trajectories, peaks, and the closed-form
complete-graph predictions for the absorbing walk and the one-query walk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qwequiv.arcspace import ArcBasis, build_basis, marked_probability, uniform_state
from qwequiv.equivalence import ComparisonReport
from qwequiv.graph import Graph, GraphError, MarkedSet
from qwequiv.operators import WalkOperator, compose, szegedy_query, szegedy_reflection

__all__ = [
    "Trajectory",
    "Peak",
    "evolve",
    "find_peak",
    "predicted_peak",
    "default_horizon",
    "negligible_evolution_check",
    "NEGLIGIBLE_EVOLUTION_BOUND",
    "PREDICTED_KINDS",
]

PREDICTED_KINDS = ("szegedy_Wprime", "szegedy_Wq2")

# 2x the largest deviation observed on complete N=64, k=1, 100 steps (0.496021...)
NEGLIGIBLE_EVOLUTION_BOUND = 0.9920

PEAK_TIE_TOL = 1e-9


@dataclass
class Trajectory:
    """``probs[t]`` is the success probability after ``t`` applications."""

    probs: np.ndarray
    convention: str = "tail"
    walk: str = ""
    marked: MarkedSet = field(default_factory=MarkedSet)

    @property
    def steps(self) -> int:
        return len(self.probs) - 1

    def to_csv(self) -> str:
        rows = ["step,prob"]
        rows += [f"{t},{_fmt(p)}" for t, p in enumerate(self.probs)]
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class Peak:
    t_star: float
    p_star: float

    def record(self, walk: str, n: int, k: int) -> dict:
        t = int(self.t_star) if float(self.t_star).is_integer() else float(self.t_star)
        return {"walk": walk, "n": n, "k": k, "t_star": t, "p_star": float(self.p_star)}


def _fmt(p: float) -> str:
    return format(float(p), ".12g")


def evolve(
    op: WalkOperator,
    init: np.ndarray,
    steps: int,
    basis: ArcBasis,
    marked: MarkedSet,
    convention: str = "tail",
    walk: str = "",
) -> Trajectory:
    """Apply ``op`` repeatedly to ``init`` and record the marked probability at every step."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if len(init) != op.dimension:
        raise ValueError(f"dimension mismatch ({len(init)} vs {op.dimension})")
    # validates the convention and gives probs[0]
    probs = [marked_probability(init, basis, marked, convention)]
    m = marked.mask(basis.vertex_count)
    sel = {"tail": m[basis.tails], "head": m[basis.heads]}.get(convention)
    if sel is None:
        sel = m[basis.tails] | m[basis.heads]
    idx = np.flatnonzero(sel)
    v = np.array(init, dtype=float)
    for _ in range(steps):
        v = op.apply(v)
        a = v[idx]
        probs.append(float(np.dot(a, a)))
    return Trajectory(np.array(probs), convention=convention, walk=walk or op.label, marked=marked)


def find_peak(traj: Trajectory | np.ndarray) -> Peak:
    """
    Maximum over ``t >= 1`` and the earliest step within 1e-9 of it.

    A trajectory of length one (no steps) peaks at ``t = 0``.
    """
    probs = np.asarray(traj.probs if isinstance(traj, Trajectory) else traj, dtype=float)
    if probs.size == 0:
        raise ValueError("empty trajectory")
    if probs.size == 1:
        return Peak(0, float(probs[0]))
    tail = probs[1:]
    p = float(tail.max())
    t = int(np.flatnonzero(tail >= p - PEAK_TIE_TOL)[0]) + 1
    return Peak(t, p)


def predicted_peak(walk: str, n: int, k: int) -> Peak:
    """Closed-form complete-graph peak (``t_star`` unrounded)."""
    if walk not in PREDICTED_KINDS:
        raise ValueError(f"no closed-form peak for walk {walk!r}; expected one of {PREDICTED_KINDS}")
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if walk == "szegedy_Wprime":
        return Peak(math.pi / 4 * math.sqrt(n / (2 * k)), 0.5)
    return Peak(math.pi / 4 * math.sqrt(n / k), 1.0)


def default_horizon(walk: str, n: int, k: int) -> int:
    """``ceil(2 t*)`` steps: one full rise and fall of the first peak."""
    return math.ceil(2 * predicted_peak(walk, n, k).t_star)


def negligible_evolution_check(
    g: Graph, marked: MarkedSet, steps: int, tol: float = NEGLIGIBLE_EVOLUTION_BOUND
) -> ComparisonReport:
    """
    Evolve ``Q1 R2 Q1 R1`` from the arc-uniform state and measure drift.

    Returns a ComparisonReport whose ``max_abs_diff`` is
    ``max_t ||state_t - state_0||_2``.
    """
    if not marked:
        raise GraphError("negligible-evolution check needs at least one marked vertex")
    basis = build_basis(g)
    q1 = szegedy_query(g, basis, marked, "X")
    op = compose([q1, szegedy_reflection(g, basis, "Y"), q1, szegedy_reflection(g, basis, "X")], "Q1 R2 Q1 R1")
    psi0 = uniform_state(basis)
    v = psi0
    worst = 0.0
    for _ in range(steps):
        v = op.apply(v)
        worst = max(worst, float(np.linalg.norm(v - psi0)))
    return ComparisonReport("Q1 R2 Q1 R1 psi_t", "psi_0", worst, tol, name="negligible evolution")
