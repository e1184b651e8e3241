"""
Numerical certification of the Szegedy/coined operator identities.

``operator_equal`` compares two materialized operators entrywise;
``trajectory_equal`` compares the states two operators produce from a common
initial state. ``run_equivalence_suite`` bundles the full table of identities
for one graph and marked set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from qwequiv.arcspace import ArcBasis, build_basis, uniform_state
from qwequiv.graph import Graph, MarkedSet
from qwequiv.operators import (
    WalkOperator,
    coin_grover,
    compose,
    oracle,
    shift_flipflop,
    szegedy_query,
    szegedy_reflection,
    walk_operator,
)

__all__ = [
    "ComparisonReport",
    "SuiteReport",
    "operator_equal",
    "trajectory_equal",
    "run_equivalence_suite",
    "symmetric_search_check",
    "DEFAULT_OPERATOR_TOL",
    "DEFAULT_TRAJECTORY_TOL",
]

DEFAULT_OPERATOR_TOL = 1e-12
DEFAULT_TRAJECTORY_TOL = 1e-10


@dataclass
class ComparisonReport:
    label_a: str
    label_b: str
    max_abs_diff: float
    tolerance: float
    name: str = ""
    location: tuple[int, int] | None = None
    detail: str = ""
    skipped: bool = False

    @property
    def passed(self) -> bool:
        return self.skipped or self.max_abs_diff < self.tolerance

    @property
    def status(self) -> str:
        if self.skipped:
            return "SKIP"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {
            "identity": self.name or f"{self.label_a} = {self.label_b}",
            "max_abs_diff": self.max_abs_diff,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "skipped": self.skipped,
            "location": list(self.location) if self.location is not None else None,
            "detail": self.detail,
        }

    def line(self) -> str:
        name = self.name or f"{self.label_a} = {self.label_b}"
        if self.skipped:
            return f"SKIP  {name}  ({self.detail or 'not applicable'})"
        s = f"{self.status}  {name}  max_abs_diff={self.max_abs_diff:.3e}  tol={self.tolerance:.1e}"
        if not self.passed and self.detail:
            s += f"  {self.detail}"
        return s


@dataclass
class SuiteReport:
    graph: str
    marked: list[int]
    checks: list[ComparisonReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        head = f"# graph: {self.graph}  marked: {','.join(map(str, self.marked)) or '-'}"
        lines = [head] + [c.line() for c in sorted(self.checks, key=lambda c: c.name)]
        lines.append(f"# overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "marked": self.marked,
            "passed": self.passed,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _describe_entry(basis: ArcBasis | None, i: int, j: int) -> str:
    if basis is None:
        return f"entry ({i}, {j})"
    return f"entry ({i}, {j}) = <{tuple(basis[i])}| . |{tuple(basis[j])}>"


def operator_equal(
    a: WalkOperator,
    b: WalkOperator,
    tol: float = DEFAULT_OPERATOR_TOL,
    name: str = "",
    basis: ArcBasis | None = None,
) -> ComparisonReport:
    """Largest entrywise difference of two operators, with its coordinates."""
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.label} is {a.dimension}, {b.label} is {b.dimension}")
    diff = (a.matrix - b.matrix).tocoo()
    if diff.nnz == 0:
        return ComparisonReport(a.label, b.label, 0.0, tol, name=name)
    k = int(np.argmax(np.abs(diff.data)))
    i, j = int(diff.row[k]), int(diff.col[k])
    worst = float(abs(diff.data[k]))
    return ComparisonReport(a.label, b.label, worst, tol, name=name, location=(i, j), detail=_describe_entry(basis, i, j))


def trajectory_equal(
    a: WalkOperator,
    b: WalkOperator,
    init: np.ndarray,
    steps: int,
    tol: float = DEFAULT_TRAJECTORY_TOL,
    name: str = "",
) -> ComparisonReport:
    """``max_{t <= steps} ||a^t init - b^t init||_2``, iterating both operators."""
    if a.dimension != b.dimension or len(init) != a.dimension:
        raise ValueError("dimension mismatch")
    u = np.array(init, dtype=float)
    v = u.copy()
    worst, at = 0.0, 0
    for t in range(1, steps + 1):
        u = a.apply(u)
        v = b.apply(v)
        d = float(np.linalg.norm(u - v))
        if d > worst:
            worst, at = d, t
    detail = f"largest gap at step {at}" if worst else ""
    return ComparisonReport(a.label, b.label, worst, tol, name=name, detail=detail)


def _square_minus_identity(op: WalkOperator) -> float:
    m = op.matrix
    d = (m @ m - sp.identity(op.dimension, format="csr")).tocsr()
    return float(abs(d).max()) if d.nnz else 0.0


def _structural_check(ops: dict[str, WalkOperator], involutions: list[str], tol: float) -> ComparisonReport:
    worst, label = 0.0, ""
    for key, op in ops.items():
        e = op.orthogonality_error()
        if e > worst:
            worst, label = e, f"orthogonality of {key}"
    for key in involutions:
        e = _square_minus_identity(ops[key])
        if e > worst:
            worst, label = e, f"{key}^2 = I"
    return ComparisonReport(
        "A^T A, A^2", "I", worst, tol, name="10 orthogonality and involutions", detail=label and f"worst: {label}"
    )


def run_equivalence_suite(g: Graph, marked: MarkedSet, tol: float = DEFAULT_OPERATOR_TOL) -> SuiteReport:
    """
    Check every walk identity on ``g`` with the given marked set.

    With no marked vertices the three search rows are reported as skipped.
    """
    basis = build_basis(g)
    marked = MarkedSet(marked, vertex_count=g.vertex_count)
    report = SuiteReport(repr(g), sorted(marked))

    def eq(name, a, b):
        report.checks.append(operator_equal(a, b, tol, name=name, basis=basis))

    s = shift_flipflop(basis)
    c = coin_grover(g, basis)
    q = oracle(basis, marked, "tail")
    r1 = szegedy_reflection(g, basis, "X")
    r2 = szegedy_reflection(g, basis, "Y")
    q1 = szegedy_query(g, basis, marked, "X")
    q2 = szegedy_query(g, basis, marked, "Y")
    u = walk_operator("coined_U", g, basis)

    eq("01 W = U^2", walk_operator("szegedy_W", g, basis), compose([u, u], "U^2"))
    if marked:
        uskw = walk_operator("coined_USKW", g, basis, marked)
        scq = walk_operator("coined_SCQ", g, basis, marked)
        eq("02 W' = U_SKW^2", walk_operator("szegedy_Wprime", g, basis, marked), compose([uskw, uskw], "U_SKW^2"))
        eq("03 Wq1 = (SCQ)^2", walk_operator("szegedy_Wq1", g, basis, marked), compose([scq, scq], "(SCQ)^2"))
        eq("04 Wq2 = U^2 Q", walk_operator("szegedy_Wq2", g, basis, marked), walk_operator("coined_U2Q", g, basis, marked))
    else:
        for name in ("02 W' = U_SKW^2", "03 Wq1 = (SCQ)^2", "04 Wq2 = U^2 Q"):
            report.checks.append(ComparisonReport("", "", 0.0, tol, name=name, skipped=True, detail="no marked vertices"))
    eq("05 R1 = C", r1, c)
    eq("06 R2 = SCS", r2, compose([s, c, s], "SCS"))
    eq("07 Q1 = Q", q1, q)
    eq("08 Q2 = SQS", q2, compose([s, q, s], "SQS"))
    eq("09 Q1 R1 Q1 = R1", compose([q1, r1, q1], "Q1 R1 Q1"), r1)

    ops: dict[str, WalkOperator] = {"S": s, "C": c, "Q": q, "Q_in": oracle(basis, marked, "head"),
                                    "R1": r1, "R2": r2, "Q1": q1, "Q2": q2}
    if marked:
        ops["C'"] = coin_grover(g, basis, marked, "negative_identity")
        ops["R1'"] = szegedy_reflection(g, basis, "X", absorbing=marked)
        ops["R2'"] = szegedy_reflection(g, basis, "Y", absorbing=marked)
    involutions = list(ops)
    ops["W"] = walk_operator("szegedy_W", g, basis)
    ops["U"] = u
    if marked:
        for kind in ("szegedy_Wprime", "szegedy_Wq1", "szegedy_Wq2", "coined_USKW", "coined_SCQ", "coined_U2Q"):
            ops[kind] = walk_operator(kind, g, basis, marked)
    report.checks.append(_structural_check(ops, involutions, tol))
    return report


def symmetric_search_check(
    g: Graph,
    marked: MarkedSet,
    steps: int,
    tol: float = DEFAULT_TRAJECTORY_TOL,
    szegedy: bool = False,
) -> ComparisonReport:
    """
    Trajectory form of the one-query / absorbing-coin agreement.

    Compares ``SCQ`` with ``U_SKW`` (or, with ``szegedy=True``, ``Wq1`` with
    ``W'``) from the arc-uniform state. Agreement is only expected when the
    graph symmetry makes all neighbors of the marked vertex evolve alike,
    such as a distance-transitive graph with one marked vertex.
    """
    basis = build_basis(g)
    if szegedy:
        a = walk_operator("szegedy_Wq1", g, basis, marked)
        b = walk_operator("szegedy_Wprime", g, basis, marked)
    else:
        a = walk_operator("coined_SCQ", g, basis, marked)
        b = walk_operator("coined_USKW", g, basis, marked)
    return trajectory_equal(a, b, uniform_state(basis), steps, tol, name=f"{a.label} ~ {b.label} trajectory")
