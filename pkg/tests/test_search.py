import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qwequiv.arcspace import build_basis, marked_probability, uniform_state
from qwequiv.graph import GraphError, MarkedSet, generate
from qwequiv.operators import compose, szegedy_query, szegedy_reflection, walk_operator
from qwequiv.search import (
    NEGLIGIBLE_EVOLUTION_BOUND,
    Trajectory,
    default_horizon,
    evolve,
    find_peak,
    negligible_evolution_check,
    predicted_peak,
)


def _run(kind, fam, n, marked, steps, convention="tail"):
    g = generate(fam, n)
    b = build_basis(g)
    m = MarkedSet(marked)
    return evolve(walk_operator(kind, g, b, m), uniform_state(b), steps, b, m, convention)


class TestEvolve:
    def test_initial_entry(self, paw):
        b = build_basis(paw)
        m = MarkedSet([1])
        tr = evolve(walk_operator("coined_SCQ", paw, b, m), uniform_state(b), 5, b, m)
        assert len(tr.probs) == 6
        assert tr.probs[0] == marked_probability(uniform_state(b), b, m)

    def test_matches_marked_probability(self, paw):
        b = build_basis(paw)
        m = MarkedSet([2])
        op = walk_operator("szegedy_Wq1", paw, b, m)
        for conv in ("tail", "head", "either"):
            tr = evolve(op, uniform_state(b), 4, b, m, conv)
            v = uniform_state(b)
            for t in range(5):
                assert tr.probs[t] == pytest.approx(marked_probability(v, b, m, conv), abs=1e-15)
                v = op @ v

    def test_empty_marked_trajectory_is_zero(self, paw):
        b = build_basis(paw)
        tr = evolve(walk_operator("coined_U", paw, b), uniform_state(b), 10, b, MarkedSet())
        assert not tr.probs.any()

    def test_complete16_wq2(self):
        tr = _run("szegedy_Wq2", "complete", 16, [0], default_horizon("szegedy_Wq2", 16, 1))
        peak = find_peak(tr)
        assert peak.t_star == 3
        assert peak.p_star >= 0.9
        assert peak.p_star == pytest.approx(0.9556895, abs=1e-7)

    def test_csv(self):
        tr = Trajectory(np.array([0.25, 1 / 3]))
        assert tr.to_csv() == "step,prob\n0,0.25\n1,0.333333333333\n"

    def test_errors(self, paw):
        b = build_basis(paw)
        op = walk_operator("coined_U", paw, b)
        with pytest.raises(ValueError):
            evolve(op, uniform_state(b), -1, b, MarkedSet())
        with pytest.raises(ValueError):
            evolve(op, np.ones(3), 1, b, MarkedSet())

    @pytest.mark.parametrize("kind", ["szegedy_Wprime", "szegedy_Wq1", "coined_USKW", "coined_U2Q"])
    def test_probabilities_bounded(self, kind):
        tr = _run(kind, "petersen", None, [0, 5], 60)
        assert tr.probs.min() >= 0 and tr.probs.max() <= 1 + 1e-12


class TestDynamicConsistency:
    @pytest.mark.parametrize(
        "szegedy,coined", [("szegedy_Wprime", "coined_USKW"), ("szegedy_Wq1", "coined_SCQ"), ("szegedy_W", "coined_U")]
    )
    @pytest.mark.parametrize("fam,n,marked", [("complete", 8, [0, 3]), ("torus2d", 3, [4]), ("cycle", 7, [0, 2])])
    def test_step_t_equals_coined_step_2t(self, szegedy, coined, fam, n, marked):
        g = generate(fam, n)
        b = build_basis(g)
        m = MarkedSet(marked)
        w = walk_operator(szegedy, g, b, m)
        u = walk_operator(coined, g, b, m)
        steps = 30
        tw = evolve(w, uniform_state(b), steps, b, m)
        tu = evolve(u, uniform_state(b), 2 * steps, b, m)
        np.testing.assert_allclose(tw.probs, tu.probs[::2], atol=1e-10)
        x, y = uniform_state(b), uniform_state(b)
        for _ in range(steps):
            x, y = w @ x, u @ (u @ y)
            assert np.linalg.norm(x - y) < 1e-10


class TestPeaks:
    def test_simple(self):
        p = find_peak(np.array([0.1, 0.5, 0.3]))
        assert (p.t_star, p.p_star) == (1, 0.5)

    def test_first_attainment(self):
        p = find_peak([0.1, 0.5, 0.5])
        assert (p.t_star, p.p_star) == (1, 0.5)

    def test_ignores_step_zero(self):
        assert find_peak([0.9, 0.2, 0.3]).t_star == 2

    @given(st.lists(st.floats(0, 1), min_size=2, max_size=30), st.lists(st.floats(0, 1), max_size=10))
    def test_append_below_max_invariant(self, probs, extra):
        p = find_peak(probs)
        tail = [min(x, p.p_star) for x in extra]
        q = find_peak(probs + tail)
        assert q.t_star == p.t_star and q.p_star == p.p_star

    def test_predicted(self):
        wp = predicted_peak("szegedy_Wprime", 1024, 1)
        assert wp.t_star == pytest.approx(17.7715, abs=1e-4) and wp.p_star == 0.5
        wq = predicted_peak("szegedy_Wq2", 1024, 1)
        assert wq.t_star == pytest.approx(25.1327, abs=1e-4) and wq.p_star == 1.0
        assert predicted_peak("szegedy_Wq2", 2, 1).t_star == pytest.approx(1.1107, abs=1e-4)

    @given(st.integers(1, 10**6), st.data())
    def test_sqrt2_ratio(self, n, data):
        k = data.draw(st.integers(1, n))
        ratio = predicted_peak("szegedy_Wq2", n, k).t_star / predicted_peak("szegedy_Wprime", n, k).t_star
        assert ratio == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_predicted_errors(self):
        with pytest.raises(ValueError):
            predicted_peak("coined_U", 10, 1)
        with pytest.raises(ValueError):
            predicted_peak("szegedy_Wq2", 10, 11)

    def test_horizon(self):
        assert default_horizon("szegedy_Wq2", 1024, 1) == 51
        assert default_horizon("szegedy_Wprime", 1024, 1) == 36


class TestNegligibleEvolution:
    def test_complete64(self):
        rep = negligible_evolution_check(generate("complete", 64), MarkedSet([0]), 100)
        assert rep.passed
        assert rep.max_abs_diff == pytest.approx(NEGLIGIBLE_EVOLUTION_BOUND / 2, abs=1e-3)

    def test_zero_steps(self):
        assert negligible_evolution_check(generate("complete", 8), MarkedSet([0]), 0).max_abs_diff == 0

    def test_needs_marked(self):
        with pytest.raises(GraphError):
            negligible_evolution_check(generate("complete", 8), MarkedSet(), 10)

    def test_drift_shrinks_with_n(self):
        # deviation decays like 1/sqrt(N): no search amplification happens
        d = [negligible_evolution_check(generate("complete", n), MarkedSet([0]), 100).max_abs_diff
             for n in (64, 256)]
        assert d[1] / d[0] == pytest.approx(0.5, abs=0.05)

    def test_success_probability_stays_small(self):
        g = generate("complete", 256)
        b = build_basis(g)
        m = MarkedSet([0])
        q1 = szegedy_query(g, b, m, "X")
        op = compose([q1, szegedy_reflection(g, b, "Y"), q1, szegedy_reflection(g, b, "X")])
        tr = evolve(op, uniform_state(b), 100, b, m)
        assert tr.probs.max() < 0.05
