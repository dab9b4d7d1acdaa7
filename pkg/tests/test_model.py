import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_network, random_params
from trustdyn import (
    InitialConditions,
    ModelParams,
    Network,
    SystemState,
    event_intensity_direct,
    solve,
    step,
    validate,
)
from trustdyn.exceptions import DimensionMismatch, EmptyHistory
from trustdyn.experiments import preset


def _state(T, S, H, t=0):
    return SystemState(t, T, S, H)


class TestStep:
    def test_pure_degroot_when_coupling_off(self):
        net = random_network(0, 4)
        net = Network(net.W, np.ones(4), net.b)
        params = ModelParams(mu=0.0, alpha=0.0, beta=0.0, gamma=0.5)
        T = np.array([0.2, 1.0, 1.5, 0.7])
        init = InitialConditions(T1=np.ones(4))
        nxt = step(_state(T, np.zeros(4), np.zeros(4)), params, net, init)
        np.testing.assert_allclose(nxt.T, net.W @ T, rtol=0, atol=1e-15)
        np.testing.assert_array_equal(nxt.S, np.zeros(4))

    def test_full_stubbornness_ignores_W(self):
        base = random_network(1, 3)
        T1 = np.array([0.5, 1.0, 1.5])
        S = np.array([0.1, 0.2, 0.3])
        init = InitialConditions(T1=T1)
        params = ModelParams()
        for W in (base.W, np.eye(3), np.full((3, 3), 1 / 3)):
            net = Network(W, np.zeros(3), base.b)
            nxt = step(_state(np.array([2.0, 0.0, 1.0]), S, np.zeros(3)), params, net, init)
            np.testing.assert_allclose(nxt.T, T1 + base.b * S, rtol=0, atol=1e-15)

    def test_scalar_hand_evaluation(self, scalar_case):
        params, net = scalar_case
        state = _state([1.0], [0.1], [0.0])
        nxt = step(state, params, net, InitialConditions(T1=[1.0]))
        assert nxt.t == 1
        assert nxt.T[0] == pytest.approx(1.005, abs=1e-15)
        assert nxt.H[0] == pytest.approx(0.08, abs=1e-15)
        assert nxt.S[0] == pytest.approx(0.18, abs=1e-15)
        # input untouched
        assert state.T[0] == 1.0 and state.t == 0

    def test_s_equals_mu_plus_h_after_step(self):
        net = random_network(2, 5)
        params = random_params(2, 5)
        init = InitialConditions(T1=np.linspace(0.1, 1.9, 5), S0=0.7)
        state = init.initial_state(params)
        for _ in range(5):
            state = step(state, params, net, init)
            np.testing.assert_array_equal(state.S, params.mu_vector(5) + state.H)

    def test_dimension_mismatch(self, scalar_case):
        params, net = scalar_case
        with pytest.raises(DimensionMismatch):
            step(_state([1.0, 1.0], [0.1, 0.1], [0.0, 0.0]), params, net, InitialConditions(T1=[1.0]))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 8))
    def test_affine(self, seed, n):
        """step(x + d) - step(x) does not depend on x."""
        net = random_network(seed, n)
        params = random_params(seed, n)
        g = np.random.default_rng(seed)
        init = InitialConditions(T1=g.uniform(0, 2, n))
        d = g.normal(size=(3, n))
        deltas = []
        for _ in range(2):
            x = g.normal(size=(3, n))
            a = step(_state(*x), params, net, init).as_vector()
            b = step(_state(*(x + d)), params, net, init).as_vector()
            deltas.append(b - a)
        np.testing.assert_allclose(deltas[0], deltas[1], rtol=0, atol=1e-12)

    def test_equilibrium_is_fixed_point(self):
        cfg = preset("default")
        params, net, init, _ = cfg.build()
        sol = solve(params, net, init.T1)
        start = sol.as_state(params)
        nxt = step(start, params, net, init)
        np.testing.assert_allclose(nxt.as_vector(), start.as_vector(), rtol=0, atol=1e-10)


class TestEventIntensityDirect:
    def test_single_term(self, scalar_case):
        params, _ = scalar_case
        out = event_intensity_direct([[1.0]], [[0.1]], params, 0)
        assert out[0] == pytest.approx(0.18, abs=1e-15)

    def test_no_coupling_returns_mu(self):
        params = ModelParams(mu=[0.1, 0.3], alpha=0.0, beta=0.0, gamma=0.5)
        g = np.random.default_rng(0)
        out = event_intensity_direct(g.normal(size=(6, 2)), g.normal(size=(6, 2)), params, 5)
        np.testing.assert_array_equal(out, [0.1, 0.3])

    def test_matches_two_composed_steps(self, scalar_case):
        params, net = scalar_case
        init = InitialConditions(T1=[1.0], S0=[0.1])
        s0 = init.initial_state(params)
        s1 = step(s0, params, net, init)
        s2 = step(s1, params, net, init)
        direct = event_intensity_direct([s0.T, s1.T], [s0.S, s1.S], params, 1)
        np.testing.assert_allclose(direct, s2.S, rtol=0, atol=1e-15)

    def test_empty_history(self, scalar_case):
        params, _ = scalar_case
        with pytest.raises(EmptyHistory):
            event_intensity_direct([], [], params, 0)
        with pytest.raises(EmptyHistory):
            event_intensity_direct([[1.0]], [[0.1]], params, 3)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 6), st.integers(0, 20))
    def test_recursion_matches_sum(self, seed, n, horizon):
        net = random_network(seed, n)
        params = random_params(seed, n)
        g = np.random.default_rng(seed)
        init = InitialConditions(T1=g.uniform(0, 2, n), T0=g.uniform(0, 2, n), S0=g.uniform(0, 0.3, n))
        states = [init.initial_state(params)]
        for _ in range(horizon):
            states.append(step(states[-1], params, net, init))
        for t in range(horizon):
            direct = event_intensity_direct([s.T for s in states], [s.S for s in states], params, t)
            np.testing.assert_allclose(states[t + 1].S, direct, rtol=0, atol=1e-12)


class TestValidate:
    def test_paper_defaults_are_valid(self):
        params, net, init, _ = preset("default").build()
        assert len(validate(net, params, init)) == 0

    def test_gamma_boundary(self):
        params, net, init, _ = preset("default").build()
        report = validate(net, params.replace(gamma=1.0), init)
        assert any("gamma must lie in open interval (0,1)" in v for v in report)

    def test_zero_row_named(self):
        W = np.array([[0.5, 0.5, 0.0], [0.0, 0.0, 0.0], [0.2, 0.3, 0.5]])
        report = validate(Network(W, [0.5] * 3, [0.0] * 3), ModelParams())
        assert any("row 1" in v for v in report)

    def test_collects_every_violation(self):
        W = np.array([[0.7, 0.7], [1.2, -0.2]])
        params = ModelParams(mu=-0.1, alpha=1.5, beta=-0.2, gamma=0.0)
        report = validate(Network(W, [1.2, 0.5], [0, 0]), params, InitialConditions(T1=[1.0, 1.0]))
        text = " | ".join(report.violations)
        for needle in ("gamma", "alpha", "beta", "mu", "row 0", "W[1,1]", "A[0]"):
            assert needle in text

    def test_out_of_range_trust_is_only_a_warning(self):
        net = random_network(0, 2)
        report = validate(net, ModelParams(), InitialConditions(T1=[2.5, 1.0]))
        assert len(report) == 0
        assert report.warnings


def test_initial_conditions_defaults():
    params = ModelParams(mu=0.2)
    init = InitialConditions(T1=[1.0, 0.5])
    np.testing.assert_array_equal(init.T0, [1.0, 0.5])
    np.testing.assert_array_equal(init.H0, [0.0, 0.0])
    state = init.initial_state(params)
    np.testing.assert_array_equal(state.S, [0.2, 0.2])


def test_network_accepts_diagonal_matrices():
    net = Network(np.eye(2), np.diag([0.3, 0.4]), np.diag([0.01, -0.02]))
    np.testing.assert_array_equal(net.b, [0.01, -0.02])
    np.testing.assert_array_equal(net.B, np.diag([0.01, -0.02]))
    with pytest.raises(ValueError):
        Network(np.eye(2), [[0.3, 0.1], [0.0, 0.4]], [0, 0])
