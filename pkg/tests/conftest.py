import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from trustdyn import ModelParams, Network
from trustdyn.topology import Kind, RngStream, TopologySpec, generate_W, sample_A, sample_B

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def match_multisets(x, y):
    """Largest pairwise distance under the optimal one-to-one matching of ``x`` to ``y``."""
    x, y = np.asarray(x, dtype=complex), np.asarray(y, dtype=complex)
    assert x.shape == y.shape
    cost = np.abs(x[:, None] - y[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def random_network(seed, n, b_range=(-0.05, 0.05), kind=Kind.RANDOM, uniform_b=False):
    rng = RngStream(seed)
    W = generate_W(TopologySpec(kind, n, seed), rng)
    a = sample_A(n, (0.4, 0.9), rng)
    b = sample_B(n, b_range, rng)
    if uniform_b:
        b = np.full(n, b[0])
    return Network(W, a, b)


def random_params(seed, n=None):
    g = np.random.default_rng([seed, 99])
    mu = 0.1 if n is None else g.uniform(0.0, 0.2, n)
    return ModelParams(mu=mu, alpha=g.uniform(0.0, 0.5), beta=g.uniform(0.0, 0.6),
                       gamma=g.uniform(0.05, 0.95))


@pytest.fixture
def scalar_case():
    """The single-agent example used throughout: a=0.5, w=1, b=0.05."""
    net = Network(np.array([[1.0]]), [0.5], [0.05])
    params = ModelParams(mu=0.1, alpha=0.05, beta=0.3, gamma=0.5)
    return params, net
