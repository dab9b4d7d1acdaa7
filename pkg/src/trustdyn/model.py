"""Coupled trust / event model: domain types and the one-step update.

Trust follows a Friedkin-Johnsen update driven by perceived event intensity;
event intensity is a discrete-time self-exciting process whose memory ``H``
is carried as part of the state so the update is Markovian::

    T' = A W T + (I - A) T1 + B S
    H' = gamma H + alpha T + beta S
    S' = mu + H'
"""

from dataclasses import dataclass, field

import numpy as np

from . import _tolerances as tol
from .exceptions import DimensionMismatch, EmptyHistory
from .linalg import as_matrix


def _vector(x, name, n=None):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1:
        raise DimensionMismatch(f"{name} must be a vector, got shape {x.shape}")
    if n is not None and x.shape[0] != n:
        raise DimensionMismatch(f"{name} has length {x.shape[0]}, expected {n}")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{name} contains non-finite entries")
    return x


@dataclass(frozen=True)
class ModelParams:
    """Scalar couplings plus the baseline event rate.

    ``mu`` may be a scalar, which is broadcast to every agent.
    """

    mu: object = 0.1
    alpha: float = 0.005
    beta: float = 0.4
    gamma: float = 0.5

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        if mu.ndim > 1 or not np.all(np.isfinite(mu)):
            raise ValueError("mu must be a finite scalar or vector")
        object.__setattr__(self, "mu", mu if mu.ndim else float(mu))
        for name in ("alpha", "beta", "gamma"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    def mu_vector(self, n):
        if np.ndim(self.mu) == 0:
            return np.full(n, self.mu)
        return _vector(self.mu, "mu", n)

    def replace(self, **changes):
        values = dict(mu=self.mu, alpha=self.alpha, beta=self.beta, gamma=self.gamma)
        values.update(changes)
        return ModelParams(**values)


@dataclass(frozen=True, eq=False)
class Network:
    """Influence matrix ``W`` with diagonal susceptibility ``a`` and reactivity ``b``.

    Construction only checks shapes and finiteness; use :func:`validate` for
    the semantic invariants (row sums, ranges).
    """

    W: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        W = as_matrix(self.W, square=True, name="W")
        n = W.shape[0]
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "a", _diagonal(self.a, "A", n))
        object.__setattr__(self, "b", _diagonal(self.b, "B", n))

    @property
    def n(self):
        return self.W.shape[0]

    @property
    def A(self):
        return np.diag(self.a)

    @property
    def B(self):
        return np.diag(self.b)

    @property
    def AW(self):
        return self.a[:, None] * self.W


def _diagonal(x, name, n):
    x = np.asarray(x, dtype=float)
    if x.ndim == 2:
        if x.shape != (n, n):
            raise DimensionMismatch(f"{name} has shape {x.shape}, expected ({n}, {n})")
        if np.any(x != np.diag(np.diag(x))):
            raise ValueError(f"{name} must be diagonal")
        x = np.diag(x)
    elif x.ndim == 0:
        x = np.full(n, float(x))
    return _vector(x, name, n)


@dataclass(frozen=True, eq=False)
class SystemState:
    t: int
    T: np.ndarray
    S: np.ndarray
    H: np.ndarray

    def __post_init__(self):
        n = np.shape(self.T)[0] if np.ndim(self.T) else None
        for name in ("T", "S", "H"):
            object.__setattr__(self, name, _vector(getattr(self, name), name, n))

    @property
    def n(self):
        return self.T.shape[0]

    def as_vector(self):
        """Stack ``(T, S, H)`` into one array of length ``3n``."""
        return np.concatenate([self.T, self.S, self.H])


@dataclass(frozen=True, eq=False)
class InitialConditions:
    """Starting point of a run.

    ``T0`` defaults to the anchor ``T1``, ``H0`` to zero and ``S0`` to
    ``mu + H0`` (resolved by :meth:`initial_state`).
    """

    T1: np.ndarray
    T0: np.ndarray = None
    S0: np.ndarray = None
    H0: np.ndarray = None

    def __post_init__(self):
        T1 = _vector(self.T1, "T1")
        n = T1.shape[0]
        object.__setattr__(self, "T1", T1)
        object.__setattr__(self, "T0", T1.copy() if self.T0 is None else _vector(self.T0, "T0", n))
        object.__setattr__(self, "H0", np.zeros(n) if self.H0 is None else _vector(self.H0, "H0", n))
        if self.S0 is not None:
            S0 = np.asarray(self.S0, dtype=float)
            object.__setattr__(self, "S0", _vector(np.broadcast_to(S0, (n,)) if S0.ndim == 0 else S0, "S0", n))

    @property
    def n(self):
        return self.T1.shape[0]

    def initial_state(self, params):
        S0 = self.S0 if self.S0 is not None else params.mu_vector(self.n) + self.H0
        return SystemState(0, self.T0.copy(), S0.copy(), self.H0.copy())


def _check_dims(state, params, net, init):
    n = net.n
    if state.n != n or init.n != n:
        raise DimensionMismatch(f"state has {state.n} agents, init {init.n}, network {n}")
    return params.mu_vector(n)


def step(state, params, net, init):
    """Advance ``state`` by one step (all components updated simultaneously)."""
    mu = _check_dims(state, params, net, init)
    T, S, H = state.T, state.S, state.H
    T_next = net.a * (net.W @ T) + (1.0 - net.a) * init.T1 + net.b * S
    H_next = params.gamma * H + params.alpha * T + params.beta * S
    return SystemState(state.t + 1, T_next, mu + H_next, H_next)


def event_intensity_direct(T_history, S_history, params, t):
    """``S_{t+1}`` from the explicit decaying sum over ``T_0..T_t`` and ``S_0..S_t``.

    Independent of the memory recursion used by :func:`step`; the two agree
    whenever the run started from ``H_0 = 0``.
    """
    if len(T_history) == 0 or len(S_history) == 0:
        raise EmptyHistory("histories must contain at least one entry")
    if len(T_history) <= t or len(S_history) <= t:
        raise EmptyHistory(f"histories must cover indices 0..{t}")
    n = len(T_history[0])
    total = np.zeros(n)
    for i in range(t + 1):
        Ti = _vector(T_history[i], "T", n)
        Si = _vector(S_history[i], "S", n)
        total += params.gamma ** (t - i) * (params.alpha * Ti + params.beta * Si)
    return params.mu_vector(n) + total


@dataclass
class Diagnostics:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)


def validate(net, params, init=None):
    """Collect every violated invariant; an empty report means valid.

    Trust values outside ``(0, 2)`` are recorded as warnings only, since the
    linear dynamics are never clipped.
    """
    report = Diagnostics()
    bad = report.violations.append
    n = net.n

    if not 0.0 < params.gamma < 1.0:
        bad(f"gamma must lie in open interval (0,1), got {params.gamma}")
    for name in ("alpha", "beta"):
        value = getattr(params, name)
        if not 0.0 <= value <= 1.0:
            bad(f"{name} must lie in [0,1], got {value}")
    if np.ndim(params.mu) == 1 and np.shape(params.mu)[0] != n:
        bad(f"mu has length {np.shape(params.mu)[0]}, expected {n}")
    elif np.any(np.asarray(params.mu) < 0):
        for i in np.flatnonzero(np.atleast_1d(params.mu) < 0):
            bad(f"mu[{i}] must be >= 0")

    sums = net.W.sum(axis=1)
    for i in np.flatnonzero(np.abs(sums) <= tol.ZERO_ROW):
        bad(f"W row {i} is zero")
    for i in np.flatnonzero((np.abs(sums - 1.0) > tol.ROW_SUM_TOL) & (np.abs(sums) > tol.ZERO_ROW)):
        bad(f"W row {i} sums to {sums[i]!r}, not 1")
    for i, j in np.argwhere(net.W < 0):
        bad(f"W[{i},{j}] is negative")
    for i in np.flatnonzero((net.a < 0) | (net.a > 1)):
        bad(f"A[{i}] = {net.a[i]} outside [0,1]")

    if init is not None:
        if init.n != n:
            bad(f"initial conditions have {init.n} agents, network has {n}")
        else:
            for name in ("T0", "T1"):
                vec = getattr(init, name)
                for i in np.flatnonzero((vec <= 0) | (vec >= 2)):
                    report.warnings.append(f"{name}[{i}] = {vec[i]} outside (0,2)")
    return report
