"""Trajectory runner with convergence / divergence classification."""

import enum
from dataclasses import dataclass, field

import numpy as np

from . import _tolerances as tol
from .model import step


class Verdict(str, enum.Enum):
    CONVERGED = "Converged"
    OSCILLATING = "Oscillating"
    DIVERGED = "Diverged"
    MAX_STEPS = "MaxStepsReached"

    def __str__(self):
        return self.value


@dataclass
class Trajectory:
    states: list
    verdict: Verdict
    converged_at: int = None
    final_residual: float = float("nan")
    _stack: dict = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.states)

    @property
    def final(self):
        return self.states[-1]

    def _stacked(self, name):
        if self._stack is None or self._stack.get("_len") != len(self.states):
            self._stack = {"_len": len(self.states)}
        if name not in self._stack:
            self._stack[name] = np.array([getattr(s, name) for s in self.states])
        return self._stack[name]

    @property
    def T(self):
        """Trust history as a ``(len, n)`` array."""
        return self._stacked("T")

    @property
    def S(self):
        return self._stacked("S")

    @property
    def H(self):
        return self._stacked("H")

    @property
    def times(self):
        return np.array([s.t for s in self.states])


def run(init, params, net, max_steps=tol.MAX_STEPS, conv_tol=tol.CONV_TOL,
        div_threshold=tol.DIV_THRESHOLD):
    """Iterate the step map from ``init`` and classify the outcome.

    Stops at the first of:

    * ``Converged`` -- ``||x_{t+1} - x_t||_inf < conv_tol`` over the full
      ``(T, S, H)`` state; ``converged_at`` is that ``t``;
    * ``Diverged`` -- some entry of ``T`` or ``S`` exceeds ``div_threshold``
      in magnitude (or stops being finite);
    * ``Oscillating`` -- an exact period-2 cycle, ``x_{t+1} ~ x_{t-1}`` while
      ``x_{t+1} != x_t``;
    * ``MaxStepsReached`` otherwise.

    Every visited state is kept, so ``len(result) <= max_steps + 1``.
    """
    state = init.initial_state(params)
    states = [state]
    prev_vec = None
    vec = state.as_vector()
    residual = float("nan")
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_steps):
            nxt = step(state, params, net, init)
            states.append(nxt)
            nxt_vec = nxt.as_vector()
            residual = float(np.max(np.abs(nxt_vec - vec)))
            magnitude = max(np.max(np.abs(nxt.T)), np.max(np.abs(nxt.S)))
            if not np.isfinite(magnitude) or magnitude > div_threshold:
                return Trajectory(states, Verdict.DIVERGED, None, residual)
            if residual < conv_tol:
                return Trajectory(states, Verdict.CONVERGED, state.t, residual)
            if prev_vec is not None and np.max(np.abs(nxt_vec - prev_vec)) < conv_tol:
                return Trajectory(states, Verdict.OSCILLATING, None, residual)
            prev_vec, vec, state = vec, nxt_vec, nxt
    return Trajectory(states, Verdict.MAX_STEPS, None, residual)


def replay_check(traj, params, net, init, atol=tol.REPLAY_TOL):
    """Re-step every recorded state; return ``(ok, first_bad_index)``."""
    if traj.states and traj.states[0].t != 0:
        return False, 0
    for k in range(1, len(traj.states)):
        expected = step(traj.states[k - 1], params, net, init)
        got = traj.states[k]
        if got.t != k or not np.allclose(got.as_vector(), expected.as_vector(), rtol=0, atol=atol):
            return False, k
    return True, None
