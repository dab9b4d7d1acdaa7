"""Closed-form steady state of the coupled model.

At a fixed point the memory settles to ``H* = (alpha T* + beta S*) / (1 - gamma)``,
so the equilibrium satisfies::

    T* = A W T* + (I - A) T1 + B S*
    S* = mu + (alpha T* + beta S*) / (1 - gamma)

Writing ``X = (I - AW)^-1 (I - A) T1``, ``Y = (I - AW)^-1 B``,
``u = 1 - beta / (1 - gamma)`` and ``v = alpha / (1 - gamma)`` gives::

    S* = (u I - v Y)^-1 (mu + v X)
    T* = X + Y S*
"""

import warnings
from dataclasses import dataclass

import numpy as np

from . import _tolerances as tol
from .exceptions import DegenerateDenominator, IllConditionedWarning, SingularMatrix, SingularSystem
from .linalg import invert
from .model import InitialConditions, SystemState


@dataclass(frozen=True, eq=False)
class EquilibriumSolution:
    T_star: np.ndarray
    S_star: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    u: float
    v: float
    cond_IAW: float
    cond_uv: float
    valid: bool
    fixed_point_residual: float = float("nan")

    def H_star(self, params):
        return self.S_star - params.mu_vector(len(self.S_star))

    def as_state(self, params, t=0):
        return SystemState(t, self.T_star.copy(), self.S_star.copy(), self.H_star(params))


def _coefficients(params):
    if not 0.0 < params.gamma < 1.0:
        raise ValueError(f"gamma must lie in (0,1), got {params.gamma}")
    decay = 1.0 - params.gamma
    return 1.0 - params.beta / decay, params.alpha / decay


def solve(params, net, T1):
    """Equilibrium ``(T*, S*)`` with its intermediates and conditioning.

    Raises :class:`SingularSystem` naming the inverse that failed. ``valid``
    is set only if both condition estimates stay below ``1e10`` and the
    fixed-point residual is below ``1e-9``.
    """
    n = net.n
    T1 = np.asarray(T1, dtype=float)
    u, v = _coefficients(params)
    mu = params.mu_vector(n)
    eye = np.eye(n)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        try:
            inv_IAW, cond_IAW = invert(eye - net.AW)
        except SingularMatrix as exc:
            raise SingularSystem("I - AW") from exc
        X = inv_IAW @ ((1.0 - net.a) * T1)
        Y = inv_IAW * net.b[None, :]
        try:
            inv_uv, cond_uv = invert(u * eye - v * Y)
        except SingularMatrix as exc:
            raise SingularSystem("uI - vY") from exc

    S_star = inv_uv @ (mu + v * X)
    T_star = X + Y @ S_star
    sol = EquilibriumSolution(T_star, S_star, X, Y, u, v, cond_IAW, cond_uv, False)
    res = residual(sol, params, net, InitialConditions(T1))
    valid = bool(cond_IAW < tol.VALID_COND and cond_uv < tol.VALID_COND and res < tol.VALID_RESIDUAL)
    return EquilibriumSolution(T_star, S_star, X, Y, u, v, cond_IAW, cond_uv, valid, res)


def solve_scalar(a, w, b, T1, params):
    """Single-agent equilibrium ``(t*, s*)`` from the scalar formulas."""
    u, v = _coefficients(params)
    mu = float(np.asarray(params.mu).reshape(-1)[0])
    denom = 1.0 - a * w
    if abs(denom) < tol.DEGENERATE_DENOM:
        raise DegenerateDenominator(f"1 - a*w = {denom!r}")
    x = (1.0 - a) * T1 / denom
    y = b / denom
    uv = u - v * y
    if abs(uv) < tol.DEGENERATE_DENOM:
        raise DegenerateDenominator(f"u - v*y = {uv!r}")
    s_star = (mu + v * x) / uv
    return x + y * s_star, s_star


def residual(sol, params, net, init):
    """Max-norm violation of the two equilibrium equations."""
    n = net.n
    T, S = sol.T_star, sol.S_star
    trust_gap = T - (net.AW @ T + (1.0 - net.a) * init.T1 + net.b * S)
    event_gap = S - (params.mu_vector(n) + (params.alpha * T + params.beta * S) / (1.0 - params.gamma))
    return float(max(np.max(np.abs(trust_gap)), np.max(np.abs(event_gap))))
