"""Local stability of the coupled model.

On the non-redundant state ``(T, H)`` the update is affine with the constant
Jacobian::

    J = [[A W,        B          ],
         [alpha I,    (gamma+beta) I]]

and the equilibrium is stable exactly when every eigenvalue of ``J`` lies
strictly inside the unit circle.
"""

import cmath
from dataclasses import dataclass

import numpy as np

from . import _tolerances as tol
from .exceptions import ExcludedPoint, NoBracket
from .linalg import det, eig_general

PARAMETERS = ("alpha", "beta", "gamma")


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    eigenvalues: np.ndarray
    rho: float
    stable: bool
    margin: float
    critical: bool = False
    decoupled_roots: list = None


@dataclass(frozen=True)
class BoundaryResult:
    parameter_name: str
    critical_value: float
    bracket: tuple
    rho_at_critical: float
    iterations: int


def _blocks(params, net):
    n = net.n
    eye = np.eye(n)
    return n, eye, net.AW, np.diag(net.b)


def jacobian(params, net):
    """The ``2n x 2n`` Jacobian on ``(T, H)``."""
    n, eye, AW, B = _blocks(params, net)
    return np.block([[AW, B], [params.alpha * eye, (params.gamma + params.beta) * eye]])


def jacobian_redundant(params, net):
    """The ``3n x 3n`` Jacobian on ``(T, S, H)``; its last two block rows coincide."""
    n, eye, AW, B = _blocks(params, net)
    zero = np.zeros((n, n))
    memory_row = [params.alpha * eye, params.beta * eye, params.gamma * eye]
    return np.block([[AW, B, zero], memory_row, memory_row])


def decoupled_roots(lambda_AW_k, b_k, params):
    """Both roots of ``(lambda_k - z)(gamma + beta - z) = alpha b_k``.

    ``lambda_AW_k`` may be complex; the square root is taken in the complex
    plane so a negative discriminant yields a conjugate pair.
    """
    c = params.gamma + params.beta
    centre = lambda_AW_k + c
    root = cmath.sqrt((lambda_AW_k - c) ** 2 + 4.0 * params.alpha * b_k)
    return complex((centre + root) / 2.0), complex((centre - root) / 2.0)


def spectrum(params, net):
    """Eigenvalues of :func:`jacobian`, spectral radius and verdict.

    ``decoupled_roots`` is filled (one pair per eigenvalue of ``AW``) only
    when ``B`` is a multiple of the identity.
    """
    eigenvalues = eig_general(jacobian(params, net))
    rho = float(np.max(np.abs(eigenvalues)))
    modes = None
    if np.ptp(net.b) <= tol.DECOUPLED_B_TOL:
        b = float(net.b[0])
        modes = [decoupled_roots(lam, b, params) for lam in eig_general(net.AW)]
    return SpectrumReport(
        eigenvalues=eigenvalues,
        rho=rho,
        stable=rho < 1.0,
        margin=1.0 - rho,
        critical=abs(rho - 1.0) < tol.BOUNDARY_RHO_TOL,
        decoupled_roots=modes,
    )


def scalar_roots(a, w, b, params):
    """Roots of ``(a w - z)(gamma + beta - z) = alpha b`` via the expanded quadratic."""
    c = params.gamma + params.beta
    s = a * w + c
    disc = s * s - 4.0 * (a * w * c - params.alpha * b)
    root = cmath.sqrt(disc)
    return complex((s + root) / 2.0), complex((s - root) / 2.0)


def schur_matrix(lam, params, net):
    """``AW - alpha / (gamma + beta - lam) B - lam I`` as a complex matrix."""
    gap = params.gamma + params.beta - lam
    if abs(gap) <= tol.EXCLUDED_POINT:
        raise ExcludedPoint(f"lambda = {lam} coincides with gamma + beta")
    n = net.n
    return net.AW.astype(complex) - (params.alpha / gap) * np.diag(net.b) - lam * np.eye(n)


def nonlinear_residual(lam, params, net, normalized=False):
    """``|det(AW - alpha/(gamma+beta-lam) B - lam I)|`` by complex LU.

    With ``normalized=True`` the determinant is divided by the Hadamard
    bound (product of row 2-norms), giving a scale-free value in ``[0, 1]``.
    """
    M = schur_matrix(complex(lam), params, net)
    value = abs(det(M))
    if normalized:
        bound = float(np.prod(np.linalg.norm(M, axis=1)))
        return value / bound if bound > 0 else 0.0
    return value


def _with(params, name, value):
    if name not in PARAMETERS:
        raise ValueError(f"unknown parameter {name!r}; expected one of {PARAMETERS}")
    return params.replace(**{name: value})


def rho_at(params, net, name, value):
    return float(np.max(np.abs(eig_general(jacobian(_with(params, name, value), net)))))


def find_boundary(parameter_name, params, net, search_range=(0.0, 1.0),
                  grid=tol.BOUNDARY_GRID, rho_tol=tol.BOUNDARY_RHO_TOL,
                  max_iter=tol.BOUNDARY_MAX_ITER):
    """Locate where the spectral radius crosses one as ``parameter_name`` varies.

    A uniform grid over ``search_range`` finds the first cell where
    ``rho - 1`` changes sign; bisection then refines inside that cell until
    ``|rho - 1| <= rho_tol`` or ``max_iter`` halvings.
    """
    lo, hi = map(float, search_range)
    if not lo < hi:
        raise ValueError(f"empty search range {search_range}")
    values = np.linspace(lo, hi, grid)
    excess = np.array([rho_at(params, net, parameter_name, x) - 1.0 for x in values])

    for k, e in enumerate(excess):
        if abs(e) <= rho_tol:
            x = float(values[k])
            left = float(values[max(k - 1, 0)])
            right = float(values[min(k + 1, grid - 1)])
            return BoundaryResult(parameter_name, x, (left, right), 1.0 + float(e), 0)
        if k + 1 < grid and np.sign(e) != np.sign(excess[k + 1]):
            break
    else:
        raise NoBracket(f"rho - 1 has no sign change for {parameter_name} in [{lo}, {hi}]")

    a, b = float(values[k]), float(values[k + 1])
    ea = excess[k]
    mid, em, it = a, ea, 0
    while it < max_iter:
        it += 1
        mid = 0.5 * (a + b)
        em = rho_at(params, net, parameter_name, mid) - 1.0
        if abs(em) <= rho_tol:
            break
        if np.sign(em) == np.sign(ea):
            a, ea = mid, em
        else:
            b = mid
    return BoundaryResult(parameter_name, mid, (a, b), 1.0 + em, it)

