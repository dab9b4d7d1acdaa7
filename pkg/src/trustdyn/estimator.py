"""scikit-learn compatible wrapper around the model.

``fit`` takes a network and anchor trust, solves the equilibrium and the
spectrum; ``predict`` simulates from initial trust values and returns the
final trust vector. Hyperparameters are the couplings, so ``clone`` and
``set_params`` drive parameter sweeps the usual way::

    model = TrustEventModel(beta=0.3).fit(net, T1)
    model.set_params(beta=0.6).fit(net, T1).stable_
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from . import _tolerances as tol
from .equilibrium import solve
from .model import InitialConditions, ModelParams, Network
from .simulate import run
from .stability import spectrum


class TrustEventModel(BaseEstimator):
    def __init__(self, mu=0.1, alpha=0.005, beta=0.4, gamma=0.5,
                 max_steps=tol.MAX_STEPS, conv_tol=tol.CONV_TOL,
                 div_threshold=tol.DIV_THRESHOLD):
        self.mu = mu
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.max_steps = max_steps
        self.conv_tol = conv_tol
        self.div_threshold = div_threshold

    def _params(self):
        return ModelParams(self.mu, self.alpha, self.beta, self.gamma)

    def fit(self, network, T1):
        """Solve the equilibrium and spectrum for ``network`` anchored at ``T1``.

        ``network`` may be a :class:`Network` or a ``(W, a, b)`` tuple.
        """
        if not isinstance(network, Network):
            W, a, b = network
            network = Network(check_array(W), a, b)
        T1 = check_array(np.asarray(T1, dtype=float).reshape(1, -1)).ravel()
        params = self._params()
        self.network_ = network
        self.T1_ = T1
        self.n_features_in_ = network.n
        self.spectrum_ = spectrum(params, network)
        self.rho_ = self.spectrum_.rho
        self.stable_ = self.spectrum_.stable
        self.equilibrium_ = solve(params, network, T1)
        self.T_star_ = self.equilibrium_.T_star
        self.S_star_ = self.equilibrium_.S_star
        return self

    def simulate(self, T0=None, S0=None):
        check_is_fitted(self, "spectrum_")
        init = InitialConditions(self.T1_, T0, S0)
        return run(init, self._params(), self.network_, self.max_steps,
                   self.conv_tol, self.div_threshold)

    def predict(self, T0):
        """Final trust after simulating from each row of ``T0`` (shape ``(k, n)``)."""
        check_is_fitted(self, "spectrum_")
        T0 = check_array(T0, ensure_2d=False)
        single = T0.ndim == 1
        rows = np.atleast_2d(T0)
        if rows.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} agents, got {rows.shape[1]}")
        out = np.array([self.simulate(row).final.T for row in rows])
        return out[0] if single else out
