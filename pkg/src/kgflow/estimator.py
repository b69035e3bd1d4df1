"""Estimator-style front door so the pipeline composes with sklearn tooling.

The expensive symbolic work (Lie series and series inversion) happens in
fit(); predict()/transform() evaluate the fitted conformal factor at
arbitrary (x, y, t) sample rows.  Hyperparameters live in __init__ so
get_params/set_params/clone behave as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .conformal import DEFAULT_EPS_BLOWUP, build_conformal_series
from .expressions import parse_hamiltonian
from .fields import eval_points
from .trigpoly import TrigPoly


def check_sample_points(X):
    """Validate an (n, 3) array of (x, y, t) rows."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != 3:
        raise ValueError(
            f"expected an (n, 3) array of (x, y, t) rows, got shape {X.shape}"
        )
    if not np.isfinite(X).all():
        raise ValueError("sample points must be finite")
    return X


class ConformalFactorModel(TransformerMixin, BaseEstimator):
    """Conformal factor of the truncated imaginary-time flow as a model.

    Parameters
    ----------
    hamiltonian : str or TrigPoly
        Expression text (see the expression grammar) or an already
        canonical TrigPoly; must be real and torus-periodic.
    order : int
        Truncation order of the Lie series.
    mode : "rational" | "polynomial"
        Whether evaluation inverts the denominator pointwise or sums the
        inverted polynomial coefficients.
    eps_blowup : float
        Denominator magnitude below which a point counts as a blow-up.
    """

    def __init__(self, hamiltonian=None, order=12, mode="rational",
                 eps_blowup=DEFAULT_EPS_BLOWUP):
        self.hamiltonian = hamiltonian
        self.order = order
        self.mode = mode
        self.eps_blowup = eps_blowup

    def fit(self, X=None, y=None):
        """Build the exact series; X and y are ignored (kept for API)."""
        if self.hamiltonian is None:
            raise ValueError("hamiltonian must be set before fit")
        if self.mode not in ("rational", "polynomial"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if isinstance(self.hamiltonian, TrigPoly):
            poly = self.hamiltonian
            digest = None
        else:
            poly = parse_hamiltonian(self.hamiltonian)
            digest = self.hamiltonian
        self.hamiltonian_poly_ = poly
        self.series_ = build_conformal_series(poly, self.order, digest=digest)
        return self

    def _fitted_series(self):
        if not hasattr(self, "series_"):
            raise NotFittedError("call fit() before evaluating")
        return self.series_

    def _evaluate(self, X):
        cs = self._fitted_series()
        X = check_sample_points(X)
        xs, ys, ts = X[:, 0], X[:, 1], X[:, 2]
        polys = cs.denominator.coeffs if self.mode == "rational" else cs.a
        acc = np.zeros(len(X), dtype=complex)
        tk = np.ones(len(X))
        for poly in polys:
            acc += eval_points(poly, xs, ys) * tk
            tk = tk * ts
        if self.mode == "rational":
            denom_abs = np.abs(acc)
            with np.errstate(divide="ignore", invalid="ignore"):
                val = np.where(acc == 0, np.inf, 1.0 / acc)
            return val, denom_abs
        return acc, np.ones(len(X))

    def predict(self, X):
        """Conformal factor h at each (x, y, t) row."""
        val, _ = self._evaluate(X)
        return val.real

    def transform(self, X):
        """Columns (h, im_residual, denom_abs) for each sample row."""
        val, denom_abs = self._evaluate(X)
        return np.column_stack([val.real, np.abs(val.imag), denom_abs])

    def blowup_mask(self, X):
        """True where the denominator magnitude falls below eps_blowup."""
        _, denom_abs = self._evaluate(X)
        return denom_abs < self.eps_blowup
