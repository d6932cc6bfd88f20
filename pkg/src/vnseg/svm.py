"""L2-regularized linear SVM trained by dual coordinate descent.

Solves::

    min_w  0.5 * ||w||^2 + C * sum_i loss(y_i * w.x_i)

with ``loss`` either the hinge ``max(0, 1 - m)`` or the squared hinge, by
coordinate descent on the dual with random permutation each epoch and
shrinking (Hsieh et al., 2008; the LIBLINEAR ``-s 3`` / ``-s 1`` solvers).
There is no separate intercept: callers add a constant feature instead.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.sparse as sp
from numba import njit
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import ConvergenceWarning
from sklearn.utils.validation import check_is_fitted

from .exceptions import BadInput, DegenerateLabels

LOSSES = ("hinge", "squared_hinge")


@njit(cache=True)
def _dcd_epoch(indptr, indices, data, y, alpha, w, qd, index, active_size,
               upper, diag, pg_max_old, pg_min_old):
    pg_max_new = -np.inf
    pg_min_new = np.inf
    s = 0
    while s < active_size:
        i = index[s]
        yi = y[i]
        start, end = indptr[i], indptr[i + 1]
        g = 0.0
        for p in range(start, end):
            g += w[indices[p]] * data[p]
        g = g * yi - 1.0 + alpha[i] * diag
        pg = 0.0
        if alpha[i] == 0.0:
            if g > pg_max_old:
                active_size -= 1
                index[s], index[active_size] = index[active_size], index[s]
                continue
            elif g < 0.0:
                pg = g
        elif alpha[i] == upper:
            if g < pg_min_old:
                active_size -= 1
                index[s], index[active_size] = index[active_size], index[s]
                continue
            elif g > 0.0:
                pg = g
        else:
            pg = g
        if pg > pg_max_new:
            pg_max_new = pg
        if pg < pg_min_new:
            pg_min_new = pg
        if abs(pg) > 1.0e-12:
            old = alpha[i]
            new = old - g / qd[i]
            if new < 0.0:
                new = 0.0
            elif new > upper:
                new = upper
            alpha[i] = new
            d = (new - old) * yi
            for p in range(start, end):
                w[indices[p]] += d * data[p]
        s += 1
    return active_size, pg_max_new, pg_min_new


def primal_objective(w, X, y, C, loss="hinge"):
    margins = np.maximum(0.0, 1.0 - y * (X @ w))
    if loss == "squared_hinge":
        margins = margins ** 2
    return 0.5 * float(w @ w) + C * float(margins.sum())


def dual_objective(alpha, w, C, loss="hinge"):
    """Dual objective in minimization form (lower is better)."""
    diag = 0.5 / C if loss == "squared_hinge" else 0.0
    return 0.5 * float(w @ w) + 0.5 * diag * float(alpha @ alpha) - float(alpha.sum())


def dual_coordinate_descent(X, y, C=1.0, loss="hinge", tol=1e-3, max_iter=1000,
                            seed=0, shrinking=True, history=None):
    """Run the solver; return ``(w, alpha, n_iter, converged)``.

    ``X`` is a CSR matrix, ``y`` holds +1/-1. When ``history`` is a list the
    primal and dual objectives are appended after every epoch.
    """
    if loss not in LOSSES:
        raise ValueError(f"loss must be one of {LOSSES}")
    X = sp.csr_matrix(X, dtype=np.float64)
    X.sort_indices()
    y = np.asarray(y, dtype=np.float64)
    n, dim = X.shape
    if loss == "hinge":
        upper, diag = float(C), 0.0
    else:
        upper, diag = np.inf, 0.5 / C
    qd = np.asarray(X.multiply(X).sum(axis=1)).ravel() + diag
    alpha = np.zeros(n)
    w = np.zeros(dim)
    index = np.arange(n, dtype=np.int64)
    active = n
    pg_max_old, pg_min_old = np.inf, -np.inf
    rng = np.random.default_rng(seed)
    indptr = X.indptr.astype(np.int64)
    indices = X.indices.astype(np.int64)
    converged = False
    it = 0
    while it < max_iter:
        rng.shuffle(index[:active])
        active, pg_max_new, pg_min_new = _dcd_epoch(
            indptr, indices, X.data, y, alpha, w, qd, index, active,
            upper, diag, pg_max_old, pg_min_old)
        it += 1
        if history is not None:
            history.append((primal_objective(w, X, y, C, loss),
                            dual_objective(alpha, w, C, loss)))
        if pg_max_new - pg_min_new <= tol:
            if active == n:
                converged = True
                break
            # re-check the full set before stopping
            active = n
            pg_max_old, pg_min_old = np.inf, -np.inf
            continue
        if shrinking:
            pg_max_old = pg_max_new if pg_max_new > 0 else np.inf
            pg_min_old = pg_min_new if pg_min_new < 0 else -np.inf
    return w, alpha, it, converged


class LinearSVM(ClassifierMixin, BaseEstimator):
    """Binary linear SVM on labels {-1, +1}.

    Attributes after ``fit``: ``coef_`` (weights), ``alpha_`` (dual
    variables), ``n_iter_``.
    """

    def __init__(self, C=1.0, loss="hinge", tol=1e-3, max_iter=1000,
                 random_state=0, shrinking=True):
        self.C = C
        self.loss = loss
        self.tol = tol
        self.max_iter = max_iter
        self.random_state = random_state
        self.shrinking = shrinking

    def fit(self, X, y):
        if not self.C > 0:
            raise ValueError("C must be positive")
        if X.shape[0] == 0:
            raise BadInput("empty training set")
        X = sp.csr_matrix(X, dtype=np.float64)
        if not np.all(np.isfinite(X.data)):
            raise BadInput("non-finite feature value")
        y = np.asarray(y)
        if y.shape[0] != X.shape[0]:
            raise BadInput("X and y differ in length")
        if set(np.unique(y).tolist()) - {-1, 1}:
            raise BadInput("labels must be -1 or +1")
        if len(np.unique(y)) < 2:
            raise DegenerateLabels("training labels contain a single class")
        w, alpha, n_iter, converged = dual_coordinate_descent(
            X, y, self.C, self.loss, self.tol, self.max_iter, self.random_state,
            self.shrinking)
        if not converged:
            warnings.warn(f"dual coordinate descent stopped after {n_iter} epochs "
                          "without reaching tol", ConvergenceWarning)
        self.coef_ = w
        self.alpha_ = alpha
        self.n_iter_ = n_iter
        self.classes_ = np.array([-1, 1])
        return self

    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        return X @ self.coef_

    def predict(self, X):
        # ties go to -1
        return np.where(self.decision_function(X) > 0, 1, -1)


def decision(weights, x) -> float:
    """Score of one sparse vector given as ``(index, count)`` pairs."""
    return float(sum(weights[j] * v for j, v in x))
