"""Autoregressive forecaster: mean-centered OLS fit, AIC order selection,
recursive multi-step prediction.

A sampled sum of N sinusoids satisfies an exact linear recurrence of order
2N, so with the order grid reaching 128 the model can represent every
noise-free grid series exactly (N <= 20 needs order <= 40).  No
regularization is applied anywhere; the fit is plain least squares.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

DEFAULT_MAX_ORDER = 128

# Floor inside log() so an exactly-zero residual gives a large finite AIC
# decrease instead of -inf; ties still resolve toward the smaller order.
_RSS_FLOOR = 1e-300


@dataclass(frozen=True, eq=False)
class ArModel:
    """Fitted AR(p): x_t - mean = sum_k coefficients[k-1] (x_{t-k} - mean)."""

    order: int
    coefficients: np.ndarray
    mean: float
    residual_variance: float
    aic: float


def _lagged_design(x: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Design matrix and target for rows t = order .. T-1.

    Column k-1 holds lag k.  The design is a strided view; no copy.
    """
    window = np.lib.stride_tricks.sliding_window_view(x, order)[:-1]
    return window[:, ::-1], x[order:]


def _aic(rss: float, n_eff: int, order: int) -> float:
    return n_eff * np.log(max(rss / n_eff, _RSS_FLOOR)) + 2.0 * order


def fit_ar(context: np.ndarray, order: int) -> ArModel:
    """Least-squares AR fit of the mean-centered context at a fixed order.

    Solved with an SVD factorization, so a rank-deficient design (constant
    context, noise-free signal with order above twice the tone count) yields
    the minimum-norm coefficient vector instead of an error.
    """
    x = np.asarray(context, dtype=float)
    if x.ndim != 1:
        raise ValueError("context must be one-dimensional")
    t1 = len(x)
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if not t1 > 2 * order:
        raise ValueError(f"context length {t1} must exceed twice the order {order}")
    mean = float(x.mean())
    xc = x - mean
    design, target = _lagged_design(xc, order)
    coefficients, _, _, _ = np.linalg.lstsq(design, target, rcond=None)
    residuals = target - design @ coefficients
    rss = float(residuals @ residuals)
    n_eff = t1 - order
    return ArModel(
        order=order,
        coefficients=coefficients,
        mean=mean,
        residual_variance=rss / n_eff,
        aic=float(_aic(rss, n_eff, order)),
    )


@lru_cache(maxsize=8)
def _gather_indices(t1: int, max_order: int):
    """Flat indices into the prefix-product table for every Gram entry.

    For order p the normal equations use windowed lag products
    sum_{t=p..T-1} x_{t-i} x_{t-j}; with prefix sums P_d over x[m] x[m+d]
    each entry is one subtraction of two table reads.  The first-term index
    is independent of p, the second only shifts by p.
    """
    idx = np.arange(1, max_order + 1)
    high = np.maximum.outer(idx, idx)
    diff = np.abs(np.subtract.outer(idx, idx))
    gram_hi = diff * (t1 + 1) + (t1 - high)
    gram_lo = diff * (t1 + 1) - high
    rhs_hi = idx * (t1 + 1) + (t1 - idx)
    rhs_lo = idx * (t1 + 1) - idx
    return gram_hi, gram_lo, rhs_hi, rhs_lo


def _prefix_products(x: np.ndarray, max_order: int) -> np.ndarray:
    t1 = len(x)
    table = np.zeros((max_order + 1, t1 + 1))
    for d in range(max_order + 1):
        np.cumsum(x[: t1 - d] * x[d:], out=table[d, 1 : t1 - d + 1])
        table[d, t1 - d + 1 :] = table[d, t1 - d]
    return table


def aic_grid(context: np.ndarray, max_order: int = DEFAULT_MAX_ORDER) -> np.ndarray:
    """AIC(p) for p = 1 .. min(max_order, (T-1)//2) on the centered context.

    Each order solves the same least-squares problem as :func:`fit_ar`; the
    Gram matrices come from shared prefix-sum tables and are solved by
    Cholesky for speed.  Residuals are evaluated against the actual design
    (not the quadratic form), and any order whose Gram solve fails or whose
    residual collapses toward zero is redone through the SVD path, so the
    scan agrees with per-order fit_ar calls to rounding error.
    """
    x = np.asarray(context, dtype=float)
    if x.ndim != 1:
        raise ValueError("context must be one-dimensional")
    t1 = len(x)
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    p_max = min(max_order, (t1 - 1) // 2)
    if p_max < 1:
        raise ValueError(f"context length {t1} too short for any AR order")
    xc = x - x.mean()

    gram_hi, gram_lo, rhs_hi, rhs_lo = _gather_indices(t1, p_max)
    table = _prefix_products(xc, p_max)
    flat = table.ravel()
    sq = table[0]  # prefix sums of x^2

    aics = np.empty(p_max)
    for p in range(1, p_max + 1):
        gram = flat[gram_hi[:p, :p]] - flat[gram_lo[:p, :p] + p]
        rhs = flat[rhs_hi[:p]] - flat[rhs_lo[:p] + p]
        target_ss = sq[t1] - sq[p]
        n_eff = t1 - p
        try:
            factor = cho_factor(gram, lower=True, check_finite=False)
            coef = cho_solve(factor, rhs, check_finite=False)
            rss = target_ss - 2.0 * (coef @ rhs) + coef @ (gram @ coef)
            # A near-exact fit means the Gram system is near-singular and the
            # quadratic form above has cancelled; recompute honestly.
            if not np.isfinite(rss) or rss < 1e-9 * target_ss:
                raise LinAlgError
        except (LinAlgError, np.linalg.LinAlgError):
            design, target = _lagged_design(xc, p)
            coef, _, _, _ = np.linalg.lstsq(design, target, rcond=None)
            residuals = target - design @ coef
            rss = float(residuals @ residuals)
        aics[p - 1] = _aic(rss, n_eff, p)
    return aics


def select_order(context: np.ndarray, max_order: int = DEFAULT_MAX_ORDER) -> ArModel:
    """Fit at the AIC-minimizing order over the grid 1 .. max_order.

    The grid is clamped to (T-1)//2 so every candidate keeps more rows than
    parameters.  Exact AIC ties resolve toward the smaller order.  The
    returned model is refit through :func:`fit_ar` at the chosen order.
    """
    grid = aic_grid(context, max_order)
    order = int(np.argmin(grid)) + 1  # argmin takes the first = smallest p
    return fit_ar(context, order)


def forecast_ar(model: ArModel, context: np.ndarray, horizon: int) -> np.ndarray:
    """Recursive multi-step forecast; predictions are fed back as inputs."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    x = np.asarray(context, dtype=float)
    p = model.order
    if len(x) < p:
        raise ValueError(f"context length {len(x)} shorter than model order {p}")
    coef = model.coefficients
    buf = np.empty(p + horizon)
    buf[:p] = x[-p:] - model.mean
    for t in range(horizon):
        # buf slice reversed: lag 1 is the newest value.
        buf[p + t] = coef @ buf[t : p + t][::-1]
    return buf[p:] + model.mean
