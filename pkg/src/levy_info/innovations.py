"""Innovations decomposition xi_t = integral of Yhat du + M_t.

Yhat_t is the filtered estimate of psi0'(X); its left-endpoint Riemann sum
is subtracted from the path to leave the innovations martingale M.  The
left endpoint is not an arbitrary choice: using the filter value entering
each interval makes the discretized M an exact martingale with respect to
the grid filtration, so martingale tests check the construction rather than
a discretization bias.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWeights, InvalidParameter, OutOfDomain, TooFewSamples
from .noise import NoiseModel, admissible_set, dpsi_unchecked, psi_unchecked
from .prior import Prior, check_compatibility
from .simulate import InformationPath, TimeGrid, simulate_ensemble
from .stats import StudyReport, StudyRow, zscore

__all__ = [
    "InnovationsPath",
    "innovations_path",
    "innovations_ensemble",
    "compensated_path",
    "martingale_test",
]


@dataclass(frozen=True, eq=False)
class InnovationsPath:
    """The decomposition of one observed path on its grid.

    ``xi == integral + M`` holds pointwise exactly by construction and
    ``M[0] == 0``; ``yhat[j]`` is the filter value given observations up to
    and including grid time j.
    """

    grid: TimeGrid
    xi: np.ndarray
    yhat: np.ndarray
    integral: np.ndarray
    M: np.ndarray


def _decompose(model: NoiseModel, prior: Prior, grid: TimeGrid, xi: np.ndarray):
    """Filter a matrix of paths (rows) and return (yhat, integral, M)."""
    check_compatibility(prior, model)
    x = prior.positions
    psi = np.atleast_1d(psi_unchecked(model, x))
    dpsi = np.atleast_1d(dpsi_unchecked(model, x))
    times = grid.times
    dts = np.diff(times)
    log_w = np.tile(np.log(prior.weights), (xi.shape[0], 1))
    yhat = np.empty_like(xi)
    yhat[:, 0] = prior.weights @ dpsi
    for j in range(1, times.size):
        log_w += np.outer(xi[:, j] - xi[:, j - 1], x) - psi * dts[j - 1]
        top = log_w.max(axis=1, keepdims=True)
        if not np.isfinite(top).all():
            raise DegenerateWeights("posterior weights collapsed while filtering a path")
        log_w -= top
        w = np.exp(log_w)
        w /= w.sum(axis=1, keepdims=True)
        yhat[:, j] = w @ dpsi
    integral = np.zeros_like(xi)
    integral[:, 1:] = np.cumsum(yhat[:, :-1] * dts, axis=1)
    return yhat, integral, xi - integral


def innovations_path(path: InformationPath, prior: Prior) -> InnovationsPath:
    """Run the filter sequentially along one path and split off the martingale.

    Yhat is accumulated with the left-endpoint rule: the value entering each
    interval multiplies its length, matching the predictable integrand of
    the continuous-time identity.

    Raises
    ------
    InvalidParameter
        If the grid has fewer than two points.
    IncompatibleSupport, DegenerateWeights
        Propagated from the filter.
    """
    if len(path.grid) < 2:
        raise InvalidParameter("innovations need a grid with at least two points")
    yhat, integral, m = _decompose(path.model, prior, path.grid, path.values[None, :])
    return InnovationsPath(path.grid, path.values, yhat[0], integral[0], m[0])


def innovations_ensemble(model: NoiseModel, prior: Prior, grid: TimeGrid, n_paths: int, seed: int, tag: int = 0):
    """Simulate an ensemble and decompose every path.

    Returns ``(messages, xi, yhat, M)`` with one row per path; the filter
    update is vectorized across paths, so large martingale studies stay
    cheap.  Reproducibility follows :func:`simulate_ensemble`.
    """
    if len(grid) < 2:
        raise InvalidParameter("innovations need a grid with at least two points")
    messages, xi = simulate_ensemble(model, prior, grid, n_paths, seed, tag)
    yhat, _, m = _decompose(model, prior, grid, xi)
    return messages, xi, yhat, m


def compensated_path(path: InformationPath, model: NoiseModel) -> np.ndarray:
    """The conditional martingale m_t = xi_t - psi0'(x) t using the hidden draw.

    A verification aid: it reads the message stored on the path, which the
    filter itself never sees.

    Raises
    ------
    OutOfDomain
        If the stored message is not admissible for ``model``.
    """
    x = path.message
    if not admissible_set(model).contains(x):
        raise OutOfDomain(f"stored message x={x:g} is not admissible for {model!r}")
    return path.values - dpsi_unchecked(model, x) * path.grid.times


def martingale_test(samples, threshold: float = 3.5) -> StudyReport:
    """z-test that martingale increments have mean zero, per interval.

    ``samples`` is either a flat collection of increments over one interval
    or a sequence of such collections (one per interval).  Each interval
    needs at least 100 samples.

    Raises
    ------
    TooFewSamples
    """
    if isinstance(samples, np.ndarray) and samples.ndim == 2:
        groups = [np.ascontiguousarray(g, dtype=float) for g in samples]
    elif isinstance(samples, (list, tuple)) and len(samples) > 0 and np.ndim(samples[0]) > 0:
        groups = [np.ascontiguousarray(g, dtype=float).ravel() for g in samples]
    else:
        groups = [np.ascontiguousarray(samples, dtype=float).ravel()]
    rows = []
    for i, g in enumerate(groups):
        if g.size < 100:
            raise TooFewSamples(f"interval {i}: need at least 100 increments, got {g.size}")
        mean = float(g.mean())
        se = float(g.std(ddof=1) / math.sqrt(g.size))
        rows.append(StudyRow(f"increment[{i}]", mean, 0.0, se, zscore(mean, 0.0, se)))
    return StudyReport("martingale", tuple(rows), float(threshold))
