"""Weighted-atom representation of the message law pi(dx).

A Prior is a finite list of atoms (x_i, w_i) with strictly positive weights
summing to one and strictly increasing positions.  Continuous message laws
are reduced to atoms once, by Gauss-Legendre quadrature, after which every
posterior update is exact on the atomic approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .errors import (
    EmptyPrior,
    IncompatibleSupport,
    InvalidParameter,
    NonFiniteValue,
    NonPositiveWeight,
    ZeroMass,
)
from .noise import Interval, NoiseModel, admissible_set

__all__ = [
    "Prior",
    "prior_from_atoms",
    "prior_from_density",
    "check_compatibility",
    "prior_expectation",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Prior:
    """Atoms of the message law: positions (increasing) and weights (sum 1)."""

    positions: np.ndarray
    weights: np.ndarray
    support_hull: Interval

    @property
    def atoms(self) -> list:
        """The atoms as a list of (position, weight) tuples."""
        return list(zip(self.positions.tolist(), self.weights.tolist()))

    def __len__(self) -> int:
        return self.positions.size


def _build_prior(positions: np.ndarray, weights: np.ndarray) -> Prior:
    hull = Interval(float(positions[0]), float(positions[-1]), lo_open=False, hi_open=False)
    return Prior(_frozen(positions), _frozen(weights), hull)


def prior_from_atoms(points) -> Prior:
    """Build a prior from (position, weight) pairs.

    Weights are normalized to sum 1; atoms are sorted by position and atoms
    at exactly equal positions are merged by adding their weights.

    Raises
    ------
    EmptyPrior
        If ``points`` is empty.
    NonPositiveWeight
        If any weight is <= 0.
    NonFiniteValue
        If any position or weight is not finite.
    """
    pts = list(points)
    if len(pts) == 0:
        raise EmptyPrior("a prior needs at least one atom")
    xs = np.array([float(x) for x, _ in pts])
    ws = np.array([float(w) for _, w in pts])
    if not (np.isfinite(xs).all() and np.isfinite(ws).all()):
        raise NonFiniteValue("prior atoms must have finite positions and weights")
    if np.any(ws <= 0.0):
        bad = xs[ws <= 0.0]
        raise NonPositiveWeight(f"atom weights must be > 0; offending positions: {bad.tolist()}")
    order = np.argsort(xs, kind="stable")
    xs, ws = xs[order], ws[order]
    # merge exactly-equal positions (no epsilon merging)
    uniq, inverse = np.unique(xs, return_inverse=True)
    merged = np.zeros_like(uniq)
    np.add.at(merged, inverse, ws)
    merged /= merged.sum()
    return _build_prior(uniq, merged)


def prior_from_density(f, interval: Interval, n: int) -> Prior:
    """Discretize a density on a bounded interval by Gauss-Legendre quadrature.

    Parameters
    ----------
    f : callable
        Nonnegative density (need not be normalized); called with an ndarray
        of nodes, falling back to pointwise evaluation.
    interval : Interval
        Bounded support interval.
    n : int
        Number of quadrature nodes (>= 2).

    Returns
    -------
    Prior
        Atoms at the mapped Legendre nodes with weights proportional to
        quadrature-weight * f(node); zero-weight nodes are dropped.

    Raises
    ------
    ZeroMass
        If the quadrature mass of ``f`` is zero.
    """
    if not (np.isfinite(interval.lo) and np.isfinite(interval.hi)):
        raise InvalidParameter("prior_from_density requires a bounded interval")
    n = int(n)
    if n < 2:
        raise InvalidParameter(f"need at least 2 quadrature nodes, got {n}")
    nodes, gl_weights = roots_legendre(n)
    half = 0.5 * (interval.hi - interval.lo)
    mid = 0.5 * (interval.hi + interval.lo)
    xs = mid + half * nodes
    try:
        fx = np.asarray(f(xs), dtype=float)
        if fx.shape != xs.shape:
            raise TypeError
    except Exception:
        fx = np.array([float(f(x)) for x in xs])
    if not np.isfinite(fx).all():
        raise NonFiniteValue("density returned non-finite values on quadrature nodes")
    if np.any(fx < 0.0):
        raise NonPositiveWeight("density must be nonnegative on the interval")
    ws = half * gl_weights * fx
    mass = ws.sum()
    if mass <= 0.0:
        raise ZeroMass("density integrates to zero over the interval")
    keep = ws > 0.0
    return _build_prior(xs[keep], ws[keep] / mass)


def check_compatibility(prior: Prior, model: NoiseModel, margin: float = 1e-9) -> None:
    """Verify that every prior atom is admissible for the model.

    An atom x passes when it lies in the admissible set A and, for each
    finite boundary c of A, keeps a relative distance
    ``|x - c| >= margin * max(1, |c|)``.  ``margin=0`` reduces to plain
    membership in A (respecting open/closed endpoints).

    Raises
    ------
    IncompatibleSupport
        Listing the offending atom positions.
    """
    margin = float(margin)
    if margin < 0.0:
        raise InvalidParameter(f"margin must be >= 0, got {margin}")
    interval = admissible_set(model)
    xs = prior.positions
    ok = interval.contains_array(xs)
    if np.isfinite(interval.lo):
        ok &= (xs - interval.lo) >= margin * max(1.0, abs(interval.lo))
    if np.isfinite(interval.hi):
        ok &= (interval.hi - xs) >= margin * max(1.0, abs(interval.hi))
    if not ok.all():
        bad = xs[~ok].tolist()
        raise IncompatibleSupport(
            f"prior atoms {bad} outside the admissible set of {model!r} "
            f"(margin {margin:g})",
            atoms=bad,
        )


def prior_expectation(prior: Prior, g) -> float:
    """The weighted sum ``sum_i w_i g(x_i)``.

    Raises
    ------
    NonFiniteValue
        If any ``g(x_i)`` is not finite.
    """
    vals = np.array([float(g(x)) for x in prior.positions])
    if not np.isfinite(vals).all():
        bad = prior.positions[~np.isfinite(vals)].tolist()
        raise NonFiniteValue(f"g is not finite on atoms {bad}")
    return float(np.dot(prior.weights, vals))
