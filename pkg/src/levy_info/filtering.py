"""Optimal Bayesian filtering of the message from an observed path.

The posterior over message atoms after observing xi at time t reweights the
prior by exp(x xi - psi0(x) t); the exponent grows linearly in t, so all
weight arithmetic happens in log space with max-subtraction and a single
renormalization per update.  The restart property makes the sequential form
(reweight by increments) exactly consistent with the one-shot form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateWeights, IncompatibleSupport, InvalidParameter, NonFiniteValue
from .noise import NoiseModel, admissible_set, psi_unchecked
from .prior import Prior, check_compatibility

__all__ = [
    "Posterior",
    "posterior_update",
    "sequential_update",
    "conditional_cdf",
    "best_estimate",
    "gamma_linear_filter",
    "MessageEstimate",
    "estimate_message",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Posterior:
    """Posterior atom weights plus the observation (xi, t) that produced them.

    Atom positions coincide with the prior's (the update is absolutely
    continuous with respect to the prior); only the weights change.
    ``log_weights`` are the normalized log-probabilities and remain finite
    even when a dominated weight underflows to zero in ``weights``.
    """

    positions: np.ndarray
    weights: np.ndarray
    log_weights: np.ndarray
    xi: float
    t: float

    @property
    def atoms(self) -> list:
        return list(zip(self.positions.tolist(), self.weights.tolist()))

    @property
    def mean(self) -> float:
        return float(self.weights @ self.positions)

    @property
    def variance(self) -> float:
        mu = self.weights @ self.positions
        return float(self.weights @ (self.positions - mu) ** 2)

    def __len__(self) -> int:
        return self.positions.size


def _normalized(positions: np.ndarray, raw_log_weights: np.ndarray, xi: float, t: float) -> Posterior:
    top = raw_log_weights.max()
    if not np.isfinite(top):
        raise DegenerateWeights(
            "all posterior log-weights collapsed to -inf; the observation is "
            "numerically impossible under every prior atom"
        )
    shifted = np.exp(raw_log_weights - top)
    total = shifted.sum()
    weights = shifted / total
    log_weights = raw_log_weights - (top + math.log(total))
    return Posterior(_frozen(positions), _frozen(weights), _frozen(log_weights), float(xi), float(t))


def _check_observation(xi: float, t: float, t_name: str = "t") -> tuple:
    xi, t = float(xi), float(t)
    if not math.isfinite(xi):
        raise NonFiniteValue(f"observation xi must be finite, got {xi}")
    if not (math.isfinite(t) and t >= 0.0):
        raise InvalidParameter(f"{t_name} must be finite and >= 0, got {t}")
    return xi, t


def posterior_update(prior: Prior, model: NoiseModel, xi: float, t: float) -> Posterior:
    """Posterior over message atoms given the observation xi at time t.

    Weights w_i' are proportional to w_i exp(x_i xi - psi0(x_i) t), computed
    in log space with max-subtraction.  At t = 0 the posterior equals the
    prior exactly.

    Raises
    ------
    IncompatibleSupport
        If a prior atom is outside the admissible set.
    DegenerateWeights
        If every reweighted atom underflows to zero probability.
    """
    xi, t = _check_observation(xi, t)
    check_compatibility(prior, model)
    x = prior.positions
    if xi == 0.0 and t == 0.0:
        return Posterior(
            _frozen(x), _frozen(prior.weights), _frozen(np.log(prior.weights)), xi, t
        )
    with np.errstate(over="ignore"):  # +-inf log-weights flow to _normalized
        raw = np.log(prior.weights) + x * xi - psi_unchecked(model, x) * t
    return _normalized(x, raw, xi, t)


def sequential_update(posterior: Posterior, model: NoiseModel, dxi: float, dt: float) -> Posterior:
    """Restart the filter on a fresh increment: reweight by exp(x dxi - psi0(x) dt).

    Composing sequential updates over consecutive increments reproduces the
    one-shot :func:`posterior_update` at the summed observation.

    Raises
    ------
    IncompatibleSupport, DegenerateWeights
    """
    dxi, dt = _check_observation(dxi, dt, t_name="dt")
    if dxi == 0.0 and dt == 0.0:
        return posterior
    x = posterior.positions
    if not admissible_set(model).contains_array(x).all():
        raise IncompatibleSupport(
            f"posterior atoms are not admissible for {model!r}", atoms=tuple(x.tolist())
        )
    with np.errstate(over="ignore"):
        raw = posterior.log_weights + x * dxi - psi_unchecked(model, x) * dt
    return _normalized(x, raw, posterior.xi + dxi, posterior.t + dt)


def conditional_cdf(posterior: Posterior, y: float) -> float:
    """P(X <= y) under the posterior: the right-continuous step function."""
    idx = int(np.searchsorted(posterior.positions, float(y), side="right"))
    return float(posterior.weights[:idx].sum())


def best_estimate(posterior: Posterior, g) -> float:
    """Posterior expectation of g(X); with g = psi0' this is the filter value.

    Raises
    ------
    NonFiniteValue
        If g is non-finite at some atom.
    """
    x = posterior.positions
    vals = np.array([float(g(p)) for p in x.tolist()])
    if not np.isfinite(vals).all():
        bad = x[~np.isfinite(vals)]
        raise NonFiniteValue(f"g is not finite at atoms {bad.tolist()}")
    return float(posterior.weights @ vals)


def gamma_linear_filter(theta: float, r: float, m: float, xi: float, t: float) -> float:
    """Closed-form linear filter for gamma information.

    For a shifted-gamma message X = 1 - U with U ~ Gamma(r, rate theta) and
    Y = psi0'(X) = m/(1 - X), the optimal estimate of Y is
    (xi + theta)/(t + tau) with tau = (r - 1)/m.

    Raises
    ------
    InvalidParameter
        Unless r > 1, theta > 0, m > 0 and t >= 0.
    """
    theta, r, m = float(theta), float(r), float(m)
    if not (r > 1.0 and theta > 0.0 and m > 0.0):
        raise InvalidParameter(f"need r > 1, theta > 0, m > 0; got r={r}, theta={theta}, m={m}")
    xi, t = _check_observation(xi, t)
    return (xi + theta) / (t + (r - 1.0) / m)


@dataclass(frozen=True)
class MessageEstimate:
    """The diagnostic pair of message estimates at one observation.

    ``i0`` inverts the marginal rate xi/t through psi0'; when xi/t falls
    outside the attainable mean range it is clamped to the closure of the
    range and ``clamped`` is set (the inverse may then be infinite).
    ``posterior_mean`` is the Bayes estimate of X.
    """

    i0: float
    posterior_mean: float
    clamped: bool


def estimate_message(posterior: Posterior, model: NoiseModel, xi: float, t: float) -> MessageEstimate:
    """Point estimates of the message: inverse-rate I0(xi/t) and posterior mean.

    Raises
    ------
    InvalidParameter
        If t <= 0 (the rate xi/t is undefined).
    """
    from .noise import inverse_marginal_clamped

    xi = float(xi)
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise InvalidParameter(f"estimate_message needs t > 0, got {t}")
    i0, clamped = inverse_marginal_clamped(model, xi / t)
    return MessageEstimate(float(i0), posterior.mean, bool(clamped))
