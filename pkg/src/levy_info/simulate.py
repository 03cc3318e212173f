"""Exact-in-distribution simulation of information processes.

Every sampler here draws increments from the exact conditional law of the
process given its message; there is no Euler discretization error anywhere.
Conditioning on X = x turns each family into a tilted copy of itself, so a
single per-family increment sampler covers both fiducial and conditional
draws:

    Brownian     normal increments (drift x)
    Poisson      Poisson counts with rate m e^x
    Gamma        gamma increments with scale kappa/(1 - kappa x)
    VG           gaussian on a gamma subordinator (canonical construction)
    NB           Poisson mixed over a scaled gamma increment
    IG           Michael-Schucany-Haas transform-with-selection
    NIG          gaussian with drift on an IG subordinator

Alternative constructions of the VG and NB processes (scaled subordinator,
gamma difference, compound Poisson with logarithmic jumps) are provided for
cross-validation, along with the finite-horizon time-changed bridge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    GridExceedsHorizon,
    InvalidParameter,
    OutOfDomain,
    UnsupportedRepresentation,
)
from .noise import (
    BROWNIAN,
    GAMMA,
    IG,
    NB,
    NIG,
    POISSON,
    VG,
    NoiseModel,
    admissible_set,
    esscher_transform,
)
from .prior import Prior, check_compatibility
from .rng import CHUNK, map_ordered, stream

__all__ = [
    "TimeGrid",
    "InformationPath",
    "sample_message",
    "simulate_information_path",
    "sample_ig_increment",
    "sample_logarithmic",
    "simulate_alternative_representation",
    "simulate_bridge_path",
    "REPRESENTATIONS",
    "increment_draws",
    "simulate_ensemble",
    "representation_draws",
]

REPRESENTATIONS = (
    "VG_subordinated",
    "VG_scaled_subordinator",
    "VG_gamma_difference",
    "NB_subordinated",
    "NB_compound",
)


@dataclass(frozen=True, eq=False)
class TimeGrid:
    """Strictly increasing, finite observation times starting at 0."""

    times: np.ndarray

    def __post_init__(self):
        times = np.ascontiguousarray(self.times, dtype=float)
        if times.ndim != 1 or times.size < 1:
            raise InvalidParameter("a time grid needs at least the point t=0")
        if times[0] != 0.0:
            raise InvalidParameter(f"time grids start at 0, got t0={times[0]}")
        if not np.isfinite(times).all():
            raise InvalidParameter("time grid contains non-finite times")
        if times.size > 1 and not np.all(np.diff(times) > 0.0):
            raise InvalidParameter("time grid must be strictly increasing")
        times.setflags(write=False)
        object.__setattr__(self, "times", times)

    @classmethod
    def regular(cls, t_max: float, steps: int) -> "TimeGrid":
        """An equally spaced grid of ``steps`` intervals on [0, t_max]."""
        steps = int(steps)
        if steps < 1 or not (np.isfinite(t_max) and t_max > 0):
            raise InvalidParameter(f"need t_max > 0 and steps >= 1, got {t_max}, {steps}")
        return cls(np.linspace(0.0, float(t_max), steps + 1))

    def __len__(self):
        return self.times.size


@dataclass(frozen=True, eq=False)
class InformationPath:
    """A sampled trajectory (t_i, xi_i) plus the hidden message draw.

    The message is retained for verification only; filtering never reads it.
    Plain information paths of the monotone families (Poisson, Gamma, NB, IG)
    are nondecreasing; bridge paths, being rescaled, are not.
    """

    grid: TimeGrid
    values: np.ndarray
    message: float
    model: NoiseModel


def _path(grid: TimeGrid, values: np.ndarray, message: float, model: NoiseModel) -> InformationPath:
    values = np.ascontiguousarray(values, dtype=float)
    values.setflags(write=False)
    return InformationPath(grid, values, float(message), model)


# ---------------------------------------------------------------------------
# elementary samplers
# ---------------------------------------------------------------------------


def _ig_draws(mean, shape_, rng: np.random.Generator, size):
    """Inverse Gaussian draws, IG(mean mu, shape lam), vectorized.

    Michael-Schucany-Haas: from the chi-square variate w = mu * N^2 form the
    smaller root x of the defining quadratic (written in a cancellation-free
    form), then select between x and mu^2/x with probability mu/(mu + x).
    """
    mu = np.asarray(mean, dtype=float)
    lam = np.asarray(shape_, dtype=float)
    nu = rng.standard_normal(size)
    w = mu * nu * nu
    t = w + np.sqrt(w * (4.0 * lam + w))
    with np.errstate(invalid="ignore", divide="ignore"):
        x = np.where(t > 0.0, 4.0 * lam * mu * w / np.where(t > 0.0, t, 1.0) / t, mu)
        u = rng.random(size)
        out = np.where(u <= mu / (mu + x), x, mu * mu / x)
    return out


def sample_ig_increment(a: float, b: float, dt: float, rng: np.random.Generator) -> float:
    """One draw of the increment of an IG(a, b) process over ``dt``.

    The increment has mean a dt / b and variance a dt / b^3.
    """
    a, b, dt = float(a), float(b), float(dt)
    if not (a > 0 and b > 0 and dt > 0):
        raise InvalidParameter(f"sample_ig_increment needs a, b, dt > 0, got {a}, {b}, {dt}")
    adt = a * dt
    return float(_ig_draws(adt / b, adt * adt, rng, None))


def sample_logarithmic(q: float, rng: np.random.Generator) -> int:
    """One draw from the logarithmic law P(J=n) = -q^n / (n ln(1-q)), n >= 1.

    Sequential chop-down inversion on the cumulative sum.
    """
    q = float(q)
    if not 0.0 < q < 1.0:
        raise InvalidParameter(f"logarithmic parameter q must lie in (0, 1), got {q}")
    u = rng.random()
    k = 1
    pmf = -q / math.log1p(-q)
    cum = pmf
    while u >= cum:
        k += 1
        pmf *= q * (k - 1) / k
        cum += pmf
    return k


def _logarithmic_draws(q: float, rng: np.random.Generator, size: int) -> np.ndarray:
    """Vectorized logarithmic sampling by inversion on the shared cumsum."""
    if size == 0:
        return np.zeros(0, dtype=np.int64)
    u = rng.random(size)
    ln1mq = math.log1p(-q)
    cums = []
    pmf = -q / ln1mq
    cum = pmf
    u_max = u.max()
    k = 1
    while cum <= u_max:
        cums.append(cum)
        k += 1
        pmf *= q * (k - 1) / k
        cum += pmf
    cums.append(cum)
    return np.searchsorted(np.asarray(cums), u, side="right") + 1


def increment_draws(model: NoiseModel, x, dt, rng: np.random.Generator, size=None):
    """Exact draws of xi(t+dt) - xi(t) given X = x; vectorized over x and dt.

    ``x`` and ``dt`` broadcast against each other (and against ``size`` when
    given).  No domain validation is performed here; callers check the
    message values once up front.
    """
    x = np.asarray(x, dtype=float)
    dt = np.asarray(dt, dtype=float)
    if size is None:
        size = np.broadcast(x, dt).shape or None
    fam, p = model.family, model.params
    delta = model.drift
    if fam == BROWNIAN:
        out = (delta + x) * dt + np.sqrt(dt) * rng.standard_normal(size)
    elif fam == POISSON:
        out = np.asarray(rng.poisson(p[0] * np.exp(x) * dt, size), dtype=float)
    elif fam == GAMMA:
        m, kappa = p
        out = rng.gamma(m * dt, kappa / (1.0 - kappa * x), size)
    elif fam == VG:
        m, mu, sigma = p
        d = 1.0 - (mu * x + 0.5 * sigma * sigma * x * x) / m
        mu_x = (mu + sigma * sigma * x) / d
        sigma_x = sigma / np.sqrt(d)
        g = rng.gamma(m * dt, 1.0 / m, size)
        out = mu_x * g + sigma_x * np.sqrt(g) * rng.standard_normal(size)
    elif fam == NB:
        m, q = p
        qx = q * np.exp(x)
        lam = rng.gamma(m * dt, 1.0, size) * (qx / (1.0 - qx))
        out = np.asarray(rng.poisson(lam), dtype=float)
    elif fam == IG:
        a, b = p
        bx = np.sqrt(b * b - 2.0 * x)
        adt = a * dt
        out = _ig_draws(adt / bx, adt * adt, rng, size)
    elif fam == NIG:
        a, b, m = p
        bx = b + x
        cx = np.sqrt(a * a - bx * bx)
        mdt = m * dt
        f = _ig_draws(mdt / cx, mdt * mdt, rng, size)
        out = bx * f + np.sqrt(f) * rng.standard_normal(size)
    else:  # pragma: no cover
        raise InvalidParameter(f"unhandled family {fam}")
    if fam != BROWNIAN and delta != 0.0:
        out = out + delta * dt
    return out


# ---------------------------------------------------------------------------
# message and path sampling
# ---------------------------------------------------------------------------


def sample_message(prior: Prior, rng: np.random.Generator) -> float:
    """Draw one atom position with its prior probability (inverse CDF)."""
    return float(sample_messages(prior, None, rng))


def sample_messages(prior: Prior, size, rng: np.random.Generator):
    """Vectorized message draws (``size=None`` for a scalar)."""
    cum = np.cumsum(prior.weights)
    u = rng.random(size)
    idx = np.minimum(np.searchsorted(cum, u, side="right"), len(prior) - 1)
    return prior.positions[idx]


def simulate_information_path(
    model: NoiseModel, prior: Prior, grid: TimeGrid, rng: np.random.Generator
) -> InformationPath:
    """Draw X from the prior, then the exact conditional path on the grid.

    Increments over disjoint grid intervals are conditionally independent
    given X, each drawn from the exact tilted increment law.

    Raises
    ------
    IncompatibleSupport
        If a prior atom is not admissible for the model.
    """
    check_compatibility(prior, model)
    x = sample_message(prior, rng)
    times = grid.times
    values = np.zeros(times.size)
    if times.size > 1:
        inc = increment_draws(model, x, np.diff(times), rng)
        values[1:] = np.cumsum(inc)
    return _path(grid, values, x, model)


def simulate_ensemble(model: NoiseModel, prior: Prior, grid: TimeGrid, n_paths: int, seed: int, tag: int = 0):
    """Simulate ``n_paths`` conditionally independent paths on ``grid``.

    Returns ``(x, xi)`` where ``x`` has shape (n_paths,) and ``xi`` has shape
    (n_paths, len(grid)).  Streams are keyed by (seed, tag, chunk, interval)
    with a fixed chunk size, so results do not depend on evaluation order or
    on the worker count; LEVY_INFO_THREADS bounds the thread pool.
    """
    check_compatibility(prior, model)
    n_paths = int(n_paths)
    if n_paths < 1:
        raise InvalidParameter(f"n_paths must be >= 1, got {n_paths}")
    times = grid.times
    dts = np.diff(times)
    x = np.empty(n_paths)
    xi = np.zeros((n_paths, times.size))

    def run_chunk(c):
        sl = slice(c * CHUNK, min(n_paths, (c + 1) * CHUNK))
        count = sl.stop - sl.start
        x[sl] = sample_messages(prior, count, stream(seed, tag, c, 0))
        acc = np.zeros(count)
        for j, dt in enumerate(dts, start=1):
            acc = acc + increment_draws(model, x[sl], dt, stream(seed, tag, c, j), count)
            xi[sl, j] = acc

    map_ordered(run_chunk, range((n_paths + CHUNK - 1) // CHUNK))
    return x, xi


def _check_message(model: NoiseModel, x: float) -> float:
    x = float(x)
    if not admissible_set(model).contains(x):
        raise OutOfDomain(f"message x={x:g} is not admissible for {model!r}")
    return x


def _rep_increments(model: NoiseModel, rep: str, x: float, dts, rng: np.random.Generator, size):
    """Increment draws for one named alternative construction."""
    fam, p = model.family, model.params
    if rep not in REPRESENTATIONS:
        raise UnsupportedRepresentation(
            f"unknown representation {rep!r}; expected one of {REPRESENTATIONS}"
        )
    want = VG if rep.startswith("VG") else NB
    if fam != want:
        raise UnsupportedRepresentation(f"representation {rep!r} needs a {want} model, got {fam}")

    if rep == "VG_subordinated":
        return increment_draws(model, x, dts, rng, size)
    if rep == "VG_scaled_subordinator":
        m = p[0]
        scale = 1.0 / (1.0 - x * x / (2.0 * m))
        g = rng.gamma(m * np.asarray(dts, dtype=float), 1.0 / m, size) * scale
        return x * g + np.sqrt(g) * rng.standard_normal(size)
    if rep == "VG_gamma_difference":
        m = p[0]
        root = math.sqrt(2.0 * m)
        shape = m * np.asarray(dts, dtype=float)
        g1 = rng.gamma(shape, 1.0, size)
        g2 = rng.gamma(shape, 1.0, size)
        return g1 / (root - x) - g2 / (root + x)
    if rep == "NB_subordinated":
        return increment_draws(model, x, dts, rng, size)
    # NB_compound: Poisson number of logarithmic jumps
    m, q = p
    qx = q * math.exp(x)
    rate = -m * math.log1p(-qx)
    counts = rng.poisson(rate * np.asarray(dts, dtype=float), size)
    flat = np.atleast_1d(counts).ravel()
    jumps = _logarithmic_draws(qx, rng, int(flat.sum()))
    starts = np.concatenate(([0], np.cumsum(flat)[:-1]))
    sums = np.zeros(flat.size)
    nz = flat > 0
    if np.any(nz):
        sums[nz] = np.add.reduceat(jumps, starts[nz])
    out = sums.reshape(np.shape(counts)).astype(float)
    return out if out.ndim else float(out)


def simulate_alternative_representation(
    model: NoiseModel, rep: str, x: float, grid: TimeGrid, rng: np.random.Generator
) -> InformationPath:
    """Simulate a path by one of the named alternative constructions.

    ``rep`` is one of ``REPRESENTATIONS``; VG_* constructions require a
    VarianceGamma model and NB_* a NegativeBinomial one.  All constructions
    for a family share the same conditional law (verified statistically by
    the representation-equivalence study).

    Raises
    ------
    UnsupportedRepresentation
        If the name is unknown or does not match the model family.
    OutOfDomain
        If the message value is not admissible.
    """
    x = _check_message(model, x)
    times = grid.times
    values = np.zeros(times.size)
    if times.size > 1:
        values[1:] = np.cumsum(_rep_increments(model, rep, x, np.diff(times), rng, None))
    return _path(grid, values, x, model)


def representation_draws(model: NoiseModel, rep: str, x: float, t: float, n: int, seed: int, tag: int = 0):
    """n draws of xi_t at a fixed message, under the named construction.

    Chunk-keyed like :func:`simulate_ensemble` (interval index is always 1:
    the construction is conditionally Levy, so xi_t is a single increment).
    """
    x = _check_message(model, x)
    t = float(t)
    if t <= 0:
        raise InvalidParameter(f"t must be > 0, got {t}")
    n = int(n)
    out = np.empty(n)

    def run_chunk(c):
        sl = slice(c * CHUNK, min(n, (c + 1) * CHUNK))
        count = sl.stop - sl.start
        out[sl] = _rep_increments(model, rep, x, t, stream(seed, tag, c, 1), count)

    map_ordered(run_chunk, range((n + CHUNK - 1) // CHUNK))
    return out


def simulate_bridge_path(
    model: NoiseModel,
    prior: Prior,
    horizon: float,
    grid: TimeGrid,
    rng: np.random.Generator,
    u_cap: float | None = None,
) -> InformationPath:
    """Simulate the finite-horizon bridge xi_{tT} = ((T-t)/T) xi(tT/(T-t)).

    The process is simulated exactly on the transformed clock
    u = tT/(T-t) and rescaled; it reveals X as t -> T.  Grid times must stay
    below the horizon and the transformed times below ``u_cap`` (default
    1e6 * T), which guards the singularity at t = T.

    Raises
    ------
    GridExceedsHorizon
    """
    horizon = float(horizon)
    if not (np.isfinite(horizon) and horizon > 0):
        raise InvalidParameter(f"horizon must be positive and finite, got {horizon}")
    if u_cap is None:
        u_cap = 1e6 * horizon
    times = grid.times
    if times[-1] >= horizon:
        raise GridExceedsHorizon(
            f"bridge grid reaches t={times[-1]:g} but the horizon is T={horizon:g}"
        )
    u = times * horizon / (horizon - times)
    if u[-1] > u_cap:
        raise GridExceedsHorizon(
            f"transformed time {u[-1]:.6g} exceeds the cap {u_cap:.6g}; "
            f"refine u_cap or keep the grid away from the horizon"
        )
    check_compatibility(prior, model)
    x = sample_message(prior, rng)
    raw = np.zeros(times.size)
    if times.size > 1:
        raw[1:] = np.cumsum(increment_draws(model, x, np.diff(u), rng))
    values = (horizon - times) / horizon * raw
    return _path(grid, values, x, model)
