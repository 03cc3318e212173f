"""Pre-packaged statistical studies verifying the core identities.

Each study simulates under a fixed seed, reduces to (quantity, estimate,
reference, stderr, z) rows and returns a :class:`~levy_info.stats.StudyReport`;
a study passes when every row with a finite z stays inside the threshold
(default 3.5).  Rows without a meaningful reference (such as empirical
exceedance probabilities) carry NaN z and are informational only.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParameter, OutOfDomain
from .noise import (
    NB,
    VG,
    NoiseModel,
    admissible_set,
    d2psi_unchecked,
    d3psi_unchecked,
    dpsi_unchecked,
    esscher_transform,
    fiducial_exponent,
    inverse_marginal_clamped,
    psi_unchecked,
)
from .prior import Prior, check_compatibility
from .rng import stream
from .simulate import TimeGrid, increment_draws, representation_draws, simulate_ensemble
from .stats import (
    StudyReport,
    StudyRow,
    jackknife_covariance,
    jackknife_cumulants,
    jackknife_se,
    mean_stderr,
    zscore,
)

__all__ = [
    "convergence_study",
    "factorization_study",
    "esscher_consistency_study",
    "representation_equivalence_study",
    "bridge_study",
]


def _ladder(times) -> np.ndarray:
    times = np.ascontiguousarray(times, dtype=float).ravel()
    if times.size == 0 or not np.all(times > 0.0) or not np.all(np.diff(times) > 0.0):
        raise InvalidParameter("study times must be positive and strictly increasing")
    return times


def convergence_study(
    model: NoiseModel,
    prior: Prior,
    times,
    n_paths: int,
    seed: int,
    epsilon: float = 0.5,
    threshold: float = 3.5,
) -> StudyReport:
    """Check the revelation rate E[(xi_t/t - psi0'(X))^2] = E[psi0''(X)]/t.

    One ``mse[t=...]`` row per ladder time compares the Monte Carlo mean
    square against the analytic reference computed from the prior.  The
    accompanying ``exceed[...]`` rows report the empirical
    P(|I0(xi_t/t) - X| >= epsilon), which should shrink along the ladder;
    they carry no analytic reference and are informational.
    """
    if int(n_paths) < 1000:
        raise InvalidParameter(f"convergence_study needs n_paths >= 1000, got {n_paths}")
    times = _ladder(times)
    grid = TimeGrid(np.concatenate(([0.0], times)))
    messages, xi = simulate_ensemble(model, prior, grid, n_paths, seed)
    drift_x = dpsi_unchecked(model, messages)
    reference_d2 = float(prior.weights @ d2psi_unchecked(model, prior.positions))
    rows = []
    for j, t in enumerate(times, start=1):
        rate = xi[:, j] / t
        sq = (rate - drift_x) ** 2
        est, se = mean_stderr(sq)
        ref = reference_d2 / t
        rows.append(StudyRow(f"mse[t={t:g}]", est, ref, se, zscore(est, ref, se)))
        i0, _ = inverse_marginal_clamped(model, rate)
        with np.errstate(invalid="ignore"):
            exceed = np.abs(i0 - messages) >= epsilon
        p = float(exceed.mean())
        se_p = math.sqrt(p * (1.0 - p) / exceed.size)
        rows.append(
            StudyRow(f"exceed[t={t:g},eps={epsilon:g}]", p, math.nan, se_p, math.nan)
        )
    return StudyReport("convergence", tuple(rows), float(threshold))


def _pure_imaginary(value, name: str) -> complex:
    value = complex(value)
    if value.real != 0.0:
        raise InvalidParameter(f"{name} must be purely imaginary, got {value}")
    return value


def factorization_study(
    model: NoiseModel,
    prior: Prior,
    alpha: complex,
    beta: complex,
    t: float,
    n_paths: int,
    seed: int,
    threshold: float = 3.5,
) -> StudyReport:
    """Check the change-of-measure factorization of the joint law of (xi_t, X).

    Weighting by exp(-X xi_t + psi0(X) t) removes the message from the
    observation: the self-normalized weighted estimate of
    E[exp(alpha xi_t + beta X)] must equal exp(psi0(alpha) t) times the
    prior characteristic function of X.  Real and imaginary parts are
    compared separately; a ``weight_mean`` row checks that the raw weights
    average to one.  At alpha = beta = 0 both sides are exactly 1.
    """
    alpha = _pure_imaginary(alpha, "alpha")
    beta = _pure_imaginary(beta, "beta")
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise InvalidParameter(f"t must be positive, got {t}")
    check_compatibility(prior, model)
    messages, xi = simulate_ensemble(model, prior, TimeGrid(np.array([0.0, t])), n_paths, seed)
    xi_t = xi[:, 1]
    weights = np.exp(-messages * xi_t + psi_unchecked(model, messages) * t)
    w_mean = weights.mean()
    samples = weights * np.exp(alpha * xi_t + beta * messages)
    reference = np.exp(fiducial_exponent(model, alpha) * t) * (
        prior.weights @ np.exp(beta * prior.positions)
    )
    key = f"alpha={alpha.imag:g}i,beta={beta.imag:g}i"
    rows = []
    w_est, w_se = mean_stderr(weights)
    rows.append(StudyRow("weight_mean", w_est, 1.0, w_se, zscore(w_est, 1.0, w_se)))
    n = weights.size
    for part, take in (("re", np.real), ("im", np.imag)):
        est = float(take(samples).mean() / w_mean)
        # delta-method standard error of the ratio estimator
        resid = take(samples) - est * weights
        se = float(np.sqrt((resid * resid).sum() / (n - 1) / n) / w_mean)
        ref = float(take(reference))
        rows.append(StudyRow(f"cf_{part}[{key}]", est, ref, se, zscore(est, ref, se)))
    return StudyReport("factorization", tuple(rows), float(threshold))


def esscher_consistency_study(
    model: NoiseModel,
    lam: float,
    t: float,
    n_paths: int,
    seed: int,
    threshold: float = 3.5,
) -> StudyReport:
    """Tilted simulation against importance-weighted fiducial simulation.

    Draws xi_t directly from the tilted model and, with common random
    numbers, from the fiducial model weighted by exp(lam xi - psi0(lam) t);
    compares mean and variance.  Common random numbers make the lam = 0
    case agree exactly and otherwise only overstate the standard error of
    the difference, never understate it.
    """
    lam = float(lam)
    if not admissible_set(model).interior_contains(lam):
        raise OutOfDomain(f"lambda={lam:g} is not interior to the admissible set of {model!r}")
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise InvalidParameter(f"t must be positive, got {t}")
    n = int(n_paths)
    tilted = esscher_transform(model, lam)
    direct = increment_draws(tilted, 0.0, t, stream(seed, 1), n)
    fiducial = increment_draws(model, 0.0, t, stream(seed, 1), n)
    weights = np.exp(lam * fiducial - fiducial_exponent(model, lam) * t)

    rows = []
    mean_d, se_d = mean_stderr(direct)
    weighted = weights * fiducial
    mean_w, se_w = mean_stderr(weighted)
    se = math.hypot(se_d, se_w)
    rows.append(StudyRow("mean", mean_d, mean_w, se, zscore(mean_d, mean_w, se)))

    var_d, se_vd = jackknife_covariance(direct, direct)
    u = weights * fiducial * fiducial
    var_w = float(u.mean() - weighted.mean() ** 2)
    m = n - 1
    loo = (u.sum() - u) / m - ((weighted.sum() - weighted) / m) ** 2
    se_vw = jackknife_se(loo)
    se_v = math.hypot(se_vd, se_vw)
    rows.append(StudyRow("variance", var_d, var_w, se_v, zscore(var_d, var_w, se_v)))
    return StudyReport("esscher", tuple(rows), float(threshold))


def representation_equivalence_study(
    model: NoiseModel,
    x: float,
    t: float,
    n_paths: int,
    seed: int,
    threshold: float = 3.5,
) -> StudyReport:
    """Cross-check the alternative VG/NB constructions on first three cumulants.

    Every representation of the model's family is sampled at the same fixed
    message; per-representation rows compare k-statistics against the
    analytic cumulants psi0^(k)(x) t, and pairwise rows compare the
    representations against each other with combined jackknife errors.
    """
    if model.family == VG:
        reps = ("VG_subordinated", "VG_scaled_subordinator", "VG_gamma_difference")
    elif model.family == NB:
        reps = ("NB_subordinated", "NB_compound")
    else:
        raise InvalidParameter(
            f"representation study applies to VarianceGamma or NegativeBinomial, got {model.family}"
        )
    t = float(t)
    x = float(x)
    analytic = (
        dpsi_unchecked(model, x) * t,
        d2psi_unchecked(model, x) * t,
        d3psi_unchecked(model, x) * t,
    )
    estimates = {
        rep: jackknife_cumulants(representation_draws(model, rep, x, t, n_paths, seed, tag=i))
        for i, rep in enumerate(reps)
    }
    rows = []
    for rep in reps:
        cum = estimates[rep]
        for order in (1, 2, 3):
            est = cum.cumulants[order - 1]
            se = cum.stderrs[order - 1]
            ref = analytic[order - 1]
            rows.append(StudyRow(f"k{order}[{rep}]", est, ref, se, zscore(est, ref, se)))
    for i, rep_a in enumerate(reps):
        for rep_b in reps[i + 1 :]:
            ca, cb = estimates[rep_a], estimates[rep_b]
            for order in (1, 2, 3):
                est, ref = ca.cumulants[order - 1], cb.cumulants[order - 1]
                se = math.hypot(ca.stderrs[order - 1], cb.stderrs[order - 1])
                rows.append(
                    StudyRow(f"k{order}[{rep_a}|{rep_b}]", est, ref, se, zscore(est, ref, se))
                )
    return StudyReport("representation", tuple(rows), float(threshold))


def bridge_study(
    model: NoiseModel,
    x: float,
    horizon: float,
    s: float,
    t: float,
    n_paths: int,
    seed: int,
    threshold: float = 3.5,
) -> StudyReport:
    """Check the bridge moments at two times s < t inside the horizon.

    At fixed message x the bridge has conditional mean psi0'(x) u at time u
    and covariance s (T - t)/T psi0''(x); the study compares sample mean,
    variance and cross-covariance with jackknife standard errors.
    """
    horizon, s, t = float(horizon), float(s), float(t)
    if not (0.0 < s < t < horizon):
        raise InvalidParameter(f"need 0 < s < t < horizon, got s={s}, t={t}, horizon={horizon}")
    x = float(x)
    if not admissible_set(model).contains(x):
        raise OutOfDomain(f"message x={x:g} is not admissible for {model!r}")
    n = int(n_paths)
    u_s = s * horizon / (horizon - s)
    u_t = t * horizon / (horizon - t)
    raw_s = increment_draws(model, x, u_s, stream(seed, 1), n)
    raw_t = raw_s + increment_draws(model, x, u_t - u_s, stream(seed, 2), n)
    xi_s = (horizon - s) / horizon * raw_s
    xi_t = (horizon - t) / horizon * raw_t

    d1 = dpsi_unchecked(model, x)
    d2 = d2psi_unchecked(model, x)
    rows = []
    for label, sample, at in (("s", xi_s, s), ("t", xi_t, t)):
        est, se = mean_stderr(sample)
        ref = d1 * at
        rows.append(StudyRow(f"mean[{label}]", est, ref, se, zscore(est, ref, se)))
        var, se_v = jackknife_covariance(sample, sample)
        ref_v = at * (horizon - at) / horizon * d2
        rows.append(StudyRow(f"var[{label}]", var, ref_v, se_v, zscore(var, ref_v, se_v)))
    cov, se_c = jackknife_covariance(xi_s, xi_t)
    ref_c = s * (horizon - t) / horizon * d2
    rows.append(StudyRow("cov[s,t]", cov, ref_c, se_c, zscore(cov, ref_c, se_c)))
    return StudyReport("bridge", tuple(rows), float(threshold))
