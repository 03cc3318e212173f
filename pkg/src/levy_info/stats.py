"""Statistical reductions for Monte Carlo verification.

Cumulants are estimated by k-statistics (the unique unbiased estimators)
with leave-one-out jackknife standard errors; the third-cumulant estimator
is heavy-tailed for several families, and the jackknife keeps its standard
error honest without distributional assumptions.  Study results are plain
(quantity, estimate, reference, stderr, z) rows; a study passes when every
row with a finite z-score stays within the threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import TooFewSamples

__all__ = [
    "StudyRow",
    "StudyReport",
    "zscore",
    "mean_stderr",
    "k_statistics",
    "CumulantEstimate",
    "jackknife_cumulants",
    "jackknife_covariance",
    "jackknife_se",
]


def zscore(estimate: float, reference: float, stderr: float) -> float:
    """(estimate - reference) / stderr, with 0/0 resolved to 0."""
    diff = estimate - reference
    if stderr == 0.0:
        return 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
    return diff / stderr


@dataclass(frozen=True)
class StudyRow:
    """One comparison: a Monte Carlo estimate against its reference.

    Informational rows (no reference available) carry NaN reference and
    z; they never fail a study.
    """

    quantity: str
    estimate: float
    reference: float
    stderr: float
    z: float

    @property
    def informational(self) -> bool:
        return math.isnan(self.z)


@dataclass(frozen=True, eq=False)
class StudyReport:
    """A named collection of study rows with a shared |z| threshold."""

    name: str
    rows: tuple
    threshold: float = 3.5

    @property
    def max_abs_z(self) -> float:
        zs = [abs(r.z) for r in self.rows if not r.informational]
        return max(zs) if zs else math.nan

    @property
    def passed(self) -> bool:
        return all(abs(r.z) <= self.threshold for r in self.rows if not r.informational)

    @property
    def flagged(self) -> tuple:
        return tuple(r for r in self.rows if not r.informational and abs(r.z) > self.threshold)

    def summary(self) -> str:
        """One machine-readable pass/fail line."""
        return (
            f"study={self.name} passed={str(self.passed).lower()} "
            f"rows={len(self.rows)} max_abs_z={self.max_abs_z:.6g} "
            f"threshold={self.threshold:g}"
        )


def _samples(x, least: int) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=float).ravel()
    if x.size < least:
        raise TooFewSamples(f"need at least {least} samples, got {x.size}")
    return x


def mean_stderr(x) -> tuple:
    """Sample mean and its standard error (ddof=1)."""
    x = _samples(x, 2)
    return float(x.mean()), float(x.std(ddof=1) / math.sqrt(x.size))


def k_statistics(x) -> tuple:
    """Unbiased estimators (k1, k2, k3) of the first three cumulants."""
    x = _samples(x, 3)
    n = x.size
    shift = x.mean()
    xc = x - shift
    m = xc.mean()
    s2 = float(((xc - m) ** 2).sum())
    s3 = float(((xc - m) ** 3).sum())
    k1 = shift + m
    k2 = s2 / (n - 1)
    k3 = n * s3 / ((n - 1) * (n - 2))
    return float(k1), float(k2), float(k3)


@dataclass(frozen=True)
class CumulantEstimate:
    """k-statistics with jackknife standard errors."""

    n: int
    k1: float
    k2: float
    k3: float
    se1: float
    se2: float
    se3: float

    @property
    def cumulants(self) -> tuple:
        return (self.k1, self.k2, self.k3)

    @property
    def stderrs(self) -> tuple:
        return (self.se1, self.se2, self.se3)


def jackknife_se(loo) -> float:
    """Jackknife standard error from a vector of leave-one-out estimates."""
    loo = np.ascontiguousarray(loo, dtype=float).ravel()
    n = loo.size
    return float(math.sqrt((n - 1) / n * ((loo - loo.mean()) ** 2).sum()))


def jackknife_cumulants(x) -> CumulantEstimate:
    """k1, k2, k3 with leave-one-out jackknife standard errors.

    Leave-one-out values come from downdated power sums (O(n) total); the
    data are centred at the grand mean first so the power sums do not lose
    precision to a large common location.
    """
    x = _samples(x, 4)
    n = x.size
    k1, k2, k3 = k_statistics(x)

    shift = x.mean()
    xc = x - shift
    s1, s2, s3 = xc.sum(), float((xc**2).sum()), float((xc**3).sum())
    m = n - 1
    mu = (s1 - xc) / m
    c2 = s2 - xc**2 - (s1 - xc) * mu
    c3 = (s3 - xc**3) - 3.0 * mu * (s2 - xc**2) + 2.0 * m * mu**3
    loo_k1 = shift + mu
    loo_k2 = c2 / (m - 1)
    loo_k3 = m * c3 / ((m - 1) * (m - 2))
    return CumulantEstimate(
        n, k1, k2, k3, jackknife_se(loo_k1), jackknife_se(loo_k2), jackknife_se(loo_k3)
    )


def jackknife_covariance(a, b) -> tuple:
    """Unbiased sample covariance of paired samples with a jackknife SE.

    ``jackknife_covariance(a, a)`` is the sample variance with its SE.
    """
    a = _samples(a, 4)
    b = _samples(b, 4)
    if a.size != b.size:
        raise TooFewSamples(f"paired samples differ in length: {a.size} vs {b.size}")
    n = a.size
    ac = a - a.mean()
    bc = b - b.mean()
    sa, sb, sab = ac.sum(), bc.sum(), float((ac * bc).sum())
    m = n - 1
    loo = (sab - ac * bc - (sa - ac) * (sb - bc) / m) / (m - 1)
    cov = (sab - sa * sb / n) / (n - 1)
    return float(cov), jackknife_se(loo)
