"""Statistical and analytical oracles.

Nothing here imports the transform or process code: these functions are
the yardstick those modules are measured against.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .errors import DomainError
from .harris import harris_pmf, harris_support

__all__ = [
    "KS_COEF_1PCT",
    "KSReport",
    "ChiSquareReport",
    "empirical_cdf",
    "ks_one_sample",
    "ks_two_sample",
    "chi_square",
    "harris_chi_square",
    "pgf_coeff_oracle",
]

# Asymptotic 1% point of the Kolmogorov distribution.
KS_COEF_1PCT = 1.628


@dataclass(frozen=True)
class KSReport:
    statistic: float
    n: int
    critical_value_1pct: float
    m: int | None = None

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical_value_1pct


@dataclass(frozen=True)
class ChiSquareReport:
    statistic: float
    dof: int
    critical_value_1pct: float

    @property
    def passed(self) -> bool:
        return self.statistic < self.critical_value_1pct


def _sample_array(samples, name="samples"):
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise DomainError(name, f"{name} must be non-empty")
    return x


def empirical_cdf(samples, x):
    """Fraction of ``samples`` that are ``<= x``."""
    s = np.sort(_sample_array(samples))
    out = np.searchsorted(s, x, side="right") / s.size
    return float(out) if np.ndim(out) == 0 else out


def ks_one_sample(samples, cdf_eval) -> KSReport:
    """Kolmogorov-Smirnov distance between ``samples`` and ``cdf_eval``."""
    s = np.sort(_sample_array(samples))
    n = s.size
    f = np.asarray(cdf_eval(s), dtype=float)
    i = np.arange(1, n + 1)
    d = max(np.max(i / n - f), np.max(f - (i - 1) / n))
    return KSReport(float(d), n, KS_COEF_1PCT / math.sqrt(n))


def ks_two_sample(s1, s2) -> KSReport:
    a = np.sort(_sample_array(s1, "s1"))
    b = np.sort(_sample_array(s2, "s2"))
    n, m = a.size, b.size
    grid = np.concatenate((a, b))
    d = np.max(np.abs(np.searchsorted(a, grid, side="right") / n - np.searchsorted(b, grid, side="right") / m))
    return KSReport(float(d), n, KS_COEF_1PCT * math.sqrt((n + m) / (n * m)), m)


def chi_square(counts, probs) -> ChiSquareReport:
    """Pearson statistic of observed ``counts`` against cell probabilities ``probs``.

    ``probs`` must cover the whole outcome space (sum to one).
    """
    counts = np.asarray(counts, dtype=float)
    probs = np.asarray(probs, dtype=float)
    if counts.shape != probs.shape or counts.size < 2:
        raise DomainError("counts", "need matching counts and probabilities over >= 2 cells")
    expected = counts.sum() * probs
    stat = float(np.sum((counts - expected) ** 2 / expected))
    dof = counts.size - 1
    return ChiSquareReport(stat, dof, float(chi2.ppf(0.99, dof)))


def harris_chi_square(hp, draws):
    """Pearson test of ``draws`` against the Harris pmf.

    Cells are the support points with mass >= 1e-4; the last cell also
    collects every larger count.
    """
    support = harris_support(hp)
    pm = harris_pmf(hp, support)
    keep = support[pm >= 1e-4]
    probs = harris_pmf(hp, keep)
    probs[-1] = 1.0 - probs[:-1].sum()
    idx = np.searchsorted(keep, np.minimum(draws, keep[-1]))
    counts = np.bincount(idx, minlength=keep.size)
    return chi_square(counts, probs)


def pgf_coeff_oracle(hp, j: int, m_points: int = 2048, radius: float = 0.9) -> float:
    """j-th power-series coefficient of the Harris pgf by a Cauchy integral.

    Trapezoidal rule with ``m_points`` nodes on ``|z| = radius`` applied to

        z * (a - (a-1) z**k) ** (-1/k),

    which is analytic (principal branch) on the closed disc of radius < 1
    because ``Re(a - (a-1) z**k) > 0`` there. Round-off grows like
    ``radius**-j``, so radii near 1 suit large ``j``.
    """
    if not 0 < radius < 1:
        raise DomainError("radius", f"radius must lie in (0, 1), got {radius!r}")
    a, k = float(hp.a), int(hp.k)
    if not a > 1:
        raise DomainError("a", "the coefficient oracle needs a > 1")
    nodes = radius * np.exp(2j * np.pi * np.arange(m_points) / m_points)
    f = nodes * (a - (a - 1.0) * nodes**k) ** (-1.0 / k)
    return float(np.mean(f * nodes ** (-j)).real)
