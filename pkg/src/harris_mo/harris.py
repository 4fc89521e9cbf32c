"""The Harris(a, k) counting distribution.

Its probability generating function is

    P(s) = (s**k / (a - (a - 1) * s**k)) ** (1/k),    a > 1, k = 1, 2, ...

so ``N - 1`` is ``k`` times a negative binomial variable with shape ``1/k``
and success probability ``1/a``. For ``k = 1`` this is the geometric law on
{1, 2, ...} with parameter ``1/a``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, ParameterError

__all__ = [
    "HarrisParams",
    "harris_pgf",
    "harris_pmf",
    "harris_draw",
    "harris_mean",
    "harris_support",
]


@dataclass(frozen=True)
class HarrisParams:
    """Transform / distribution parameters ``(a, k)``.

    ``a > 0`` is enough for the parametrization schemes; the counting
    distribution itself needs ``a > 1`` (see :meth:`require_distribution`).
    """

    a: float
    k: int = 1

    def __post_init__(self):
        a = float(self.a)
        if not (a > 0 and math.isfinite(a)):
            raise ParameterError("a", f"a must be a positive finite number, got {self.a!r}")
        k = self.k
        if isinstance(k, float) and k.is_integer():
            k = int(k)
        if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
            raise ParameterError("k", f"k must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", int(k))

    @classmethod
    def from_alpha(cls, alpha):
        """The Marshall-Olkin parameter alpha corresponds to ``a = 1/alpha, k = 1``."""
        alpha = float(alpha)
        if not alpha > 0:
            raise ParameterError("alpha", f"alpha must be positive, got {alpha!r}")
        return cls(1.0 / alpha, 1)

    def require_distribution(self):
        if not self.a > 1:
            raise ParameterError(
                "a", f"the Harris counting distribution needs a > 1, got a={self.a!r}"
            )
        return self


def harris_pgf(hp: HarrisParams, s):
    """Evaluate the generating function at ``s`` in [0, 1]."""
    hp.require_distribution()
    s = np.asarray(s, dtype=float)
    if np.any(np.isnan(s)) or np.any((s < 0) | (s > 1)):
        raise DomainError("s", "pgf argument must lie in [0, 1]")
    sk = s**hp.k
    out = (sk / (hp.a - (hp.a - 1.0) * sk)) ** (1.0 / hp.k)
    return float(out) if out.ndim == 0 else out


def harris_pmf(hp: HarrisParams, n):
    """Probability of ``N = n``.

    Mass sits on ``n = 1 + j*k``; there

        pmf = a**(-1/k) * Gamma(1/k + j) / (Gamma(1/k) * j!) * ((a-1)/a)**j

    evaluated in log space.
    """
    hp.require_distribution()
    n = np.asarray(n)
    if not np.issubdtype(n.dtype, np.integer):
        if np.any(n != np.floor(n)):
            raise DomainError("n", "pmf argument must be an integer")
        n = n.astype(np.int64)
    a, k = hp.a, hp.k
    j, rem = np.divmod(n - 1, k)
    on_support = (n >= 1) & (rem == 0)
    jj = np.where(on_support, j, 0).astype(float)
    logp = (
        -math.log(a) / k
        + gammaln(1.0 / k + jj)
        - gammaln(1.0 / k)
        - gammaln(jj + 1.0)
        + jj * (math.log(a - 1.0) - math.log(a))
    )
    out = np.where(on_support, np.exp(logp), 0.0)
    return float(out) if out.ndim == 0 else out


def harris_support(hp: HarrisParams, tail_mass=1e-12, max_terms=10**7) -> np.ndarray:
    """Support points ``1 + j*k`` in order until the remaining mass is below ``tail_mass``."""
    hp.require_distribution()
    # Terms decay like ((a-1)/a)**j; double the window until the mass is covered.
    J = 64
    while True:
        n = 1 + hp.k * np.arange(J)
        mass = np.sum(harris_pmf(hp, n))
        if mass >= 1.0 - tail_mass or J >= max_terms:
            cum = np.cumsum(harris_pmf(hp, n))
            stop = int(np.searchsorted(cum, 1.0 - tail_mass)) + 1
            return n[: min(stop, J)]
        J *= 2


def harris_draw(hp: HarrisParams, rng: np.random.Generator, n=None):
    """Draw Harris(a, k) counts.

    ``N = 1 + k*M`` with ``M`` a gamma(shape 1/k, scale a-1) mixed Poisson
    count. Returns an int for ``n=None``, else an int64 array of length n.
    """
    hp.require_distribution()
    size = 1 if n is None else n
    if size < 0:
        raise ParameterError("n", f"sample size must be non-negative, got {n}")
    lam = rng.gamma(1.0 / hp.k, hp.a - 1.0, size=size)
    m = rng.poisson(lam)
    out = 1 + hp.k * m.astype(np.int64)
    return int(out[0]) if n is None else out


def harris_mean(hp: HarrisParams) -> float:
    """Mean of the counting distribution; the pgf derivative at 1 equals ``a``."""
    hp.require_distribution()
    return hp.a
