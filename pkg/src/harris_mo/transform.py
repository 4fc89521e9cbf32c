"""Marshall-Olkin and Harris parametrization schemes.

Three schemes act on a base distribution ``F`` (any object with ``cdf``,
``sf`` and ``quantile``):

* ``mo_sf``          alpha*Fbar / (1 - (1-alpha)*Fbar)
* ``harris_min_sf``  (Fbar**k / (a - (a-1)*Fbar**k)) ** (1/k)
* ``harris_max_cdf`` (F**k    / (a - (a-1)*F**k))    ** (1/k)

and a fourth builds a d.f directly from a non-increasing ``psi >= 0``:

* ``psi_cdf``        (1 / (1 + a*psi(x))) ** (1/k)

The Harris-maximum family is closed under composition:
transforming with ``a`` and then ``b`` equals one transform with ``a*b``.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .dist_core import check_probability
from .errors import DomainError, ParameterError
from .harris import HarrisParams, harris_draw

__all__ = [
    "Scheme",
    "Psi",
    "PsiFunction",
    "LogCdfPsi",
    "OddsPsi",
    "TransformedDistribution",
    "mo_sf",
    "harris_min_sf",
    "harris_max_cdf",
    "harris_max_quantile",
    "harris_max_transform",
    "psi_cdf",
    "psi_distribution",
    "make_semistable_psi",
    "harris_max_draw",
]

MONOTONE_GRID_POINTS = 10_000


class Scheme(str, enum.Enum):
    MO_SF = "mo"
    HARRIS_MIN_SF = "harris-min"
    HARRIS_MAX_DF = "harris-max"
    PSI_DF = "psi"


def _check_alpha(alpha):
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ParameterError("alpha", f"alpha must be a positive finite number, got {alpha!r}")
    return alpha


def _scalar_like(values, like):
    return float(values) if np.ndim(like) == 0 else values


def _kernel(u, a, k):
    # u in [0, 1]; the denominator stays >= min(a, 1) > 0.
    uk = u**k
    return (uk / (a - (a - 1.0) * uk)) ** (1.0 / k)


def _kernel_inv(v, a, k):
    vk = v**k
    return (a * vk / (1.0 + (a - 1.0) * vk)) ** (1.0 / k)


def mo_sf(base, alpha, x):
    """Marshall-Olkin survival function with tilt parameter ``alpha > 0``."""
    alpha = _check_alpha(alpha)
    fbar = np.asarray(base.sf(x), dtype=float)
    out = alpha * fbar / (1.0 - (1.0 - alpha) * fbar)
    return _scalar_like(out, x)


def harris_min_sf(base, hp: HarrisParams, x):
    fbar = np.asarray(base.sf(x), dtype=float)
    return _scalar_like(_kernel(fbar, hp.a, hp.k), x)


def harris_max_cdf(base, hp: HarrisParams, x):
    """Harris-maximum d.f of ``base``.

    For ``a > 1`` this is the law of the maximum of a Harris(a, k) number of
    i.i.d. draws from ``base``; for ``0 < a <= 1`` it is still a d.f.
    """
    f = np.asarray(base.cdf(x), dtype=float)
    return _scalar_like(_kernel(f, hp.a, hp.k), x)


def harris_max_quantile(base, hp: HarrisParams, q):
    q = check_probability(q)
    return base.quantile(_scalar_like(_kernel_inv(q, hp.a, hp.k), q))


class Psi:
    """A non-increasing ``psi >= 0``; ``1 / (1 + psi)`` is then a d.f.

    Subclasses provide ``__call__`` and ``inverse``, where ``inverse(y)`` is
    the smallest ``x`` with ``psi(x) <= y``.
    """

    support = (-math.inf, math.inf)

    def __call__(self, x):
        raise NotImplementedError

    def inverse(self, y):
        raise NotImplementedError


class PsiFunction(Psi):
    """Power law with an optional log-periodic ripple.

        psi(x) = scale * x**(-theta) * (1 + epsilon * sin(2*pi*ln(x) / ln(c_scale)))

    on ``x > 0``. The ripple is invariant under ``x -> c_scale * x``, so
    ``psi(x) = c_scale**theta * psi(c_scale * x)``.
    """

    support = (0.0, math.inf)

    def __init__(self, theta, epsilon=0.0, c_scale=None, scale=1.0):
        theta = float(theta)
        if not (theta > 0 and math.isfinite(theta)):
            raise ParameterError("theta", f"theta must be positive, got {theta!r}")
        epsilon = float(epsilon)
        if not 0.0 <= epsilon < 1.0:
            raise ParameterError("epsilon", f"epsilon must lie in [0, 1), got {epsilon!r}")
        if c_scale is not None:
            c_scale = float(c_scale)
            if not (c_scale > 1 and math.isfinite(c_scale)):
                raise ParameterError("c", f"c_scale must be a finite number > 1, got {c_scale!r}")
        elif epsilon > 0:
            raise ParameterError("c", "a log-periodic ripple (epsilon > 0) needs c_scale")
        scale = float(scale)
        if not (scale > 0 and math.isfinite(scale)):
            raise ParameterError("scale", f"scale must be positive, got {scale!r}")
        self.theta, self.epsilon, self.c_scale, self.scale = theta, epsilon, c_scale, scale
        if epsilon > 0:
            self._check_monotone()

    def __repr__(self):
        return (
            f"PsiFunction(theta={self.theta!r}, epsilon={self.epsilon!r}, "
            f"c_scale={self.c_scale!r}, scale={self.scale!r})"
        )

    def _ripple(self, x):
        if self.epsilon == 0:
            return 1.0
        return 1.0 + self.epsilon * np.sin(2.0 * np.pi * np.log(x) / math.log(self.c_scale))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x <= 0):
            raise DomainError("x", "psi is defined on x > 0 only")
        with np.errstate(over="ignore", invalid="ignore"):
            out = self.scale * x ** (-self.theta) * self._ripple(x)
        out = np.where(np.isposinf(x), 0.0, out)
        return _scalar_like(out, x)

    def _check_monotone(self):
        # Two full periods of the ripple; psi(c x) = psi(x) / c**theta carries
        # the verdict to the whole half-line.
        c = self.c_scale
        x = np.geomspace(1.0 / c, c, MONOTONE_GRID_POINTS)
        v = self(x)
        if np.any(np.diff(v) > 0):
            raise ParameterError(
                "epsilon",
                f"psi with theta={self.theta:g}, epsilon={self.epsilon:g}, c={c:g} "
                "is not non-increasing; reduce epsilon",
            )

    def inverse(self, y):
        y = np.asarray(y, dtype=float) / self.scale
        out = np.empty_like(y)
        out[y <= 0] = math.inf
        out[np.isposinf(y)] = 0.0
        inner = (y > 0) & np.isfinite(y)
        yy = y[inner]
        if self.epsilon == 0:
            out[inner] = yy ** (-1.0 / self.theta)
        else:
            # psi/scale is sandwiched between (1 -+ eps) * x**-theta.
            lo = np.log((1.0 - self.epsilon) / yy) / self.theta
            hi = np.log((1.0 + self.epsilon) / yy) / self.theta
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                above = self(np.exp(mid)) / self.scale > yy
                lo = np.where(above, mid, lo)
                hi = np.where(above, hi, mid)
                if np.all(hi - lo <= 1e-15 * np.maximum(1.0, np.abs(hi))):
                    break
            out[inner] = np.exp(hi)
        return _scalar_like(out, y)


class LogCdfPsi(Psi):
    """``psi = -log F`` for a base d.f ``F`` (infinite where ``F = 0``)."""

    def __init__(self, dist):
        self.dist = dist
        self.support = dist.support

    def __call__(self, x):
        f = np.asarray(self.dist.cdf(x), dtype=float)
        with np.errstate(divide="ignore"):
            out = -np.log(f)
        return _scalar_like(out + 0.0, x)

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        return self.dist.quantile(_scalar_like(np.exp(-y), y))


class OddsPsi(Psi):
    """``psi = Fbar / F``, for which ``1 / (1 + psi)`` is ``F`` itself."""

    def __init__(self, dist):
        self.dist = dist
        self.support = dist.support

    def __call__(self, x):
        f = np.asarray(self.dist.cdf(x), dtype=float)
        fbar = np.asarray(self.dist.sf(x), dtype=float)
        with np.errstate(divide="ignore"):
            out = fbar / f
        return _scalar_like(out, x)

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        return self.dist.quantile(_scalar_like(1.0 / (1.0 + y), y))


def psi_cdf(psi: Psi, hp: HarrisParams, x):
    """``(1 / (1 + a*psi(x))) ** (1/k)``."""
    with np.errstate(divide="ignore"):
        out = (1.0 / (1.0 + hp.a * np.asarray(psi(x), dtype=float))) ** (1.0 / hp.k)
    return _scalar_like(out, x)


def make_semistable_psi(a, c, epsilon=0.0) -> PsiFunction:
    """Solution of ``psi(x) = a * psi(c * x)`` with a power-law trend.

    Uses ``theta = ln a / ln c``, which is positive only when ``c > 1``; a
    decreasing psi cannot satisfy the equation for ``0 < c < 1 < a`` except
    trivially, so that orientation is rejected rather than silently flipped.
    """
    a, c = float(a), float(c)
    if not (a > 1 and math.isfinite(a)):
        raise ParameterError("a", f"a must be a finite number > 1, got {a!r}")
    if not (c > 0 and math.isfinite(c)) or c == 1:
        raise ParameterError("c", f"c must be positive and different from 1, got {c!r}")
    if c < 1:
        raise ParameterError(
            "c",
            f"c={c!r} < 1 gives theta = ln a / ln c < 0, i.e. an increasing psi; "
            f"psi(x) = a psi(c x) has a non-increasing solution only for c > 1 "
            f"(pass c={1 / c!r} for the reciprocal convention)",
        )
    return PsiFunction(math.log(a) / math.log(c), epsilon, c)


class TransformedDistribution:
    """A scheme applied to a base distribution (or, for ``PSI_DF``, to a Psi).

    Exposes the same ``cdf/sf/quantile/draw`` surface as the base families,
    so transformed laws can be nested, rescaled or fed to the simulators.
    """

    def __init__(self, base, scheme, hp: HarrisParams | None = None, alpha=None):
        self.base = base
        self.scheme = Scheme(scheme)
        if self.scheme is Scheme.MO_SF:
            if alpha is None:
                raise ParameterError("alpha", "the Marshall-Olkin scheme needs alpha")
            self.alpha = _check_alpha(alpha)
            self.hp = HarrisParams.from_alpha(self.alpha)
        else:
            if hp is None:
                raise ParameterError("a", f"scheme {self.scheme.value} needs Harris parameters")
            self.hp = hp
            self.alpha = None
        if self.scheme is Scheme.PSI_DF and not isinstance(base, Psi):
            raise ParameterError("base", "the psi scheme needs a Psi instance as base")

    def __repr__(self):
        par = f"alpha={self.alpha!r}" if self.alpha is not None else f"a={self.hp.a!r}, k={self.hp.k!r}"
        return f"TransformedDistribution({self.base!r}, {self.scheme.value}, {par})"

    @property
    def support(self):
        return self.base.support

    def cdf(self, x):
        s = self.scheme
        if s is Scheme.HARRIS_MAX_DF:
            return harris_max_cdf(self.base, self.hp, x)
        if s is Scheme.PSI_DF:
            x = np.asarray(x, dtype=float)
            out = np.zeros_like(x)
            lo = self.base.support[0]
            inside = x > lo
            out[inside] = psi_cdf(self.base, self.hp, x[inside])
            return _scalar_like(out, x)
        return _scalar_like(1.0 - np.asarray(self.sf(x)), x)

    def sf(self, x):
        s = self.scheme
        if s is Scheme.MO_SF:
            return mo_sf(self.base, self.alpha, x)
        if s is Scheme.HARRIS_MIN_SF:
            return harris_min_sf(self.base, self.hp, x)
        return _scalar_like(1.0 - np.asarray(self.cdf(x)), x)

    def quantile(self, q):
        q = check_probability(q)
        s, a, k = self.scheme, self.hp.a, self.hp.k
        if s is Scheme.HARRIS_MAX_DF:
            return harris_max_quantile(self.base, self.hp, q)
        if s is Scheme.PSI_DF:
            with np.errstate(divide="ignore"):
                y = (q ** (-float(k)) - 1.0) / a
            return self.base.inverse(_scalar_like(y, q))
        if s is Scheme.MO_SF:
            surv = 1.0 - q
            fbar = surv / (self.alpha + (1.0 - self.alpha) * surv)
        else:
            fbar = _kernel_inv(1.0 - q, a, k)
        return self.base.quantile(_scalar_like(1.0 - fbar, q))

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.scheme is Scheme.HARRIS_MAX_DF:
            return harris_max_draw(self.base, self.hp, rng, n)
        if n < 0:
            raise ParameterError("n", f"sample size must be non-negative, got {n}")
        return np.asarray(self.quantile(rng.random(n)), dtype=float)


def harris_max_transform(base, a, k=1) -> TransformedDistribution:
    return TransformedDistribution(base, Scheme.HARRIS_MAX_DF, HarrisParams(a, k))


def psi_distribution(psi: Psi, hp: HarrisParams) -> TransformedDistribution:
    return TransformedDistribution(psi, Scheme.PSI_DF, hp)


def harris_max_draw(base, hp: HarrisParams, rng: np.random.Generator, n=None, method="auto"):
    """Sample the Harris-maximum law of ``base``.

    ``method="max"`` draws ``N ~ Harris(a, k)`` and returns the largest of
    ``N`` base draws (needs ``a > 1``); ``method="quantile"`` inverts the
    transformed d.f. ``"auto"`` picks the random maximum whenever ``a > 1``.
    """
    size = 1 if n is None else n
    if size < 0:
        raise ParameterError("n", f"sample size must be non-negative, got {n}")
    if method == "auto":
        method = "max" if hp.a > 1 else "quantile"
    if method == "max":
        counts = harris_draw(hp, rng, size)
        if size == 0:
            out = np.empty(0)
        else:
            values = np.asarray(base.draw(rng, int(counts.sum())), dtype=float)
            starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
            out = np.maximum.reduceat(values, starts)
    elif method == "quantile":
        out = np.asarray(harris_max_quantile(base, hp, rng.random(size)), dtype=float)
    else:
        raise ParameterError("method", f"unknown sampling method {method!r}")
    return float(out[0]) if n is None else out
