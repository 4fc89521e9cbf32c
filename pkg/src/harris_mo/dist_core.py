"""Base parametric continuous distributions.

Every family exposes ``cdf``, ``sf``, ``quantile`` and ``draw`` with closed
forms; sampling is always by inverse transform of uniforms taken from a
``numpy.random.Generator``. Evaluators accept scalars or arrays and return
the same shape.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
    "Family",
    "BaseDistribution",
    "Exponential",
    "Weibull",
    "Pareto",
    "Frechet",
    "Uniform",
    "Rescaled",
    "make_base",
    "eval_cdf",
    "eval_sf",
    "eval_quantile",
    "draw",
    "check_probability",
]


class Family(str, enum.Enum):
    EXPONENTIAL = "exp"
    WEIBULL = "weibull"
    PARETO = "pareto"
    FRECHET = "frechet"
    UNIFORM = "uniform"


def _positive(name, value):
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ParameterError(name, f"{name} must be a positive finite number, got {value!r}")
    return value


def check_probability(q, name="q"):
    """Return ``q`` as a float array, raising if any entry is outside [0, 1]."""
    q = np.asarray(q, dtype=float)
    if np.any(np.isnan(q)) or np.any((q < 0) | (q > 1)):
        raise DomainError(name, f"{name} must lie in [0, 1]")
    return q


def _out(values, like):
    # Scalars in, scalars out.
    if np.ndim(like) == 0:
        return float(values)
    return values


class BaseDistribution:
    """Common interface of the five base families.

    Subclasses implement ``_cdf`` and ``_quantile`` on float arrays (already
    known to lie in the support / in [0, 1]); clipping to the support and
    scalar handling live here.
    """

    family: Family
    lower: float = 0.0
    upper: float = math.inf

    @property
    def support(self):
        return (self.lower, self.upper)

    @property
    def params(self) -> dict:
        raise NotImplementedError

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        inside = (x > self.lower) & (x < self.upper)
        out[inside] = self._cdf(x[inside])
        out[x >= self.upper] = 1.0
        return _out(out, x)

    def sf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        inside = (x > self.lower) & (x < self.upper)
        out[inside] = self._sf(x[inside])
        out[x >= self.upper] = 0.0
        return _out(out, x)

    def _sf(self, x):
        return 1.0 - self._cdf(x)

    def quantile(self, q):
        q = check_probability(q)
        out = np.empty_like(q)
        out[q == 0] = self.lower
        out[q == 1] = self.upper
        inner = (q > 0) & (q < 1)
        out[inner] = self._quantile(q[inner])
        return _out(out, q)

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if n < 0:
            raise ParameterError("n", f"sample size must be non-negative, got {n}")
        return np.asarray(self.quantile(rng.random(n)), dtype=float)

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{type(self).__name__}({args})"

    def __eq__(self, other):
        return type(self) is type(other) and self.params == other.params

    def __hash__(self):
        return hash((type(self), tuple(self.params.items())))


class Exponential(BaseDistribution):
    family = Family.EXPONENTIAL

    def __init__(self, rate=1.0):
        self.rate = _positive("rate", rate)

    @property
    def params(self):
        return {"rate": self.rate}

    def _cdf(self, x):
        return -np.expm1(-self.rate * x)

    def _sf(self, x):
        return np.exp(-self.rate * x)

    def _quantile(self, q):
        return -np.log1p(-q) / self.rate


class Weibull(BaseDistribution):
    family = Family.WEIBULL

    def __init__(self, shape, scale=1.0):
        self.shape = _positive("shape", shape)
        self.scale = _positive("scale", scale)

    @property
    def params(self):
        return {"shape": self.shape, "scale": self.scale}

    def _cdf(self, x):
        return -np.expm1(-((x / self.scale) ** self.shape))

    def _sf(self, x):
        return np.exp(-((x / self.scale) ** self.shape))

    def _quantile(self, q):
        return self.scale * (-np.log1p(-q)) ** (1.0 / self.shape)


class Pareto(BaseDistribution):
    """Pareto type I: ``sf(x) = (minimum / x) ** shape`` for ``x >= minimum``."""

    family = Family.PARETO

    def __init__(self, shape, minimum=1.0):
        self.shape = _positive("shape", shape)
        self.minimum = _positive("minimum", minimum)
        self.lower = self.minimum

    @property
    def params(self):
        return {"shape": self.shape, "minimum": self.minimum}

    def _cdf(self, x):
        return -np.expm1(self.shape * np.log(self.minimum / x))

    def _sf(self, x):
        return (self.minimum / x) ** self.shape

    def _quantile(self, q):
        return self.minimum * (1.0 - q) ** (-1.0 / self.shape)


class Frechet(BaseDistribution):
    family = Family.FRECHET

    def __init__(self, shape, scale=1.0):
        self.shape = _positive("shape", shape)
        self.scale = _positive("scale", scale)

    @property
    def params(self):
        return {"shape": self.shape, "scale": self.scale}

    def _cdf(self, x):
        with np.errstate(over="ignore"):
            return np.exp(-((x / self.scale) ** -self.shape))

    def _sf(self, x):
        with np.errstate(over="ignore"):
            return -np.expm1(-((x / self.scale) ** -self.shape))

    def _quantile(self, q):
        return self.scale * (-np.log(q)) ** (-1.0 / self.shape)


class Uniform(BaseDistribution):
    family = Family.UNIFORM

    def __init__(self, lower=0.0, upper=1.0):
        lower, upper = float(lower), float(upper)
        if not (math.isfinite(lower) and math.isfinite(upper)):
            raise ParameterError("lower", "uniform bounds must be finite")
        if not upper > lower:
            raise ParameterError("upper", f"upper must exceed lower, got [{lower}, {upper}]")
        self.lower, self.upper = lower, upper

    @property
    def params(self):
        return {"lower": self.lower, "upper": self.upper}

    def _cdf(self, x):
        return (x - self.lower) / (self.upper - self.lower)

    def _sf(self, x):
        return (self.upper - x) / (self.upper - self.lower)

    def _quantile(self, q):
        return self.lower + q * (self.upper - self.lower)


class Rescaled:
    """Law of ``X / factor`` for ``X ~ dist``: ``cdf(x) = dist.cdf(factor * x)``."""

    def __init__(self, dist, factor):
        self.dist = dist
        self.factor = _positive("factor", factor)

    @property
    def support(self):
        lo, hi = self.dist.support
        return (lo / self.factor, hi / self.factor)

    def cdf(self, x):
        return self.dist.cdf(np.multiply(self.factor, x))

    def sf(self, x):
        return self.dist.sf(np.multiply(self.factor, x))

    def quantile(self, q):
        return np.divide(self.dist.quantile(q), self.factor)

    def draw(self, rng, n):
        return self.dist.draw(rng, n) / self.factor


_FAMILIES = {
    Family.EXPONENTIAL: Exponential,
    Family.WEIBULL: Weibull,
    Family.PARETO: Pareto,
    Family.FRECHET: Frechet,
    Family.UNIFORM: Uniform,
}


def make_base(family, **params) -> BaseDistribution:
    """Build a base distribution from a family name and keyword parameters.

    >>> make_base("exp", rate=2.0)
    Exponential(rate=2.0)
    """
    try:
        cls = _FAMILIES[Family(family)]
    except ValueError:
        raise ParameterError("family", f"unknown family {family!r}") from None
    return cls(**params)


def eval_cdf(dist, x):
    return dist.cdf(x)


def eval_sf(dist, x):
    return dist.sf(x)


def eval_quantile(dist, q):
    return dist.quantile(q)


def draw(dist, rng: np.random.Generator, n: int) -> np.ndarray:
    return dist.draw(rng, n)
