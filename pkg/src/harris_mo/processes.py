"""Max-AR(1) recursions and the gamma-compounded extremal process.

Only the running maximum ``S_n = max_i Y_{i,n}`` of the k-vector is
simulated; both recursions are statements about that maximum alone.

Randomness is per path: path ``i`` of a run with master seed ``s`` draws
from ``default_rng(SeedSequence(s, spawn_key=(i,)))``. Paths are processed
in fixed chunks, so results do not depend on the number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ParameterError

__all__ = [
    "SamplePath",
    "ARConfig",
    "EPConfig",
    "Exponent",
    "PowerExponent",
    "CallableExponent",
    "path_rng",
    "simulate_ar1",
    "simulate_ar1_scaled",
    "simulate_gamma_ep",
    "ep_marginal_cdf",
    "marginal",
]

CHUNK = 512
BISECTION_TOL = 1e-10


def path_rng(seed: int, path_id: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(path_id,)))


@dataclass
class SamplePath:
    path_id: int
    times: np.ndarray
    values: np.ndarray
    seed: int
    clock: np.ndarray | None = None  # T(t) for extremal-process paths


def marginal(paths, index: int) -> np.ndarray:
    """Values of every path at position ``index`` of its time axis."""
    return np.array([p.values[index] for p in paths])


def _run_chunks(n_paths, worker, workers):
    chunks = [(i, min(i + CHUNK, n_paths)) for i in range(0, n_paths, CHUNK)]
    if workers is None or workers <= 1 or len(chunks) == 1:
        results = [worker(lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: worker(*c), chunks))
    return [path for chunk in results for path in chunk]


# ---------------------------------------------------------------- max-AR(1)


@dataclass
class ARConfig:
    """Parameters of the max-AR(1) schemes.

    ``component_dist`` is the law of the ``Y_{i,n}`` (it sets ``S_0``).
    Innovations follow ``innovation_dist``, defaulting to the component law.
    With ``c_scale`` unset the reset scheme runs, otherwise the scaled one.

    For stationarity of the reset scheme the components must be the
    Harris(1/p, k)-maximum of the innovation law (see
    :meth:`harris_stationary`); tying both laws together is the right setup
    only for the scaled scheme.
    """

    p: float
    k: int
    horizon: int
    n_paths: int
    component_dist: object
    c_scale: float | None = None
    innovation_dist: object | None = None

    def __post_init__(self):
        p = float(self.p)
        if not 0 < p <= 1:
            raise ParameterError("p", f"p must lie in (0, 1], got {self.p!r}")
        self.p = p
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
            raise ParameterError("k", f"k must be a positive integer, got {self.k!r}")
        self.k = int(self.k)
        if int(self.horizon) != self.horizon or self.horizon < 1:
            raise ParameterError("steps", f"horizon must be an integer >= 1, got {self.horizon!r}")
        if int(self.n_paths) != self.n_paths or self.n_paths < 1:
            raise ParameterError("paths", f"n_paths must be an integer >= 1, got {self.n_paths!r}")
        self.horizon, self.n_paths = int(self.horizon), int(self.n_paths)
        if self.c_scale is not None:
            c = float(self.c_scale)
            if not math.isfinite(c) or c < 1:
                raise ParameterError(
                    "c",
                    f"c must be >= 1, got {self.c_scale!r}; the scaled recursion divides by c "
                    "and has non-degenerate stationary laws only for c > 1",
                )
            self.c_scale = c

    @property
    def innovations(self):
        return self.component_dist if self.innovation_dist is None else self.innovation_dist

    @classmethod
    def harris_stationary(cls, base, p, k, horizon, n_paths):
        """Reset scheme with Harris(1/p, k)-max components and ``base`` innovations."""
        from .transform import harris_max_transform

        return cls(p, k, horizon, n_paths, harris_max_transform(base, 1.0 / p, k), innovation_dist=base)


def _ar_inputs(cfg: ARConfig, rng):
    # Fixed consumption order shared by both schemes.
    s0 = np.max(cfg.component_dist.draw(rng, cfg.k))
    coins = rng.random(cfg.horizon)
    innov = np.asarray(cfg.innovations.draw(rng, cfg.horizon * cfg.k), dtype=float)
    return s0, coins, innov.reshape(cfg.horizon, cfg.k).max(axis=1)


def _simulate_ar(cfg: ARConfig, seed: int, scaled: bool, workers):
    steps = np.arange(cfg.horizon + 1)
    c = cfg.c_scale if scaled else None

    def worker(lo, hi):
        m = hi - lo
        s = np.empty((m, cfg.horizon + 1))
        coins = np.empty((m, cfg.horizon))
        innov = np.empty((m, cfg.horizon))
        for r, pid in enumerate(range(lo, hi)):
            s[r, 0], coins[r], innov[r] = _ar_inputs(cfg, path_rng(seed, pid))
        reset = coins < cfg.p
        for n in range(1, cfg.horizon + 1):
            prev = s[:, n - 1]
            e = innov[:, n - 1]
            if c is None:
                s[:, n] = np.where(reset[:, n - 1], e, np.maximum(prev, e))
            else:
                shrunk = prev / c
                s[:, n] = np.where(reset[:, n - 1], shrunk, np.maximum(shrunk, e))
        return [SamplePath(pid, steps, s[r], seed) for r, pid in enumerate(range(lo, hi))]

    return _run_chunks(cfg.n_paths, worker, workers)


def simulate_ar1(cfg: ARConfig, seed: int, workers: int | None = None) -> list[SamplePath]:
    """Reset max-AR(1): with probability p, ``S_n = E_n``; else ``max(S_{n-1}, E_n)``.

    ``E_n`` is the maximum of k innovation draws and ``S_0`` the maximum of k
    component draws.
    """
    if cfg.c_scale is not None:
        raise ParameterError("c", "simulate_ar1 runs the unscaled scheme; drop c_scale")
    return _simulate_ar(cfg, seed, False, workers)


def simulate_ar1_scaled(cfg: ARConfig, seed: int, workers: int | None = None) -> list[SamplePath]:
    """Scaled max-AR(1): with probability p, ``S_n = S_{n-1}/c``; else ``max(S_{n-1}/c, E_n)``."""
    if cfg.c_scale is None:
        raise ParameterError("c", "simulate_ar1_scaled needs c_scale")
    return _simulate_ar(cfg, seed, True, workers)


# -------------------------------------------------------- extremal process


class Exponent:
    """Exponent function ``xi`` of a homogeneous extremal process, d.f ``exp(-t*xi)``.

    ``xi`` is non-increasing on ``(bottom, inf)``, infinite at or below the
    bottom, and tends to 0 at infinity.
    """

    bottom = 0.0

    def __call__(self, x):
        raise NotImplementedError

    def inverse(self, y):
        """Smallest ``x`` with ``xi(x) <= y``; ``bottom`` for ``y = inf``."""
        raise NotImplementedError


class PowerExponent(Exponent):
    def __init__(self, theta=1.0):
        theta = float(theta)
        if not (theta > 0 and math.isfinite(theta)):
            raise ParameterError("theta", f"theta must be positive, got {theta!r}")
        self.theta = theta

    def __repr__(self):
        return f"PowerExponent(theta={self.theta!r})"

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            out = np.where(x > 0, np.abs(x) ** -self.theta, np.inf)
        return float(out) if out.ndim == 0 else out

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            out = y ** (-1.0 / self.theta)
        return float(out) if out.ndim == 0 else out


class CallableExponent(Exponent):
    """User-supplied ``xi``; inverted by bisection with a doubling bracket."""

    def __init__(self, fn: Callable, bottom=0.0):
        self.fn = fn
        self.bottom = float(bottom)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.full_like(x, np.inf)
        inside = x > self.bottom
        out[inside] = self.fn(x[inside])
        return float(out) if out.ndim == 0 else out

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        out = np.full_like(y, self.bottom)
        todo = np.isfinite(y)
        out[todo & (y <= 0)] = np.inf
        todo &= y > 0
        yy = y[todo]
        lo = np.full_like(yy, self.bottom)
        width = np.ones_like(yy)
        hi = lo + width
        while True:
            short = self(hi) > yy
            if not short.any():
                break
            width = np.where(short, 2 * width, width)
            lo = np.where(short, hi, lo)
            hi = np.where(short, self.bottom + width, hi)
        while np.any(hi - lo > BISECTION_TOL * np.maximum(1.0, np.abs(hi))):
            mid = 0.5 * (lo + hi)
            above = self(mid) > yy
            lo = np.where(above, mid, lo)
            hi = np.where(above, hi, mid)
        out[todo] = hi
        return float(out) if out.ndim == 0 else out


@dataclass
class EPConfig:
    """Extremal process ``Y`` with d.f ``exp(-t*xi)`` run on a gamma clock.

    The clock ``T`` has independent gamma(shape ``beta*dt``, scale ``alpha``)
    increments, so ``E exp(-s T(t)) = (1 + alpha*s) ** (-beta*t)``.
    """

    xi: Exponent
    alpha_gamma: float
    beta_gamma: float
    time_grid: tuple = (1.0,)
    n_paths: int = 1
    lam: float = field(init=False)

    def __post_init__(self):
        for name in ("alpha_gamma", "beta_gamma"):
            v = float(getattr(self, name))
            if not (v > 0 and math.isfinite(v)):
                flag = "alpha" if name == "alpha_gamma" else "beta"
                raise ParameterError(flag, f"{flag} must be a positive finite number, got {v!r}")
            setattr(self, name, v)
        grid = np.asarray(self.time_grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ParameterError("times", "time grid must be non-empty, positive and strictly increasing")
        self.time_grid = tuple(grid.tolist())
        if int(self.n_paths) != self.n_paths or self.n_paths < 1:
            raise ParameterError("paths", f"n_paths must be an integer >= 1, got {self.n_paths!r}")
        self.n_paths = int(self.n_paths)
        self.lam = self.xi.bottom


def simulate_gamma_ep(cfg: EPConfig, seed: int, workers: int | None = None) -> list[SamplePath]:
    """Simulate ``X(t) = Y(T(t))`` on ``[0] + cfg.time_grid``.

    On each cell the clock advances by ``dT`` and the max-increment ``W``
    with d.f ``exp(-dT*xi)`` is drawn as ``xi^{-1}(E / dT)``, ``E ~ Exp(1)``.
    """
    times = np.concatenate(([0.0], cfg.time_grid))
    shapes = cfg.beta_gamma * np.diff(times)

    def one(pid):
        rng = path_rng(seed, pid)
        dt = rng.gamma(shapes, cfg.alpha_gamma)
        e = rng.standard_exponential(shapes.size)
        with np.errstate(divide="ignore"):
            w = cfg.xi.inverse(np.where(dt > 0, e / np.where(dt > 0, dt, 1.0), np.inf))
        x = np.maximum.accumulate(np.concatenate(([cfg.lam], w)))
        clock = np.concatenate(([0.0], np.cumsum(dt)))
        return SamplePath(pid, times, x, seed, clock)

    def worker(lo, hi):
        return [one(pid) for pid in range(lo, hi)]

    return _run_chunks(cfg.n_paths, worker, workers)


def ep_marginal_cdf(cfg: EPConfig, t, x):
    """``P(X(t) <= x) = (1 / (1 + alpha*xi(x))) ** (beta*t)``; zero at or below the bottom."""
    if t < 0:
        raise ParameterError("t", f"time must be non-negative, got {t!r}")
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = x > cfg.lam
    xi = np.asarray(cfg.xi(x[inside]), dtype=float)
    out[inside] = (1.0 / (1.0 + cfg.alpha_gamma * xi)) ** (cfg.beta_gamma * t)
    return float(out) if out.ndim == 0 else out
