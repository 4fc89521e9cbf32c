"""Exit criteria for the package, runnable with or without pytest.

Each ``criterion_*`` function returns a :class:`Outcome`; ``run_all``
evaluates them in order. ``harris-mo check --acceptance`` and
``tests/test_acceptance.py`` are thin wrappers around this module.
"""
from __future__ import annotations

import math
import subprocess
import sys
import time
from dataclasses import dataclass

import numpy as np

from .dist_core import Exponential, Frechet, Pareto, Rescaled, Uniform, Weibull
from .harris import HarrisParams, harris_draw, harris_pmf
from .processes import (
    ARConfig,
    EPConfig,
    PowerExponent,
    ep_marginal_cdf,
    marginal,
    simulate_ar1,
    simulate_ar1_scaled,
    simulate_gamma_ep,
)
from .statcheck import harris_chi_square, ks_one_sample, ks_two_sample, pgf_coeff_oracle
from .transform import (
    LogCdfPsi,
    OddsPsi,
    PsiFunction,
    harris_max_cdf,
    harris_max_draw,
    harris_max_transform,
    harris_min_sf,
    make_semistable_psi,
    mo_sf,
    psi_cdf,
    psi_distribution,
)

GRID_POINTS = 1000
AR_PATHS = 10_000
AR_LATE_STEP = 200
EP_PATHS = 100_000
HARRIS_DRAWS = 1_000_000
MAX_DRAWS = 100_000


@dataclass
class Outcome:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def base_families():
    return [
        Exponential(1.5),
        Weibull(2.0, 1.3),
        Pareto(3.0, 1.0),
        Frechet(2.5, 1.0),
        Uniform(-1.0, 2.0),
    ]


def family_grid(dist, n=GRID_POINTS):
    """``n`` points covering the bulk and both tails of ``dist``."""
    q = np.linspace(0.0, 1.0, n + 2)[1:-1]
    return np.asarray(dist.quantile(q), dtype=float)


def _max_err(a, b):
    return float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))))


def criterion_spot_values() -> Outcome:
    e = Exponential(1.0)
    hp = HarrisParams(2.0, 2)
    x = math.log(2.0)
    expected = math.sqrt(0.25 / 1.75)
    errs = [
        abs(harris_min_sf(e, hp, x) - expected),
        abs(harris_max_cdf(e, hp, x) - expected),
        abs(mo_sf(e, 2.0, x) - 2.0 / 3.0),
    ]
    return Outcome(1, "closed-form spot values", max(errs) <= 1e-14, f"max error {max(errs):.2e} (tol 1e-14)")


def criterion_reductions() -> Outcome:
    worst = 0.0
    for f in base_families():
        x = family_grid(f)
        for k in (1, 2, 3):
            hp = HarrisParams(1.0, k)
            worst = max(worst, _max_err(harris_max_cdf(f, hp, x), f.cdf(x)))
            worst = max(worst, _max_err(harris_min_sf(f, hp, x), f.sf(x)))
        worst = max(worst, _max_err(mo_sf(f, 1.0, x), f.sf(x)))
        for a in (0.3, 2.0, 7.5):
            worst = max(worst, _max_err(harris_min_sf(f, HarrisParams(a, 1), x), mo_sf(f, 1.0 / a, x)))
    return Outcome(2, "identity and k=1 reductions", worst <= 1e-14, f"max error {worst:.2e} (tol 1e-14)")


def criterion_composition() -> Outcome:
    worst = 0.0
    for f in base_families():
        x = family_grid(f)
        for a, b in ((2.0, 1.5), (3.0, 3.0), (0.5, 4.0)):
            for k in (1, 2, 3):
                once = harris_max_transform(f, a, k)
                lhs = harris_max_cdf(once, HarrisParams(b, k), x)
                rhs = harris_max_cdf(f, HarrisParams(a * b, k), x)
                worst = max(worst, _max_err(lhs, rhs))
    return Outcome(3, "Harris-max composition a then b equals a*b", worst <= 1e-12, f"max error {worst:.2e} (tol 1e-12)")


def criterion_pmf_oracle() -> Outcome:
    worst = 0.0
    for a, k in ((2.0, 1), (2.0, 2), (5.0, 3), (1.5, 4)):
        hp = HarrisParams(a, k)
        for j in range(31):
            worst = max(worst, abs(pgf_coeff_oracle(hp, j) - harris_pmf(hp, j)))
    return Outcome(4, "pmf matches Cauchy-integral coefficients", worst <= 1e-8, f"max error {worst:.2e} (tol 1e-8)")


def criterion_samplers(seed=20240601) -> Outcome:
    notes, ok = [], True
    for i, (a, k) in enumerate(((2.0, 1), (2.0, 2), (5.0, 3))):
        hp = HarrisParams(a, k)
        n = harris_draw(hp, np.random.default_rng([seed, i]), HARRIS_DRAWS)
        rep = harris_chi_square(hp, n)
        se = n.std(ddof=1) / math.sqrt(n.size)
        mean_ok = abs(n.mean() - a) < 3 * se
        ok &= rep.passed and mean_ok
        notes.append(f"({a:g},{k}) chi2 {rep.statistic:.1f}<{rep.critical_value_1pct:.1f} mean {n.mean():.4f}")
    e = Exponential(1.0)
    hp = HarrisParams(2.0, 2)
    x = harris_max_draw(e, hp, np.random.default_rng([seed, 99]), MAX_DRAWS)
    ks = ks_one_sample(x, lambda t: harris_max_cdf(e, hp, t))
    ok &= ks.passed
    notes.append(f"max-draw KS {ks.statistic:.5f}<{ks.critical_value_1pct:.5f}")
    return Outcome(5, "Harris and Harris-max samplers", bool(ok), "; ".join(notes))


def criterion_psi_identities() -> Outcome:
    worst = 0.0
    for f in base_families():
        x = family_grid(f)
        odds, logf = OddsPsi(f), LogCdfPsi(f)
        # 1/(1+psi) with psi = Fbar/F is F itself.
        worst = max(worst, _max_err(psi_cdf(odds, HarrisParams(1.0, 1), x), f.cdf(x)))
        for a, k in ((0.5, 1), (2.0, 2), (3.0, 3)):
            hp = HarrisParams(a, k)
            for psi in (odds, logf):
                inner = psi_distribution(psi, HarrisParams(1.0, k))
                worst = max(worst, _max_err(psi_cdf(psi, hp, x), harris_max_cdf(inner, hp, x)))
            # psi = -log F generates a family closed under Harris maxima.
            for b in (1.5, 4.0):
                lhs = harris_max_cdf(psi_distribution(logf, hp), HarrisParams(b, k), x)
                worst = max(worst, _max_err(lhs, psi_cdf(logf, HarrisParams(a * b, k), x)))
    x = np.geomspace(1e-3, 1e3, GRID_POINTS)
    for psi in (PsiFunction(1.0), PsiFunction(2.0, 0.05, 2.0)):
        for a, k in ((2.0, 2), (0.5, 3)):
            hp = HarrisParams(a, k)
            inner = psi_distribution(psi, HarrisParams(1.0, k))
            worst = max(worst, _max_err(psi_cdf(psi, hp, x), harris_max_cdf(inner, hp, x)))
    return Outcome(6, "psi construction identities", worst <= 1e-14, f"max error {worst:.2e} (tol 1e-14)")


def criterion_semistable() -> Outcome:
    worst_fe = worst_cdf = 0.0
    x = np.geomspace(1e-2, 1e2, GRID_POINTS)
    for a, c in ((2.0, 2.0), (4.0, 2.0)):
        for eps in (0.0, 0.05):
            psi = make_semistable_psi(a, c, eps)
            fe = np.abs(psi(x) - a * psi(c * x)) / psi(x)
            worst_fe = max(worst_fe, float(fe.max()))
            for k in (1, 2, 3):
                f = psi_distribution(psi, HarrisParams(1.0, k))
                lhs = harris_max_cdf(Rescaled(f, c), HarrisParams(a, k), x)
                worst_cdf = max(worst_cdf, _max_err(lhs, f.cdf(x)))
    ok = worst_fe <= 1e-12 and worst_cdf <= 1e-12
    return Outcome(
        7,
        "semi-stable psi and d.f invariance",
        ok,
        f"functional equation rel. error {worst_fe:.2e}, d.f error {worst_cdf:.2e} (tol 1e-12)",
    )


def criterion_ar_stationarity(seed=7, workers=None) -> Outcome:
    notes, ok = [], True
    e = Exponential(1.0)
    for p, k in ((0.5, 1), (0.2, 2)):
        cfg = ARConfig.harris_stationary(e, p, k, AR_LATE_STEP, AR_PATHS)
        paths = simulate_ar1(cfg, seed, workers)
        rep = ks_two_sample(marginal(paths, 1), marginal(paths, AR_LATE_STEP))
        control = ARConfig(p, k, AR_LATE_STEP, AR_PATHS, e)
        cpaths = simulate_ar1(control, seed, workers)
        crep = ks_two_sample(marginal(cpaths, 1), marginal(cpaths, AR_LATE_STEP))
        ok &= rep.passed and not crep.passed
        notes.append(
            f"(p={p:g},k={k}) KS {rep.statistic:.4f}<{rep.critical_value_1pct:.4f}, "
            f"control {crep.statistic:.4f} rejected={not crep.passed}"
        )
    return Outcome(8, "reset max-AR(1) stationarity", bool(ok), "; ".join(notes))


def criterion_scaled_ar_stationarity(seed=11, workers=None) -> Outcome:
    notes, ok = [], True
    for a, c in ((2.0, 2.0), (4.0, 2.0)):
        for k in (1, 2):
            comp = psi_distribution(make_semistable_psi(a, c, 0.0), HarrisParams(1.0, k))
            cfg = ARConfig(1.0 / a, k, AR_LATE_STEP, AR_PATHS, comp, c_scale=c)
            paths = simulate_ar1_scaled(cfg, seed, workers)
            rep = ks_two_sample(marginal(paths, 1), marginal(paths, AR_LATE_STEP))
            ok &= rep.passed
            notes.append(f"(a={a:g},c={c:g},k={k}) {rep.statistic:.4f}<{rep.critical_value_1pct:.4f}")
    return Outcome(9, "scaled max-AR(1) semi-stable stationarity", bool(ok), "; ".join(notes))


def criterion_gamma_ep(seed=3, workers=None) -> Outcome:
    notes, ok = [], True
    grid = (0.5, 1.0, 2.0)
    for theta, alpha, beta in ((1.0, 1.0, 1.0), (2.0, 2.0, 0.5)):
        cfg = EPConfig(PowerExponent(theta), alpha, beta, grid, EP_PATHS)
        paths = simulate_gamma_ep(cfg, seed, workers)
        for i, t in enumerate(grid, start=1):
            rep = ks_one_sample(marginal(paths, i), lambda x, t=t: ep_marginal_cdf(cfg, t, x))
            ok &= rep.passed
            notes.append(f"xi=x^-{theta:g} t={t:g} {rep.statistic:.5f}")
    # Marginal at beta*t = 1/k is the psi d.f with psi = alpha*xi.
    worst = 0.0
    x = np.geomspace(1e-3, 1e3, GRID_POINTS)
    for theta, alpha, beta in ((1.0, 1.0, 1.0), (2.0, 2.0, 0.5), (0.7, 3.0, 2.0)):
        cfg = EPConfig(PowerExponent(theta), alpha, beta)
        for k in (1, 2, 3):
            m = ep_marginal_cdf(cfg, 1.0 / (k * beta), x)
            worst = max(worst, _max_err(m, psi_cdf(PsiFunction(theta, scale=alpha), HarrisParams(1.0, k), x)))
            worst = max(worst, _max_err(m, psi_cdf(PsiFunction(theta), HarrisParams(alpha, k), x)))
    ok &= worst <= 1e-12
    crit = 1.628 / math.sqrt(EP_PATHS)
    return Outcome(
        10,
        "gamma-compounded extremal process marginals",
        bool(ok),
        f"KS crit {crit:.5f}: " + ", ".join(notes) + f"; psi-form error {worst:.2e} (tol 1e-12)",
    )


DETERMINISM_COMMANDS = [
    ["eval", "--scheme", "harris-max", "--base", "exp", "--rate", "1", "--a", "2", "--k", "2", "--x", "0.693147", "1.5"],
    ["sample", "--scheme", "harris", "--a", "2", "--k", "1", "--n", "50", "--seed", "7"],
    ["sample", "--scheme", "harris-max", "--base", "weibull", "--shape", "1.5", "--a", "3", "--k", "2", "--n", "200", "--seed", "8"],
    ["sample", "--scheme", "psi", "--a", "2", "--c", "2", "--epsilon", "0.05", "--k", "2", "--n", "200", "--seed", "9"],
    ["ar", "--p", "0.5", "--k", "2", "--paths", "1500", "--steps", "20", "--seed", "1"],
    ["ar", "--p", "0.25", "--k", "1", "--c", "2", "--paths", "1500", "--steps", "20", "--seed", "2"],
    ["ep", "--theta", "1", "--alpha", "1", "--beta", "1", "--times", "0.5,1,2", "--paths", "1500", "--seed", "3"],
]


def _cli(argv):
    proc = subprocess.run(
        [sys.executable, "-m", "harris_mo", *argv], capture_output=True, check=False
    )
    return proc.returncode, proc.stdout


def criterion_determinism() -> Outcome:
    bad = []
    for cmd in DETERMINISM_COMMANDS:
        runs = [_cli(cmd), _cli(cmd)]
        if cmd[0] in ("ar", "ep"):
            runs.append(_cli(cmd + ["--workers", "4"]))
        codes = {r[0] for r in runs}
        outputs = {r[1] for r in runs}
        if codes != {0} or len(outputs) != 1 or not runs[0][1]:
            bad.append(cmd[0])
    detail = f"{len(DETERMINISM_COMMANDS)} commands byte-identical across runs and worker counts"
    if bad:
        detail = "mismatch in: " + ", ".join(bad)
    return Outcome(11, "seeded CLI determinism", not bad, detail)


CRITERIA = [
    criterion_spot_values,
    criterion_reductions,
    criterion_composition,
    criterion_pmf_oracle,
    criterion_samplers,
    criterion_psi_identities,
    criterion_semistable,
    criterion_ar_stationarity,
    criterion_scaled_ar_stationarity,
    criterion_gamma_ep,
    criterion_determinism,
]


def timed(fn) -> Outcome:
    start = time.perf_counter()
    out = fn()
    out.seconds = time.perf_counter() - start
    return out


def run_all(stream=None):
    results = []
    for fn in CRITERIA:
        out = timed(fn)
        results.append(out)
        if stream is not None:
            print(out.line(), file=stream, flush=True)
    return results
