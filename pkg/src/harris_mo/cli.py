"""Command-line front end: ``harris-mo {eval,sample,ar,ep,check}``.

Every subcommand writes CSV with a header row to ``--output`` (default
stdout). Floats carry 17 significant digits. Exit codes: 0 success,
2 usage error, 3 parameter/domain error, 4 failed check.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import math
import shlex
import sys

import numpy as np

from .dist_core import make_base
from .errors import DomainError, ParameterError
from .harris import HarrisParams, harris_draw
from .processes import (
    ARConfig,
    EPConfig,
    PowerExponent,
    ep_marginal_cdf,
    simulate_ar1,
    simulate_ar1_scaled,
    simulate_gamma_ep,
)
from .statcheck import harris_chi_square, ks_one_sample, ks_two_sample
from .transform import (
    PsiFunction,
    Scheme,
    TransformedDistribution,
    harris_max_draw,
    make_semistable_psi,
    psi_distribution,
)

# argparse itself exits with 2 on usage errors.
EXIT_DOMAIN, EXIT_CHECK = 3, 4

# Error ``name`` attributes that do not match their flag spelling.
FLAG_NAMES = {"family": "base", "q": "x", "s": "x", "horizon": "steps", "n_paths": "paths"}

SCHEMES = ["base", "mo", "harris-min", "harris-max", "psi"]


def fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _base_flags():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("base distribution")
    g.add_argument("--base", default="exp", choices=["exp", "weibull", "pareto", "frechet", "uniform"])
    g.add_argument("--rate", type=float, help="exponential rate (default 1)")
    g.add_argument("--shape", type=float, help="weibull/pareto/frechet shape")
    g.add_argument("--scale", type=float, help="weibull/frechet scale (default 1)")
    g.add_argument("--minimum", type=float, help="pareto minimum (default 1)")
    g.add_argument("--lower", type=float, help="uniform lower bound (default 0)")
    g.add_argument("--upper", type=float, help="uniform upper bound (default 1)")
    return p


def _scheme_flags():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("scheme parameters")
    g.add_argument("--alpha", type=float, help="Marshall-Olkin alpha")
    g.add_argument("--a", type=float, default=1.0, help="Harris parameter a (default 1)")
    g.add_argument("--k", type=int, default=1, help="Harris parameter k (default 1)")
    g.add_argument("--theta", type=float, help="psi power exponent")
    g.add_argument("--epsilon", type=float, default=0.0, help="psi log-periodic amplitude")
    g.add_argument("--c", type=float, help="scale constant c > 1")
    return p


def _common_flags():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--output", "-o", default="-", help="CSV destination (default stdout)")
    p.add_argument("--emit-cmdline", action="store_true", help="echo the command line to stderr")
    return p


def build_base(args):
    params = {}
    if args.base == "exp":
        params = {"rate": args.rate if args.rate is not None else 1.0}
    elif args.base in ("weibull", "frechet"):
        params = {"shape": args.shape, "scale": args.scale if args.scale is not None else 1.0}
    elif args.base == "pareto":
        params = {"shape": args.shape, "minimum": args.minimum if args.minimum is not None else 1.0}
    elif args.base == "uniform":
        params = {"lower": args.lower or 0.0, "upper": args.upper if args.upper is not None else 1.0}
    if params.get("shape", 0.0) is None:
        raise ParameterError("shape", f"--base {args.base} needs --shape")
    return make_base(args.base, **params)


def build_psi_distribution(args):
    """``--c`` selects the semi-stable psi for (a, c); otherwise psi = x**-theta."""
    if args.c is not None and args.theta is None:
        psi = make_semistable_psi(args.a, args.c, args.epsilon)
        return psi_distribution(psi, HarrisParams(1.0, args.k))
    if args.theta is None:
        raise ParameterError("theta", "--scheme psi needs --theta (or --c for the semi-stable form)")
    psi = PsiFunction(args.theta, args.epsilon, args.c)
    return psi_distribution(psi, HarrisParams(args.a, args.k))


def build_distribution(args):
    scheme = args.scheme
    if scheme == "psi":
        return build_psi_distribution(args)
    base = build_base(args)
    if scheme == "base":
        return base
    if scheme == "mo":
        if args.alpha is None:
            raise ParameterError("alpha", "--scheme mo needs --alpha")
        return TransformedDistribution(base, Scheme.MO_SF, alpha=args.alpha)
    return TransformedDistribution(base, Scheme(scheme), HarrisParams(args.a, args.k))


@contextlib.contextmanager
def _sink(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def cmd_eval(args):
    dist = build_distribution(args)
    fn = args.fn
    if fn is None:
        fn = "sf" if args.scheme in ("mo", "harris-min") else "cdf"
    x = np.asarray(args.x, dtype=float)
    values = np.atleast_1d(getattr(dist, fn)(x))
    with _sink(args.output) as fh:
        w = _writer(fh)
        w.writerow(["x", "value"])
        for xi, v in zip(x, values):
            w.writerow([fmt(xi), fmt(v)])
    return 0


def cmd_sample(args):
    if args.n < 0:
        raise ParameterError("n", f"--n must be non-negative, got {args.n}")
    rng = np.random.default_rng(args.seed)
    if args.scheme == "harris":
        values = harris_draw(HarrisParams(args.a, args.k), rng, args.n)
    else:
        dist = build_distribution(args)
        if isinstance(dist, TransformedDistribution) and dist.scheme is Scheme.HARRIS_MAX_DF and args.method != "auto":
            values = harris_max_draw(dist.base, dist.hp, rng, args.n, method=args.method)
        else:
            values = dist.draw(rng, args.n)
    with _sink(args.output) as fh:
        w = _writer(fh)
        w.writerow(["index", "value"])
        for i, v in enumerate(values):
            w.writerow([i, fmt(v)])
    return 0


def ar_config(args):
    """Reset scheme without ``--c``, scaled scheme with it.

    ``--component stationary`` uses the laws under which the chain is
    stationary: Harris(1/p, k)-max components over base innovations (reset
    scheme), or the semi-stable psi law with a = 1/p for both (scaled
    scheme). ``--component base`` feeds the plain base law everywhere.
    """
    base = build_base(args)
    p = args.p
    if not 0 < p <= 1:
        raise ParameterError("p", f"p must lie in (0, 1], got {p!r}")
    if args.c is None:
        if args.component == "stationary":
            return ARConfig.harris_stationary(base, p, args.k, args.steps, args.paths)
        return ARConfig(p, args.k, args.steps, args.paths, base)
    if args.component == "stationary":
        if p == 1:
            raise ParameterError("p", "the semi-stable component law needs p < 1 (a = 1/p > 1)")
        comp = psi_distribution(make_semistable_psi(1.0 / p, args.c, args.epsilon), HarrisParams(1.0, args.k))
    else:
        comp = base
    return ARConfig(p, args.k, args.steps, args.paths, comp, c_scale=args.c)


def cmd_ar(args):
    cfg = ar_config(args)
    sim = simulate_ar1 if cfg.c_scale is None else simulate_ar1_scaled
    paths = sim(cfg, args.seed, args.workers)
    with _sink(args.output) as fh:
        w = _writer(fh)
        w.writerow(["path", "step", "value"])
        for path in paths:
            for step, v in zip(path.times, path.values):
                w.writerow([path.path_id, int(step), fmt(v)])
    return 0


def ep_config(args, n_paths=1):
    return EPConfig(PowerExponent(args.theta), args.alpha, args.beta, tuple(args.times), n_paths)


def cmd_ep(args):
    cfg = ep_config(args, args.paths)
    paths = simulate_gamma_ep(cfg, args.seed, args.workers)
    with _sink(args.output) as fh:
        w = _writer(fh)
        w.writerow(["path", "t", "T", "value"])
        for path in paths:
            for t, T, v in zip(path.times, path.clock, path.values):
                w.writerow([path.path_id, fmt(t), fmt(T), fmt(v)])
    return 0


def read_values(path, column="value", where=None):
    """Read one numeric column of a CSV file, optionally filtering ``col=value`` rows."""
    fh = sys.stdin if path == "-" else open(path, newline="")
    try:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or column not in reader.fieldnames:
            raise DomainError("column", f"input has no column {column!r}")
        if where is not None and where[0] not in reader.fieldnames:
            raise DomainError("where", f"input has no column {where[0]!r}")
        out = [
            float(row[column])
            for row in reader
            if where is None or math.isclose(float(row[where[0]]), where[1], rel_tol=1e-12, abs_tol=1e-15)
        ]
    finally:
        if fh is not sys.stdin:
            fh.close()
    if not out:
        raise DomainError("input", "no samples selected from input")
    return np.asarray(out)


def _parse_where(text):
    if text is None:
        return None
    col, sep, val = text.partition("=")
    if not sep:
        raise DomainError("where", f"--where expects COLUMN=VALUE, got {text!r}")
    return col, float(val)


def cmd_check(args):
    if args.acceptance:
        from .acceptance import run_all

        results = run_all(sys.stderr)
        passed = sum(r.passed for r in results)
        with _sink(args.output) as fh:
            w = _writer(fh)
            w.writerow(["criterion", "name", "pass"])
            for r in results:
                w.writerow([r.number, r.name, str(r.passed).lower()])
        print(f"{passed}/{len(results)} criteria passed", file=sys.stderr)
        return 0 if passed == len(results) else EXIT_CHECK

    samples = read_values(args.input, args.column, _parse_where(args.where))
    if args.ks2 is not None:
        other = read_values(args.ks2, args.column, _parse_where(args.where2 or args.where))
        rep = ks_two_sample(samples, other)
        stat, crit, ok = rep.statistic, rep.critical_value_1pct, rep.passed
    elif args.chi2:
        rep = harris_chi_square(HarrisParams(args.a, args.k), samples.astype(np.int64))
        stat, crit, ok = rep.statistic, rep.critical_value_1pct, rep.passed
    else:
        if args.scheme == "ep":
            cfg = ep_config(args)
            t = args.at if args.at is not None else cfg.time_grid[-1]
            cdf = lambda x: ep_marginal_cdf(cfg, t, x)  # noqa: E731
        else:
            cdf = build_distribution(args).cdf
        rep = ks_one_sample(samples, cdf)
        stat, crit, ok = rep.statistic, rep.critical_value_1pct, rep.passed
    with _sink(args.output) as fh:
        w = _writer(fh)
        w.writerow(["statistic", "critical", "pass"])
        w.writerow([fmt(stat), fmt(crit), str(bool(ok)).lower()])
    return 0 if ok else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    common, base, scheme = _common_flags(), _base_flags(), _scheme_flags()
    parser = argparse.ArgumentParser(prog="harris-mo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common, base, scheme], help="evaluate a scheme on points")
    p.add_argument("--scheme", choices=SCHEMES, default="harris-max")
    p.add_argument("--x", type=float, nargs="+", required=True)
    p.add_argument("--fn", choices=["cdf", "sf", "quantile"], help="default: sf for mo/harris-min, cdf otherwise")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sample", parents=[common, base, scheme], help="draw variates")
    p.add_argument("--scheme", choices=SCHEMES + ["harris"], default="harris-max")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--method", choices=["auto", "max", "quantile"], default="auto", help="harris-max sampling route")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ar", parents=[common, base], help="simulate a max-AR(1) chain")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--c", type=float, help="run the scaled recursion with this c >= 1")
    p.add_argument("--epsilon", type=float, default=0.0, help="ripple of the semi-stable component law")
    p.add_argument("--component", choices=["stationary", "base"], default="stationary")
    p.add_argument("--paths", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_ar)

    p = sub.add_parser("ep", parents=[common], help="simulate the gamma-compounded extremal process")
    p.add_argument("--theta", type=float, default=1.0, help="exponent xi(x) = x**-theta")
    p.add_argument("--alpha", type=float, default=1.0, help="gamma scale")
    p.add_argument("--beta", type=float, default=1.0, help="gamma shape per unit time")
    p.add_argument("--times", type=_floats, default=[1.0], help="comma-separated time grid")
    p.add_argument("--paths", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_ep)

    p = sub.add_parser("check", parents=[common, base, scheme], help="goodness-of-fit checks and the acceptance suite")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ks", action="store_true", help="one-sample KS against --scheme")
    mode.add_argument("--ks2", metavar="CSV", help="two-sample KS against another CSV")
    mode.add_argument("--chi2", action="store_true", help="chi-square of Harris counts against the pmf")
    mode.add_argument("--acceptance", action="store_true", help="run every acceptance criterion")
    p.add_argument("--input", "-i", default="-", help="CSV to test (default stdin)")
    p.add_argument("--column", default="value")
    p.add_argument("--where", help="keep rows with COLUMN=VALUE, e.g. step=200 or t=1")
    p.add_argument("--where2", help="row filter for the --ks2 file (default: --where)")
    p.add_argument("--scheme", choices=SCHEMES + ["ep"], default="harris-max")
    p.add_argument("--beta", type=float, default=1.0, help="gamma shape per unit time (--scheme ep)")
    p.add_argument("--times", type=_floats, default=[1.0], help="time grid (--scheme ep)")
    p.add_argument("--at", type=float, help="time of the marginal (--scheme ep)")
    p.set_defaults(func=cmd_check)
    return parser


def _ep_alpha_default(args):
    # ``check --scheme ep`` reuses --alpha/--theta from the scheme group.
    if getattr(args, "scheme", None) == "ep":
        args.alpha = 1.0 if args.alpha is None else args.alpha
        args.theta = 1.0 if args.theta is None else args.theta


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    if args.emit_cmdline:
        print(shlex.join(["harris-mo", *argv]), file=sys.stderr)
    _ep_alpha_default(args)
    try:
        return args.func(args)
    except (ParameterError, DomainError) as exc:
        flag = FLAG_NAMES.get(exc.name, exc.name).replace("_", "-")
        print(f"harris-mo: error: --{flag}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
