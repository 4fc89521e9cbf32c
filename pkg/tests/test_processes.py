import math

import numpy as np
import pytest

from harris_mo import (
    ARConfig,
    CallableExponent,
    EPConfig,
    Exponential,
    HarrisParams,
    ParameterError,
    PowerExponent,
    PsiFunction,
    ep_marginal_cdf,
    harris_max_transform,
    make_semistable_psi,
    marginal,
    psi_cdf,
    psi_distribution,
    simulate_ar1,
    simulate_ar1_scaled,
    simulate_gamma_ep,
)
from harris_mo.processes import _ar_inputs, path_rng
from harris_mo.statcheck import empirical_cdf, ks_one_sample, ks_two_sample

EXP = Exponential(1.0)


def values(paths):
    return np.array([p.values for p in paths])


class TestConfig:
    @pytest.mark.parametrize(
        "kwargs, flag",
        [
            (dict(p=0.0), "p"),
            (dict(p=1.2), "p"),
            (dict(k=0), "k"),
            (dict(horizon=0), "steps"),
            (dict(n_paths=0), "paths"),
            (dict(c_scale=0.5), "c"),
        ],
    )
    def test_ar_validation(self, kwargs, flag):
        base = dict(p=0.5, k=1, horizon=5, n_paths=3, component_dist=EXP)
        base.update(kwargs)
        with pytest.raises(ParameterError) as err:
            ARConfig(**base)
        assert err.value.name == flag

    def test_scheme_mismatch(self):
        with pytest.raises(ParameterError):
            simulate_ar1(ARConfig(0.5, 1, 5, 3, EXP, c_scale=2.0), 0)
        with pytest.raises(ParameterError):
            simulate_ar1_scaled(ARConfig(0.5, 1, 5, 3, EXP), 0)

    def test_ep_validation(self):
        with pytest.raises(ParameterError):
            EPConfig(PowerExponent(1), 0.0, 1.0)
        with pytest.raises(ParameterError):
            EPConfig(PowerExponent(1), 1.0, 1.0, (1.0, 0.5))
        with pytest.raises(ParameterError):
            EPConfig(PowerExponent(1), 1.0, 1.0, (0.0, 1.0))


class TestResetAR:
    def test_shape_and_provenance(self):
        paths = simulate_ar1(ARConfig(0.5, 2, 50, 100, EXP), seed=1)
        assert len(paths) == 100
        assert [p.path_id for p in paths] == list(range(100))
        assert all(p.values.shape == (51,) and p.seed == 1 for p in paths)
        assert np.array_equal(paths[0].times, np.arange(51))

    def test_p_one_gives_fresh_innovations(self):
        cfg = ARConfig(1.0, 3, 20, 40, EXP)
        paths = simulate_ar1(cfg, seed=5)
        for p in paths:
            s0, _, innov = _ar_inputs(cfg, path_rng(5, p.path_id))
            assert p.values[0] == s0
            assert np.array_equal(p.values[1:], innov)

    @pytest.mark.parametrize("p, k", [(0.5, 1), (0.2, 2)])
    def test_harris_components_are_stationary(self, p, k):
        paths = simulate_ar1(ARConfig.harris_stationary(EXP, p, k, 200, 10_000), seed=21)
        assert ks_two_sample(marginal(paths, 1), marginal(paths, 200)).passed
        comp = harris_max_transform(EXP, 1 / p, k)
        late = marginal(paths, 200)
        assert ks_one_sample(late, lambda x: comp.cdf(x) ** k).passed

    def test_plain_base_accumulates(self):
        paths = simulate_ar1(ARConfig(0.5, 1, 200, 10_000, EXP), seed=2)
        grid = EXP.quantile(np.linspace(0.3, 0.9, 25))
        early = empirical_cdf(marginal(paths, 1), grid)
        late = empirical_cdf(marginal(paths, 200), grid)
        assert np.all(late < early)
        assert not ks_two_sample(marginal(paths, 1), marginal(paths, 200)).passed

    def test_innovations_tied_to_transformed_components_drift(self):
        # Components and innovations from the same Harris law: the chain moves
        # on to a law built from the Harris(1/p^2, k)-max of the base, so step 1
        # and step 200 differ.
        comp = harris_max_transform(EXP, 5.0, 2)
        paths = simulate_ar1(ARConfig(0.2, 2, 200, 10_000, comp), seed=4)
        assert not ks_two_sample(marginal(paths, 1), marginal(paths, 200)).passed

    @pytest.mark.parametrize("p", [0.5, 0.2, 0.05])
    def test_gamma_mixture_law_is_stationary_for_every_p(self, p):
        # (1 + alpha/x)^(-1/k) is the gamma-compounded marginal at beta*t = 1/k;
        # its Harris(p, k) transform serves as innovation law.
        k, alpha = 2, 1.5
        comp = psi_distribution(PsiFunction(1.0), HarrisParams(alpha, k))
        innov = harris_max_transform(comp, p, k)
        x = np.geomspace(1e-2, 1e2, 50)
        assert np.allclose(harris_max_cdf_of(innov, 1 / p, k, x), comp.cdf(x), rtol=0, atol=1e-14)
        cfg = ARConfig(p, k, 200, 10_000, comp, innovation_dist=innov)
        paths = simulate_ar1(cfg, seed=int(100 * p))
        assert ks_two_sample(marginal(paths, 1), marginal(paths, 200)).passed


def harris_max_cdf_of(dist, a, k, x):
    from harris_mo import harris_max_cdf

    return harris_max_cdf(dist, HarrisParams(a, k), x)


class TestScaledAR:
    def test_p_one_is_pure_scaling(self):
        cfg = ARConfig(1.0, 2, 30, 20, EXP, c_scale=2.0)
        for p in simulate_ar1_scaled(cfg, seed=3):
            assert np.array_equal(p.values, p.values[0] * 0.5 ** np.arange(31))

    @pytest.mark.parametrize("a, c, k", [(2, 2, 1), (4, 2, 2), (3, 1.5, 3)])
    def test_semistable_law_is_stationary(self, a, c, k):
        comp = psi_distribution(make_semistable_psi(a, c), HarrisParams(1, k))
        paths = simulate_ar1_scaled(ARConfig(1 / a, k, 200, 10_000, comp, c_scale=c), seed=9)
        assert ks_two_sample(marginal(paths, 1), marginal(paths, 200)).passed
        assert ks_one_sample(marginal(paths, 200), lambda x: comp.cdf(x) ** k).passed

    def test_semistable_with_ripple(self):
        comp = psi_distribution(make_semistable_psi(2, 2, 0.05), HarrisParams(1, 2))
        paths = simulate_ar1_scaled(ARConfig(0.5, 2, 100, 10_000, comp, c_scale=2), seed=10)
        assert ks_two_sample(marginal(paths, 1), marginal(paths, 100)).passed

    def test_unit_c_shares_the_random_stream_with_reset_scheme(self):
        cfg = ARConfig(0.3, 2, 60, 50, EXP, c_scale=1.0)
        scaled = simulate_ar1_scaled(cfg, seed=8)
        reset = simulate_ar1(ARConfig(0.3, 2, 60, 50, EXP), seed=8)
        for ps, pr in zip(scaled, reset):
            s0, coins, innov = _ar_inputs(cfg, path_rng(8, ps.path_id))
            keep = coins >= 0.3
            # c = 1 keeps S on reset steps instead of replacing it.
            expected = np.maximum.accumulate(np.concatenate(([s0], np.where(keep, innov, -np.inf))))
            assert np.array_equal(ps.values, expected)
            first_reset = int(np.argmax(~keep)) if (~keep).any() else cfg.horizon
            assert np.array_equal(ps.values[: first_reset + 1], pr.values[: first_reset + 1])


class TestExtremalProcess:
    def test_marginal_examples(self):
        cfg = EPConfig(PowerExponent(1.0), 1.0, 1.0)
        assert ep_marginal_cdf(cfg, 1.0, 1.0) == 0.5
        assert np.all(ep_marginal_cdf(cfg, 0.0, np.array([0.1, 1, 10])) == 1.0)
        assert ep_marginal_cdf(cfg, 1.0, 0.0) == 0.0
        assert ep_marginal_cdf(cfg, 1.0, -3.0) == 0.0

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_marginal_matches_psi_form(self, k):
        cfg = EPConfig(PowerExponent(2.0), 1.7, 0.5)
        x = np.geomspace(1e-3, 1e3, 1000)
        m = ep_marginal_cdf(cfg, 1 / (k * 0.5), x)
        assert np.max(np.abs(m - psi_cdf(PsiFunction(2.0, scale=1.7), HarrisParams(1, k), x))) <= 1e-12

    def test_paths(self):
        cfg = EPConfig(PowerExponent(1.0), 1.0, 1.0, (0.5, 1.0, 2.0), 2000)
        paths = simulate_gamma_ep(cfg, seed=1)
        v = values(paths)
        assert np.all(np.diff(v, axis=1) >= 0)
        assert np.all(v[:, 0] == 0.0)
        assert np.all(np.diff(np.array([p.clock for p in paths]), axis=1) >= 0)
        assert np.array_equal(paths[0].times, [0.0, 0.5, 1.0, 2.0])

    def test_clock_mean(self):
        alpha, beta = 1.5, 0.7
        cfg = EPConfig(PowerExponent(1.0), alpha, beta, (0.5, 2.0), 20_000)
        clock = np.array([p.clock for p in simulate_gamma_ep(cfg, seed=2)])
        for i, t in enumerate((0.5, 2.0), start=1):
            T = clock[:, i]
            assert abs(T.mean() - alpha * beta * t) < 3 * T.std() / math.sqrt(T.size)

    def test_zero_clock_increment_stays_at_bottom(self):
        # Shape 1e-300 makes every gamma draw 0 in double precision.
        cfg = EPConfig(PowerExponent(1.0), 1.0, 1e-300, (1.0,), 50)
        v = values(simulate_gamma_ep(cfg, seed=3))
        assert np.all(v == 0.0)

    @pytest.mark.parametrize("theta", [1.0, 2.0])
    def test_marginals_ks(self, theta):
        cfg = EPConfig(PowerExponent(theta), 1.0, 1.0, (0.5, 1.0, 2.0), 20_000)
        paths = simulate_gamma_ep(cfg, seed=12)
        for i, t in enumerate(cfg.time_grid, start=1):
            assert ks_one_sample(marginal(paths, i), lambda x: ep_marginal_cdf(cfg, t, x)).passed

    def test_callable_exponent_inverse(self):
        xi = CallableExponent(lambda x: 1.0 / x)
        y = np.geomspace(1e-3, 1e3, 100)
        assert np.allclose(xi.inverse(y), 1 / y, rtol=1e-9)
        assert xi.inverse(np.inf) == 0.0
        assert xi.inverse(0.0) == math.inf

    def test_callable_exponent_with_bottom(self):
        # xi(x) = 1/(x - 1) on x > 1
        xi = CallableExponent(lambda x: 1.0 / (x - 1.0), bottom=1.0)
        cfg = EPConfig(xi, 2.0, 0.5, (1.0, 3.0), 10_000)
        assert cfg.lam == 1.0
        paths = simulate_gamma_ep(cfg, seed=4)
        assert np.all(values(paths)[:, 0] == 1.0)
        for i, t in enumerate(cfg.time_grid, start=1):
            assert ks_one_sample(marginal(paths, i), lambda x: ep_marginal_cdf(cfg, t, x)).passed


@pytest.mark.parametrize("n_paths", [1, 700, 1500])
def test_concurrency_does_not_change_results(n_paths):
    ar = ARConfig.harris_stationary(EXP, 0.3, 2, 30, n_paths)
    a1 = values(simulate_ar1(ar, seed=6, workers=1))
    a4 = values(simulate_ar1(ar, seed=6, workers=4))
    assert np.array_equal(a1, a4)
    ep = EPConfig(PowerExponent(1.0), 1.0, 1.0, (1.0, 2.0), n_paths)
    e1 = values(simulate_gamma_ep(ep, seed=6, workers=1))
    e3 = values(simulate_gamma_ep(ep, seed=6, workers=3))
    assert np.array_equal(e1, e3)


def test_path_prefix_independent_of_path_count():
    ar = ARConfig(0.5, 1, 10, 50, EXP)
    small = values(simulate_ar1(ar, seed=7))
    ar.n_paths = 600
    big = values(simulate_ar1(ar, seed=7))
    assert np.array_equal(small, big[:50])
