"""Generalized Marshall-Olkin / Harris parametrization schemes and the
stochastic models built on them."""
from .dist_core import (
    BaseDistribution, Exponential, Family, Frechet, Pareto, Rescaled, Uniform, Weibull,
    draw, eval_cdf, eval_quantile, eval_sf, make_base,
)
from .errors import DomainError, ParameterError
from .harris import HarrisParams, harris_draw, harris_mean, harris_pgf, harris_pmf, harris_support
from .processes import (
    ARConfig, CallableExponent, EPConfig, Exponent, PowerExponent, SamplePath,
    ep_marginal_cdf, marginal, simulate_ar1, simulate_ar1_scaled, simulate_gamma_ep,
)
from .transform import (
    LogCdfPsi, OddsPsi, Psi, PsiFunction, Scheme, TransformedDistribution,
    harris_max_cdf, harris_max_draw, harris_max_quantile, harris_max_transform,
    harris_min_sf, make_semistable_psi, mo_sf, psi_cdf, psi_distribution,
)

__version__ = "0.1.0"
