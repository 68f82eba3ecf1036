"""Analytic cdfs of the stochastic-frontier composed error eps = v - u.

Thin python face of the C++ core: normal/Owen's-T/bivariate-normal
primitives, the truncated-normal and exponential family pdfs and cdfs (with
selectable representation and production/cost orientation), the tanh-sinh
quadrature oracle and the deterministic samplers.
"""

try:
    from ._sfcdf import *  # noqa: F401,F403
    from ._sfcdf import __version__  # noqa: F401
except ImportError:  # running against a plain CMake build tree
    from _sfcdf import *  # noqa: F401,F403
    from _sfcdf import __version__  # noqa: F401

__all__ = [
    "std_normal_pdf",
    "std_normal_cdf",
    "log_std_normal_cdf",
    "owen_t",
    "bvn_cdf",
    "tn_pdf",
    "tn_cdf",
    "half_normal_cdf",
    "exp_pdf",
    "exp_cdf",
    "quad_cdf_tn",
    "quad_cdf_exp",
    "sample_trunc_normal",
    "sample_exponential",
    "sample_normal",
    "empirical_quantile",
]
