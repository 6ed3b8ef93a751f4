"""Achievable-rate workbench for the Gaussian two-way channel with uniform
saturating output quantization.

Computes per-direction information rates for Gaussian and constellation
inputs, searches quantizer grain and constellation rotation angle, tests
unique decodability of constellation pairs, builds achievable-rate regions,
and cross-checks every analytic rate against a Monte Carlo estimator.
"""

from .kernels import backend_name
from .model import (
    ChannelConfig,
    Constellation,
    RatePair,
    UniformQuantizer,
    boundaries,
    constellation_from_spec,
    make_pam,
    make_psk,
    quantize,
    rotate,
    unquantized_capacity,
)
from .numerics import (
    QuadratureRule,
    RegionPolygon,
    convex_hull,
    entropy_bits,
    gauss_hermite,
    std_normal_cdf,
)
from .mi_discrete import (
    cell_prob_1d,
    cell_prob_2d,
    cond_mi_discrete,
    output_pmf_given_x2,
    rate_pair_discrete,
)
from .mi_gaussian import (
    cond_mi_gaussian,
    gaussian_cell_pmf,
    unquantized_limit_check,
)
from .montecarlo import McEstimate, mc_cond_mi, mc_cond_mi_gaussian
from .search import (
    SweepResult,
    UdReport,
    achievable_region,
    default_grain_grid,
    default_theta_grid,
    grain_sweep,
    rotation_sweep,
    sum_rate_limit,
    ud_check,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelConfig",
    "Constellation",
    "McEstimate",
    "QuadratureRule",
    "RatePair",
    "RegionPolygon",
    "SweepResult",
    "UdReport",
    "UniformQuantizer",
    "achievable_region",
    "backend_name",
    "boundaries",
    "cell_prob_1d",
    "cell_prob_2d",
    "cond_mi_discrete",
    "cond_mi_gaussian",
    "constellation_from_spec",
    "convex_hull",
    "default_grain_grid",
    "default_theta_grid",
    "entropy_bits",
    "gauss_hermite",
    "gaussian_cell_pmf",
    "grain_sweep",
    "make_pam",
    "make_psk",
    "mc_cond_mi",
    "mc_cond_mi_gaussian",
    "output_pmf_given_x2",
    "quantize",
    "rate_pair_discrete",
    "rotate",
    "rotation_sweep",
    "std_normal_cdf",
    "sum_rate_limit",
    "ud_check",
    "unquantized_capacity",
    "unquantized_limit_check",
    "__version__",
]
