"""
Two-state quantum walks on the integer line with delocalized initial states.

The package evolves walks at the amplitude level, builds initial states from
Fourier coefficients, evaluates the long-time limit densities of X_t / t and
compares the two.
"""

from .analysis import (
    ConvergenceReport,
    MomentReport,
    analytic_moment,
    empirical_moment,
    kolmogorov_distance,
    quad_singular,
    run_convergence,
)
from .density import DensityParams, LimitDensity, analytic_cdf, limit_density
from .errors import (
    DegenerateTheta,
    GridTooSmall,
    IntegerA,
    NoConvergence,
    NotNormalizable,
    OutOfRange,
    OutOfSupport,
    ResourceLimit,
    WalkError,
)
from .initial import (
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Generic,
    InitialSpec,
    Localized,
    SpinVector,
    TruncationPolicy,
    build,
)
from .walk import (
    CoinOperator,
    ProbabilityDistribution,
    WalkState,
    distribution,
    evolve,
    fourier_oracle,
    make_coin,
    step,
)

__version__ = "0.1.0"

__all__ = [
    "CoinOperator", "WalkState", "ProbabilityDistribution", "make_coin", "step", "evolve",
    "distribution", "fourier_oracle",
    "SpinVector", "TruncationPolicy", "InitialSpec", "Localized", "Case1", "Case2", "Case3",
    "Case4", "Case5", "Generic", "build",
    "DensityParams", "LimitDensity", "limit_density", "analytic_cdf",
    "MomentReport", "ConvergenceReport", "quad_singular", "empirical_moment", "analytic_moment",
    "kolmogorov_distance", "run_convergence",
    "WalkError", "DegenerateTheta", "OutOfRange", "ResourceLimit", "GridTooSmall",
    "NotNormalizable", "IntegerA", "OutOfSupport", "NoConvergence",
]
