"""
Comparison of simulated walks with their limit densities.

Moments of X_t / t, the Kolmogorov distance between the empirical CDF of
X_t / t and the analytic CDF, and a one-call driver that builds, evolves and
compares.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .density import LimitDensity, limit_density
from .errors import OutOfRange
from .initial import Generic, InitialSpec, build, describe
from .quadrature import adaptive_gauss
from .walk import CoinOperator, ProbabilityDistribution, distribution, evolve

__all__ = [
    "MomentReport",
    "ConvergenceReport",
    "quad_singular",
    "empirical_moment",
    "analytic_moment",
    "empirical_cdf",
    "kolmogorov_distance",
    "density_for",
    "run_convergence",
]


@dataclass(frozen=True)
class MomentReport:
    r: int
    empirical: float
    analytic: float
    abs_error: float
    t: int

    def to_dict(self) -> dict:
        return {"r": self.r, "empirical": self.empirical, "analytic": self.analytic, "abs_error": self.abs_error}


@dataclass(frozen=True)
class ConvergenceReport:
    """Outcome of one simulate-and-compare run."""

    case: str
    xi: int
    theta: float
    alpha: complex
    beta: complex
    t: int
    kolmogorov: float
    moments: list[MomentReport] = field(default_factory=list)
    truncated_mass: float = 0.0
    runtime_ms: int = 0

    def to_dict(self, timing: bool = True) -> dict:
        """JSON-ready mapping; with ``timing=False`` runtime_ms is 0 so output is reproducible."""
        return {
            "case": self.case,
            "xi": self.xi,
            "theta": self.theta,
            "alpha": [self.alpha.real, self.alpha.imag],
            "beta": [self.beta.real, self.beta.imag],
            "t": self.t,
            "kolmogorov": self.kolmogorov,
            "moments": [m.to_dict() for m in self.moments],
            "truncated_mass": self.truncated_mass,
            "runtime_ms": self.runtime_ms if timing else 0,
        }


def quad_singular(
    f: Callable | LimitDensity,
    coin: CoinOperator,
    interior_splits: Sequence[float] = (),
    rtol: float = 1e-8,
) -> float:
    """
    Integrate f over (-|c|, |c|) after substituting x = |c| sin u.

    The substitution turns the 1/sqrt(c^2 - x^2) endpoint behaviour of the
    limit densities into a bounded integrand.  A `LimitDensity` is integrated
    through its own `weighted` form, which never forms c^2 - x^2 by
    subtraction.  For a plain callable, ``f(x) * |c| cos u`` is integrated.

    Raises
    ------
    NoConvergence
        If a panel needs more than 40 bisections.
    """
    c = abs(coin.c)
    edges = {-0.5 * math.pi, 0.5 * math.pi}
    for x in interior_splits:
        if not -c < x < c:
            raise OutOfRange(f"split {x!r} is not inside the support")
        edges.add(math.asin(x / c))
    if isinstance(f, LimitDensity):
        g = f.weighted
    else:
        def g(u):
            return f(c * np.sin(u)) * (c * np.cos(u))
    return adaptive_gauss(g, sorted(edges), rtol=rtol, atol=1e-14).integral


def empirical_moment(dist: ProbabilityDistribution, r: int) -> float:
    """sum_x (x/t)^r P(X_t = x)."""
    if dist.time <= 0:
        raise OutOfRange("moments of X_t/t need t >= 1")
    if r < 0:
        raise OutOfRange(f"moment order must be nonnegative, got {r}")
    scaled = dist.positions / dist.time
    return math.fsum((scaled ** r * dist.probs).tolist())


def analytic_moment(density: LimitDensity, r: int) -> float:
    """Integral of x^r times the density, using the density's interior splits."""
    if r < 0:
        raise OutOfRange(f"moment order must be nonnegative, got {r}")
    if r == 0:
        return quad_singular(density, density.params.coin, density.splits, rtol=1e-10)
    c = density.params.half_width

    def integrand(u):
        return (c * np.sin(u)) ** r * density.weighted(u)

    return adaptive_gauss(integrand, density.u_edges, rtol=1e-10, atol=1e-14).integral


def empirical_cdf(dist: ProbabilityDistribution) -> tuple[np.ndarray, np.ndarray]:
    """
    Evaluation points (x_i - 1/2)/t, plus one point past the last atom, and the
    empirical CDF of X_t/t at each of them.
    """
    order = np.argsort(dist.positions, kind="stable")
    x = dist.positions[order]
    p = dist.probs[order]
    points = np.append(x - 0.5, x[-1] + 0.5) / dist.time
    below = np.concatenate([[0.0], np.cumsum(p)])
    return points, below


def kolmogorov_distance(dist: ProbabilityDistribution, density: LimitDensity) -> float:
    """
    sup |F_emp - F| over the half-integer points (x_i - 1/2)/t.

    Evaluating midway between atoms compares the step function with the
    continuous CDF where the step is unambiguous.
    """
    if dist.time < 1:
        raise OutOfRange("Kolmogorov distance needs t >= 1")
    points, emp = empirical_cdf(dist)
    ana = density.cdf(points)
    return float(min(1.0, np.max(np.abs(emp - ana))))


def density_for(spec: InitialSpec, coin: CoinOperator) -> LimitDensity:
    """Closed-form density for named families, f1 eta1 + f2 eta2 for generic ones."""
    representation = "specialized" if isinstance(spec.kind, Generic) else "closed"
    return limit_density(spec.kind, coin, spec.phi, representation)


def run_convergence(
    spec: InitialSpec,
    coin: CoinOperator,
    t: int,
    orders: Sequence[int] = (1, 2, 3, 4),
) -> ConvergenceReport:
    """
    Build the initial state, evolve it t steps and compare with the limit density.

    Deterministic for fixed inputs apart from ``runtime_ms``.
    """
    if t < 1:
        raise OutOfRange(f"convergence runs need t >= 1, got {t}")
    start = time.perf_counter()
    density = density_for(spec, coin)
    state = evolve(build(spec), coin, t)
    dist = distribution(state)
    ks = kolmogorov_distance(dist, density)
    moments = []
    for r in orders:
        emp = empirical_moment(dist, r)
        ana = analytic_moment(density, r)
        moments.append(MomentReport(int(r), emp, ana, abs(emp - ana), t))
    elapsed = int(round((time.perf_counter() - start) * 1000))
    return ConvergenceReport(
        case=describe(spec.kind),
        xi=coin.xi,
        theta=coin.theta,
        alpha=spec.phi.alpha,
        beta=spec.phi.beta,
        t=t,
        kolmogorov=ks,
        moments=moments,
        truncated_mass=state.truncated_mass,
        runtime_ms=elapsed,
    )
