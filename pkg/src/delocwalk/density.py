"""
Long-time limit densities of X_t / t on the open support (-|c|, |c|).

Three representations are provided:

* the general spectral form, which builds the four-term eta(x) from the
  eigenvector field v(k), the sign matrix J and the momentum profile F;
* the specialized form f1 * eta1 + f2 * eta2, which uses |F|^2 only;
* closed forms f1 * g (Cases 1, 2, 3, 5) and f1 * g3 + f2 * g4 (Case 4).

All three share one internal convention: they compute the density times
``root = sqrt(c^2 - x^2)``.  Dividing by ``root`` gives the density.  With
the substitution x = |c| sin u the Jacobian dx = root du cancels the division,
so the integrand handed to quadrature (`LimitDensity.weighted`) stays finite
at both support endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Union

import numpy as np
from scipy.special import gammaln

from .errors import DegenerateTheta, OutOfSupport
from .initial import (
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
    Generic,
    Localized,
    SpinVector,
    breakpoints as kind_breakpoints,
    momentum_profile,
)
from .quadrature import PanelTable, adaptive_gauss, gauss_on
from .walk import CoinOperator

__all__ = [
    "DensityParams",
    "SpectralHelpers",
    "GeneralSpectral",
    "Specialized",
    "LimitDensity",
    "kappa",
    "f1",
    "f2",
    "spectral_helpers",
    "density_general",
    "density_specialized",
    "g_case",
    "g4",
    "case5_prefactor",
    "limit_density",
    "analytic_cdf",
    "interior_splits",
]

PI = math.pi
_CLAMP = 1e-12


@dataclass(frozen=True)
class DensityParams:
    """Coin and spin vector that fix f1 and f2."""

    coin: CoinOperator
    phi: SpinVector

    def __post_init__(self):
        if abs(self.coin.s) < _CLAMP:
            raise DegenerateTheta(f"limit densities need sin(theta) != 0, got theta={self.coin.theta!r}")
        if abs(self.coin.c) < _CLAMP:
            raise DegenerateTheta(f"limit densities need cos(theta) != 0, got theta={self.coin.theta!r}")

    @property
    def lam(self) -> float:
        """The slope |alpha|^2 - |beta|^2 + (-1)^xi 2 s Re(alpha conj(beta)) / c of f1."""
        a, b = self.phi.alpha, self.phi.beta
        c, s = self.coin.c, self.coin.s
        return abs(a) ** 2 - abs(b) ** 2 + self.coin.sign * 2.0 * s * (a * b.conjugate()).real / c

    @property
    def half_width(self) -> float:
        return abs(self.coin.c)


# --- support handling -------------------------------------------------------


def _root(x: np.ndarray, coin: CoinOperator) -> np.ndarray:
    """sqrt(c^2 - x^2), clamped to 0 inside the 1e-12 band, OutOfSupport beyond it."""
    c = abs(coin.c)
    ax = np.abs(x)
    if np.any(ax > c + _CLAMP) or np.any(np.isnan(x)):
        raise OutOfSupport(f"x outside (-{c!r}, {c!r})")
    return np.sqrt(np.maximum(0.0, (c - ax) * (c + ax)))


def _as_array(x):
    return np.asarray(x, dtype=float), np.ndim(x) == 0


def _out(v, scalar):
    return float(v) if scalar else v


def _kappa_rooted(x, root, coin: CoinOperator):
    # cos(kappa) = |s| x / (c sqrt(1-x^2)) and sin(kappa) = root / (|c| sqrt(1-x^2))
    return np.arctan2(root / abs(coin.c), abs(coin.s) * x / coin.c)


def kappa(x, coin: CoinOperator):
    """
    kappa(x) = arccos(|s| x / (c sqrt(1 - x^2))) in [0, pi].

    Evaluated as an arctangent of the sine and cosine so that the result is
    accurate near the support endpoints, where the arccos argument tends to
    +-1.
    """
    xa, scalar = _as_array(x)
    return _out(_kappa_rooted(xa, _root(xa, coin), coin), scalar)


def _f1_rooted(x, p: DensityParams):
    return abs(p.coin.s) * (1.0 - p.lam * x) / (PI * (1.0 - x * x))


def _f2_plain(x, p: DensityParams):
    a, b = p.phi.alpha, p.phi.beta
    im = (a * b.conjugate()).imag
    return -p.coin.sign * p.coin.s * im / (abs(p.coin.c) * PI * (1.0 - x * x))


def f1(x, p: DensityParams):
    """|s| / (pi (1-x^2) sqrt(c^2-x^2)) * (1 - lam x)."""
    xa, scalar = _as_array(x)
    root = _root(xa, p.coin)
    with np.errstate(divide="ignore"):
        return _out(_f1_rooted(xa, p) / root, scalar)


def f2(x, p: DensityParams):
    """-(-1)^xi s Im(alpha conj(beta)) / (|c| pi (1-x^2))."""
    xa, scalar = _as_array(x)
    _root(xa, p.coin)
    return _out(_f2_plain(xa, p) * np.ones_like(xa), scalar)


# --- general spectral representation ----------------------------------------


@dataclass(frozen=True)
class SpectralHelpers:
    """Group velocity h(k), eigenvector field v(k), its norm N(k) and J."""

    h: Callable
    v: Callable
    N: Callable
    J: np.ndarray


def spectral_helpers(coin: CoinOperator) -> SpectralHelpers:
    c, s = coin.c, coin.s

    def r(k):
        return np.sqrt(1.0 - (c * np.sin(k)) ** 2)

    def h(k):
        k = np.asarray(k, dtype=float)
        return c * np.cos(k) / r(k)

    def norm(k):
        k = np.asarray(k, dtype=float)
        return 1.0 + s * s + c * c * np.cos(2 * k) + 2.0 * c * np.cos(k) * r(k)

    def v(k):
        """Unit vector, shape k.shape + (2,)."""
        k = np.asarray(k, dtype=float)
        q = np.sqrt(norm(k))
        return np.stack([np.exp(1j * k) * s / q, -(c * np.cos(k) + r(k)) / q + 0j], axis=-1)

    J = np.diag([1.0, float(coin.sign)])
    J.flags.writeable = False
    return SpectralHelpers(h=h, v=v, N=norm, J=J)


def _eta_general(kap, F, coin: CoinOperator, phi: SpinVector):
    helpers = spectral_helpers(coin)
    shift = coin.xi * PI / 2
    jphi = helpers.J @ phi.vector

    def term(kv, kf):
        overlap = np.conj(helpers.v(kv)) @ jphi
        return np.abs(overlap * F(kf)) ** 2

    return (
        term(kap, kap + shift)
        + term(kap, kap - PI + shift)
        + term(-kap, -kap + shift)
        + term(-kap, PI - kap + shift)
    )


def _general_rooted(x, root, F, p: DensityParams):
    kap = _kappa_rooted(x, root, p.coin)
    return abs(p.coin.s) / (2 * PI * (1.0 - x * x)) * _eta_general(kap, F, p.coin, p.phi)


def _etas(kap, F, xi: int):
    shift = xi * PI / 2
    a = np.abs(F(kap + shift)) ** 2
    b = np.abs(F(-kap + shift)) ** 2
    c = np.abs(F(kap - PI + shift)) ** 2
    d = np.abs(F(PI - kap + shift)) ** 2
    return 0.25 * (a + b + c + d), 0.5 * (a - b + c - d)


def _specialized_rooted(x, root, F, p: DensityParams):
    eta1, eta2 = _etas(_kappa_rooted(x, root, p.coin), F, p.coin.xi)
    return _f1_rooted(x, p) * eta1 + _f2_plain(x, p) * root * eta2


def density_general(x, F: Callable, coin: CoinOperator, phi: SpinVector):
    """
    Limit density from the four-term eta(x) built with v, J and F.

    Returns 0 outside the open support.
    """
    return _evaluate(x, DensityParams(coin, phi), lambda xx, rr, p: _general_rooted(xx, rr, F, p))


def density_specialized(x, F: Callable, p: DensityParams):
    """Limit density f1 eta1 + f2 eta2; returns 0 outside the open support."""
    return _evaluate(x, p, lambda xx, rr, pp: _specialized_rooted(xx, rr, F, pp))


def _evaluate(x, p: DensityParams, rooted):
    xa, scalar = _as_array(x)
    c = p.half_width
    inside = np.abs(xa) < c
    out = np.zeros(xa.shape)
    if np.any(inside):
        xi = xa[inside]
        root = np.sqrt((c - np.abs(xi)) * (c + np.abs(xi)))
        with np.errstate(divide="ignore", invalid="ignore"):
            out[inside] = rooted(xi, root, p) / root
    return _out(out, scalar)


# --- closed-form g functions ------------------------------------------------


def case5_prefactor(n: int) -> float:
    """sqrt(pi) Gamma(2n+2) / (2 Gamma(2n+3/2)), computed in log space."""
    return math.exp(0.5 * math.log(PI) + gammaln(2 * n + 2) - math.log(2.0) - gammaln(2 * n + 1.5))


def _g_rooted(kind, x, root, coin: CoinOperator):
    """g(x) as a function of x and root = sqrt(c^2 - x^2)."""
    c, s = coin.c, coin.s
    ac, as_ = abs(c), abs(s)
    xi = coin.xi
    one_minus = 1.0 - x * x
    if isinstance(kind, (Case1, Localized)):
        return np.ones_like(x)
    if isinstance(kind, Case2):
        with np.errstate(divide="ignore"):
            if xi == 0:
                arg = 2.0 * as_ * np.abs(x) / (ac * np.sqrt(one_minus))
            else:
                arg = 2.0 * root / (ac * np.sqrt(one_minus))
            return 3.0 / PI ** 2 * (2.0 * np.log(arg)) ** 2
    if isinstance(kind, Case3):
        # the two logarithms in g2 are negatives of each other; keep the
        # one whose argument never cancels
        with np.errstate(divide="ignore"):
            if xi == 0:
                arg = (ac * np.sqrt(one_minus) + root) / (as_ * np.abs(x))
            else:
                arg = (ac * np.sqrt(one_minus) + as_ * np.abs(x)) / root
            return 4.0 / PI ** 2 * np.log(arg) ** 2
    if isinstance(kind, Case4):
        if xi == 0:
            return 2.0 / 7.0 * (3.0 + root * root / (c * c * one_minus))
        return 2.0 / 7.0 * (3.0 + s * s * x * x / (c * c * one_minus))
    if isinstance(kind, Case5):
        n = kind.n
        if n == 0:
            return np.ones_like(x)
        denom = c * c * one_minus
        r1 = s * s * x * x / denom
        r2 = root * root / denom
        return case5_prefactor(n) * (r1 ** (2 * n + 1) + r2 ** (2 * n + 1))
    raise TypeError(f"no closed-form g for {kind!r}")


def _g4_rooted(x, root, coin: CoinOperator):
    c, s = coin.c, coin.s
    ac = abs(c)
    sgn = 1.0 if c > 0 else -1.0
    right = x >= 0
    if coin.xi == 0:
        mag = 8.0 * sgn / 7.0 * (1.0 - root / (ac * np.sqrt(1.0 - x * x)))
        return np.where(right, -mag, mag)
    slope = abs(s) * x / (c * np.sqrt(1.0 - x * x))
    return np.where(right, 8.0 / 7.0 * (sgn - slope), -8.0 / 7.0 * (sgn + slope))


def g_case(kind, x, coin: CoinOperator):
    """
    Case g-function: 1 (Case 1), g1 (Case 2), g2 (Case 3), g3 (Case 4), g5 (Case 5).

    Raises OutOfSupport for |x| >= |c| beyond the clamp band.
    """
    xa, scalar = _as_array(x)
    root = _root(xa, coin)
    return _out(_g_rooted(kind, xa, root, coin), scalar)


def g4(x, coin: CoinOperator):
    """Case 4 weight of f2; one-sided branches with x = 0 taken from the right."""
    xa, scalar = _as_array(x)
    root = _root(xa, coin)
    return _out(_g4_rooted(xa, root, coin), scalar)


def _closed_rooted(kind, x, root, p: DensityParams):
    base = _f1_rooted(x, p) * _g_rooted(kind, x, root, p.coin)
    if isinstance(kind, Case4):
        base = base + _f2_plain(x, p) * root * _g4_rooted(x, root, p.coin)
    return base


# --- the LimitDensity object -------------------------------------------------


@dataclass(frozen=True, eq=False)
class GeneralSpectral:
    """Density form built from the four-term eta with momentum profile F."""

    F: Callable
    k_breakpoints: tuple = ()


@dataclass(frozen=True, eq=False)
class Specialized:
    """Density form f1 eta1 + f2 eta2 with momentum profile F."""

    F: Callable
    k_breakpoints: tuple = ()


Form = Union[GeneralSpectral, Specialized, Localized, Case1, Case2, Case3, Case4, Case5]


def interior_splits(kind, xi: int) -> tuple[float, ...]:
    """Interior points of the support where a case density is singular or jumps."""
    if isinstance(kind, (Case2, Case3)) and xi == 0:
        return (0.0,)
    if isinstance(kind, Case4):
        return (0.0,)
    return ()


def _splits_from_k(breaks, coin: CoinOperator) -> tuple[float, ...]:
    """Support points x = h(kappa) where some eta argument hits a breakpoint of F."""
    h = spectral_helpers(coin).h
    shift = coin.xi * PI / 2
    out = set()
    for b in breaks:
        for kap in (b - shift, shift - b, b + PI - shift, PI - b + shift):
            kap = math.remainder(kap, 2 * PI)
            if 0.0 <= kap <= PI:
                x = float(h(kap))
                if abs(x) < abs(coin.c) * (1 - 1e-12):
                    out.add(round(x, 15))
    return tuple(sorted(out))


@dataclass(frozen=True, eq=False)
class LimitDensity:
    """
    Evaluable limit density.

    Calling the object returns the density (0 outside the open support).
    `weighted` returns the integrand in the variable u with x = |c| sin u,
    which is finite at u = +-pi/2 for every form.
    """

    params: DensityParams
    form: Form
    splits: tuple = field(default=())

    @property
    def support(self) -> tuple[float, float]:
        c = self.params.half_width
        return (-c, c)

    def _rooted(self, x, root):
        form = self.form
        if isinstance(form, GeneralSpectral):
            return _general_rooted(x, root, form.F, self.params)
        if isinstance(form, Specialized):
            return _specialized_rooted(x, root, form.F, self.params)
        return _closed_rooted(form, x, root, self.params)

    def __call__(self, x):
        return _evaluate(x, self.params, lambda xx, rr, _p: self._rooted(xx, rr))

    def weighted(self, u):
        """density(|c| sin u) * |c| cos u for u in (-pi/2, pi/2)."""
        u = np.asarray(u, dtype=float)
        c = self.params.half_width
        return self._rooted(c * np.sin(u), c * np.cos(u))

    @property
    def u_edges(self) -> list[float]:
        c = self.params.half_width
        inner = [math.asin(max(-1.0, min(1.0, x / c))) for x in self.splits]
        return sorted({-0.5 * PI, 0.5 * PI, *inner})

    def integrate(self, g: Callable | None = None, rtol: float = 1e-10, atol: float = 1e-13) -> float:
        """Integral of g(x) * density over the support (g = 1 when omitted)."""
        c = self.params.half_width
        if g is None:
            f = self.weighted
        else:
            def f(u):
                return g(c * np.sin(u)) * self.weighted(u)
        return adaptive_gauss(f, self.u_edges, rtol=rtol, atol=atol).integral

    def moment(self, r: int) -> float:
        if r < 0:
            raise ValueError(f"moment order must be nonnegative, got {r}")
        if r == 0:
            return self.integrate()
        return self.integrate(lambda x: x ** r)

    @cached_property
    def _cdf_table(self) -> PanelTable:
        return adaptive_gauss(self.weighted, self.u_edges, rtol=1e-12, atol=1e-15)

    def cdf(self, x):
        """Integral of the density from -|c| to x."""
        xa, scalar = _as_array(x)
        c = self.params.half_width
        out = np.zeros(xa.shape)
        out[xa >= c] = self._cdf_table.integral
        inside = np.abs(xa) < c
        if np.any(inside):
            table = self._cdf_table
            u = np.arcsin(xa[inside] / c)
            idx = np.clip(np.searchsorted(table.left, u, side="right") - 1, 0, table.left.size - 1)
            partial = gauss_on(self.weighted, table.left[idx], u, table.order)
            out[inside] = table.cumulative()[idx] + partial
        return _out(out, scalar)


def analytic_cdf(density: LimitDensity, x):
    """Integral of ``density`` from -|c| to x; 0 below the support, the total above it."""
    return density.cdf(x)


def limit_density(kind, coin: CoinOperator, phi: SpinVector, representation: str = "closed") -> LimitDensity:
    """
    Limit density for an initial-state family.

    Parameters
    ----------
    kind
        One of the initial-state kinds (Localized, Case1..Case5, Generic).
    representation
        ``"closed"`` uses the case g-functions, ``"specialized"`` the
        f1 eta1 + f2 eta2 form and ``"general"`` the four-term spectral form.
        Generic states only support the last two.
    """
    params = DensityParams(coin, phi)
    if representation == "closed":
        if isinstance(kind, Generic):
            raise ValueError("generic initial states have no closed-form density")
        return LimitDensity(params, kind, interior_splits(kind, coin.xi))
    if representation not in ("specialized", "general"):
        raise ValueError(f"unknown representation {representation!r}")

    def F(k):
        return momentum_profile(kind, k)

    breaks = tuple(kind_breakpoints(kind)) if not isinstance(kind, Localized) else ()
    form = (Specialized if representation == "specialized" else GeneralSpectral)(F, breaks)
    splits = set(_splits_from_k(breaks, coin))
    if not isinstance(kind, Generic):
        splits.update(interior_splits(kind, coin.xi))
    return LimitDensity(params, form, tuple(sorted(splits)))
