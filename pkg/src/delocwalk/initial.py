"""
Delocalized initial states built from Fourier coefficients.

An initial state has the product form ``psi_0(x) = s(x) * phi`` where
``s(x) = (d1(x) + i d2(x)) / sqrt(W)`` and ``d_j`` are the Fourier
coefficients of two real 2pi-periodic functions w1, w2.  Five named families
have closed-form coefficients; arbitrary w1, w2 are accepted as callables or
as uniform samples on [-pi, pi).

Infinite-support states are cut to a finite window chosen by a
`TruncationPolicy`.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Union

import numpy as np
from scipy.special import gammaln

from .errors import IntegerA, NotNormalizable, OutOfRange
from .quadrature import adaptive_gauss
from .walk import WalkState

__all__ = [
    "SpinVector",
    "Localized",
    "Case1",
    "Case2",
    "Case3",
    "Case4",
    "Case5",
    "Generic",
    "TruncationPolicy",
    "InitialSpec",
    "case_amplitude",
    "case5_positions",
    "coefficient_functions",
    "breakpoints",
    "normalization",
    "momentum_profile",
    "momentum_profile_grid",
    "generic_d",
    "tail_mass",
    "window_bounds",
    "build",
    "parseval_check",
    "load_w_samples",
    "describe",
]

PI = math.pi
SQRT7 = math.sqrt(7.0)


@dataclass(frozen=True)
class SpinVector:
    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise OutOfRange(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)


# --- initial-state families -------------------------------------------------


@dataclass(frozen=True)
class Localized:
    """All amplitude at the origin."""


@dataclass(frozen=True)
class Case1:
    """w1 = cos(ak), w2 = sin(ak) on [-pi, pi); requires non-integer a."""

    a: float = 0.5

    def __post_init__(self):
        a = float(self.a)
        if not math.isfinite(a):
            raise OutOfRange(f"a must be finite, got {self.a!r}")
        if abs(a - round(a)) < 1e-12:
            raise IntegerA(f"Case 1 needs a non-integer a, got {a!r}")
        object.__setattr__(self, "a", a)


@dataclass(frozen=True)
class Case2:
    """w1 = log(4 cos^2 k), w2 = 0."""


@dataclass(frozen=True)
class Case3:
    """w1 = (1/2) log cot|k/2 - pi/4| on (-pi/2, 3pi/2), w2 = 0."""


@dataclass(frozen=True)
class Case4:
    """Piecewise w1: 0, sin k + 1, 2 on the three quarters of [-pi, pi)."""


@dataclass(frozen=True)
class Case5:
    """Finite-support family indexed by a nonnegative integer n."""

    n: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise OutOfRange(f"Case 5 needs a nonnegative integer n, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))


@dataclass(frozen=True, eq=False)
class Generic:
    """
    User-supplied coefficient functions.

    ``w1`` and ``w2`` are either callables of k (2pi-periodic) or arrays of
    samples on the uniform grid ``-pi + 2pi j / len`` (final point excluded).
    ``breakpoints`` lists k values in [-pi, pi] where a callable is singular
    or discontinuous.
    """

    w1: Union[Callable, np.ndarray]
    w2: Union[Callable, np.ndarray, None] = None
    breakpoints: tuple = ()
    grid_points: int = 1 << 16

    @property
    def sampled(self) -> bool:
        return not callable(self.w1)

    def samples(self) -> tuple[np.ndarray, np.ndarray]:
        w1 = np.asarray(self.w1, dtype=float)
        w2 = np.zeros_like(w1) if self.w2 is None else np.asarray(self.w2, dtype=float)
        if w1.ndim != 1 or w1.shape != w2.shape or w1.size < 2:
            raise ValueError("sampled w1, w2 must be 1-D arrays of equal length >= 2")
        return w1, w2


Kind = Union[Localized, Case1, Case2, Case3, Case4, Case5, Generic]
_NAMED = (Case1, Case2, Case3, Case4)


@dataclass(frozen=True)
class TruncationPolicy:
    """
    How to cut an infinite-support state to a finite window.

    Exactly one of ``epsilon`` (keep the smallest symmetric window whose
    discarded mass is at most epsilon) or ``radius`` (keep |x| <= radius)
    is set.
    """

    epsilon: float | None = 1e-8
    radius: int | None = None
    renormalize: bool = True

    def __post_init__(self):
        if (self.epsilon is None) == (self.radius is None):
            raise OutOfRange("set exactly one of epsilon or radius")
        if self.epsilon is not None and not (0.0 < self.epsilon <= 1e-2):
            raise OutOfRange(f"epsilon must lie in (0, 1e-2], got {self.epsilon!r}")
        if self.radius is not None and (int(self.radius) != self.radius or self.radius < 0):
            raise OutOfRange(f"radius must be a nonnegative integer, got {self.radius!r}")

    @classmethod
    def tail_mass(cls, epsilon: float, renormalize: bool = True) -> "TruncationPolicy":
        return cls(epsilon=epsilon, radius=None, renormalize=renormalize)

    @classmethod
    def fixed_radius(cls, radius: int, renormalize: bool = True) -> "TruncationPolicy":
        return cls(epsilon=None, radius=int(radius), renormalize=renormalize)


@dataclass(frozen=True)
class InitialSpec:
    kind: Kind
    phi: SpinVector = field(default_factory=lambda: SpinVector(1.0, 0.0))
    truncation: TruncationPolicy = field(default_factory=TruncationPolicy)


def describe(kind: Kind) -> str:
    """Short text tag for reports: 'localized', '1:a=0.5', '2', ..., '5:n=50', 'generic'."""
    if isinstance(kind, Localized):
        return "localized"
    if isinstance(kind, Case1):
        return f"1:a={kind.a!r}"
    if isinstance(kind, Case5):
        return f"5:n={kind.n}"
    if isinstance(kind, Generic):
        return "generic"
    return str(_NAMED.index(type(kind)) + 1)


# --- closed-form amplitudes -------------------------------------------------


def _parity_sign(m: np.ndarray) -> np.ndarray:
    return 1.0 - 2.0 * (m & 1)


def case5_positions(n: int) -> np.ndarray:
    """Support positions chi_{n,j}, j = 0..n."""
    j = np.arange(n + 1, dtype=np.int64)
    sign_n = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
    return sign_n * ((_parity_sign(j).astype(np.int64)) * (2 * j + 1) - 1)


def _case5_log_prefactor(n: int) -> float:
    # log of 2^{-2n} sqrt(sqrt(pi) Gamma(2n+2) / (2 Gamma(2n+3/2)))
    return 0.5 * (0.5 * math.log(PI) + gammaln(2 * n + 2) - math.log(2.0) - gammaln(2 * n + 1.5)) - 2 * n * math.log(2.0)


def case_amplitude(kind: Kind, x):
    """
    Scalar multiplier of phi in psi_0(x) for a named family.

    Vectorized over integer ``x``; returns a complex scalar for scalar input.
    """
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=np.int64))
    out = np.zeros(xs.shape, dtype=np.complex128)
    xf = xs.astype(float)

    if isinstance(kind, Localized):
        out[xs == 0] = 1.0
    elif isinstance(kind, Case1):
        out[:] = _parity_sign(xs) * math.sin(kind.a * PI) / ((xf + kind.a) * PI)
    elif isinstance(kind, Case2):
        m = (xs % 2 == 0) & (xs != 0)
        xm = xs[m]
        out[m] = -_parity_sign(xm // 2) * 2.0 * math.sqrt(3.0) / (PI * np.abs(xm))
    elif isinstance(kind, Case3):
        m = xs % 2 == 1
        xm = xs[m]
        out[m] = 1j * _parity_sign((np.abs(xm) - 1) // 2) * 2.0 / (PI * xm)
    elif isinstance(kind, Case4):
        k = 2.0 / SQRT7
        out[xs == 0] = k
        m = np.abs(xs) == 1
        out[m] = 1j * k * (0.25 + 1.0 / PI) / xf[m]
        m = (xs % 2 == 1) & (np.abs(xs) >= 3)
        out[m] = 1j * k / PI / xf[m]
        m = xs % 4 == 2
        xm = xf[m]
        out[m] = 1j * k / PI * (xm / (xm * xm - 1.0) - 2.0 / xm)
        m = (xs % 4 == 0) & (xs != 0)
        xm = xf[m]
        out[m] = -1j * k / PI * xm / (xm * xm - 1.0)
    elif isinstance(kind, Case5):
        n = kind.n
        chi = case5_positions(n)
        j = np.arange(n + 1)
        logs = _case5_log_prefactor(n) + gammaln(2 * n + 2) - gammaln(n - j + 1) - gammaln(n + j + 2)
        for pos, val in zip(chi, np.exp(logs)):
            out[xs == pos] = val
    else:
        raise TypeError(f"no closed-form amplitude for {kind!r}")
    return complex(out[0]) if scalar else out


# --- coefficient functions --------------------------------------------------


def _wrap(k):
    """Map k into [-pi, pi)."""
    return np.mod(np.asarray(k, dtype=float) + PI, 2 * PI) - PI


def coefficient_functions(kind: Kind) -> tuple[Callable, Callable]:
    """Return (w1, w2) as vectorized 2pi-periodic callables."""
    if isinstance(kind, Localized):
        raise ValueError("the localized state has no coefficient functions")
    if isinstance(kind, Case1):
        a = kind.a
        return (lambda k: np.cos(a * _wrap(k))), (lambda k: np.sin(a * _wrap(k)))
    if isinstance(kind, Case2):
        def w1(k):
            with np.errstate(divide="ignore"):
                return np.log(4.0 * np.cos(np.asarray(k, dtype=float)) ** 2)
        return w1, _zero
    if isinstance(kind, Case3):
        def w1(k):
            # fundamental domain (-pi/2, 3pi/2)
            kk = np.mod(np.asarray(k, dtype=float) + 0.5 * PI, 2 * PI) - 0.5 * PI
            with np.errstate(divide="ignore"):
                return -0.5 * np.log(np.tan(np.abs(0.5 * kk - 0.25 * PI)))
        return w1, _zero
    if isinstance(kind, Case4):
        def w1(k):
            kk = _wrap(k)
            return np.where(kk < -0.5 * PI, 0.0, np.where(kk <= 0.5 * PI, np.sin(kk) + 1.0, 2.0))
        return w1, _zero
    if isinstance(kind, Case5):
        n = kind.n
        sign = -1.0 if n % 2 else 1.0

        def w1(k):
            c, s = np.cos(k), np.sin(k)
            return c ** (2 * n + 2) + s ** (2 * n + 2)

        def w2(k):
            c, s = np.cos(k), np.sin(k)
            return sign * (c * s ** (2 * n + 1) - s * c ** (2 * n + 1))

        return w1, w2
    if isinstance(kind, Generic):
        if kind.sampled:
            raise ValueError("sampled coefficient functions have no callable form")
        return kind.w1, (kind.w2 if kind.w2 is not None else _zero)
    raise TypeError(f"unknown kind {kind!r}")


def _zero(k):
    return np.zeros(np.shape(k))


def breakpoints(kind: Kind) -> tuple[float, ...]:
    """Points of [-pi, pi] where w1 or w2 is singular, discontinuous or kinked."""
    if isinstance(kind, (Case2, Case3)):
        return (-0.5 * PI, 0.5 * PI)
    if isinstance(kind, Case4):
        return (-PI, -0.5 * PI, 0.5 * PI, PI)
    if isinstance(kind, Generic):
        return tuple(kind.breakpoints)
    return ()


def _quad_over_period(f: Callable, extra=(), order: int = 64) -> complex | float:
    edges = {-PI, PI}
    edges.update(float(b) for b in extra if -PI <= b <= PI)
    return adaptive_gauss(f, sorted(edges), order=order, rtol=1e-14, atol=1e-15).integral


@lru_cache(maxsize=128)
def normalization(kind: Kind) -> float:
    """W(w1, w2) = integral over one period of w1^2 + w2^2."""
    if isinstance(kind, Localized):
        return 2 * PI
    if isinstance(kind, Case1):
        return 2 * PI
    if isinstance(kind, Case2):
        return 2 * PI ** 3 / 3
    if isinstance(kind, Case3):
        return PI ** 3 / 8
    if isinstance(kind, Case4):
        return 3.5 * PI
    if isinstance(kind, Case5):
        n = kind.n
        return math.exp(math.log(4.0) + 0.5 * math.log(PI) + gammaln(2 * n + 1.5) - gammaln(2 * n + 2))
    if isinstance(kind, Generic):
        if kind.sampled:
            w1, w2 = kind.samples()
            w = float(np.sum(w1 * w1 + w2 * w2)) * 2 * PI / w1.size
        else:
            g1, g2 = coefficient_functions(kind)
            w = float(_quad_over_period(lambda k: g1(k) ** 2 + g2(k) ** 2, kind.breakpoints))
        if not w > 0.0:
            raise NotNormalizable(f"W = {w!r} must be positive")
        return w
    raise TypeError(f"unknown kind {kind!r}")


def generic_d(w1, w2, x: int, quadrature_points: int = 64, breakpoints=()) -> complex:
    """
    d1(x) + i d2(x) with d_j(x) = (2pi)^{-1/2} * integral of w_j(k) e^{ikx} over one period.

    Callables are integrated with adaptive Gauss-Legendre panels of
    ``quadrature_points`` nodes split at ``breakpoints``.  Sample arrays on a
    uniform grid over [-pi, pi) use the periodic trapezoid rule.
    """
    if quadrature_points < 64:
        raise OutOfRange(f"quadrature_points must be >= 64, got {quadrature_points}")
    x = int(x)
    if callable(w1):
        g2 = w2 if w2 is not None else _zero

        def integrand(k):
            return (w1(k) + 1j * g2(k)) * np.exp(1j * k * x)

        return complex(_quad_over_period(integrand, breakpoints, order=quadrature_points)) / math.sqrt(2 * PI)
    s1 = np.asarray(w1, dtype=float)
    s2 = np.zeros_like(s1) if w2 is None else np.asarray(w2, dtype=float)
    k = -PI + 2 * PI * np.arange(s1.size) / s1.size
    return complex(np.sum((s1 + 1j * s2) * np.exp(1j * k * x)) * (2 * PI / s1.size)) / math.sqrt(2 * PI)


# --- momentum profile F(k) --------------------------------------------------


def _sampled_coefficients(kind: Generic) -> tuple[np.ndarray, np.ndarray]:
    """Positions and s(x) for a sampled Generic state (trapezoid rule via FFT)."""
    w1, w2 = kind.samples()
    n = w1.size
    x = np.arange(-(n // 2), n - n // 2, dtype=np.int64)
    d = math.sqrt(2 * PI) * _parity_sign(x) * np.fft.ifft(w1 + 1j * w2)[x % n]
    return x, d / math.sqrt(normalization(kind))


def momentum_profile(kind: Kind, k) -> np.ndarray:
    """F(k) = sqrt(2pi/W) (w1(k) + i w2(k)); the Fourier transform of s(x)."""
    k = np.asarray(k, dtype=float)
    if isinstance(kind, Localized):
        return np.ones(k.shape, dtype=np.complex128)
    if isinstance(kind, Generic) and kind.sampled:
        x, s = _sampled_coefficients(kind)
        flat = k.ravel()
        out = np.zeros(flat.size, dtype=np.complex128)
        for start in range(0, flat.size, 4096):
            kk = flat[start:start + 4096]
            out[start:start + 4096] = np.exp(-1j * np.outer(kk, x)) @ s
        return out.reshape(k.shape)
    w1, w2 = coefficient_functions(kind)
    return math.sqrt(2 * PI / normalization(kind)) * (w1(k) + 1j * w2(k))


def momentum_profile_grid(spec: "InitialSpec", m: int) -> tuple[np.ndarray, np.ndarray]:
    """F on the midpoint grid k_j = -pi + (j + 1/2) 2pi/m, j = 0..m-1."""
    k = -PI + (np.arange(m) + 0.5) * (2 * PI / m)
    kind = spec.kind
    if isinstance(kind, Generic) and kind.sampled:
        x, s = _sampled_coefficients(kind)
        if x.size > m:
            raise ValueError("k grid smaller than the sample grid")
        buf = np.zeros(m, dtype=np.complex128)
        buf[x % m] = s * _parity_sign(x) * np.exp(-1j * PI * x / m)
        return k, np.fft.fft(buf)
    return k, momentum_profile(kind, k)


# --- truncation -------------------------------------------------------------


_CHUNK = 1 << 21


def _amplitudes(kind: Kind, lo: int, hi: int) -> np.ndarray:
    """case_amplitude on lo..hi, evaluated in chunks to bound temporaries."""
    out = np.empty(hi - lo + 1, dtype=np.complex128)
    for start in range(lo, hi + 1, _CHUNK):
        stop = min(start + _CHUNK, hi + 1)
        out[start - lo:stop - lo] = case_amplitude(kind, np.arange(start, stop, dtype=np.int64))
    return out


def _abs2(z: np.ndarray) -> np.ndarray:
    return z.real ** 2 + z.imag ** 2


def _ring_mass(kind: Kind, r_lo: int, r_hi: int) -> np.ndarray:
    """|s(r)|^2 + |s(-r)|^2 for r in [r_lo, r_hi] (just |s(0)|^2 at r = 0)."""
    m = np.empty(r_hi - r_lo + 1)
    for start in range(r_lo, r_hi + 1, _CHUNK):
        stop = min(start + _CHUNK, r_hi + 1)
        r = np.arange(start, stop, dtype=np.int64)
        m[start - r_lo:stop - r_lo] = _abs2(case_amplitude(kind, r)) + _abs2(case_amplitude(kind, -r))
    if r_lo == 0:
        m[0] *= 0.5
    return m


def _inner_mass(kind: Kind, radius: int, chunk: int = 1 << 22) -> float:
    parts = []
    for start in range(0, radius + 1, chunk):
        parts.append(float(np.sum(_ring_mass(kind, start, min(start + chunk - 1, radius)))))
    return math.fsum(parts)


def tail_mass(kind: Kind, radius: int) -> float:
    """Probability of s(x) outside |x| <= radius (named families only)."""
    if isinstance(kind, Localized):
        return 0.0
    if isinstance(kind, Case5):
        chi = case5_positions(kind.n)
        out = np.abs(chi) > radius
        return float(np.sum(np.abs(case_amplitude(kind, chi[out])) ** 2))
    return max(0.0, 1.0 - _inner_mass(kind, radius))


@lru_cache(maxsize=64)
def _radius_for_tail(kind: Kind, epsilon: float) -> int:
    """Smallest radius whose tail mass is at most epsilon."""
    hi = 64
    inner = _inner_mass(kind, hi)
    while 1.0 - inner > epsilon:
        lo_ring = hi + 1
        hi *= 2
        if hi > 1 << 27:
            raise OutOfRange(f"tail mass {epsilon!r} needs a window beyond 2^27 cells")
        inner += float(np.sum(_ring_mass(kind, lo_ring, hi)))
    tail_hi = max(0.0, 1.0 - _inner_mass(kind, hi))
    lo = hi // 2
    rings = _ring_mass(kind, lo + 1, hi)
    # tail(R) for R = lo..hi, accumulated from the outside in
    tails = tail_hi + np.concatenate([np.cumsum(rings[::-1])[::-1], [0.0]])
    return int(lo + np.argmax(tails <= epsilon))


def _generic_coefficients(kind: Generic, m: int) -> tuple[np.ndarray, np.ndarray]:
    """s(x) for |x| < m/2 from a midpoint-grid FFT of callable w1, w2."""
    w1, w2 = coefficient_functions(kind)
    k = -PI + (np.arange(m) + 0.5) * (2 * PI / m)
    x = np.arange(-(m // 2) + 1, m // 2, dtype=np.int64)
    raw = np.fft.ifft(w1(k) + 1j * w2(k))[x % m]
    d = math.sqrt(2 * PI) * _parity_sign(x) * np.exp(1j * PI * x / m) * raw
    return x, d / math.sqrt(normalization(kind))


def _truncate_profile(x: np.ndarray, s: np.ndarray, policy: TruncationPolicy) -> tuple[np.ndarray, np.ndarray, float]:
    mass = s.real ** 2 + s.imag ** 2
    if policy.radius is not None:
        keep = np.abs(x) <= policy.radius
        return x[keep], s[keep], max(0.0, 1.0 - math.fsum(mass[keep]))
    by_radius = np.zeros(int(np.max(np.abs(x))) + 1)
    np.add.at(by_radius, np.abs(x), mass)
    tails = np.maximum(0.0, 1.0 - np.cumsum(by_radius))
    ok = np.flatnonzero(tails <= policy.epsilon)
    if ok.size == 0:
        raise OutOfRange(f"tail mass {policy.epsilon!r} not reached on the coefficient grid")
    r = int(ok[0])
    keep = np.abs(x) <= r
    return x[keep], s[keep], float(tails[r])


def _profile(spec: InitialSpec) -> tuple[int, np.ndarray, float]:
    """Window start, s(x) on the window, and discarded tail mass."""
    kind, policy = spec.kind, spec.truncation
    if isinstance(kind, Localized):
        return 0, np.ones(1, dtype=np.complex128), 0.0
    if isinstance(kind, Case5):
        chi = case5_positions(kind.n)
        radius = int(np.max(np.abs(chi)))
        if policy.radius is not None:
            radius = min(radius, policy.radius)
        x = np.arange(-radius, radius + 1)
        return -radius, case_amplitude(kind, x), tail_mass(kind, radius)
    if isinstance(kind, _NAMED):
        radius = policy.radius if policy.radius is not None else _radius_for_tail(kind, policy.epsilon)
        return -radius, _amplitudes(kind, -radius, radius), tail_mass(kind, radius)
    if isinstance(kind, Generic):
        if kind.sampled:
            x, s = _sampled_coefficients(kind)
        else:
            x, s = _generic_coefficients(kind, kind.grid_points)
        x, s, tail = _truncate_profile(x, s, policy)
        return int(x[0]), s, tail
    raise TypeError(f"unknown kind {kind!r}")


def window_bounds(spec: InitialSpec) -> tuple[int, int]:
    """First and last position of the window `build` produces for ``spec``."""
    kind, policy = spec.kind, spec.truncation
    if isinstance(kind, Localized):
        return 0, 0
    if isinstance(kind, Case5):
        radius = int(np.max(np.abs(case5_positions(kind.n))))
        if policy.radius is not None:
            radius = min(radius, policy.radius)
        return -radius, radius
    if isinstance(kind, _NAMED):
        radius = policy.radius if policy.radius is not None else _radius_for_tail(kind, policy.epsilon)
        return -radius, radius
    start, s, _ = _profile(spec)
    return start, start + s.size - 1


def build(spec: InitialSpec) -> WalkState:
    """
    Initial WalkState psi_0(x) = s(x) phi on the truncated window.

    With ``renormalize`` the amplitudes are rescaled to unit total
    probability; ``truncated_mass`` always reports the mass that was cut.
    """
    start, s, tail = _profile(spec)
    scale = 1.0
    if spec.truncation.renormalize:
        norm = math.sqrt(math.fsum(float(np.sum(_abs2(s[i:i + _CHUNK]))) for i in range(0, s.size, _CHUNK)))
        if norm == 0.0:
            raise NotNormalizable("truncated window carries no probability")
        scale = 1.0 / norm
    phi = spec.phi.vector * scale
    amps = np.empty((s.size, 2), dtype=np.complex128)
    for i in range(0, s.size, _CHUNK):
        amps[i:i + _CHUNK] = s[i:i + _CHUNK, None] * phi[None, :]
    del s
    return WalkState(amps, -start, 0, tail)


def parseval_check(state: WalkState) -> float:
    """Total probability sum_x <psi(x)|psi(x)>, compensated summation."""
    a = state.amplitudes.reshape(-1)
    return math.fsum(float(np.sum(_abs2(a[i:i + _CHUNK]))) for i in range(0, a.size, _CHUNK))


def load_w_samples(path) -> np.ndarray:
    """
    Read a two-column CSV with header ``k,w`` sampled on a uniform grid over
    [-pi, pi), final point excluded.
    """
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = [h.strip() for h in next(reader)]
        if header != ["k", "w"]:
            raise ValueError(f"expected header 'k,w', got {','.join(header)!r}")
        rows = [(float(r[0]), float(r[1])) for r in reader if r]
    k = np.array([r[0] for r in rows])
    w = np.array([r[1] for r in rows])
    n = k.size
    if n < 2:
        raise ValueError("need at least two samples")
    expected = -PI + 2 * PI * np.arange(n) / n
    if np.max(np.abs(k - expected)) > 1e-9:
        raise ValueError("k column is not the uniform grid -pi + 2pi j/n")
    return w
