"""
Adaptive Gauss-Legendre integration with a global error budget.

Panels are bisected until the summed error estimate (difference between the
Gauss rule on a panel and on its two halves) falls below the requested
tolerance.  Only the panels carrying the most error are split at each pass,
so integrable endpoint singularities (log, log^2, inverse square root after
substitution) are resolved by geometric refinement toward the singular point.
All integrand evaluations of a pass are batched into one vectorized call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import NoConvergence

__all__ = ["PanelTable", "adaptive_gauss", "gauss_on", "midpoint_sum"]

MAX_DEPTH = 40
MAX_PANELS = 1 << 18
# error estimates below this multiple of eps * |panel value| are roundoff
NOISE = 256 * np.finfo(float).eps


@lru_cache(maxsize=None)
def _nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def gauss_on(f: Callable, a: np.ndarray, b: np.ndarray, order: int = 20) -> np.ndarray:
    """Fixed-order Gauss-Legendre integral of ``f`` over each [a_i, b_i]."""
    x, w = _nodes(order)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    pts = mid[..., None] + half[..., None] * x
    vals = f(pts.ravel()).reshape(pts.shape)
    return half * (vals @ w)


@dataclass(frozen=True)
class PanelTable:
    """Accepted panels of an adaptive integration, sorted by left edge."""

    left: np.ndarray
    right: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    order: int

    @property
    def integral(self):
        if np.iscomplexobj(self.values):
            return complex(math.fsum(self.values.real), math.fsum(self.values.imag))
        return math.fsum(self.values)

    @property
    def error(self) -> float:
        return float(np.sum(self.errors))

    def cumulative(self) -> np.ndarray:
        """Integral from the first left edge up to each panel's left edge."""
        return np.concatenate([[0.0], np.cumsum(self.values)[:-1]])


def adaptive_gauss(
    f: Callable,
    edges,
    order: int = 20,
    rtol: float = 1e-10,
    atol: float = 1e-13,
    max_depth: int = MAX_DEPTH,
    max_panels: int = MAX_PANELS,
) -> PanelTable:
    """
    Integrate ``f`` over consecutive intervals delimited by ``edges``.

    ``f`` must accept a 1-D float array and return an array of the same
    shape (real or complex).  Singular points should sit on edges so that
    they are never evaluated.

    Raises
    ------
    NoConvergence
        If a panel would need more than ``max_depth`` bisections or the
        panel count would exceed ``max_panels``.

    Notes
    -----
    The tolerance is never tighter than the rounding floor
    ``NOISE * sum(|panel value|)``, so integrals that cancel to nearly zero
    terminate instead of chasing roundoff.
    """
    edges = np.asarray(sorted(float(e) for e in edges))
    if edges.size < 2:
        raise ValueError("need at least two edges")

    def evaluate(lo, hi):
        mid = 0.5 * (lo + hi)
        whole = gauss_on(f, lo, hi, order)
        halves = gauss_on(f, np.concatenate([lo, mid]), np.concatenate([mid, hi]), order)
        val = halves[: lo.size] + halves[lo.size:]
        err = np.abs(val - whole)
        if not np.all(np.isfinite(err)):
            raise NoConvergence("integrand produced non-finite values")
        return val, err

    lo = edges[:-1]
    hi = edges[1:]
    depth = np.zeros(lo.size, dtype=np.int64)
    val, err = evaluate(lo, hi)
    while True:
        noise = NOISE * np.abs(val)
        budget = max(rtol * abs(np.sum(val)), atol, float(np.sum(noise)))
        if np.sum(err) <= budget:
            break
        split = (err > budget / err.size) & (err > noise)
        if not np.any(split):
            break
        if np.any(depth[split] >= max_depth):
            raise NoConvergence(f"adaptive refinement exceeded depth {max_depth}")
        if lo.size + np.count_nonzero(split) > max_panels:
            raise NoConvergence(f"adaptive refinement exceeded {max_panels} panels")
        sl, sh = lo[split], hi[split]
        sm = 0.5 * (sl + sh)
        cl = np.concatenate([sl, sm])
        ch = np.concatenate([sm, sh])
        cv, ce = evaluate(cl, ch)
        keep = ~split
        lo = np.concatenate([lo[keep], cl])
        hi = np.concatenate([hi[keep], ch])
        val = np.concatenate([val[keep], cv])
        err = np.concatenate([err[keep], ce])
        depth = np.concatenate([depth[keep], np.tile(depth[split] + 1, 2)])

    idx = np.argsort(lo, kind="stable")
    return PanelTable(lo[idx], hi[idx], val[idx], err[idx], order)


def midpoint_sum(f: Callable, edges, n_points: int, chunk: int = 1 << 20) -> float:
    """
    Midpoint Riemann sum with ``n_points`` nodes spread over the intervals
    delimited by ``edges`` in proportion to their widths.
    """
    edges = np.asarray(sorted(float(e) for e in edges))
    widths = np.diff(edges)
    counts = np.maximum(1, np.round(n_points * widths / widths.sum()).astype(np.int64))
    partial = []
    for a, w, n in zip(edges[:-1], widths, counts):
        h = w / n
        for start in range(0, int(n), chunk):
            idx = np.arange(start, min(start + chunk, int(n)), dtype=float)
            partial.append(float(np.sum(f(a + (idx + 0.5) * h))) * h)
    return math.fsum(partial)
