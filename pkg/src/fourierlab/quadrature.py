"""Quadrature helpers for integrals with logarithmic weights.

All norm integrals in this package reduce to smooth 1-d integrals after the
substitution u = -log t (near zero) or u = log t (beyond one).  Composite
Gauss-Legendre panels in the substituted variable handle the log weights;
uniform grids in t would waste all their points away from the singularity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

GL_ORDER = 16

# exp(-u) underflows around u = 745; decay tails are truncated far earlier
_TAIL_DECADES = 45.0


@dataclass(frozen=True)
class QuadratureConfig:
    """Resolution knobs exposed on the CLI.

    u_max: baseline truncation of the -log t axis for weight integrals.
    panels: Gauss-Legendre panels per unit length of the substituted variable.
    grid_m: default per-axis sampling resolution for torus quadrature.
    """

    u_max: float = 40.0
    panels: int = 2
    grid_m: int = 1024

    def __post_init__(self):
        if self.u_max <= 0 or self.panels < 1 or self.grid_m < 2:
            raise ValueError("invalid quadrature configuration")

    def doubled(self) -> "QuadratureConfig":
        return QuadratureConfig(self.u_max, 2 * self.panels, 2 * self.grid_m)


DEFAULT_QUAD = QuadratureConfig()


@lru_cache(maxsize=8)
def _gl_nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def ragged_panel_nodes(lo, hi, panels_per_unit: float, order: int = GL_ORDER
                       ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes for a batch of intervals, fully vectorized.

    Interval i is split into ceil(len_i * panels_per_unit) equal panels (at
    least one).  Returns (nodes, weights, owner) where owner[j] is the index
    of the interval that produced node j, so per-interval multipliers can be
    applied without a Python loop.
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    width = hi - lo
    keep = width > 0
    idx = np.nonzero(keep)[0]
    if idx.size == 0:
        return np.empty(0), np.empty(0), np.empty(0, dtype=int)
    lo, width = lo[idx], width[idx]
    counts = np.maximum(1, np.ceil(width * panels_per_unit).astype(int))
    owner_panel = np.repeat(np.arange(idx.size), counts)
    within = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    pw = (width / counts)[owner_panel]
    p_lo = lo[owner_panel] + within * pw
    x0, w0 = _gl_nodes(order)
    half = 0.5 * pw
    nodes = (p_lo + half)[:, None] + half[:, None] * x0
    weights = half[:, None] * w0
    owner = np.repeat(idx[owner_panel], order)
    return nodes.ravel(), weights.ravel(), owner


def panel_nodes(lo, hi, panels_per_unit: float, order: int = GL_ORDER
                ) -> tuple[np.ndarray, np.ndarray]:
    x, w, _ = ragged_panel_nodes(lo, hi, panels_per_unit, order)
    return x, w


def integrate(fn, lo: float, hi: float, panels_per_unit: float) -> float:
    """Composite Gauss-Legendre integral of a smooth vectorized integrand."""
    x, w = panel_nodes([lo], [hi], panels_per_unit)
    if x.size == 0:
        return 0.0
    return float(np.dot(fn(x), w))


def integrate_decaying(fn, lo: float, decay_rate: float, u_max: float,
                       panels_per_unit: float) -> float:
    """Integrate fn over [lo, inf) when fn decays like exp(-decay_rate * u).

    The truncation point scales with 1/decay_rate so slowly decaying
    integrands (large p in a t^{q/p} weight) are still resolved.
    """
    if decay_rate <= 0:
        raise ValueError("integrate_decaying needs a positive decay rate")
    hi = lo + max(u_max, _TAIL_DECADES / decay_rate)
    # cap panel count for very long tails; the integrand is smooth there
    ppu = min(panels_per_unit, max(0.05, 4096.0 / (hi - lo)))
    return integrate(fn, lo, hi, ppu)


def dyadic_edges(outer: float, inner: float) -> np.ndarray:
    """Geometrically graded breakpoints from outer down to roughly inner."""
    if not 0 < inner < outer:
        raise ValueError("need 0 < inner < outer")
    n = int(np.ceil(np.log2(outer / inner)))
    return outer * 0.5 ** np.arange(n + 1)
