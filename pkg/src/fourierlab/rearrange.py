"""Non-increasing rearrangements and Lorentz-Zygmund norms.

Rearrangements are step functions, so every norm here is either an exact
finite sum (sequence side) or a log-substituted quadrature whose integrand is
smooth on each cell (function side).  Divergent function-space norms come
back as math.inf rather than raising, so sharpness checks can assert them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping

import numpy as np

from .errors import DomainError
from .quadrature import (DEFAULT_QUAD, QuadratureConfig, dyadic_edges,
                         integrate, integrate_decaying, panel_nodes,
                         ragged_panel_nodes)
from .values import INF, ValuePoint, lr_norm

if TYPE_CHECKING:  # pragma: no cover
    from .fourier import TrigPolynomial


@dataclass(eq=False)
class PiecewiseConstant:
    """Step function on (0, total_measure): value values[i] on (edges[i], edges[i+1]].

    Zero beyond the last breakpoint.  Not necessarily monotone; the Hardy
    verifiers take arbitrary nonnegative step data.
    """

    edges: np.ndarray
    values: np.ndarray
    total_measure: float = field(default=0.0)

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.edges.ndim != 1 or self.values.ndim != 1 \
                or self.edges.size != self.values.size + 1:
            raise DomainError("edges/values shapes", "need len(edges) == len(values)+1")
        if self.edges[0] != 0.0 or np.any(np.diff(self.edges) <= 0):
            raise DomainError("strictly increasing breakpoints from 0")
        if np.any(self.values < 0) or not np.all(np.isfinite(self.values)):
            raise DomainError("nonnegative finite values")
        if not self.total_measure:
            self.total_measure = float(self.edges[-1])
        self._prefix = np.concatenate(
            [[0.0], np.cumsum(self.values * np.diff(self.edges))])

    @property
    def support_measure(self) -> float:
        return float(self.edges[-1])

    def eval(self, t) -> np.ndarray:
        """Right-continuous-from-the-left step values: f(t) on (edges[i], edges[i+1]]."""
        t = np.asarray(t, dtype=float)
        i = np.searchsorted(self.edges, t, side="left") - 1
        out = np.where((i >= 0) & (i < self.values.size),
                       self.values[np.clip(i, 0, self.values.size - 1)], 0.0)
        return np.where(t <= 0, np.nan, out)

    def integral_to(self, t) -> np.ndarray:
        """Exact int_0^t of the step function (piecewise linear in t)."""
        t = np.asarray(t, dtype=float)
        tc = np.clip(t, 0.0, self.edges[-1])
        i = np.clip(np.searchsorted(self.edges, tc, side="right") - 1,
                    0, self.values.size - 1)
        return self._prefix[i] + self.values[i] * (tc - self.edges[i])

    def total_mass(self) -> float:
        return float(self._prefix[-1])

    def measure_above(self, level: float) -> float:
        """Lebesgue measure of {f > level}."""
        widths = np.diff(self.edges)
        return float(widths[self.values > level].sum())


class RearrangementCurve(PiecewiseConstant):
    """A non-increasing PiecewiseConstant: the rearrangement f* of some data."""

    def __post_init__(self):
        super().__post_init__()
        if np.any(np.diff(self.values) > 1e-15 * np.maximum(self.values[:-1], 1.0)):
            raise DomainError("non-increasing values", "curve is not non-increasing")


def rearrange_sequence(norms) -> RearrangementCurve:
    """Rearrangement of a finite sequence with unit cell measure."""
    a = np.asarray(norms, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise DomainError("non-empty 1-d input")
    if np.any(a < 0):
        raise DomainError("nonnegative input")
    v = np.sort(a)[::-1]
    return RearrangementCurve(np.arange(a.size + 1, dtype=float), v)


def rearrange_sampled(samples) -> RearrangementCurve:
    """Rearrangement of (cell_measure, magnitude) pairs; measures must be positive."""
    pairs = list(samples)
    if not pairs:
        raise DomainError("non-empty input")
    meas = np.asarray([p[0] for p in pairs], dtype=float)
    mags = np.asarray([p[1] for p in pairs], dtype=float)
    if np.any(meas <= 0):
        raise DomainError("positive cell measures")
    if np.any(mags < 0):
        raise DomainError("nonnegative magnitudes")
    order = np.argsort(-mags, kind="stable")
    edges = np.concatenate([[0.0], np.cumsum(meas[order])])
    return RearrangementCurve(edges, mags[order])


@dataclass(frozen=True)
class LZParams:
    """Parameters of the L^{p,q}(log L)^b scale.

    split_A = (a0, a_inf) switches to the generalized weight with separate
    log exponents on (0,1] and (1,inf); loglog_exponent adds the iterated-log
    factor used by the endpoint inequalities.  The p = inf, q < inf function
    space is trivial unless b + 1/q < 0 (the iterated log can rescue the
    boundary case); lz_norm_function reports that regime as +inf.  Sequence
    norms are finite sums and carry no such restriction.
    """

    p: float
    q: float
    b: float = 0.0
    loglog_exponent: float = 0.0
    split_A: tuple[float, float] | None = None

    def __post_init__(self):
        if not (1.0 <= self.p) or not (1.0 <= self.q):
            raise DomainError("p, q in [1, inf]")

    @property
    def b_near_zero(self) -> float:
        return self.split_A[0] if self.split_A is not None else self.b

    @property
    def b_at_infinity(self) -> float:
        return self.split_A[1] if self.split_A is not None else self.b

    def function_space_is_trivial(self) -> bool:
        """Whether L^{p,q}(log L)^b(S) with mu(S) finite contains only 0."""
        if self.p != INF:
            return False
        b0, a = self.b_near_zero, self.loglog_exponent
        if self.q == INF:
            return b0 > 0 or (b0 == 0 and a > 0)
        bq = b0 * self.q
        return bq > -1.0 or (bq == -1.0 and a * self.q >= -1.0)


def _seq_weights(k: np.ndarray, params: LZParams) -> np.ndarray:
    logk = np.log(k)
    w = (1.0 + logk) ** params.b_at_infinity
    if params.loglog_exponent:
        w = w * (1.0 + np.log1p(logk)) ** params.loglog_exponent
    if params.p != INF:
        w = w * k ** (1.0 / params.p)
    return w


def lz_norm_sequence(norms, params: LZParams) -> float:
    """The discrete quasi-norm (sum_k (k^{1/p}(1+log k)^b x*_k)^q / k)^{1/q}.

    Exact finite sum over the rearranged input (sup form for q = inf).
    """
    a = np.asarray(norms, dtype=float)
    if np.any(a < 0):
        raise DomainError("nonnegative input")
    if a.size == 0:
        return 0.0
    x = np.sort(a)[::-1]
    k = np.arange(1, x.size + 1, dtype=float)
    terms = _seq_weights(k, params) * x
    if params.q == INF:
        return float(terms.max())
    return float(((terms ** params.q / k).sum()) ** (1.0 / params.q))


def _u_weight(u: np.ndarray, b: float, a: float, kappa: float) -> np.ndarray:
    """(exp(-kappa u) (1+u)^b (1+log(1+u))^a)^1 on the substituted axis."""
    w = (1.0 + u) ** b
    if a:
        w = w * (1.0 + np.log1p(u)) ** a
    if kappa:
        w = w * np.exp(-kappa * u)
    return w


def _tail_integral(u0: float, kappa: float, beta: float, alpha: float,
                   cfg: QuadratureConfig) -> float:
    """int_{u0}^inf exp(-kappa u)(1+u)^beta (1+log(1+u))^alpha du, or inf."""
    if kappa > 0:
        return integrate_decaying(lambda u: _u_weight(u, beta, alpha, kappa),
                                  u0, kappa, cfg.u_max, 8.0 * cfg.panels)
    if beta < -1.0:
        # w = log(1+u): integrand exp((beta+1) w)(1+w)^alpha, decaying
        w0 = math.log1p(u0)
        return integrate_decaying(
            lambda w: np.exp((beta + 1.0) * w) * (1.0 + w) ** alpha,
            w0, -(beta + 1.0), cfg.u_max, 8.0 * cfg.panels)
    if beta == -1.0 and alpha < -1.0:
        w0 = math.log1p(u0)
        return (1.0 + w0) ** (alpha + 1.0) / (-(alpha + 1.0))
    return math.inf


def lz_norm_function(curve: PiecewiseConstant, params: LZParams,
                     cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """(int (t^{1/p} w(t) f*(t))^q dt/t)^{1/q} for a step curve.

    Computed under u = -log t on (0,1] and u = log t beyond, with an exact
    handling of the infinite-u tail of the innermost cell.  Returns math.inf
    when that tail diverges (the trivial-space regime).
    """
    p, q = params.p, params.q
    aexp = params.loglog_exponent
    vals = curve.values
    if not np.any(vals > 0):
        return 0.0
    inv_p = 0.0 if p == INF else 1.0 / p

    if q == INF:
        return _lz_sup(curve, params, cfg)

    total = 0.0
    # (0, 1] part, u = -log t: cell (t0, t1] maps to [ -log t1, -log t0 )
    b0q, aq = params.b_near_zero * q, aexp * q
    kappa = inv_p * q
    t_lo = curve.edges[:-1]
    t_hi = np.minimum(curve.edges[1:], 1.0)
    inside = (t_lo < 1.0) & (vals > 0)
    u_lo = -np.log(t_hi[inside])
    u_hi = np.where(t_lo[inside] > 0, -np.log(np.maximum(t_lo[inside], 1e-300)), np.inf)
    mults = vals[inside] ** q
    finite = np.isfinite(u_hi)
    if np.any(finite):
        x, w, owner = ragged_panel_nodes(u_lo[finite], u_hi[finite],
                                         max(1.0, cfg.panels))
        if x.size:
            integ = _u_weight(x, b0q, aq, kappa)
            total += float(np.dot(integ * mults[finite][owner], w))
    if np.any(~finite):
        i = int(np.nonzero(~finite)[0][0])
        tail = _tail_integral(float(u_lo[i]), kappa, b0q, aq, cfg)
        if math.isinf(tail):
            return math.inf
        total += mults[i] * tail

    # (1, total) part, u = log t
    binfq = params.b_at_infinity * q
    t_lo2 = np.maximum(curve.edges[:-1], 1.0)
    t_hi2 = curve.edges[1:]
    outside = (t_hi2 > 1.0) & (vals > 0)
    if np.any(outside):
        x, w, owner = ragged_panel_nodes(np.log(t_lo2[outside]),
                                         np.log(t_hi2[outside]),
                                         max(1.0, cfg.panels))
        if x.size:
            integ = _u_weight(x, binfq, aq, -kappa)
            total += float(np.dot(integ * (vals[outside] ** q)[owner], w))
    return total ** (1.0 / q)


def _lz_sup(curve: PiecewiseConstant, params: LZParams,
            cfg: QuadratureConfig) -> float:
    """sup_t t^{1/p} w(t) f*(t) on a per-cell grid (q = inf form)."""
    p = params.p
    inv_p = 0.0 if p == INF else 1.0 / p
    a = params.loglog_exponent
    best = 0.0
    for t0, t1, v in zip(curve.edges[:-1], curve.edges[1:], curve.values):
        if v <= 0:
            continue
        if t0 < 1.0:
            b0 = params.b_near_zero
            u1 = -math.log(max(min(t1, 1.0), 1e-300))
            if t0 > 0:
                u2 = -math.log(t0)
            else:
                if p == INF and (b0 > 0 or (b0 == 0 and a > 0)):
                    return math.inf
                u2 = u1 + max(cfg.u_max, 90.0 * (1.0 if p == INF else p))
            grid = np.linspace(u1, u2, 512)
            best = max(best, v * float(_u_weight(grid, b0, a, inv_p).max()))
        if t1 > 1.0:
            binf = params.b_at_infinity
            grid = np.linspace(math.log(max(t0, 1.0)), math.log(t1), 512)
            best = max(best, v * float(_u_weight(grid, binf, a, -inv_p).max()))
    return best


def weighted_lp_norm_sequence(coeffs, p: float, weight_exponent: float,
                              index_norm: str = "euclid") -> float:
    """(sum_n ||x_n||^p (|n|+1)^{wp})^{1/p} over a finite coefficient map.

    |n| is the Euclidean norm of the multi-index by default; pass
    index_norm="max" for the cube constructions.
    """
    items = _coefficient_items(coeffs)
    if not items:
        return 0.0
    mods = _index_moduli([n for n, _ in items], index_norm)
    norms = np.asarray([x.norm() if isinstance(x, ValuePoint) else float(x)
                        for _, x in items])
    weighted = norms * (mods + 1.0) ** weight_exponent
    return float(lr_norm(weighted, p))


def _coefficient_items(coeffs):
    if hasattr(coeffs, "coefficients"):
        return list(coeffs.coefficients.items())
    if isinstance(coeffs, Mapping):
        return list(coeffs.items())
    return list(coeffs)


def _index_moduli(indices, index_norm: str) -> np.ndarray:
    arr = np.asarray([(n,) if isinstance(n, (int, np.integer)) else tuple(n)
                      for n in indices], dtype=float)
    if index_norm == "euclid":
        return np.sqrt((arr * arr).sum(axis=1))
    if index_norm == "max":
        return np.abs(arr).max(axis=1)
    raise DomainError("index_norm in {euclid, max}")


def weighted_lp_norm_torus(f: "TrigPolynomial", p: float, weight_exponent: float,
                           grid_m: int | None = None,
                           cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """||f||_{L^p(T^d, |t|^{wp})} by quadrature graded at the origin.

    The weight is the only singularity; with w = 0 the uniform rectangle rule
    is spectrally accurate (exact for Plancherel checks).
    """
    d = f.dimension
    w = weight_exponent
    if w * p <= -d:
        raise DomainError("w*p > -d", "weight not integrable at the origin")
    min_m = 2 * f.degree + 1
    M = max(cfg.grid_m if grid_m is None else grid_m, 3)
    if grid_m is not None and grid_m < min_m:
        raise DomainError("M >= 2N+1", "grid too coarse for the polynomial degree")
    M = max(M, min_m)
    if w == 0.0:
        if p == INF:
            return float(f.norm_samples(4 * M).max())
        norms = f.norm_samples(M)
        return float(np.mean(norms ** p) ** (1.0 / p))
    if d == 1:
        return _weighted_torus_1d(f, p, w, cfg)
    return _weighted_torus_2d(f, p, w, cfg)


def _weighted_torus_1d(f, p, w, cfg):
    density = max(8.0, 4.0 * f.degree) * cfg.panels / 2.0
    inner = 2.0 ** -50
    edges = dyadic_edges(0.5, inner)
    xs, wq = panel_nodes(edges[1:], edges[:-1], density)
    total = 0.0
    for sign in (1.0, -1.0):
        norms = np.asarray(f.space.norm_of(f.synthesize(sign * xs), axis=-1))
        total += float(np.dot(norms ** p * xs ** (w * p), wq))
    center = float(f.space.norm_of(f.synthesize(np.zeros(1)), axis=-1)[0])
    total += center ** p * 2.0 * inner ** (w * p + 1.0) / (w * p + 1.0)
    return total ** (1.0 / p)


def _weighted_torus_2d(f, p, w, cfg):
    e = w * p
    density = max(6.0, 2.0 * f.degree) * cfg.panels / 2.0
    inner = 2.0 ** -30
    edges = dyadic_edges(0.5, inner)
    total = 0.0
    for s_hi, s_lo in zip(edges[:-1], edges[1:]):
        rects = [(-s_hi, s_hi, s_lo, s_hi), (-s_hi, s_hi, -s_hi, -s_lo),
                 (-s_hi, -s_lo, -s_lo, s_lo), (s_lo, s_hi, -s_lo, s_lo)]
        for x0, x1, y0, y1 in rects:
            nx = max(6, int(np.ceil((x1 - x0) * density)))
            ny = max(6, int(np.ceil((y1 - y0) * density)))
            gx, wx = panel_nodes([x0], [x1], nx / (x1 - x0), order=8)
            gy, wy = panel_nodes([y0], [y1], ny / (y1 - y0), order=8)
            pts = np.stack(np.meshgrid(gx, gy, indexing="ij"), axis=-1).reshape(-1, 2)
            norms = np.asarray(f.space.norm_of(f.synthesize(pts), axis=-1))
            r = np.sqrt((pts * pts).sum(axis=1))
            vals = (norms ** p * r ** e).reshape(gx.size, gy.size)
            total += float(wx @ vals @ wy)
    # center square |t|_inf <= inner: f is smooth there, use its value at 0
    center = float(f.space.norm_of(f.synthesize(np.zeros((1, 2))), axis=-1)[0])
    theta_int = integrate(lambda th: (inner / np.cos(th)) ** (e + 2.0) / (e + 2.0),
                          0.0, math.pi / 4.0, 64.0)
    total += center ** p * 8.0 * theta_int
    return total ** (1.0 / p)
