"""Region classification and numeric evaluators for the weighted Fourier inequalities.

The classifier decides the Pitt parameter region (interior, the four endpoint
cases, endpoint failure) for a space of given Fourier type.  The ratio
evaluators never declare an inequality to hold; they emit lhs/rhs statistics
whose boundedness is judged by the sharpness sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fourier import StepFunction, TrigPolynomial, weighted_lq_norm_ft_line
from .quadrature import DEFAULT_QUAD, QuadratureConfig, panel_nodes, dyadic_edges
from .rearrange import (LZParams, lz_norm_function, lz_norm_sequence,
                        rearrange_sampled, rearrange_sequence,
                        weighted_lp_norm_sequence, weighted_lp_norm_torus)
from .values import INF, dual_exponent

ENDPOINT_TOL = 1e-12


@dataclass(frozen=True)
class PittParams:
    """(d, p, q, beta, gamma, p0) of the weighted transform inequality."""

    d: int
    p: float
    q: float
    beta: float
    gamma: float
    p0: float = 2.0

    def __post_init__(self):
        if self.d not in (1, 2):
            raise DomainError("d in {1, 2}")
        if not (1.0 < self.p < INF) or not (1.0 < self.q < INF):
            raise DomainError("p, q in (1, inf)")
        if self.p > self.q:
            raise DomainError("p <= q")
        if self.beta < 0 or self.gamma < 0:
            raise DomainError("beta, gamma >= 0")
        if not (1.0 < self.p0 <= 2.0):
            raise DomainError("p0 in (1, 2]")

    @property
    def scaling_defect(self) -> float:
        return self.beta - self.gamma - self.d * (1.0 - 1.0 / self.p - 1.0 / self.q)

    @property
    def gamma_lower(self) -> float:
        return max(0.0, self.d * (1.0 / min(self.p, self.p0) + 1.0 / self.q - 1.0))


INTERIOR = "interior"
ENDPOINT_HOLDS = "endpoint_holds"
ENDPOINT_FAILS = "endpoint_fails"
OUTSIDE = "outside"
SCALING_VIOLATED = "scaling_violated"


@dataclass(frozen=True)
class RegionVerdict:
    kind: str
    endpoint_case: str | None = None

    def label(self) -> str:
        if self.kind == ENDPOINT_HOLDS:
            return f"endpoint_{self.endpoint_case}"
        return self.kind


def _endpoint_case(p: float, q: float, p0: float) -> str | None:
    """Which of the four endpoint conditions holds, if any."""
    p0p = dual_exponent(p0)
    if p == q:
        if p0 == 2.0:
            return "ii"
        if p < p0 or p > p0p:
            return "i"
        return None
    # p < q
    if p <= p0 or p >= p0p:
        return "iii"
    if p0p <= q:
        return "iv"
    return None


def pitt_region_classify(params: PittParams, tol: float = ENDPOINT_TOL) -> RegionVerdict:
    """Classify (d, p, q, beta, gamma, p0) against the Pitt inequality region.

    Requires the scaling relation beta - gamma = d(1 - 1/p - 1/q); the gamma
    range is (gamma_lower, d/q) in the interior, and at gamma = gamma_lower
    the verdict follows the four endpoint cases.
    """
    if abs(params.scaling_defect) > tol:
        return RegionVerdict(SCALING_VIOLATED)
    g = params.gamma
    g_lo = params.gamma_lower
    g_hi = params.d / params.q
    if abs(g - g_lo) <= tol:
        case = _endpoint_case(params.p, params.q, params.p0)
        if case is not None:
            return RegionVerdict(ENDPOINT_HOLDS, case)
        return RegionVerdict(ENDPOINT_FAILS)
    if g_lo < g < g_hi:
        return RegionVerdict(INTERIOR)
    return RegionVerdict(OUTSIDE)


@dataclass(frozen=True)
class RatioResult:
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        if self.rhs == 0.0:
            return 0.0 if self.lhs == 0.0 else math.inf
        return self.lhs / self.rhs


def pitt_ratio(f: TrigPolynomial | StepFunction, params: PittParams,
               cfg: QuadratureConfig = DEFAULT_QUAD,
               window: float = 64.0) -> RatioResult:
    """lhs/rhs of the Pitt inequality for one concrete test function.

    Torus path (trig polynomials): coefficient norm with weight (|n|+1)^{-gamma q}
    against the weighted torus norm.  Line path (d = 1 step functions): the
    windowed transform norm against exact weighted cell sums.
    """
    if isinstance(f, TrigPolynomial):
        if not f.coefficients or all(x.norm() == 0 for x in f.coefficients.values()):
            raise DomainError("nonzero f")
        lhs = weighted_lp_norm_sequence(f, params.q, -params.gamma)
        rhs = weighted_lp_norm_torus(f, params.p, params.beta, cfg=cfg)
        return RatioResult(lhs, rhs)
    if f.dimension != 1:
        raise DomainError("d == 1", "line-path ratios are one-dimensional")
    if not np.any(f.cell_norms() > 0):
        raise DomainError("nonzero f")
    lhs = weighted_lq_norm_ft_line(f, params.q, params.gamma, window, cfg).value
    rhs = f.weighted_lp_norm(params.p, params.beta)
    return RatioResult(lhs, rhs)


@dataclass(frozen=True)
class TypeNotion:
    """One of the six transform-boundedness notions (type p or cotype q)."""

    notion: str  # fourier | paley | hl
    kind: str    # type | cotype
    exponent: float

    def __post_init__(self):
        if self.notion not in ("fourier", "paley", "hl"):
            raise DomainError("notion in {fourier, paley, hl}")
        if self.kind not in ("type", "cotype"):
            raise DomainError("kind in {type, cotype}")
        if self.kind == "type" and not (1.0 < self.exponent <= 2.0):
            raise DomainError("type exponent in (1, 2]")
        if self.kind == "cotype" and not (2.0 <= self.exponent < INF):
            raise DomainError("cotype exponent in [2, inf)")


def type_test_ratio(f: TrigPolynomial, notion: TypeNotion,
                    cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Coefficient-side over function-side norm for the given notion.

    Type p compares the transform norm (plain, Lorentz, or power-weighted)
    with ||f||_{L^p}; cotype q runs the reverse direction with the weights on
    the function side.
    """
    d = f.dimension
    r = notion.exponent
    norms = list(f.coefficient_norms().values())
    if notion.kind == "type":
        rp = dual_exponent(r)
        if notion.notion == "fourier":
            lhs = weighted_lp_norm_sequence(f, rp, 0.0)
        elif notion.notion == "paley":
            lhs = lz_norm_sequence(norms, LZParams(rp, r))
        else:
            lhs = weighted_lp_norm_sequence(f, r, -d * (2.0 - r) / r)
        rhs = weighted_lp_norm_torus(f, r, 0.0, cfg=cfg)
        return RatioResult(lhs, rhs).ratio
    rq = dual_exponent(r)
    lhs = weighted_lp_norm_sequence(f, r, 0.0)
    if notion.notion == "fourier":
        rhs = weighted_lp_norm_torus(f, rq, 0.0, cfg=cfg)
    elif notion.notion == "paley":
        curve = _sampled_curve(f, cfg)
        rhs = lz_norm_function(curve, LZParams(rq, r), cfg)
    else:
        rhs = weighted_lp_norm_torus(f, r, d * (r - 2.0) / r, cfg=cfg)
    return RatioResult(lhs, rhs).ratio


def _sampled_curve(f: TrigPolynomial, cfg: QuadratureConfig, m: int | None = None):
    M = max(2 * f.degree + 1, min(cfg.grid_m, 4096) if m is None else m)
    norms = f.norm_samples(M).ravel()
    cell = 1.0 / norms.size
    return rearrange_sampled([(cell, float(v)) for v in norms])


def zygmund_check(f: TrigPolynomial, b: float, q: float, variant: str = "std",
                  cfg: QuadratureConfig = DEFAULT_QUAD) -> tuple[float, float]:
    """lhs and rhs of the Zygmund-type inequalities.

    std:      ||c^*||_{l^{inf,q}(log)^b}  vs  ||f||_{L^{1,q}(log L)^{b+1}},  b > -1/q
    endpoint: b = -1/q with the iterated-log weight on the function side
    sequence: reversed sides,  b < -1/q
    """
    inv_q = 0.0 if q == INF else 1.0 / q
    norms = list(f.coefficient_norms().values())
    if variant == "std":
        if not (b > -inv_q):
            raise DomainError("b > -1/q")
        lhs = lz_norm_sequence(norms, LZParams(INF, q, b))
        rhs = lz_norm_function(_sampled_curve(f, cfg), LZParams(1.0, q, b + 1.0), cfg)
        return lhs, rhs
    if variant == "endpoint":
        if q == INF:
            raise DomainError("q < inf")
        lhs = lz_norm_sequence(norms, LZParams(INF, q, -1.0 / q))
        rhs = lz_norm_function(_sampled_curve(f, cfg),
                               LZParams(1.0, q, -1.0 / q + 1.0, loglog_exponent=1.0),
                               cfg)
        return lhs, rhs
    if variant == "sequence":
        if not (b < -inv_q):
            raise DomainError("b < -1/q")
        lhs = lz_norm_function(_sampled_curve(f, cfg), LZParams(INF, q, b), cfg)
        rhs = lz_norm_sequence(norms, LZParams(1.0, q, b + 1.0))
        return lhs, rhs
    raise DomainError("variant in {std, endpoint, sequence}")


def exp_summability(coeff_norms, a: float, b: float, q: float,
                    rho: float | None = None) -> float:
    """sum_n exp(-a ||c_n||^{-1/(b+1/q)}) over the coefficient support.

    Zero coefficients contribute exp(-inf) = 0.  When rho is given, the input
    must satisfy the budget ||c||_{l^{1,q}(log l)^{b+1}} <= rho.
    """
    inv_q = 0.0 if q == INF else 1.0 / q
    if not (b + inv_q > 0):
        raise DomainError("b + 1/q > 0")
    if not (a > 0):
        raise DomainError("a > 0")
    vals = np.asarray([v.norm() if hasattr(v, "norm") else float(v)
                       for v in coeff_norms], dtype=float)
    if np.any(vals < 0):
        raise DomainError("nonnegative norms")
    if rho is not None:
        budget = lz_norm_sequence(vals, LZParams(1.0, q, b + 1.0))
        if budget > rho * (1.0 + 1e-12):
            raise DomainError("||c|| <= rho", "coefficient budget exceeded")
    pos = vals[vals > 0]
    if pos.size == 0:
        return 0.0
    return float(np.exp(-a * pos ** (-1.0 / (b + inv_q))).sum())


def bochkarev_decay(f: TrigPolynomial, p0: float, q: float,
                    cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """sup_n c*_n n^{1/p0'} (1+log n)^{-(1/p0 - 1/max{p0',q})} / ||f||_{L^{p0,q}}.

    Homogeneous of degree zero; q > p0 required.
    """
    if not (q > p0):
        raise DomainError("q > p0")
    if not (1.0 < p0 <= 2.0):
        raise DomainError("p0 in (1, 2]")
    norms = np.asarray(list(f.coefficient_norms().values()))
    if not np.any(norms > 0):
        raise DomainError("nonzero f")
    p0p = dual_exponent(p0)
    star = np.sort(norms)[::-1]
    n = np.arange(1, star.size + 1, dtype=float)
    decay = star * n ** (1.0 / p0p) * (1.0 + np.log(n)) ** -(1.0 / p0 - 1.0 / max(p0p, q))
    denom = lz_norm_function(_sampled_curve(f, cfg), LZParams(p0, q), cfg)
    return float(decay.max()) / denom


def stein_weiss_check(g: StepFunction, u: float, v: float, lam: float,
                      a: float, b: float,
                      cfg: QuadratureConfig = DEFAULT_QUAD,
                      window: float = 64.0) -> RatioResult:
    """Both sides of the fractional-integration inequality on the line.

    lhs = || |.|^{-lam} * g ||_{L^v(|.|^{-a v})} by graded quadrature with the
    convolution in closed form per cell; rhs = ||g||_{L^u(|.|^{b u})} exact.
    Hypotheses are checked one by one and rejections name the violated one.
    """
    if g.dimension != 1:
        raise DomainError("d == 1")
    if g.space.m != 1:
        raise DomainError("scalar g")
    if not (1.0 < u <= v < INF):
        raise DomainError("1 < u <= v < inf")
    if not (0.0 < lam < 1.0):
        raise DomainError("0 < lambda < d")
    if not (a < 1.0 / v):
        raise DomainError("a < d/v")
    up = dual_exponent(u)
    if not (b < 1.0 / up):
        raise DomainError("b < d/u'")
    if not (a + b >= 0.0):
        raise DomainError("a + b >= 0")
    if abs(1.0 / v + 1.0 / up - (lam + a + b)) > 1e-12:
        raise DomainError("d/v + d/u' = lambda + a + b")
    ks = np.asarray(sorted(g.cells), dtype=float)
    weights = np.asarray([abs(g.cells[int(k)].entries[0]) for k in ks])
    if not np.any(weights > 0):
        return RatioResult(0.0, 0.0)
    scale = g.scale

    def convolution(x: np.ndarray) -> np.ndarray:
        # int_cell |x-y|^{-lam} dy = (P(x-lo) - P(x-hi)) with P(s) = sgn(s)|s|^{1-lam}/(1-lam)
        lo = scale * (-ks - 0.5)
        hi = scale * (-ks + 0.5)
        s1 = x[:, None] - lo[None, :]
        s2 = x[:, None] - hi[None, :]

        def prim(s):
            return np.sign(s) * np.abs(s) ** (1.0 - lam) / (1.0 - lam)

        return (weights[None, :] * (prim(s1) - prim(s2))).sum(axis=1)

    # lhs: graded at 0 plus dyadic panels out to the window, plus analytic tail
    support_r = scale * (np.abs(ks).max() + 0.5) if ks.size else scale
    win = max(window, 8.0 * support_r)
    edges = dyadic_edges(win, win * 1e-12)
    xs, wq = panel_nodes(edges[1:], edges[:-1], max(8.0, 2.0 * cfg.panels) / 1.0)
    lhs_pow = 0.0
    for sign in (1.0, -1.0):
        conv = np.abs(convolution(sign * xs))
        lhs_pow += float(np.dot(conv ** v * xs ** (-a * v), wq))
    # tail: |conv(x)| <= mass (|x|-R)^{-lam} beyond the support radius R
    mass = float((weights * scale).sum())
    tail_exp = (lam + a) * v - 1.0
    grow = (win / (win - support_r)) ** (max(0.0, -a) * v)
    lhs_pow += 2.0 * grow * mass ** v * (win - support_r) ** -tail_exp / tail_exp
    lhs = lhs_pow ** (1.0 / v)
    rhs = g.weighted_lp_norm(u, b)
    return RatioResult(lhs, rhs)
