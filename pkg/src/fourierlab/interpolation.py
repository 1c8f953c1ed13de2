"""K-functionals for the (L^1, L^inf) couple and limiting interpolation norms.

Only the couple with the closed-form K(t, f) = int_0^t f*(s) ds is computed
directly; every other couple is reached through its Lorentz-Zygmund
equivalent or a Holmstedt-type split, never by minimizing over
decompositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import DEFAULT_QUAD, QuadratureConfig, panel_nodes, ragged_panel_nodes
from .rearrange import LZParams, PiecewiseConstant, lz_norm_function
from .values import INF


@dataclass(frozen=True)
class InterpParams:
    """(theta, q, b) of the logarithmic interpolation scale.

    The limiting cases demand b >= -1/q at theta = 0 (b > 0 if q = inf) and
    b < -1/q at theta = 1 (b <= 0 if q = inf); otherwise the space degenerates.
    """

    theta: float
    q: float
    b: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= 1.0):
            raise DomainError("theta in [0, 1]")
        if not (1.0 <= self.q):
            raise DomainError("q in [1, inf]")
        inv_q = 0.0 if self.q == INF else 1.0 / self.q
        if self.theta == 0.0:
            if self.q == INF and not (self.b > 0):
                raise DomainError("b > 0 when theta = 0, q = inf")
            if self.q != INF and not (self.b >= -inv_q):
                raise DomainError("b >= -1/q when theta = 0")
        if self.theta == 1.0:
            if self.q == INF and not (self.b <= 0):
                raise DomainError("b <= 0 when theta = 1, q = inf")
            if self.q != INF and not (self.b < -inv_q):
                raise DomainError("b < -1/q when theta = 1")


def k_functional(curve: PiecewiseConstant, t: float) -> float:
    """K(t, f; L^1, L^inf) = int_0^t f*(s) ds, exact for step curves."""
    if t <= 0:
        raise DomainError("t > 0")
    return float(curve.integral_to(t))


def k_functional_grid(curve: PiecewiseConstant, ts) -> np.ndarray:
    ts = np.asarray(ts, dtype=float)
    if np.any(ts <= 0):
        raise DomainError("t > 0")
    return np.asarray(curve.integral_to(ts))


def limiting_interp_norm(curve: PiecewiseConstant, params: InterpParams,
                         cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """(int_0^1 (t^{-theta} (1+|log t|)^b K(t, f))^q dt/t)^{1/q}.

    Under u = -log t the integrand is exp(theta u q)(1+u)^{bq} K(e^{-u})^q;
    K(t) = v1 t on the innermost cell, so the tail decays at rate (1-theta) q.
    """
    theta, q, b = params.theta, params.q, params.b
    if curve.total_mass() == 0.0:
        return 0.0

    def k_of_u(u):
        return np.asarray(curve.integral_to(np.exp(-u)))

    # integration breakpoints: cell edges inside (0, 1]
    inner_edges = [float(e) for e in curve.edges if 0.0 < e < 1.0]
    knots = np.asarray(sorted({0.0} | {-math.log(e) for e in inner_edges}))

    if q == INF:
        best = 0.0
        segs = list(zip(knots[:-1], knots[1:])) + [(knots[-1], knots[-1] + cfg.u_max + 90.0)]
        for u0, u1 in segs:
            grid = np.linspace(u0, u1, 1024)
            vals = np.exp(theta * grid) * (1.0 + grid) ** b * k_of_u(grid)
            best = max(best, float(vals.max()))
        return best

    def integrand(u):
        return (np.exp(theta * u) * (1.0 + u) ** b * k_of_u(u)) ** q

    total = 0.0
    if knots.size > 1:
        x, w, _ = ragged_panel_nodes(knots[:-1], knots[1:], max(2.0, cfg.panels))
        total += float(np.dot(integrand(x), w))
    # tail beyond the last knot: K(e^-u) = v1 e^-u there
    u0 = float(knots[-1])
    v1 = float(curve.values[0])
    if v1 > 0:
        rate = (1.0 - theta) * q
        if rate > 0:
            hi = u0 + max(cfg.u_max, 45.0 / rate)
        else:
            bq = b * q
            if bq >= -1.0:
                return math.inf
            # exp(0) (1+u)^{bq} v1^q e^{-uq}... theta = 1: pure polynomial decay
            w0 = math.log1p(u0)
            from .quadrature import integrate_decaying
            tail = integrate_decaying(
                lambda w_: np.exp((bq + 1.0) * w_), w0, -(bq + 1.0),
                cfg.u_max, 8.0 * cfg.panels)
            return (total + v1 ** q * tail) ** (1.0 / q)
        x, w = panel_nodes([u0], [hi], max(2.0, cfg.panels))
        total += float(np.dot(integrand(x), w))
    return total ** (1.0 / q)


def hardy_check_functions(psi: PiecewiseConstant, b: float, q: float,
                          variant: str = "i",
                          cfg: QuadratureConfig = DEFAULT_QUAD) -> tuple[float, float]:
    """Both sides of the logarithmic Hardy inequalities on (0, 1).

    variant "i":   ((1-log t)^b int_0^t psi)  vs  (t (1-log t)^{b+1} psi(t)),
                   both in the q-mean against dt/t.
    variant "iii": the iterated-log form against dt/(t (1-log t)).
    Requires b + 1/q > 0.
    """
    inv_q = 0.0 if q == INF else 1.0 / q
    if not (b + inv_q > 0):
        raise DomainError("b + 1/q > 0")
    if variant not in ("i", "iii"):
        raise DomainError("variant in {i, iii}")
    if psi.support_measure > 1.0 + 1e-12:
        raise DomainError("psi supported in (0, 1)")
    if psi.total_mass() == 0.0:
        return (0.0, 0.0)

    def prefix_of_u(u):
        return np.asarray(psi.integral_to(np.exp(-u)))

    def psi_of_u(u):
        return np.asarray(psi.eval(np.exp(-u)))

    if variant == "i":
        def lhs_f(u):
            return ((1.0 + u) ** b * prefix_of_u(u)) ** q

        def rhs_f(u):
            return (np.exp(-u) * (1.0 + u) ** (b + 1.0) * psi_of_u(u)) ** q
    else:
        def lhs_f(u):
            return ((1.0 + np.log1p(u)) ** b * prefix_of_u(u)) ** q / (1.0 + u)

        def rhs_f(u):
            return (np.exp(-u) * (1.0 + u) * (1.0 + np.log1p(u)) ** (b + 1.0)
                    * psi_of_u(u)) ** q / (1.0 + u)

    return _hardy_quad(psi, lhs_f, q, cfg), _hardy_quad(psi, rhs_f, q, cfg)


def _hardy_quad(psi, fn, q, cfg) -> float:
    """q-th root of int_0^1 fn(u) du with psi-cell breakpoints respected.

    Below the smallest positive breakpoint both integrands decay like
    exp(-uq) (psi is constant there and the prefix shrinks linearly in t),
    so a truncated tail panel suffices.
    """
    inner_edges = [float(e) for e in psi.edges if 0.0 < e < 1.0]
    us = sorted({0.0} | {-math.log(e) for e in inner_edges})
    knots = np.asarray(us)
    total = 0.0
    if knots.size > 1:
        x, w, _ = ragged_panel_nodes(knots[:-1], knots[1:], max(2.0, cfg.panels))
        total += float(np.dot(fn(x), w))
    u0 = float(knots[-1])
    hi = min(u0 + max(cfg.u_max, 90.0), 700.0)  # keep exp(-u) above underflow
    x, w = panel_nodes([u0], [hi], max(1.0, cfg.panels))
    total += float(np.dot(fn(x), w))
    return total ** (1.0 / q)


def hardy_check_sequences(c, b: float, q: float,
                          direct_terms: int = 100_000) -> tuple[float, float]:
    """Both sides of the sequence Hardy inequality, b + 1/q < 0.

    lhs sums ((1+log n)^b sum_{k<=n} c_k)^q / n over all n; past the direct
    range the prefix is constant and the tail is integral-comparison exact to
    the midpoint correction.
    """
    inv_q = 0.0 if q == INF else 1.0 / q
    if not (b + inv_q < 0):
        raise DomainError("b + 1/q < 0")
    a = np.asarray(c, dtype=float)
    if np.any(a < 0):
        raise DomainError("nonnegative input")
    if a.size == 0 or not np.any(a > 0):
        return (0.0, 0.0)
    K = a.size
    n_direct = max(direct_terms, 4 * K)
    n = np.arange(1, n_direct + 1, dtype=float)
    prefix = np.concatenate([np.cumsum(a), np.full(n_direct - K, a.sum())]) \
        if n_direct > K else np.cumsum(a)[:n_direct]
    logs = 1.0 + np.log(n)
    if q == INF:
        lhs = float((logs ** b * prefix).max())
        rhs = float((n[:K] * (1.0 + np.log(n[:K])) ** (b + 1.0) * a).max())
        return lhs, rhs
    lhs_pow = float(((logs ** b * prefix) ** q / n).sum())
    # tail: S^q * int (1+log x)^{bq} dx/x from n_direct + 1/2
    bq = b * q
    w0 = 1.0 + math.log(n_direct + 0.5)
    lhs_pow += float(a.sum()) ** q * w0 ** (bq + 1.0) / (-(bq + 1.0))
    rhs_pow = float(((n[:K] * (1.0 + np.log(n[:K])) ** (b + 1.0) * a) ** q / n[:K]).sum())
    return lhs_pow ** (1.0 / q), rhs_pow ** (1.0 / q)


def reiteration_bracket_check(curve: PiecewiseConstant, theta: float, p: float,
                              q: float, b: float,
                              cfg: QuadratureConfig = DEFAULT_QUAD
                              ) -> tuple[float, float, float]:
    """The two-sided limiting reiteration chain on a concrete curve.

    Outer spaces are the Lorentz-Zygmund norms with log exponents
    b + 1/min{p,q} and b + 1/max{p,q}; the middle norm interpolates against
    the nested Lorentz space, whose K-functional is evaluated through the
    two-term Holmstedt split of the (L^1, L^inf) K-functional.  Embedding
    constants are empirical and reported by the caller, not asserted here.
    """
    if not (0.0 < theta < 1.0):
        raise DomainError("theta in (0, 1)")
    inv_q = 0.0 if q == INF else 1.0 / q
    if not (b < -inv_q):
        raise DomainError("b < -1/q")
    if curve.total_mass() == 0.0:
        return (0.0, 0.0, 0.0)
    p_theta = 1.0 / (1.0 - theta)
    inv_p = 0.0 if p == INF else 1.0 / p
    left = lz_norm_function(curve, LZParams(p_theta, q, b + 1.0 / min(p, q)), cfg)
    right = lz_norm_function(curve, LZParams(p_theta, q, b + 1.0 / max(p, q)), cfg)

    mass = curve.total_mass()
    t_top = curve.support_measure

    def inner_tail(s: float) -> float:
        """int_s^inf (u^{-theta} K(u))^p du/u with the exact constant tail."""
        lo = min(s, t_top)
        total = 0.0
        if lo < t_top:
            x, w = panel_nodes([lo], [t_top], max(2.0, cfg.panels) / max(t_top, 1.0))
            ks = np.asarray(curve.integral_to(x))
            total += float(np.dot((x ** -theta * ks) ** p / x, w))
        s0 = max(s, t_top)
        total += mass ** p * s0 ** (-theta * p) / (theta * p)
        return total

    def k_mid(t: np.ndarray) -> np.ndarray:
        out = np.empty_like(t)
        for i, ti in enumerate(t):
            cut = ti ** (1.0 / theta)
            out[i] = float(curve.integral_to(cut)) + ti * inner_tail(cut) ** inv_p
        return out

    def integrand(u):
        t = np.exp(-u)
        return (np.exp(u) * (1.0 + u) ** b * k_mid(t)) ** q

    if q == INF:
        grid = np.linspace(0.0, cfg.u_max + 90.0, 2048)
        t = np.exp(-grid)
        middle = float((np.exp(grid) * (1.0 + grid) ** b * k_mid(t)).max())
    else:
        # K_mid(t) ~ c t near zero, so the integrand decays at rate 0+ only
        # through the log weight; bq < -1 keeps it summable
        x, w = panel_nodes([0.0], [max(cfg.u_max, 120.0)], max(2.0, cfg.panels))
        middle_pow = float(np.dot(integrand(x), w))
        bqp = b * q
        u0 = max(cfg.u_max, 120.0)
        # analytic remainder with K_mid(e^-u) ~ kslope e^-u
        kslope = k_mid(np.exp(-np.array([u0])))[0] * math.exp(u0)
        middle_pow += kslope ** q * (1.0 + u0) ** (bqp + 1.0) / (-(bqp + 1.0))
        middle = middle_pow ** (1.0 / q)
    return left, middle, right
