"""Vector-valued Fourier analysis on the torus, the lattice and the line.

Normalization is fixed once: f^(xi) = int f(t) exp(-2 pi i t.xi) dt, and the
periodic coefficients use the same kernel on a uniform grid.  Degrees stay
desk-scale (d in {1, 2}), so exactness beats speed everywhere except the 1-d
uniform-grid path, which goes through the FFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DomainError
from .quadrature import QuadratureConfig, DEFAULT_QUAD, panel_nodes, dyadic_edges
from .values import ValuePoint, ValueSpace

Index = int | tuple[int, int]


def _as_index(n, d: int) -> Index:
    if d == 1:
        if isinstance(n, tuple):
            (n,) = n
        return int(n)
    t = tuple(int(v) for v in (n if isinstance(n, (tuple, list, np.ndarray)) else (n,)))
    if len(t) != 2:
        raise DomainError("index matches dimension", f"bad index {n!r} for d=2")
    return t


def _index_array(indices: list[Index], d: int) -> np.ndarray:
    if d == 1:
        return np.asarray(indices, dtype=float)[:, None]
    return np.asarray(indices, dtype=float)


def sinc_prod(x: np.ndarray) -> np.ndarray:
    """g(x) = prod_j sin(pi x_j) / (pi x_j), the unit-cube transform factor."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    return np.prod(np.sinc(x), axis=-1)


@dataclass(eq=False)
class TrigPolynomial:
    """Finitely supported coefficient map n -> x_n on Z^d, d in {1, 2}."""

    space: ValueSpace
    dimension: int
    coefficients: dict[Index, ValuePoint]

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise DomainError("d in {1, 2}")
        normalized: dict[Index, ValuePoint] = {}
        for n, x in self.coefficients.items():
            if x.space.m != self.space.m:
                raise DomainError("coefficients in the value space")
            normalized[_as_index(n, self.dimension)] = x
        self.coefficients = normalized

    @cached_property
    def _indices(self) -> list[Index]:
        return sorted(self.coefficients, key=lambda n: (n,) if self.dimension == 1 else n)

    @cached_property
    def _index_matrix(self) -> np.ndarray:
        return _index_array(self._indices, self.dimension)

    @cached_property
    def _coeff_matrix(self) -> np.ndarray:
        return np.stack([self.coefficients[n].entries for n in self._indices])

    @property
    def degree(self) -> int:
        if not self.coefficients:
            return 0
        return int(np.max(np.abs(self._index_matrix)))

    def coefficient_norms(self) -> dict[Index, float]:
        return {n: self.coefficients[n].norm() for n in self._indices}

    def synthesize(self, points: np.ndarray) -> np.ndarray:
        """Evaluate sum_n x_n exp(2 pi i n.t) at a batch of points; (P, m)."""
        pts = np.asarray(points, dtype=float)
        if self.dimension == 1:
            pts = pts.reshape(-1, 1)
        else:
            pts = pts.reshape(-1, 2)
        if not self.coefficients:
            return np.zeros((pts.shape[0], self.space.m), dtype=complex)
        phases = np.exp(2j * np.pi * (pts @ self._index_matrix.T))
        return phases @ self._coeff_matrix

    def value_at(self, t) -> ValuePoint:
        return self.space.point(self.synthesize(np.asarray(t, dtype=float))[0])

    def sample_uniform(self, M: int) -> np.ndarray:
        """Samples on the uniform grid t_j = j/M per axis (FFT on the 1-d path)."""
        if M < 2 * self.degree + 1:
            raise DomainError("M >= 2N+1", "grid too coarse for the polynomial degree")
        if self.dimension == 1:
            spectrum = np.zeros((M, self.space.m), dtype=complex)
            for n, x in self.coefficients.items():
                spectrum[n % M] += x.entries
            return np.fft.ifft(spectrum, axis=0) * M
        grid = np.arange(M) / M
        tt = np.stack(np.meshgrid(grid, grid, indexing="ij"), axis=-1).reshape(-1, 2)
        return self.synthesize(tt).reshape(M, M, self.space.m)

    def norm_samples(self, M: int) -> np.ndarray:
        vals = self.sample_uniform(M)
        return np.asarray(self.space.norm_of(vals, axis=-1))


def trig_synthesis(f: TrigPolynomial, t) -> ValuePoint:
    return f.value_at(t)


def dft_coefficients(samples: np.ndarray, N: int, space: ValueSpace) -> TrigPolynomial:
    """Exact coefficient recovery from a uniform grid, M >= 2N+1 per axis.

    samples has shape (M, m) for d = 1 and (M, M, m) for d = 2; each vector
    component is transformed independently.
    """
    arr = np.asarray(samples, dtype=complex)
    if arr.ndim == 2:
        M, m = arr.shape
        if m != space.m:
            raise DomainError("samples match value dimension")
        if M < 2 * N + 1:
            raise DomainError("M >= 2N+1", "aliasing: grid too coarse for degree N")
        spec = np.fft.fft(arr, axis=0) / M
        coeffs = {n: space.point(spec[n % M]) for n in range(-N, N + 1)}
        return TrigPolynomial(space, 1, coeffs)
    if arr.ndim == 3:
        M1, M2, m = arr.shape
        if m != space.m:
            raise DomainError("samples match value dimension")
        if min(M1, M2) < 2 * N + 1:
            raise DomainError("M >= 2N+1", "aliasing: grid too coarse for degree N")
        ns = np.arange(-N, N + 1)
        ph1 = np.exp(-2j * np.pi * np.outer(ns, np.arange(M1)) / M1) / M1
        ph2 = np.exp(-2j * np.pi * np.outer(ns, np.arange(M2)) / M2) / M2
        tmp = np.tensordot(ph1, arr, axes=(1, 0))
        full = np.tensordot(ph2, tmp, axes=(1, 1)).transpose(1, 0, 2)
        coeffs = {(int(n1), int(n2)): space.point(full[i, j])
                  for i, n1 in enumerate(ns) for j, n2 in enumerate(ns)}
        return TrigPolynomial(space, 2, coeffs)
    raise DomainError("samples of shape (M, m) or (M, M, m)")


@dataclass(eq=False)
class StepFunction:
    """Lattice step function: value x_k on the cube a([-1/2,1/2]^d - k)."""

    space: ValueSpace
    dimension: int
    scale: float
    cells: dict[Index, ValuePoint]

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise DomainError("d in {1, 2}")
        if not (self.scale > 0):
            raise DomainError("a > 0")
        self.cells = {_as_index(k, self.dimension): x for k, x in self.cells.items()}

    @cached_property
    def _indices(self) -> list[Index]:
        return sorted(self.cells, key=lambda n: (n,) if self.dimension == 1 else n)

    @cached_property
    def _index_matrix(self) -> np.ndarray:
        return _index_array(self._indices, self.dimension)

    @cached_property
    def _coeff_matrix(self) -> np.ndarray:
        return np.stack([self.cells[k].entries for k in self._indices])

    def cell_norms(self) -> np.ndarray:
        return np.asarray(self.space.norm_of(self._coeff_matrix, axis=-1))

    def lp_norm(self, p: float) -> float:
        """||f||_{L^p(R^d)} = a^{d/p} (sum ||x_k||^p)^{1/p}, exact."""
        from .values import lr_norm

        return float(self.scale ** (self.dimension / p) * lr_norm(self.cell_norms(), p))

    def weighted_lp_norm(self, p: float, w: float) -> float:
        """Exact cell sums of int |t|^{wp} over each cell, d = 1 only."""
        if self.dimension != 1:
            raise DomainError("d == 1", "weighted cell sums are closed-form only on the line")
        if w * p <= -1:
            raise DomainError("w*p > -1", "weight not integrable at the origin")
        a = self.scale
        total = 0.0
        for k, x in self.cells.items():
            lo, hi = a * (-k - 0.5), a * (-k + 0.5)
            total += x.norm() ** p * _abs_power_integral(lo, hi, w * p)
        return total ** (1.0 / p)


def _abs_power_integral(lo: float, hi: float, e: float) -> float:
    """int_lo^hi |t|^e dt via the signed primitive |t|^{e+1}/(e+1)."""

    def prim(t: float) -> float:
        return math.copysign(abs(t) ** (e + 1.0) / (e + 1.0), t)

    return prim(hi) - prim(lo)


def step_ft(f: StepFunction, xi) -> ValuePoint:
    """Closed-form transform a^d g(a xi) sum_k exp(2 pi i k.(a xi)) x_k."""
    x = np.atleast_1d(np.asarray(xi, dtype=float)).reshape(1, -1)
    if x.shape[1] != f.dimension:
        raise DomainError("frequency matches dimension")
    axi = f.scale * x
    g = sinc_prod(axi)[0]
    phases = np.exp(2j * np.pi * (axi @ f._index_matrix.T))[0]
    entries = f.scale ** f.dimension * g * (phases @ f._coeff_matrix)
    return f.space.point(entries)


def _step_ft_norms(f: StepFunction, xis: np.ndarray) -> np.ndarray:
    axi = f.scale * xis.reshape(-1, 1)
    g = np.sinc(axi[:, 0])
    phases = np.exp(2j * np.pi * (axi @ f._index_matrix.T))
    vals = (f.scale * g)[:, None] * (phases @ f._coeff_matrix)
    return np.asarray(f.space.norm_of(vals, axis=-1))


@dataclass(frozen=True)
class WindowedNorm:
    """A norm computed on a frequency window plus a certified tail bound."""

    value: float
    tail_power: float
    exponent: float

    @property
    def upper_bound(self) -> float:
        return (self.value ** self.exponent + self.tail_power) ** (1.0 / self.exponent)

    @property
    def tail_bound(self) -> float:
        return self.upper_bound - self.value


def weighted_lq_norm_ft_line(f: StepFunction, q: float, gamma: float,
                             window: float = 64.0,
                             cfg: QuadratureConfig = DEFAULT_QUAD) -> WindowedNorm:
    """||f^||_{L^q(R, |.|^{-gamma q})} on [-window, window] with an analytic tail.

    The tail uses |g(xi)| <= 1/(pi a |xi|), summable because the tail exponent
    1 - q(1 + gamma) is negative for q > 1.
    """
    if f.dimension != 1:
        raise DomainError("d == 1")
    if q <= 1.0:
        raise DomainError("q > 1", "tail is not summable for q <= 1")
    if not (0.0 <= gamma < 1.0 / q):
        raise DomainError("0 <= gamma < 1/q", "weight not locally integrable")
    mass = float(f.cell_norms().sum())
    if mass == 0.0:
        return WindowedNorm(0.0, 0.0, q)
    # oscillation scale of f^ is 1/(a k_max); panel density follows it
    kmax = max(1.0, float(np.max(np.abs(f._index_matrix))))
    density = max(8.0, 8.0 * f.scale * kmax) * cfg.panels / 2.0
    inner = min(0.5, window) * 1e-14
    edges = dyadic_edges(window, inner)
    lo, hi = edges[1:], edges[:-1]
    xs, ws = panel_nodes(lo, hi, density)
    total = 0.0
    for sign in (1.0, -1.0):
        vals = _step_ft_norms(f, sign * xs)
        total += float(np.dot(vals ** q * xs ** (-gamma * q), ws))
    # innermost sliver: f^ is continuous at 0, use its value there
    center = _step_ft_norms(f, np.array([0.0]))[0]
    total += center ** q * 2.0 * inner ** (1.0 - gamma * q) / (1.0 - gamma * q)
    tail_exp = 1.0 - q * (1.0 + gamma)
    tail = 2.0 * (mass / math.pi) ** q * window ** tail_exp / (-tail_exp)
    return WindowedNorm(total ** (1.0 / q), tail, q)


def transference_constants(d: int, q: float, gamma: float, terms: int = 64,
                           grid: int = 129) -> tuple[float, float]:
    """Empirical bracketing constants for the periodization of |g|^q weights.

    Returns (C1, C2) with C1 <= sum_m |g(xi+m)|^q |xi+m|^{-gamma q} |xi|^{gamma q}
    <= C2 over the unit cell; the paper-side constants are never explicit, so
    these are computed numerically per (d, q, gamma).
    """
    if d != 1:
        raise DomainError("d == 1", "line-side checks are one-dimensional")
    xi = np.linspace(-0.5, 0.5, grid)
    xi[xi == 0] = 1e-9
    ms = np.arange(-terms, terms + 1)
    shifted = xi[:, None] + ms[None, :]
    shifted_safe = np.where(shifted == 0, 1e-300, shifted)
    series = (np.abs(np.sinc(shifted)) ** q
              * np.abs(shifted_safe) ** (-gamma * q)).sum(axis=1)
    series *= np.abs(xi) ** (gamma * q)
    return float(series.min()), float(series.max())


# ---------------------------------------------------------------------------
# Orthonormal systems (trigonometric and Walsh)
# ---------------------------------------------------------------------------

TRIG = "trigonometric"
WALSH = "walsh"


def trig_enumeration(count: int) -> list[int]:
    """Frequencies in the order 0, 1, -1, 2, -2, ..."""
    out = [0]
    k = 1
    while len(out) < count:
        out.append(k)
        if len(out) < count:
            out.append(-k)
        k += 1
    return out[:count]


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized fast Walsh-Hadamard transform along axis 0 (Hadamard order)."""
    a = np.array(a, copy=True)
    n = a.shape[0]
    if n & (n - 1) or n < 1:
        raise DomainError("power-of-two length", "Walsh transform needs a dyadic grid")
    h = 1
    while h < n:
        a = a.reshape(n // (2 * h), 2, h, *a.shape[1:])
        top = a[:, 0] + a[:, 1]
        bot = a[:, 0] - a[:, 1]
        a = np.stack([top, bot], axis=1).reshape(n, *a.shape[3:])
        h *= 2
    return a


def walsh_values(n: int, G: int) -> np.ndarray:
    """w_n on the dyadic grid of size G: (-1)^popcount(n & j), Hadamard order."""
    if n >= G:
        raise DomainError("index below grid size")
    j = np.arange(G, dtype=np.uint64)
    bits = np.bitwise_count(np.bitwise_and(j, np.uint64(n)))
    return 1.0 - 2.0 * (bits % 2).astype(float)


def ons_values(system: str, n: int, points: np.ndarray) -> np.ndarray:
    """phi_n sampled at grid points; Walsh points must be j/G on a dyadic grid."""
    if system == TRIG:
        return np.exp(2j * np.pi * n * np.asarray(points, dtype=float))
    if system == WALSH:
        pts = np.asarray(points, dtype=float)
        G = pts.shape[0]
        return walsh_values(n, G)
    raise DomainError("system in {trigonometric, walsh}")


def ons_coefficients(samples: np.ndarray, system: str, N: int,
                     space: ValueSpace) -> list[ValuePoint]:
    """First N coefficients c_n = int f conj(phi_n) from dyadic-grid samples."""
    arr = np.asarray(samples, dtype=complex)
    if arr.ndim == 1:
        arr = arr[:, None]
    G = arr.shape[0]
    if system == TRIG:
        freqs = trig_enumeration(N)
        deg = max(abs(n) for n in freqs)
        poly = dft_coefficients(arr, deg, space)
        return [poly.coefficients[n] for n in freqs]
    if system == WALSH:
        if G & (G - 1) or G < N:
            raise DomainError("grid size a power of 2 >= N",
                              "Walsh coefficients need a dyadic grid of size >= N")
        spec = fwht(arr) / G
        return [space.point(spec[n]) for n in range(N)]
    raise DomainError("system in {trigonometric, walsh}")


def ons_synthesis(coeffs: list[ValuePoint], system: str, G: int) -> np.ndarray:
    """Samples of sum c_n phi_n on the size-G grid (exact for both systems)."""
    if not coeffs:
        raise DomainError("non-empty coefficients")
    space = coeffs[0].space
    if system == WALSH:
        if G & (G - 1) or G < len(coeffs):
            raise DomainError("grid size a power of 2 >= N")
        spec = np.zeros((G, space.m), dtype=complex)
        for n, c in enumerate(coeffs):
            spec[n] = c.entries
        return fwht(spec)
    if system == TRIG:
        poly = TrigPolynomial(space, 1, dict(zip(trig_enumeration(len(coeffs)), coeffs)))
        return poly.sample_uniform(G)
    raise DomainError("system in {trigonometric, walsh}")
