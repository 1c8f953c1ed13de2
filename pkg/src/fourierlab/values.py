"""Finite-dimensional value spaces l^r_m with norms, duals and random-sign averages.

These spaces stand in for the Banach space carrying the vector values of all
test functions.  Scalars are complex throughout; r = inf is the max norm with
dual exponent 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

INF = math.inf

EXACT_ENUM_LIMIT = 20
MIN_TRIALS = 100


def dual_exponent(r: float) -> float:
    """r' with 1/r + 1/r' = 1; maps 1 <-> inf."""
    if r == 1.0:
        return INF
    if r == INF:
        return 1.0
    return r / (r - 1.0)


def lr_norm(entries: np.ndarray, r: float, axis: int = -1) -> np.ndarray | float:
    """The l^r norm along an axis, overflow-safe for large r."""
    a = np.abs(np.asarray(entries))
    if r == INF:
        return a.max(axis=axis)
    if r == 1.0:
        return a.sum(axis=axis)
    if r == 2.0:
        return np.sqrt((a * a).sum(axis=axis))
    peak = a.max(axis=axis, keepdims=True)
    safe = np.where(peak > 0, peak, 1.0)
    return np.squeeze(safe, axis=axis) * (((a / safe) ** r).sum(axis=axis)) ** (1.0 / r)


@dataclass(frozen=True)
class ValueSpace:
    """The space l^r_m of complex m-vectors under the exponent-r norm."""

    r: float
    m: int

    def __post_init__(self):
        if not (self.r >= 1.0):
            raise DomainError("r >= 1", f"exponent r={self.r} out of range")
        if self.m < 1:
            raise DomainError("m >= 1", f"dimension m={self.m} out of range")

    @property
    def dual_r(self) -> float:
        return dual_exponent(self.r)

    def dual(self) -> "ValueSpace":
        return ValueSpace(self.dual_r, self.m)

    def point(self, entries) -> "ValuePoint":
        return ValuePoint(self, np.asarray(entries, dtype=complex))

    def basis_vector(self, i: int) -> "ValuePoint":
        e = np.zeros(self.m, dtype=complex)
        e[i] = 1.0
        return ValuePoint(self, e)

    def norm_of(self, entries: np.ndarray, axis: int = -1):
        return lr_norm(entries, self.r, axis=axis)


@dataclass(frozen=True, eq=False)
class ValuePoint:
    space: ValueSpace
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.shape != (self.space.m,):
            raise DomainError("len(entries) == m", "entry count does not match dimension")
        object.__setattr__(self, "entries", arr)

    def norm(self) -> float:
        return norm(self)

    def scaled(self, factor: complex) -> "ValuePoint":
        return ValuePoint(self.space, factor * self.entries)

    def __add__(self, other: "ValuePoint") -> "ValuePoint":
        if other.space.m != self.space.m:
            raise DomainError("matching dimensions", "dimension mismatch in addition")
        return ValuePoint(self.space, self.entries + other.entries)


def norm(x: ValuePoint) -> float:
    """The l^r norm of a point; rejects non-finite entries."""
    if not np.all(np.isfinite(x.entries)):
        raise DomainError("finite entries", "non-finite entry in value point")
    return float(lr_norm(x.entries, x.space.r))


def dual_pair(x: ValuePoint, y: ValuePoint) -> complex:
    """The pairing <x, y> = sum x_i * conj(y_i) against the dual space."""
    if x.space.m != y.space.m:
        raise DomainError("matching dimensions", "dimension mismatch in dual pairing")
    return complex(np.vdot(y.entries, x.entries))


def aligned_dual_vector(x: ValuePoint) -> ValuePoint:
    """The norming functional: dual_pair(x, y) = norm(x) with dual norm(y) = 1."""
    a = np.abs(x.entries)
    r = x.space.r
    if r == 1.0:
        y = np.where(a > 0, x.entries / np.where(a > 0, a, 1.0), 0.0)
    elif r == INF:
        y = np.zeros_like(x.entries)
        i = int(np.argmax(a))
        if a[i] > 0:
            y[i] = x.entries[i] / a[i]
    else:
        y = np.where(a > 0, x.entries * a ** (r - 2.0), 0.0)
        d = lr_norm(y, dual_exponent(r))
        if d > 0:
            y = y / d
    return ValuePoint(x.space.dual(), y)


@dataclass(frozen=True)
class IsometricCopy:
    """Identity embedding between equal-dimensional l^r spaces.

    Realizes the lambda-uniform copies of finite l^p slices used by the
    type/cotype counterexamples; for matching exponents the distortion is 1.
    """

    source: ValueSpace
    target: ValueSpace

    def __post_init__(self):
        if self.source.m != self.target.m:
            raise DomainError("matching dimensions", "embedding dimensions differ")

    def __call__(self, coeffs) -> ValuePoint:
        return self.target.point(coeffs)

    @property
    def distortion(self) -> float:
        """lambda with ||a||/lambda <= ||Ta|| <= lambda ||a|| for the identity map."""
        rs, rt, m = self.source.r, self.target.r, self.source.m
        if rs == rt:
            return 1.0
        inv_s = 0.0 if rs == INF else 1.0 / rs
        inv_t = 0.0 if rt == INF else 1.0 / rt
        return float(m ** abs(inv_s - inv_t))


def lattice_cube_count(N: int, d: int) -> int:
    """Number of indices with 1 <= max_j |n_j| <= N (2N for d = 1)."""
    if N < 1 or d not in (1, 2):
        raise DomainError("N >= 1 and d in {1, 2}")
    return (2 * N + 1) ** d - 1


def embed_l1_copy(N: int, d: int, exponent: float = 1.0) -> IsometricCopy:
    """Identity copy of the N-cube coefficient slice into l^exponent."""
    m = lattice_cube_count(N, d)
    return IsometricCopy(ValueSpace(1.0, m), ValueSpace(exponent, m))


def _stack(xs: list[ValuePoint]) -> tuple[ValueSpace, np.ndarray]:
    if not xs:
        raise DomainError("non-empty family", "no vectors given")
    space = xs[0].space
    for x in xs:
        if x.space.m != space.m or x.space.r != space.r:
            raise DomainError("common value space", "vectors live in different spaces")
    return space, np.stack([x.entries for x in xs])


def _sign_matrix(n: int) -> np.ndarray:
    codes = np.arange(2 ** n, dtype=np.int64)[:, None]
    return ((codes >> np.arange(n)) & 1).astype(np.float64) * 2.0 - 1.0


def rademacher_average(xs: list[ValuePoint], moment: float = 2.0,
                       method: str = "exact-enum", seed: int | None = None,
                       trials: int = 10_000) -> float:
    """(E || sum eps_n x_n ||^moment)^(1/moment) over random signs.

    exact-enum averages over all 2^n real sign patterns (n <= 20);
    monte-carlo draws complex Steinhaus signs from a counter-based generator,
    so the result is a pure function of (xs, moment, seed, trials).
    """
    if moment < 1.0:
        raise DomainError("moment >= 1")
    space, mat = _stack(xs)
    n = mat.shape[0]
    if method == "exact-enum":
        if n > EXACT_ENUM_LIMIT:
            raise DomainError(f"len(xs) <= {EXACT_ENUM_LIMIT}",
                              "too many vectors for exact enumeration")
        total = 0.0
        block = 1 << 14
        signs = _sign_matrix(n)
        for start in range(0, signs.shape[0], block):
            sums = signs[start:start + block] @ mat
            total += float((space.norm_of(sums) ** moment).sum())
        return (total / signs.shape[0]) ** (1.0 / moment)
    if method == "monte-carlo":
        if seed is None:
            raise DomainError("seed required", "monte-carlo requires an explicit seed")
        if trials < MIN_TRIALS:
            raise DomainError(f"trials >= {MIN_TRIALS}")
        rng = np.random.Generator(np.random.Philox(key=seed))
        eps = np.exp(2j * np.pi * rng.random((trials, n)))
        sums = eps @ mat
        return float(np.mean(space.norm_of(sums) ** moment) ** (1.0 / moment))
    raise DomainError("method in {exact-enum, monte-carlo}", f"unknown method {method!r}")


def type_cotype_constant(kind: str, exponent: float,
                         families: list[list[ValuePoint]], moment: float = 2.0,
                         method: str = "exact-enum", seed: int | None = None,
                         trials: int = 10_000) -> float:
    """Largest type (or cotype) ratio over a family of vector tuples.

    type:   average / (sum ||x_n||^p)^(1/p)
    cotype: (sum ||x_n||^q)^(1/q) / average
    Raw ratios are reported; no normalization constant is fixed.
    """
    if kind not in ("type", "cotype"):
        raise DomainError("kind in {type, cotype}")
    if kind == "type" and not (1.0 <= exponent <= 2.0):
        raise DomainError("type exponent in [1, 2]")
    if kind == "cotype" and not (exponent >= 2.0):
        raise DomainError("cotype exponent in [2, inf]")
    if not families:
        raise DomainError("non-empty family")
    best = 0.0
    for xs in families:
        avg = rademacher_average(xs, moment, method, seed, trials)
        side = float(lr_norm(np.array([norm(x) for x in xs]), exponent))
        ratio = avg / side if kind == "type" else side / avg
        best = max(best, ratio)
    return best
