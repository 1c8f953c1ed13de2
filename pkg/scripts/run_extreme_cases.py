#!/usr/bin/env python3
"""Exercise the extreme Hausdorff-Young machinery on random polynomials.

Prints Zygmund lhs/rhs statistics across truncations, the Bochkarev decay
statistic census, and an exponential-summability demonstration, all with a
fixed seed so reruns reproduce the numbers.
"""

import argparse
import math

import numpy as np

from fourierlab import (LZParams, TrigPolynomial, ValueSpace, bochkarev_decay,
                        exp_summability, lz_norm_sequence, zygmund_check)


def poly(rng, N, space):
    coeffs = {n: space.point(rng.standard_normal(space.m)
                             + 1j * rng.standard_normal(space.m))
              for n in range(-N, N + 1)}
    return TrigPolynomial(space, 1, coeffs)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=20240)
    ap.add_argument("--trials", type=int, default=25)
    args = ap.parse_args()

    space = ValueSpace(2.0, 2)

    print("Zygmund inequality, b = 0, q = 1 (ratio lhs/rhs):")
    for N in (32, 128, 512):
        worst = 0.0
        for k in range(args.trials):
            rng = np.random.Generator(np.random.Philox(
                key=np.array([args.seed, N * 1000 + k], dtype=np.uint64)))
            lhs, rhs = zygmund_check(poly(rng, N, space), 0.0, 1.0, "std")
            worst = max(worst, lhs / rhs)
        print(f"  N={N:4d}: sup ratio {worst:.4f}")

    print("Bochkarev decay statistic, p0 = 2, q = 4:")
    scalar = ValueSpace(2.0, 1)
    for N in (64, 256):
        sup = 0.0
        for k in range(args.trials):
            rng = np.random.Generator(np.random.Philox(
                key=np.array([args.seed + 1, N * 1000 + k], dtype=np.uint64)))
            sup = max(sup, bochkarev_decay(poly(rng, N, scalar), 2.0, 4.0))
        print(f"  N={N:4d}: sup statistic {sup:.4f}")

    print("Exponential summability along a budgeted family:")
    b, q = 1.0, 1.0
    for N in (100, 1000, 10000):
        ns = np.arange(-N, N + 1)
        norms = np.exp(-np.abs(ns) / 50.0)
        rho = lz_norm_sequence(norms, LZParams(1.0, q, b + 1.0))
        total = exp_summability(norms, 1.0, b, q)
        print(f"  N={N:5d}: budget {rho:9.4f}  sum {total:.6f}")
    print("  (the sum saturates once the budget does)")


if __name__ == "__main__":
    main()
