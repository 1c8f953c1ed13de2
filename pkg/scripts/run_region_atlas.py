#!/usr/bin/env python3
"""Sweep the Pitt parameter region for several Fourier-type exponents.

Writes one CSV per p0 under results/ and prints a verdict census.  The
gamma grid deliberately brackets the endpoint so all verdict kinds appear.
"""

import argparse
import collections
from pathlib import Path

import numpy as np

from fourierlab import PittParams, pitt_region_classify
from fourierlab.errors import DomainError


def sweep(p0: float, d: int, steps: int):
    rows = []
    for p in np.linspace(1.05, 3.5, steps):
        for q in np.linspace(p, p + 3.0, steps):
            params_lo = max(0.0, d * (1.0 / min(p, p0) + 1.0 / q - 1.0))
            for gamma in sorted({params_lo, *np.linspace(0.0, d / q * 1.1, steps)}):
                beta = gamma + d * (1.0 - 1.0 / p - 1.0 / q)
                if beta < 0 or gamma < 0:
                    label = "outside"
                else:
                    try:
                        label = pitt_region_classify(
                            PittParams(d, float(p), float(q), float(beta),
                                       float(gamma), p0)).label()
                    except DomainError:
                        label = "outside"
                rows.append((float(p), float(q), float(gamma), float(beta), label))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p0", type=float, nargs="+", default=[1.2, 1.5, 2.0])
    ap.add_argument("--d", type=int, default=1, choices=[1, 2])
    ap.add_argument("--steps", type=int, default=24)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(exist_ok=True)
    for p0 in args.p0:
        rows = sweep(p0, args.d, args.steps)
        census = collections.Counter(label for *_, label in rows)
        path = outdir / f"region_atlas_p0_{p0:g}.csv"
        with open(path, "w") as fh:
            fh.write("p,q,gamma,beta,verdict\n")
            for p, q, g, b, label in rows:
                fh.write(f"{p:.6f},{q:.6f},{g:.6f},{b:.6f},{label}\n")
        print(f"p0 = {p0:g}: {len(rows)} points -> {path}")
        for label, count in sorted(census.items()):
            print(f"    {label:16s} {count}")


if __name__ == "__main__":
    main()
