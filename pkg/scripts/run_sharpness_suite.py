#!/usr/bin/env python3
"""Sweep every counterexample family, fit the growth rates, print a table.

Runs each family at its default parameters (d = 1, optionally d = 2) plus a
convergent control run where the family admits one, and appends the full
records to results/sharpness.jsonl for later `fourierlab report` processing.
"""

import argparse
from pathlib import Path

from fourierlab import CounterexampleSpec, sharpness_verdict
from fourierlab.cli import ResultRecord
from fourierlab.errors import DomainError
from fourierlab.sharpness import FAMILY_IDS, dense_schedule

CONTROL_NUDGE = {"EX411": ("eps", 0.75), "EX412": ("eps", 0.55),
                 "R56_strict": ("eps", 0.55), "R56_endpoint": ("eta", 0.6),
                 "T61": ("alpha", 1.2), "BOCH_SHARP_b_eq": ("delta", 0.6),
                 "BOCH_SHARP_b_gt": ("eps", 0.9)}


def run_one(fam: str, d: int, control: bool, dense: bool):
    params = {}
    if control:
        if fam not in CONTROL_NUDGE:
            return None
        key, val = CONTROL_NUDGE[fam]
        params[key] = val
    schedule = dense_schedule() if (dense and d == 1) else ()
    spec = CounterexampleSpec(fam, params, d=d, schedule=schedule,
                              control=control)
    rep = sharpness_verdict(spec)
    tag = f"{fam}{'/control' if control else ''} d={d}"
    fit = rep.lhs_fit
    print(f"{tag:28s} {rep.verdict:12s} s_hat={fit.exponent:7.4f} "
          f"s_expected={rep.expected_lhs_exponent:7.4f} r2={fit.r_squared:8.5f}")
    return ResultRecord("sharpness",
                        {"family": fam, "d": d, "control": control,
                         "params": spec.parameters,
                         "schedule": list(spec.schedule)},
                        {"verdict": rep.verdict,
                         "lhs_series": [v for _, v in rep.lhs_series],
                         "rhs_series": [v for _, v in rep.rhs_series],
                         "exponent": fit.exponent,
                         "expected": rep.expected_lhs_exponent,
                         "r_squared": fit.r_squared,
                         "notes": rep.notes},
                        seed=None)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--both-dimensions", action="store_true")
    ap.add_argument("--dense", action="store_true",
                    help="use the fine geometric schedule on the line")
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(exist_ok=True)
    records = []
    dims = (1, 2) if args.both_dimensions else (1,)
    for fam in FAMILY_IDS:
        for d in dims:
            for control in (False, True):
                try:
                    rec = run_one(fam, d, control, args.dense)
                except DomainError as exc:
                    print(f"{fam} d={d} control={control}: rejected ({exc})")
                    continue
                if rec is not None:
                    records.append(rec)
    path = outdir / "sharpness.jsonl"
    with open(path, "a") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
    print(f"\n{len(records)} records appended to {path}")


if __name__ == "__main__":
    main()
