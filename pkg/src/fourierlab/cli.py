"""Experiment runner: config parsing, deterministic sweeps, result emission.

Subcommands map one-to-one onto the evaluator groups; every run with the same
config and seed emits byte-identical jsonl, independent of the worker count
(records are buffered and written in grid order, all evaluators are pure, and
Monte Carlo draws come from counter-based generators keyed by the seed).
Wall-clock timestamps are therefore kept out of the canonical records and
only attached when --with-timestamps is passed.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import itertools
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import __version__
from .errors import DomainError
from .fourier import TrigPolynomial, dft_coefficients
from .inequalities import (PittParams, TypeNotion, bochkarev_decay,
                           exp_summability, pitt_ratio, pitt_region_classify,
                           stein_weiss_check, type_test_ratio, zygmund_check)
from .interpolation import (InterpParams, hardy_check_functions,
                            hardy_check_sequences, k_functional,
                            limiting_interp_norm, reiteration_bracket_check)
from .quadrature import QuadratureConfig
from .rearrange import PiecewiseConstant, RearrangementCurve, rearrange_sequence
from .sharpness import (CounterexampleSpec, predicted_series, sharpness_verdict)
from .values import ValueSpace, rademacher_average, type_cotype_constant

MAX_GRID = 10_000

USAGE_EXIT = 1
DOMAIN_EXIT = 2
INTERNAL_EXIT = 3


@dataclass(frozen=True)
class ExperimentConfig:
    """A resolved run: command, parameter grid, seed, quadrature, output."""

    command: str
    grid: list[dict[str, Any]]
    seed: int | None
    quadrature: QuadratureConfig
    out: str | None
    fmt: str
    jobs: int
    with_timestamps: bool


@dataclass(frozen=True)
class ResultRecord:
    """One grid-point result; re-running the echoed params reproduces outputs."""

    command: str
    params: dict[str, Any]
    outputs: dict[str, Any]
    seed: int | None
    version: str = __version__
    timestamp: str | None = None

    def to_json(self) -> str:
        body = {"command": self.command, "params": self.params,
                "outputs": self.outputs, "seed": self.seed,
                "version": self.version}
        if self.timestamp is not None:
            body["timestamp"] = self.timestamp
        return json.dumps(body, sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(line: str) -> "ResultRecord":
        d = json.loads(line)
        return ResultRecord(d["command"], d["params"], d["outputs"],
                            d.get("seed"), d.get("version", "?"),
                            d.get("timestamp"))


# ---------------------------------------------------------------------------
# parameter schemas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Param:
    name: str
    kind: str            # float | int | str | flag
    sweep: bool = False
    default: Any = None
    help: str = ""


def _parse_scalar(raw: str, kind: str):
    raw = raw.strip()
    if kind == "float":
        return float(raw)
    if kind == "int":
        return int(raw)
    if kind == "flag":
        return raw.lower() in ("1", "true", "yes", "on")
    return raw


def _parse_value(raw: Any, p: Param):
    if not isinstance(raw, str):
        return raw
    if p.sweep and "," in raw:
        return [_parse_scalar(x, p.kind) for x in raw.split(",") if x.strip()]
    val = _parse_scalar(raw, p.kind)
    return [val] if p.sweep else val


_COMMON_POLY = [
    Param("n_degree", "int", default=32, help="truncation degree of the test polynomial"),
    Param("space_r", "float", default=2.0, help="value-space exponent r"),
    Param("space_m", "int", default=4, help="value-space dimension m"),
    Param("d", "int", default=1, help="torus dimension"),
]

COMMAND_PARAMS: dict[str, list[Param]] = {
    "region": [
        Param("d", "int", default=1),
        Param("p", "float", sweep=True, default=2.0),
        Param("q", "float", sweep=True, default=2.0),
        Param("gamma", "float", sweep=True, default=0.0),
        Param("beta", "str", default="auto",
              help="explicit value or 'auto' to satisfy the scaling relation"),
        Param("p0", "float", sweep=True, default=2.0),
    ],
    "ratio": [
        Param("p", "float", default=2.0), Param("q", "float", default=2.0),
        Param("gamma", "float", default=0.0),
        Param("beta", "str", default="auto"),
        Param("p0", "float", default=2.0),
        *_COMMON_POLY,
    ],
    "type-test": [
        Param("notion", "str", default="fourier", help="fourier | paley | hl"),
        Param("kind", "str", default="type", help="type | cotype"),
        Param("exponent", "float", default=2.0),
        *_COMMON_POLY,
    ],
    "sharpness": [
        Param("family", "str", default="EX411"),
        Param("d", "int", default=1),
        Param("schedule", "str", default="",
              help="comma list of truncations; empty for the default"),
        Param("control", "flag", default=False),
        Param("params", "str", default="",
              help="family parameters, e.g. 'p=1.5,eps=0.5'"),
    ],
    "zygmund": [
        Param("variant", "str", default="std", help="std | endpoint | sequence"),
        Param("b", "float", default=0.0), Param("q", "float", default=1.0),
        *_COMMON_POLY,
    ],
    "bochkarev": [
        Param("p0", "float", default=2.0), Param("q", "float", default=4.0),
        Param("count", "int", default=50, help="random polynomials per point"),
        *_COMMON_POLY,
    ],
    "rademacher": [
        Param("family", "str", default="l1-basis",
              help="l1-basis | l2-basis | random"),
        Param("n", "int", sweep=True, default=8),
        Param("kind", "str", default="type"),
        Param("exponent", "float", default=2.0),
        Param("moment", "float", default=2.0),
        Param("method", "str", default="exact-enum"),
        Param("trials", "int", default=10_000),
        Param("space_r", "float", default=1.0),
    ],
    "interp": [
        Param("theta", "float", default=0.0), Param("q", "float", default=1.0),
        Param("b", "float", default=0.0),
        Param("curve", "str", default="indicator:1.0",
              help="indicator:a | steps:v1;v2;..."),
        Param("t", "str", default="", help="comma list for K-functional samples"),
    ],
    "hardy": [
        Param("variant", "str", default="functions-i",
              help="functions-i | functions-iii | sequences"),
        Param("b", "float", default=0.5), Param("q", "float", default=2.0),
        Param("data", "str", default="",
              help="semicolon step values for psi, or comma sequence entries"),
    ],
    "stein-weiss": [
        Param("u", "float", default=2.0), Param("v", "float", default=2.0),
        Param("lam", "float", default=0.5),
        Param("a", "float", default=0.25), Param("b", "float", default=0.25),
        Param("cells", "str", default="0=1",
              help="semicolon list k=value of unit cells"),
    ],
}

COMMAND_HELP = {
    "region": "Classify (d, p, q, beta, gamma, p0) for Pitt's inequality: "
              "interior, the four endpoint cases, or endpoint failure.",
    "ratio": "Evaluate both sides of Pitt's inequality on a random test polynomial.",
    "type-test": "Hausdorff-Young / Paley / Hardy-Littlewood type and cotype ratios.",
    "sharpness": "Sweep an endpoint counterexample family (Pitt / Zygmund / "
                 "Bochkarev / Hardy-Littlewood type) and fit its divergence rate.",
    "zygmund": "Both sides of Zygmund's inequality (standard, endpoint, sequence).",
    "bochkarev": "Bochkarev's coefficient-decay statistic over random polynomials.",
    "rademacher": "Rademacher/Steinhaus type and cotype averages.",
    "interp": "Peetre K-functional and limiting interpolation norms.",
    "hardy": "Hardy's inequalities with logarithmic weights.",
    "stein-weiss": "Stein-Weiss fractional integration inequality on the line.",
    "report": "Convert stored jsonl results to csv or plotdata.",
}

_SEEDED = {"ratio", "type-test", "zygmund", "bochkarev", "rademacher"}


# ---------------------------------------------------------------------------
# point evaluators
# ---------------------------------------------------------------------------

def _rng(seed: int, idx: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, idx], dtype=np.uint64)))


def _random_polynomial(d: int, N: int, space: ValueSpace,
                       rng: np.random.Generator) -> TrigPolynomial:
    if d == 1:
        idxs = range(-N, N + 1)
    else:
        idxs = [(i, j) for i in range(-N, N + 1) for j in range(-N, N + 1)]
    coeffs = {}
    for n in idxs:
        z = rng.standard_normal(space.m) + 1j * rng.standard_normal(space.m)
        coeffs[n] = space.point(z)
    return TrigPolynomial(space, d, coeffs)


def _resolve_beta(pt: dict) -> float:
    if pt["beta"] == "auto":
        return pt["gamma"] + pt.get("d", 1) * (1.0 - 1.0 / pt["p"] - 1.0 / pt["q"])
    return float(pt["beta"])


def _eval_region(pt, seed, idx, cfg):
    beta = _resolve_beta(pt)
    if beta < 0.0:
        # scaling forces gamma < gamma_lower here, so the point is outside
        return {"beta": beta, "verdict": "outside"}
    params = PittParams(pt["d"], pt["p"], pt["q"], beta, pt["gamma"], pt["p0"])
    verdict = pitt_region_classify(params)
    return {"beta": beta, "verdict": verdict.label()}


def _eval_ratio(pt, seed, idx, cfg):
    beta = _resolve_beta(pt)
    space = ValueSpace(pt["space_r"], pt["space_m"])
    f = _random_polynomial(pt["d"], pt["n_degree"], space, _rng(seed, idx))
    params = PittParams(pt["d"], pt["p"], pt["q"], beta, pt["gamma"], pt["p0"])
    res = pitt_ratio(f, params, cfg)
    return {"beta": beta, "lhs": res.lhs, "rhs": res.rhs, "ratio": res.ratio}


def _eval_type_test(pt, seed, idx, cfg):
    space = ValueSpace(pt["space_r"], pt["space_m"])
    f = _random_polynomial(pt["d"], pt["n_degree"], space, _rng(seed, idx))
    ratio = type_test_ratio(f, TypeNotion(pt["notion"], pt["kind"], pt["exponent"]), cfg)
    return {"ratio": ratio}


def _eval_sharpness(pt, seed, idx, cfg):
    fam_params = {}
    if pt["params"]:
        for item in pt["params"].split(","):
            k, _, v = item.partition("=")
            fam_params[k.strip()] = float(v)
    schedule = tuple(int(x) for x in pt["schedule"].split(",") if x.strip()) \
        if pt["schedule"] else ()
    spec = CounterexampleSpec(pt["family"], fam_params, pt["d"], schedule,
                              pt["control"])
    rep = sharpness_verdict(spec)
    return {
        "verdict": rep.verdict,
        "family": spec.family_id,
        "family_params": spec.parameters,
        "schedule": list(spec.schedule),
        "series_lhs": [v for _, v in rep.lhs_series],
        "series_rhs": [v for _, v in rep.rhs_series],
        "fit_lhs": [v for _, v in predicted_series(rep)],
        "lhs_model": rep.lhs_fit.model,
        "lhs_exponent": rep.lhs_fit.exponent,
        "lhs_r_squared": rep.lhs_fit.r_squared,
        "expected_lhs_exponent": rep.expected_lhs_exponent,
        "rhs_exponent": None if rep.rhs_fit is None else rep.rhs_fit.exponent,
        "expected_rhs_exponent": rep.expected_rhs_exponent,
        "rhs_top_increment": rep.rhs_top_increment,
        "rhs_certified_limit": rep.rhs_certified_limit,
        "notes": rep.notes,
    }


def _eval_zygmund(pt, seed, idx, cfg):
    space = ValueSpace(pt["space_r"], pt["space_m"])
    f = _random_polynomial(pt["d"], pt["n_degree"], space, _rng(seed, idx))
    lhs, rhs = zygmund_check(f, pt["b"], pt["q"], pt["variant"], cfg)
    return {"lhs": lhs, "rhs": rhs, "ratio": 0.0 if rhs == 0 else lhs / rhs}


def _eval_bochkarev(pt, seed, idx, cfg):
    space = ValueSpace(pt["space_r"], pt["space_m"])
    sup = 0.0
    for k in range(pt["count"]):
        f = _random_polynomial(pt["d"], pt["n_degree"], space,
                               _rng(seed, idx * 100_003 + k))
        sup = max(sup, bochkarev_decay(f, pt["p0"], pt["q"], cfg))
    return {"sup_statistic": sup, "count": pt["count"]}


def _eval_rademacher(pt, seed, idx, cfg):
    n = pt["n"]
    space = ValueSpace(pt["space_r"], n)
    if pt["family"] == "l1-basis" or pt["family"] == "l2-basis":
        xs = [space.basis_vector(i) for i in range(n)]
    elif pt["family"] == "random":
        rng = _rng(seed if seed is not None else 0, idx)
        xs = [space.point(rng.standard_normal(n) + 1j * rng.standard_normal(n))
              for _ in range(n)]
    else:
        raise DomainError("family in {l1-basis, l2-basis, random}")
    kw = dict(moment=pt["moment"], method=pt["method"], seed=seed,
              trials=pt["trials"])
    avg = rademacher_average(xs, **kw)
    const = type_cotype_constant(pt["kind"], pt["exponent"], [xs], **kw)
    return {"average": avg, "constant": const}


def _parse_curve(text: str) -> PiecewiseConstant:
    kind, _, arg = text.partition(":")
    if kind == "indicator":
        a = float(arg)
        return RearrangementCurve(np.array([0.0, a]), np.array([1.0]))
    if kind == "steps":
        vals = [float(v) for v in arg.split(";") if v.strip()]
        return PiecewiseConstant(np.arange(len(vals) + 1, dtype=float) / len(vals),
                                 np.array(vals))
    raise DomainError("curve in {indicator:a, steps:v1;v2;...}")


def _eval_interp(pt, seed, idx, cfg):
    curve = _parse_curve(pt["curve"])
    out: dict[str, Any] = {}
    if pt["t"]:
        ts = [float(x) for x in pt["t"].split(",") if x.strip()]
        out["k_values"] = [k_functional(curve, t) for t in ts]
    params = InterpParams(pt["theta"], pt["q"], pt["b"])
    out["norm"] = limiting_interp_norm(curve, params, cfg)
    return out


def _eval_hardy(pt, seed, idx, cfg):
    if pt["variant"] == "sequences":
        c = [float(v) for v in pt["data"].split(",") if v.strip()] or [1.0]
        lhs, rhs = hardy_check_sequences(c, pt["b"], pt["q"])
    else:
        vals = [float(v) for v in pt["data"].split(";") if v.strip()] or [1.0]
        psi = PiecewiseConstant(np.linspace(0.0, 1.0, len(vals) + 1), np.array(vals))
        variant = "i" if pt["variant"].endswith("-i") else "iii"
        lhs, rhs = hardy_check_functions(psi, pt["b"], pt["q"], variant, cfg)
    return {"lhs": lhs, "rhs": rhs, "ratio": 0.0 if rhs == 0 else lhs / rhs}


def _eval_stein_weiss(pt, seed, idx, cfg):
    from .fourier import StepFunction

    space = ValueSpace(2.0, 1)
    cells = {}
    for item in pt["cells"].split(";"):
        k, _, v = item.partition("=")
        cells[int(k)] = space.point([complex(float(v))])
    g = StepFunction(space, 1, 1.0, cells)
    res = stein_weiss_check(g, pt["u"], pt["v"], pt["lam"], pt["a"], pt["b"], cfg)
    return {"lhs": res.lhs, "rhs": res.rhs, "ratio": res.ratio}


EVALUATORS: dict[str, Callable] = {
    "region": _eval_region, "ratio": _eval_ratio, "type-test": _eval_type_test,
    "sharpness": _eval_sharpness, "zygmund": _eval_zygmund,
    "bochkarev": _eval_bochkarev, "rademacher": _eval_rademacher,
    "interp": _eval_interp, "hardy": _eval_hardy,
    "stein-weiss": _eval_stein_weiss,
}


# ---------------------------------------------------------------------------
# config handling and the run loop
# ---------------------------------------------------------------------------

def _load_config_section(path: str, command: str) -> dict[str, str]:
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise DomainError("config parse", f"cannot parse config {path}: {exc}")
    if parser.has_section(command):
        return dict(parser.items(command))
    return {}


def build_grid(command: str, raw: dict[str, Any]) -> list[dict[str, Any]]:
    schema = COMMAND_PARAMS[command]
    known = {p.name for p in schema}
    for key in raw:
        if key not in known:
            raise DomainError("known parameter", f"unknown parameter {key!r} "
                              f"for command {command!r}")
    resolved: dict[str, Any] = {}
    sweeps: dict[str, list] = {}
    for p in schema:
        val = raw.get(p.name, p.default)
        val = _parse_value(val, p)
        if p.sweep:
            vals = val if isinstance(val, list) else [val]
            sweeps[p.name] = vals
        else:
            resolved[p.name] = val if not isinstance(val, list) else val[0]
    names = sorted(sweeps)
    combos = list(itertools.product(*(sweeps[n] for n in names))) if names else [()]
    if len(combos) > MAX_GRID:
        raise DomainError(f"grid size <= {MAX_GRID}", "parameter grid too large")
    grid = []
    for combo in combos:
        pt = dict(resolved)
        pt.update(dict(zip(names, combo)))
        grid.append(pt)
    return grid


def run(config: ExperimentConfig) -> list[ResultRecord]:
    """Evaluate every grid point; record order follows the grid regardless
    of the worker count."""
    evaluator = EVALUATORS[config.command]
    if config.command in _SEEDED and config.seed is None:
        raise DomainError("seed required",
                          f"command {config.command!r} needs --seed")
    stamp = time.strftime("%Y-%m-%dT%H:%M:%S") if config.with_timestamps else None

    def work(item):
        idx, pt = item
        outputs = evaluator(pt, config.seed, idx, config.quadrature)
        return ResultRecord(config.command, pt, outputs, config.seed,
                            timestamp=stamp)

    items = list(enumerate(config.grid))
    if config.jobs <= 1:
        return [work(it) for it in items]
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(work, items))


def _flatten(record: ResultRecord) -> dict[str, Any]:
    row: dict[str, Any] = {"command": record.command, "seed": record.seed,
                           "version": record.version}
    for k, v in sorted(record.params.items()):
        row[f"param.{k}"] = v
    for k, v in sorted(record.outputs.items()):
        row[f"out.{k}"] = json.dumps(v) if isinstance(v, (list, dict)) else v
    return row


def report(records: list[ResultRecord], fmt: str) -> str:
    """Render records as csv, jsonl or plotdata (x, y, fit_y columns)."""
    if not records:
        return ""
    commands = {r.command for r in records}
    if len(commands) > 1:
        raise DomainError("homogeneous record commands",
                          f"mixed command types in one report: {sorted(commands)}")
    if fmt == "jsonl":
        return "".join(r.to_json() + "\n" for r in records)
    if fmt == "csv":
        rows = [_flatten(r) for r in records]
        cols = sorted({k for row in rows for k in row})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "plotdata":
        buf = io.StringIO()
        buf.write("x,y,fit_y\n")
        for r in records:
            out = r.outputs
            if "schedule" not in out or "series_lhs" not in out:
                raise DomainError("series outputs", "plotdata needs growth series")
            fits = out.get("fit_lhs") or [""] * len(out["schedule"])
            for x, y, fy in zip(out["schedule"], out["series_lhs"], fits):
                buf.write(f"{x},{y},{fy}\n")
        return buf.getvalue()
    raise DomainError("format in {csv, jsonl, plotdata}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fourierlab",
                     description="Numerical laboratory for weighted and "
                                 "vector-valued Fourier inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, params in COMMAND_PARAMS.items():
        p = sub.add_parser(name, help=COMMAND_HELP[name],
                           description=COMMAND_HELP[name])
        for prm in params:
            p.add_argument(f"--{prm.name.replace('_', '-')}", dest=prm.name,
                           default=None, help=prm.help or prm.name)
        _add_common(p)
    rep = sub.add_parser("report", help=COMMAND_HELP["report"],
                         description=COMMAND_HELP["report"])
    rep.add_argument("--input", required=True, help="jsonl results file")
    rep.add_argument("--format", default="csv", dest="fmt",
                     choices=["csv", "jsonl", "plotdata"])
    rep.add_argument("--out", default=None)
    return parser


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="append jsonl results here")
    p.add_argument("--format", default="jsonl", dest="fmt",
                   choices=["csv", "jsonl", "plotdata"])
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--u-max", type=float, default=40.0)
    p.add_argument("--panels", type=int, default=2)
    p.add_argument("--grid-m", type=int, default=1024)
    p.add_argument("--with-timestamps", action="store_true")


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "a") as fh:  # results are append-only
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "report":
            with open(args.input) as fh:
                records = [ResultRecord.from_json(line)
                           for line in fh if line.strip()]
            _emit(report(records, args.fmt), args.out)
            return 0
        raw: dict[str, Any] = {}
        if args.config:
            raw.update(_load_config_section(args.config, args.command))
        for prm in COMMAND_PARAMS[args.command]:
            cli_val = getattr(args, prm.name)
            if cli_val is not None:
                raw[prm.name] = cli_val
        grid = build_grid(args.command, raw)
        config = ExperimentConfig(
            command=args.command, grid=grid, seed=args.seed,
            quadrature=QuadratureConfig(args.u_max, args.panels, args.grid_m),
            out=args.out, fmt=args.fmt, jobs=max(1, args.jobs),
            with_timestamps=args.with_timestamps)
        records = run(config)
        _emit(report(records, config.fmt), config.out)
        return 0
    except DomainError as exc:
        print(f"fourierlab: rejected: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except SystemExit:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        print(f"fourierlab: internal error: {exc}", file=sys.stderr)
        return INTERNAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
