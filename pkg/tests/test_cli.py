import json
import subprocess
import sys

import pytest

from fourierlab.cli import (ExperimentConfig, ResultRecord, build_grid, main,
                            report, run)
from fourierlab.errors import DomainError
from fourierlab.quadrature import QuadratureConfig


def _config(command, grid, seed=None, jobs=1):
    return ExperimentConfig(command=command, grid=grid, seed=seed,
                            quadrature=QuadratureConfig(), out=None,
                            fmt="jsonl", jobs=jobs, with_timestamps=False)


def test_region_sweep_hundred_points():
    raw = {"p": "1.2,1.4,1.6,1.8,2.0", "q": "2.0,2.5,3.0,3.5",
           "gamma": "0.05,0.1,0.15,0.2,0.25", "p0": "2.0", "beta": "auto"}
    grid = build_grid("region", raw)
    assert len(grid) == 100
    records = run(_config("region", grid))
    assert len(records) == 100
    allowed = {"interior", "endpoint_i", "endpoint_ii", "endpoint_iii",
               "endpoint_iv", "endpoint_fails", "outside", "scaling_violated"}
    assert all(r.outputs["verdict"] in allowed for r in records)


def test_empty_grid_is_success():
    records = run(_config("region", []))
    assert records == []
    assert report(records, "jsonl") == ""


def test_grid_size_cap_and_unknown_parameter():
    with pytest.raises(DomainError):
        build_grid("region", {"p": ",".join(str(1 + i / 200) for i in range(200)),
                              "q": ",".join(str(2 + i) for i in range(60))})
    with pytest.raises(DomainError):
        build_grid("region", {"nope": "1"})


def test_sharpness_record_and_plotdata():
    grid = build_grid("sharpness", {"family": "EX411",
                                    "schedule": "16,32,64,128,256"})
    records = run(_config("sharpness", grid))
    assert len(records) == 1
    out = records[0].outputs
    assert out["verdict"] in ("Sharp", "NotDetected")
    assert len(out["series_lhs"]) == 5
    plot = report(records, "plotdata")
    lines = plot.strip().splitlines()
    assert lines[0] == "x,y,fit_y"
    assert len(lines) == 6


def test_jsonl_round_trip():
    grid = build_grid("region", {"p": "1.5", "q": "2.0", "gamma": "0.2",
                                 "beta": "auto", "p0": "2.0"})
    records = run(_config("region", grid))
    text = report(records, "jsonl")
    parsed = [ResultRecord.from_json(line) for line in text.splitlines()]
    assert parsed == records


def test_csv_report_columns():
    grid = build_grid("region", {"p": "1.5", "q": "2.0", "gamma": "0.1,0.2"})
    records = run(_config("region", grid))
    text = report(records, "csv")
    header = text.splitlines()[0].split(",")
    assert header == sorted(header)
    assert len(text.splitlines()) == 3


def test_report_rejects_mixed_commands():
    a = ResultRecord("region", {}, {"verdict": "interior"}, None)
    b = ResultRecord("ratio", {}, {"ratio": 1.0}, None)
    with pytest.raises(DomainError):
        report([a, b], "csv")


def test_determinism_same_seed_and_jobs():
    raw = {"family": "l1-basis", "n": "2,4,6,8,10", "method": "monte-carlo",
           "trials": "2000"}
    grid = build_grid("rademacher", raw)
    out1 = report(run(_config("rademacher", grid, seed=421)), "jsonl")
    out2 = report(run(_config("rademacher", grid, seed=421)), "jsonl")
    out8 = report(run(_config("rademacher", grid, seed=421, jobs=8)), "jsonl")
    assert out1 == out2 == out8
    out_other = report(run(_config("rademacher", grid, seed=422)), "jsonl")
    assert out_other != out1


def test_seed_required_for_monte_carlo_commands():
    grid = build_grid("rademacher", {"n": "4"})
    with pytest.raises(DomainError):
        run(_config("rademacher", grid, seed=None))


def test_cli_exit_codes(tmp_path):
    assert main(["region", "--p", "1.5", "--q", "2.0", "--gamma", "0.2",
                 "--out", str(tmp_path / "r.jsonl")]) == 0
    # usage error: unknown subcommand exits 1 via the parser override
    with pytest.raises(SystemExit) as exc:
        main(["not-a-command"])
    assert exc.value.code == 1
    # numeric-domain rejection exits 2
    assert main(["region", "--p", "3.0", "--q", "2.0", "--gamma", "0.1"]) == 2


def test_cli_config_file_and_override(tmp_path):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("[region]\np = 1.5\nq = 2.0\ngamma = 0.1,0.2\n")
    out = tmp_path / "res.jsonl"
    assert main(["region", "--config", str(cfg), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    # CLI flag overrides the config value
    out2 = tmp_path / "res2.jsonl"
    assert main(["region", "--config", str(cfg), "--gamma", "0.3",
                 "--out", str(out2)]) == 0
    rec = json.loads(out2.read_text().splitlines()[0])
    assert rec["params"]["gamma"] == 0.3


def test_cli_output_appends(tmp_path):
    out = tmp_path / "acc.jsonl"
    for _ in range(2):
        assert main(["region", "--p", "1.5", "--q", "2.0", "--gamma", "0.2",
                     "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 2


def test_cli_report_roundtrip(tmp_path):
    out = tmp_path / "res.jsonl"
    main(["sharpness", "--family", "Z_SHARP", "--schedule", "16,32,64,128",
          "--out", str(out)])
    csv_out = tmp_path / "res.csv"
    assert main(["report", "--input", str(out), "--format", "csv",
                 "--out", str(csv_out)]) == 0
    assert csv_out.read_text().startswith("command,")


def test_help_names_the_inequalities():
    for cmd, needle in (("region", "Pitt"), ("zygmund", "Zygmund"),
                        ("bochkarev", "Bochkarev"), ("hardy", "Hardy"),
                        ("stein-weiss", "Stein-Weiss"),
                        ("rademacher", "Rademacher"),
                        ("interp", "K-functional")):
        proc = subprocess.run([sys.executable, "-m", "fourierlab.cli", cmd,
                               "--help"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert needle in proc.stdout


def test_subprocess_byte_identity(tmp_path):
    args = [sys.executable, "-m", "fourierlab.cli", "zygmund", "--n-degree",
            "16", "--seed", "7", "--variant", "std", "--b", "0.0", "--q", "1.0"]
    r1 = subprocess.run(args, capture_output=True)
    r2 = subprocess.run(args + ["--jobs", "4"], capture_output=True)
    assert r1.returncode == 0 and r2.returncode == 0
    assert r1.stdout == r2.stdout
