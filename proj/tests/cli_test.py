#!/usr/bin/env python3
"""End-to-end CLI checks: exit codes, golden verification, artifacts."""
import json
import os
import shutil
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
DATA = sys.argv[2]


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        print(f"command {args} exited {proc.returncode}, expected {expect}")
        print(proc.stdout)
        print(proc.stderr)
        sys.exit(1)
    return proc.stdout


def main():
    run("groups", "list")
    out = run("groups", "info", "D8")
    assert "order: 16" in out, out
    assert "abelian: no" in out, out

    # Usage errors exit 2; computation failures exit 1.
    run("--bogus-flag", expect=2)
    run("groups", expect=2)
    run("groups", "info", "Z9999", expect=1)

    out = run("reps", "bscs", "M52")
    assert out.count("II") == 8, out

    out = run("--data", DATA, "tensor", "boxrank", "D8",
              "aba^-1ba^2b^3ab^-1")
    report = json.loads(out)
    assert report["rank"] == 40, report
    assert report["baselines"]["corollary"] == 241, report

    out = run("--data", DATA, "verify", "--suite", "fusion")
    assert "3/3 checks passed" in out, out

    tmp = tempfile.mkdtemp(prefix="wt_cli_")
    try:
        weights = os.path.join(tmp, "weights.json")
        out = run("construct", "Q8", "--bsc", "4", "-o", weights)
        rep = json.loads(out)
        assert rep["width"] == 8 and rep["bsc_loss"] < 1e-12, rep

        out = run("construct", "Q8", "-o", weights)
        rep = json.loads(out)
        assert rep["width"] == 12 and rep["accuracy"] == 1.0, rep

        analysis_dir = os.path.join(tmp, "analysis")
        out = run("analyze", weights, "--group", "Q8",
                  "--outdir", analysis_dir)
        rep = json.loads(out)
        assert rep["observed_thin"] is True, rep
        assert os.path.exists(os.path.join(analysis_dir, "heatmap.csv"))
        assert os.path.exists(os.path.join(analysis_dir, "report.json"))

        # Train run artifacts, identical bytes across reruns of one config.
        cfg = {
            "group": "Z4", "word": "ab", "model": "hd", "width": 6,
            "lr": 0.2, "optimizer": "gd", "epochs": 400, "seed": 11,
            "alpha": 0.8, "log_every": 100,
            "outdir": os.path.join(tmp, "run1"),
        }
        cfg_path = os.path.join(tmp, "config.json")
        with open(cfg_path, "w") as f:
            json.dump(cfg, f)
        run("train", "--config", cfg_path)
        with open(os.path.join(tmp, "run1", "metrics.csv"), "rb") as f:
            metrics1 = f.read()
        cfg["outdir"] = os.path.join(tmp, "run2")
        with open(cfg_path, "w") as f:
            json.dump(cfg, f)
        run("train", "--config", cfg_path)
        with open(os.path.join(tmp, "run2", "metrics.csv"), "rb") as f:
            metrics2 = f.read()
        assert metrics1 == metrics2
        manifest = json.load(open(os.path.join(tmp, "run1", "manifest.json")))
        assert set(manifest) == {"metrics.csv", "weights.json", "config.json",
                                 "summary.json"}

        # Unknown config keys are rejected.
        cfg["bogus"] = 1
        with open(cfg_path, "w") as f:
            json.dump(cfg, f)
        run("train", "--config", cfg_path, expect=1)
    finally:
        shutil.rmtree(tmp, ignore_errors=True)

    print("cli: all checks passed")


if __name__ == "__main__":
    main()
