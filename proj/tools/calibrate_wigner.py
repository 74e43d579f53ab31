#!/usr/bin/env python3
"""Writes data/wigner_calibration.json from a Wigner run on seeds disjoint from
the acceptance seeds (0..19). The threshold is twice the calibration median."""

import argparse
import json
import pathlib
import statistics
import subprocess
import tempfile


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ffp", default="build/ffp")
    ap.add_argument("--out", default="data/wigner_calibration.json")
    ap.add_argument("--from-seed", type=int, default=1000)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--factor", type=float, default=2.0)
    args = ap.parse_args()

    config = {"d": 3, "n": 200, "law": "gaussian", "seeds": {"from": args.from_seed, "count": args.count}}
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run([args.ffp, "--mode", "bigfloat", "--precision", "256", "--out", tmp,
                        "experiment", "wigner", "--config", json.dumps(config)], check=True)
        report = json.loads((pathlib.Path(tmp) / "wigner.json").read_text())

    errors = [float(r["metrics"]["coeff_linf_error"]) for r in report["rows"]]
    med = statistics.median(errors)
    result = {
        "experiment": "wigner",
        "d": 3,
        "n": 200,
        "law": "gaussian",
        "precision_bits": 256,
        "seeds": {"from": args.from_seed, "count": args.count},
        "median_coeff_linf_error": med,
        "max_coeff_linf_error": max(errors),
        "factor": args.factor,
        "threshold": args.factor * med,
    }
    pathlib.Path(args.out).write_text(json.dumps(result, indent=2) + "\n")
    print(json.dumps(result, indent=2))


if __name__ == "__main__":
    main()
