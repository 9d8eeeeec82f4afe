#!/usr/bin/env python3
"""Regenerates tests/fixtures/synthetic: per-file Halstead effort over 17
releases of two packages, with inequality that shrinks release by release
plus sampling noise. Deterministic for a given --seed."""

import argparse
import json
import pathlib

import numpy as np

VERSIONS = ["8.0", "8.1", "8.2", "8.3", "9.0", "9.1", "9.2", "9.3", "9.4",
            "9.5", "9.6", "10.0", "10.1", "10.2", "10.3", "10.4", "10.5"]
PACKAGES = {
    # package: (files, sigma at first release, sigma at last release, skipped release)
    "solids": (32, 1.7, 0.9, None),
    "geometry": (24, 1.5, 0.8, "9.3"),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20161029)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parent.parent / "tests/fixtures/synthetic")
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)

    rows = []
    for package, (files, sigma0, sigma1, skipped) in PACKAGES.items():
        for k, version in enumerate(VERSIONS):
            if version == skipped:
                continue
            sigma = sigma0 + (sigma1 - sigma0) * k / (len(VERSIONS) - 1)
            efforts = rng.lognormal(mean=9.0, sigma=sigma, size=files)
            for i, effort in enumerate(efforts):
                rows.append((version, package, f"{package}/src/file{i:02d}.cc",
                             "halstead_effort", f"{effort:.6g}"))

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "manifest.json").write_text(json.dumps({"versions": VERSIONS}, indent=2) + "\n")
    with open(args.out / "metrics.csv", "w", newline="\n") as f:
        f.write("version,package,entity,metric,value\n")
        for row in rows:
            f.write(",".join(row) + "\n")


if __name__ == "__main__":
    main()
