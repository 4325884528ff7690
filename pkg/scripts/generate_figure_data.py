#!/usr/bin/env python3
"""Export exact-vs-asymptotic profit curves for all four long-horizon
regimes, plus the censor time path for a few dispersion values.

The CSV files are plain plotting fodder: feed them to any external
tool.  Everything here is deterministic.

Usage:
    python3 scripts/generate_figure_data.py --out figures_data
"""

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from censor_lab.censor import solve_normal_censor
from censor_lab.cli import main as cli_main
from censor_lab.model import ModelParams, ScaledParams


def censor_path_csv(out_dir: Path, mu_bar: float, kappas, theta_max: float,
                    points: int) -> Path:
    """log b_bar(theta) per dispersion value; shows increasing vs unimodal."""
    thetas = np.geomspace(1e-3, theta_max, points)
    path = out_dir / "censor_path.csv"
    with path.open("w", newline="\n") as fh:
        fh.write("theta," + ",".join(f"log_b_kappa_{k:g}" for k in kappas) + "\n")
        for t in thetas:
            row = [f"{t:.17g}"]
            for kappa in kappas:
                params = ModelParams.from_variance(mu_bar, mu_bar / kappa)
                scaled = ScaledParams.from_horizon(params, float(t))
                sol = solve_normal_censor(scaled.mu, scaled.sigma)
                row.append(f"{sol.log_b_tilde:.17g}")
            fh.write(",".join(row) + "\n")
    return path


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures_data", help="output directory")
    ap.add_argument("--mu-bar", type=float, default=0.05)
    ap.add_argument("--theta-max", type=float, default=2000.0)
    ap.add_argument("--points", type=int, default=400)
    args = ap.parse_args(argv)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    # the four regime datasets come straight from the CLI command
    code = cli_main(["figures", "--out", str(out_dir),
                     "--mu-bar", str(args.mu_bar),
                     "--theta-max", str(args.theta_max),
                     "--points", str(args.points)])
    if code != 0:
        return code

    path = censor_path_csv(out_dir, args.mu_bar, kappas=(0.25, 0.7, 1.0),
                           theta_max=args.theta_max, points=args.points)
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
