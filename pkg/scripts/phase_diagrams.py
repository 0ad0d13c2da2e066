#!/usr/bin/env python3
"""Branch maps for the Horodecki family and the heteronuclear dipolar dimer.

Each map is written as a cell CSV plus a CSV of per-row boundary roots.
"""

import argparse
import pathlib

from xdiscord import scan

DIAGRAMS = {
    # (model, x axis, y axis, fixed parameters)
    "horodecki": ("horodecki", "m:0.0:0.5:201", "epsilon:0.02:0.5:25", {}),
    "dipolar": ("dipolar", "B1:0.0:4.0:161", "B2:0.0:8.0:81", {"D": 1.0, "T": 1.0}),
}


def run(name, model, ax, ay, fixed, outdir, jobs):
    spec = scan.SweepSpec(model, (scan.Axis.parse(ax), scan.Axis.parse(ay)), fixed, ("branch",))
    x, y = (a.name for a in spec.axes)
    cells = scan.phase_diagram(spec, jobs)
    with open(outdir / f"phase_{name}.csv", "w", newline="") as fh:
        scan.write_csv(cells, (x, y, "branch"), spec.metadata(), fh)
    roots = [
        {y: r[y], "kind": kind, x: t}
        for r in scan.refine_rows(spec, jobs)
        for kind in ("t_pi2", "t_cross", "t_0")
        for t in r[kind]
    ]
    with open(outdir / f"phase_{name}_roots.csv", "w", newline="") as fh:
        scan.write_csv(roots, (y, "kind", x), spec.metadata(), fh)
    n_theta = sum(c["branch"] == "Qtheta" for c in cells)
    print(f"{name}: {len(cells)} cells, {n_theta} Qtheta, {len(roots)} boundary roots")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--only", choices=sorted(DIAGRAMS))
    args = ap.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, (model, ax, ay, fixed) in DIAGRAMS.items():
        if args.only in (None, name):
            run(name, model, ax, ay, fixed, outdir, args.jobs)


if __name__ == "__main__":
    main()
