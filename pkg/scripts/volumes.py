#!/usr/bin/env python3
"""Monte-Carlo volume of the X-state domain and of the Bell-diagonal tetrahedron."""

import argparse
import os

from xdiscord import scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=10_000_000)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    args = ap.parse_args()
    for space in ("hypercube5", "tetrahedron3"):
        r = scan.volume(space, args.samples, args.seed, args.jobs)
        line = f"{space:13s} fraction {r.fraction:.5f} +- {r.stderr:.1e}"
        if r.breakdown:
            ratio = r.breakdown["Qpi/2"] / r.breakdown["Q0"]
            line += f"  Q0 {r.breakdown['Q0']:.5f}  Qpi/2 {r.breakdown['Qpi/2']:.5f}  ratio {ratio:.3f}"
        print(line)


if __name__ == "__main__":
    main()
