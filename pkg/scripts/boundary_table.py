#!/usr/bin/env python3
"""Boundary triples (pi/2-boundary, crossing point, 0-boundary) for the reference families."""

import argparse

from xdiscord.boundaries import FamilyCurve, bifurcation_0, bifurcation_pi2, crossing_point
from xdiscord.models import XYZParams, horodecki, phase_flip, xyz_thermal

FAMILIES = {
    "horodecki eps=0.228": FamilyCurve(lambda m: horodecki(0.228, m), 0.05, 0.2, "m"),
    "phase-flip (0.65,0.65,0.249,0.249,0.5)": FamilyCurve(
        lambda p: phase_flip(0.65, 0.65, 0.249, 0.249, 0.5, p), 0.2, 0.4, "p"
    ),
    "xxz Jz=1.02 B=1": FamilyCurve(lambda T: xyz_thermal(XYZParams(1, 1, 1.02, 1, 1, T)), 0.5, 1.2, "T"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()
    print(f"{'family':42s} {'axis':>4s} {'t_pi2':>10s} {'t_cross':>10s} {'t_0':>10s} {'width':>10s}")
    for name, curve in FAMILIES.items():
        t_pi2 = bifurcation_pi2(curve, tol=args.tol)
        t_x = crossing_point(curve, tol=args.tol)
        t_0 = bifurcation_0(curve, tol=args.tol)
        print(f"{name:42s} {curve.label:>4s} {t_pi2:10.6f} {t_x:10.6f} {t_0:10.6f} {t_0 - t_pi2:10.3g}")


if __name__ == "__main__":
    main()
