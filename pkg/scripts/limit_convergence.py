#!/usr/bin/env python3
"""Print Richardson convergence tables for the four chord functionals.

For each of j/h, k/h, L/sqrt(h) and alpha the table shows the raw samples
on the geometric offset grid next to the extrapolated limit, its internal
error estimate, and the distance to the expected limit.

Usage:
    python scripts/limit_convergence.py --curve circle:r=1 --xp 0
    python scripts/limit_convergence.py --curve catenary --xp 0.3 --h0 0.05 --n 10
"""

import argparse

from chordgeom import GridConfig, limit_suite, parse_curve_spec


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--curve", default="circle:r=1")
    ap.add_argument("--xp", type=float, default=0.0)
    ap.add_argument("--h0", type=float, default=2.0 ** -6)
    ap.add_argument("--ratio", type=float, default=0.5)
    ap.add_argument("--n", type=int, default=8)
    args = ap.parse_args()

    curve = parse_curve_spec(args.curve)
    suite = limit_suite(curve, args.xp, GridConfig(h0=args.h0, ratio=args.ratio, n=args.n))
    print(f"curve={curve.label}  xp={suite.x_p}  kappa={suite.kappa:.12g}")
    for name, est in suite.estimates.items():
        target = suite.targets[name]
        print(f"\n{name}  (target {target:.12g})")
        print(f"  {'h':>14}  {'value':>20}  {'value - target':>14}")
        for h, v in est.samples:
            print(f"  {h:14.8g}  {v:20.15f}  {v - target:14.2e}")
        print(f"  extrapolated: {est.value:.15f}  err-est {est.err:.2e}  "
              f"off-target {est.value - target:.2e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
