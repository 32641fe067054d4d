#!/usr/bin/env python3
"""Run the parabola detector across the built-in curve catalog.

Prints one line per curve with the verdict and the worst deviation each
test saw, which makes the separation between parabolas and the rest easy
to eyeball.

Usage:
    python scripts/catalog_detect.py
    python scripts/catalog_detect.py --probes 0,0.4 --tol-ratio 1e-8
"""

import argparse

from chordgeom import DetectionConfig, GridConfig, classify_parabola, parse_curve_spec

CATALOG = (
    "parabola:a=0.5",
    "parabola:a=1",
    "parabola:a=2",
    "circle:r=1",
    "ellipse:a=2,b=1",
    "catenary",
    "exp",
    "poly:0,0,1,0,1",
)


def worst_measure(outcome):
    m = outcome.measures
    if "residual" in m:
        return max(abs(m["mu"] - 1.0), abs(m["lambda"] - m["lambda_target"]), m["residual"])
    return m["max_abs_dev"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--probes", default="0", help="comma-separated probe abscissas")
    ap.add_argument("--tol-ratio", type=float, default=None, dest="tol_ratio")
    ap.add_argument("--tol-res", type=float, default=None, dest="tol_res")
    ap.add_argument("--n", type=int, default=None)
    args = ap.parse_args()

    probes = [float(tok) for tok in args.probes.split(",")]
    cfg_kwargs = {k: v for k, v in (("tol_ratio", args.tol_ratio), ("tol_res", args.tol_res))
                  if v is not None}
    grid = GridConfig(n=args.n) if args.n else GridConfig()
    cfg = DetectionConfig(grid=grid, **cfg_kwargs)

    print(f"{'curve':<18} {'verdict':<13} worst deviation per test")
    for spec in CATALOG:
        curve = parse_curve_spec(spec)
        verdict = classify_parabola(curve, probes, cfg)
        per_test = {}
        for o in verdict.outcomes:
            per_test[o.test] = max(per_test.get(o.test, 0.0), worst_measure(o))
        detail = "  ".join(f"{t}={v:.1e}" for t, v in sorted(per_test.items()))
        flag = " (inconclusive)" if verdict.inconclusive else ""
        print(f"{curve.label:<18} {verdict.classification:<13} {detail}{flag}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
