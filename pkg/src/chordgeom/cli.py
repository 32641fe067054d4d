"""Command-line surface: probe, sweep, limits, detect and verify.

Curve spec grammar:

    parabola:a=<r>     circle:r=<r>     ellipse:a=<r>,b=<r>
    catenary           exp              poly:<c0>,<c1>,...

Exit status is 0 on success (including a not-parabola verdict), 1 on
analysis errors (no chord, degenerate geometry, quadrature failure) and
2 on usage errors (bad flags, malformed or nonconvex curve specs,
out-of-domain probes).
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields

from .asymptotics import (
    DetectionConfig,
    GridConfig,
    classify_parabola,
    limit_suite,
    probe_functionals,
    probe_grid,
)
from .chords import chord_growth_residual, max_offset
from .curves import CurveSpec, make_curve, probe_frame
from .errors import (
    ChordGeomError,
    ConvexityError,
    CurveParseError,
    DomainError,
)
from .sections import area_derivative_residual

__all__ = ["SweepRow", "CSV_HEADER", "parse_curve_spec", "sweep_row", "main"]


@dataclass(frozen=True)
class SweepRow:
    """One row of functional values at a (curve, probe, offset) triple."""

    curve: str
    xp: float
    h: float
    L: float
    S: float
    T: float
    g: float
    j: float
    k: float
    delta: float
    alpha: float
    S_over_T: float
    g_over_h: float
    j_over_h: float
    k_over_h: float


CSV_HEADER = ",".join(f.name for f in fields(SweepRow))


def _parse_float(token: str, position: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise CurveParseError(f"expected a number, got {token!r}", position) from None


def _parse_kv(body: str, offset: int, keys: tuple[str, ...]) -> list[float]:
    parts = []
    pos = offset
    tokens = body.split(",")
    if len(tokens) != len(keys):
        raise CurveParseError(
            f"expected {len(keys)} parameter(s) {'='.join(keys) if len(keys) == 1 else keys}, "
            f"got {len(tokens)}", offset)
    for token, key in zip(tokens, keys):
        name, eq, value = token.partition("=")
        if not eq or name.strip() != key:
            raise CurveParseError(f"expected {key}=<number>, got {token!r}", pos)
        parts.append(_parse_float(value, pos + len(name) + 1))
        pos += len(token) + 1
    return parts


def parse_curve_spec(text: str) -> CurveSpec:
    """Parse a curve spec string into a CurveSpec.

    Malformed text raises CurveParseError with the offending position;
    well-formed but nonconvex parameters raise ConvexityError.
    """
    head, sep, body = text.partition(":")
    kind = head.strip()
    offset = len(head) + 1
    if kind == "parabola":
        (a,) = _parse_kv(body, offset, ("a",))
        if a <= 0:
            raise CurveParseError("parabola needs a > 0", offset + 2)
        return make_curve("parabola", (a,))
    if kind == "circle":
        (r,) = _parse_kv(body, offset, ("r",))
        if r <= 0:
            raise CurveParseError("circle needs r > 0", offset + 2)
        return make_curve("circle", (r,))
    if kind == "ellipse":
        a, b = _parse_kv(body, offset, ("a", "b"))
        if a <= 0 or b <= 0:
            raise CurveParseError("ellipse needs a > 0 and b > 0", offset)
        return make_curve("ellipse", (a, b))
    if kind in ("catenary", "exp"):
        if sep:
            raise CurveParseError(f"{kind} takes no parameters", offset)
        return make_curve(kind)
    if kind == "poly":
        if not body:
            raise CurveParseError("poly needs a coefficient list", offset)
        coeffs = []
        pos = offset
        for token in body.split(","):
            coeffs.append(_parse_float(token, pos))
            pos += len(token) + 1
        return make_curve("poly", coeffs)
    raise CurveParseError(f"unknown curve kind {kind!r}", 0)


def sweep_row(curve: CurveSpec, frame, h: float) -> SweepRow:
    """Evaluate every functional at one offset and bundle it as a row."""
    f = probe_functionals(curve, frame, h)
    row = SweepRow(
        curve=curve.label, xp=frame.x_p, h=f.h, L=f.L, S=f.S, T=f.T,
        g=f.g, j=f.j, k=f.k, delta=f.delta, alpha=f.alpha,
        S_over_T=f.S / f.T, g_over_h=f.g / f.h, j_over_h=f.j / f.h,
        k_over_h=f.k / f.h,
    )
    for fld in fields(SweepRow)[1:]:
        if not math.isfinite(getattr(row, fld.name)):
            raise ChordGeomError(f"non-finite {fld.name} in sweep row at h={h!r}")
    return row


def _emit_rows(rows: list[SweepRow], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([asdict(r) for r in rows], indent=2)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(SweepRow)])
    for r in rows:
        writer.writerow([r.curve] + [getattr(r, f.name) for f in fields(SweepRow)[1:]])
    return buf.getvalue().rstrip("\n")


def _parse_xp_list(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip() != ""]


def _grid_config(args) -> GridConfig:
    kwargs = {}
    if args.h0 is not None:
        kwargs["h0"] = args.h0
    if args.ratio is not None:
        kwargs["ratio"] = args.ratio
    if args.n is not None:
        kwargs["n"] = args.n
    return GridConfig(**kwargs)


def cmd_probe(args) -> int:
    curve = parse_curve_spec(args.curve)
    xp = _parse_xp_list(args.xp)
    if len(xp) != 1:
        raise CurveParseError("probe takes exactly one --xp value", 0)
    row = sweep_row(curve, probe_frame(curve, xp[0]), args.h)
    if (args.format or "csv") == "json":
        print(json.dumps(asdict(row), indent=2))
    else:
        print(_emit_rows([row], "csv"))
    return 0


def cmd_sweep(args) -> int:
    curve = parse_curve_spec(args.curve)
    grid_cfg = _grid_config(args)
    rows = []
    for xp in sorted(_parse_xp_list(args.xp)):
        frame = probe_frame(curve, xp)
        for h in probe_grid(curve, frame, grid_cfg):
            rows.append(sweep_row(curve, frame, h))
    print(_emit_rows(rows, args.format or "csv"))
    return 0


def cmd_limits(args) -> int:
    curve = parse_curve_spec(args.curve)
    xp = _parse_xp_list(args.xp)
    if len(xp) != 1:
        raise CurveParseError("limits takes exactly one --xp value", 0)
    suite = limit_suite(curve, xp[0], _grid_config(args))
    report = {
        "curve": curve.label,
        "xp": suite.x_p,
        "kappa": suite.kappa,
        "estimates": {
            name: {
                "value": est.value,
                "err": est.err,
                "target": suite.targets[name],
                "samples": [[h, v] for h, v in est.samples],
            }
            for name, est in suite.estimates.items()
        },
    }
    if (args.format or "json") == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["functional", "value", "err", "target"])
        for name, est in suite.estimates.items():
            writer.writerow([name, est.value, est.err, suite.targets[name]])
        print(buf.getvalue().rstrip("\n"))
    else:
        print(json.dumps(report, indent=2))
    return 0


def cmd_detect(args) -> int:
    curve = parse_curve_spec(args.curve)
    tols = {
        name: getattr(args, name)
        for name in ("tol_mu", "tol_lam", "tol_res", "tol_ratio")
        if getattr(args, name) is not None
    }
    cfg = DetectionConfig(grid=_grid_config(args), **tols)
    verdict = classify_parabola(curve, _parse_xp_list(args.xp), cfg)
    report = {
        "curve": curve.label,
        "classification": verdict.classification,
        "probes": list(verdict.probes),
        "config": {
            "tol_mu": cfg.tol_mu, "tol_lam": cfg.tol_lam,
            "tol_res": cfg.tol_res, "tol_ratio": cfg.tol_ratio,
            "h0": cfg.grid.h0, "ratio": cfg.grid.ratio, "n": cfg.grid.n,
        },
        "outcomes": [asdict(o) for o in verdict.outcomes],
        "inconclusive": list(verdict.inconclusive),
    }
    if (args.format or "json") == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["test", "xp", "passed"])
        for o in verdict.outcomes:
            writer.writerow([o.test, o.x_p, o.passed])
        writer.writerow(["classification", "", verdict.classification])
        print(buf.getvalue().rstrip("\n"))
    else:
        print(json.dumps(report, indent=2))
    return 0


# (identity name, scope, tolerance, relative-to) rows for `verify`.
_IDENTITIES = (
    ("area_ratio", "parabola-only", 1e-7, None),        # S/T = 4/3
    ("g_ratio", "parabola-only", 1e-7, None),           # g/h = 2/5
    ("j_ratio", "parabola-only", 1e-8, None),           # j/h = 2/3
    ("k_ratio", "parabola-only", 1e-8, None),           # k/h = 4/3
    ("area_growth", "universal", 1e-5, "L"),            # dS/dh = L
    ("chord_growth", "universal", 1e-5, "alpha"),       # sqrt(h) dL/dh = alpha
    ("centroid_gap", "universal", 1e-12, None),         # k - j = 2h/3
    ("base_centroid", "universal", 1e-12, None),        # delta = h/3
)


def run_verify(curve: CurveSpec, probes, grid_cfg: GridConfig):
    """Evaluate the identity suite; returns rows (name, scope, max_dev, tol, passed)."""
    devs = {name: 0.0 for name, *_ in _IDENTITIES}
    for xp in probes:
        frame = probe_frame(curve, xp)
        for h in probe_grid(curve, frame, grid_cfg):
            f = probe_functionals(curve, frame, h)
            devs["area_ratio"] = max(devs["area_ratio"], abs(f.S / f.T - 4.0 / 3.0))
            devs["g_ratio"] = max(devs["g_ratio"], abs(f.g / f.h - 2.0 / 5.0))
            devs["j_ratio"] = max(devs["j_ratio"], abs(f.j / f.h - 2.0 / 3.0))
            devs["k_ratio"] = max(devs["k_ratio"], abs(f.k / f.h - 4.0 / 3.0))
            devs["area_growth"] = max(
                devs["area_growth"], area_derivative_residual(curve, frame, h) / f.L)
            devs["chord_growth"] = max(
                devs["chord_growth"], chord_growth_residual(curve, frame, h) / f.alpha)
            devs["centroid_gap"] = max(
                devs["centroid_gap"], abs((f.k - f.j) - 2.0 * f.h / 3.0))
            devs["base_centroid"] = max(devs["base_centroid"], abs(f.delta - f.h / 3.0))
    return [
        (name, scope, devs[name], tol, devs[name] <= tol)
        for name, scope, tol, _rel in _IDENTITIES
    ]


def cmd_verify(args) -> int:
    curve = parse_curve_spec(args.curve)
    probes = _parse_xp_list(args.xp)
    rows = run_verify(curve, probes, _grid_config(args))
    if (args.format or "csv") == "json":
        print(json.dumps([
            {"identity": name, "scope": scope, "max_dev": dev, "tol": tol,
             "status": "pass" if ok else "fail"}
            for name, scope, dev, tol, ok in rows
        ], indent=2))
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["identity", "scope", "max_dev", "tol", "status"])
        for name, scope, dev, tol, ok in rows:
            writer.writerow([name, scope, dev, tol, "pass" if ok else "fail"])
        print(buf.getvalue().rstrip("\n"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordgeom",
        description="Chord-tangent-centroid analysis of strictly convex plane curves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, xp_default=None, fmt=None, probes_alias=False):
        names = ("--xp", "--probes") if probes_alias else ("--xp",)
        p.add_argument(*names, dest="xp", default=xp_default, required=xp_default is None,
                       help="probe abscissa(s), comma separated")
        p.add_argument("--curve", required=True, help="curve spec, e.g. parabola:a=1")
        p.add_argument("--format", choices=("csv", "json"), default=fmt)

    def add_grid(p):
        p.add_argument("--h0", type=float, default=None, help="largest offset (default: auto)")
        p.add_argument("--ratio", type=float, default=None, help="grid ratio in (0,1), default 0.5")
        p.add_argument("--n", type=int, default=None, help="grid length, default 8")

    p = sub.add_parser("probe", help="one probe, one offset -> one row")
    add_common(p, fmt="csv")
    p.add_argument("--h", type=float, required=True, help="normal offset")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("sweep", help="probe list x offset grid -> CSV")
    add_common(p, fmt="csv")
    add_grid(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("limits", help="extrapolated small-offset limits -> JSON")
    add_common(p, fmt="json")
    add_grid(p)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("detect", help="parabola / not-parabola verdict -> JSON")
    add_common(p, fmt="json", probes_alias=True)
    add_grid(p)
    for name in ("tol-mu", "tol-lam", "tol-res", "tol-ratio"):
        p.add_argument(f"--{name}", type=float, default=None,
                       dest=name.replace("-", "_"))
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("verify", help="identity suite -> pass/fail table")
    add_common(p, xp_default="0", fmt="csv")
    add_grid(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (CurveParseError, ConvexityError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ChordGeomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
