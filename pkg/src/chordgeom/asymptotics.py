"""Small-offset limits, power-law fits, and the parabola detector.

The chord functionals admit expansions in integer powers of the offset h
once divided by their natural scale (h for the centroid distances,
sqrt(h) for the chord length), so Richardson extrapolation over a
geometric grid recovers the h -> 0 limits to high accuracy.  A curve is
flagged as a parabola exactly when, at every probe, the centroid
distances follow clean power laws with the parabolic constants and the
area and centroid ratios sit at 4/3 and 2/5 on the whole grid.
"""

import math
import warnings
from dataclasses import dataclass, field, fields

from .chords import alpha, chord_endpoints, max_offset, tangent_apex, centroid_distances
from .curves import CurveSpec, curvature_at, probe_frame
from .errors import ChordGeomError
from .sections import section_report, triangle_area

__all__ = [
    "LimitEstimate",
    "PowerLawFit",
    "GridConfig",
    "DetectionConfig",
    "TestOutcome",
    "Verdict",
    "LimitSuite",
    "ProbeFunctionals",
    "h_grid",
    "probe_grid",
    "estimate_limit",
    "power_law_fit",
    "probe_functionals",
    "limit_suite",
    "classify_parabola",
]


@dataclass(frozen=True)
class LimitEstimate:
    """Extrapolated h -> 0 limit with the samples that produced it."""

    samples: tuple[tuple[float, float], ...]
    value: float
    err: float


@dataclass(frozen=True)
class PowerLawFit:
    """Best power law v = lam * h**mu with the worst relative deviation."""

    lam: float
    mu: float
    residual: float


@dataclass(frozen=True)
class GridConfig:
    """Geometric offset grid; h0=None picks min(0.4 * max offset, 0.5)."""

    h0: float | None = None
    ratio: float = 0.5
    n: int = 8


@dataclass(frozen=True)
class DetectionConfig:
    """Tolerances and grid for the parabola detector."""

    tol_mu: float = 1e-3
    tol_lam: float = 1e-3
    tol_res: float = 1e-6
    tol_ratio: float = 1e-6
    grid: GridConfig = field(default_factory=GridConfig)

    @classmethod
    def from_mapping(cls, mapping) -> "DetectionConfig":
        """Build from a flat key-value set (tol_* plus grid h0/ratio/n)."""
        mapping = dict(mapping)
        grid_kwargs = {}
        for key in ("h0", "ratio", "n"):
            if key in mapping:
                grid_kwargs[key] = mapping.pop(key)
        tol_names = {f.name for f in fields(cls)} - {"grid"}
        unknown = set(mapping) - tol_names
        if unknown:
            raise ValueError(f"unknown detection config keys: {sorted(unknown)}")
        return cls(grid=GridConfig(**grid_kwargs), **mapping)


@dataclass(frozen=True)
class TestOutcome:
    """One detector test at one probe, with its measured values."""

    test: str
    x_p: float
    passed: bool
    measures: dict


@dataclass(frozen=True)
class Verdict:
    """Detector result: parabola iff every test passed at every probe."""

    classification: str
    probes: tuple[float, ...]
    outcomes: tuple[TestOutcome, ...]
    inconclusive: tuple[str, ...]


@dataclass(frozen=True)
class ProbeFunctionals:
    """All chord functionals evaluated at one (probe, offset) pair."""

    h: float
    L: float
    S: float
    T: float
    g: float
    d: float
    j: float
    k: float
    delta: float
    alpha: float


@dataclass(frozen=True)
class LimitSuite:
    """Extrapolated limits of j/h, k/h, L/sqrt(h) and alpha at one probe."""

    x_p: float
    kappa: float
    estimates: dict
    targets: dict


def h_grid(h0: float, ratio: float, n: int, h_max: float = math.inf) -> list[float]:
    """Geometric offset grid h0, h0*ratio, ... of length n.

    Entries that underflow to zero are truncated with a warning.
    """
    h0 = float(h0)
    ratio = float(ratio)
    if h0 <= 0:
        raise ValueError(f"h0 must be positive, got {h0!r}")
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio!r}")
    if n < 3:
        raise ValueError(f"need at least 3 grid points, got {n!r}")
    if h0 > h_max:
        raise ValueError(f"h0={h0!r} exceeds the largest valid offset {h_max!r}")
    grid = []
    for i in range(n):
        h = h0 * ratio ** i
        if h <= 0.0:
            warnings.warn(f"offset grid truncated at {len(grid)} points (underflow)")
            break
        grid.append(h)
    return grid


def probe_grid(curve: CurveSpec, frame, grid: GridConfig) -> list[float]:
    """Resolve a GridConfig at a probe, picking h0 from the valid range if unset."""
    h_cap = max_offset(curve, frame)
    h0 = min(0.4 * h_cap, 0.5) if grid.h0 is None else grid.h0
    return h_grid(h0, grid.ratio, grid.n, h_max=h_cap)


def estimate_limit(samples) -> LimitEstimate:
    """Richardson extrapolation of (h, value) samples on a geometric grid.

    Assumes an expansion value(h) = c0 + c1*h + c2*h^2 + ... and
    eliminates one power per level; err is the difference between the
    last two levels of the table.
    """
    samples = [(float(h), float(v)) for h, v in samples]
    if len(samples) < 3:
        raise ValueError(f"need at least 3 samples, got {len(samples)}")
    samples.sort(key=lambda p: -p[0])
    hs = [h for h, _ in samples]
    ratio = hs[1] / hs[0]
    for i in range(len(hs) - 1):
        r = hs[i + 1] / hs[i]
        if abs(r - ratio) > 1e-8 * ratio:
            raise ValueError(f"samples are not on a geometric grid: ratios {ratio!r} vs {r!r}")
    rho = 1.0 / ratio
    level = [v for _, v in samples]
    prev_apex = level[0]
    for m in range(1, len(samples)):
        factor = rho ** m - 1.0
        prev_apex = level[0]
        level = [
            level[i + 1] + (level[i + 1] - level[i]) / factor
            for i in range(len(level) - 1)
        ]
    return LimitEstimate(
        samples=tuple(samples),
        value=float(level[0]),
        err=abs(float(level[0]) - float(prev_apex)),
    )


def power_law_fit(samples) -> PowerLawFit:
    """Least squares of log(value) against log(h): v = lam * h**mu.

    Residual is the worst relative deviation of the fitted law from the
    samples.  All values must be positive.
    """
    samples = [(float(h), float(v)) for h, v in samples]
    if len(samples) < 3:
        raise ValueError(f"need at least 3 samples, got {len(samples)}")
    if any(v <= 0 for _, v in samples):
        raise ValueError("power-law fit requires positive values")
    logs = [(math.log(h), math.log(v)) for h, v in samples]
    n = len(logs)
    sx = sum(x for x, _ in logs)
    sy = sum(y for _, y in logs)
    sxx = sum(x * x for x, _ in logs)
    sxy = sum(x * y for x, y in logs)
    denom = n * sxx - sx * sx
    mu = (n * sxy - sx * sy) / denom
    lam = math.exp((sy - mu * sx) / n)
    residual = max(abs(v - lam * h ** mu) / v for h, v in samples)
    return PowerLawFit(lam=lam, mu=mu, residual=residual)


def probe_functionals(curve: CurveSpec, frame, h: float) -> ProbeFunctionals:
    """Evaluate chord, triangle and section functionals at one offset."""
    chord = chord_endpoints(curve, frame, h)
    apex = tangent_apex(curve, chord)
    j, k, delta = centroid_distances(chord, apex)
    a = alpha(curve, chord)
    sec = section_report(curve, frame, chord)
    return ProbeFunctionals(
        h=float(h), L=float(chord.L), S=float(sec.S), T=float(sec.T),
        g=float(sec.g), d=float(sec.d), j=float(j), k=float(k),
        delta=float(delta), alpha=float(a),
    )


def limit_suite(curve: CurveSpec, x_p: float, grid: GridConfig | None = None) -> LimitSuite:
    """Extrapolate j/h, k/h, L/sqrt(h) and alpha at a probe.

    Expected limits are 2/3, 4/3, 2*sqrt(2)/sqrt(kappa) and
    sqrt(2)/sqrt(kappa), with kappa the curvature at the probe.
    """
    frame = probe_frame(curve, x_p)
    hs = probe_grid(curve, frame, grid or GridConfig())
    rows = []
    for h in hs:
        chord = chord_endpoints(curve, frame, h)
        apex = tangent_apex(curve, chord)
        j, k, _ = centroid_distances(chord, apex)
        rows.append((h, j / h, k / h, chord.L / math.sqrt(h), alpha(curve, chord)))
    kappa = curvature_at(curve, x_p)
    estimates = {
        "j_over_h": estimate_limit([(h, v) for h, v, *_ in rows]),
        "k_over_h": estimate_limit([(h, v) for h, _, v, *_ in rows]),
        "L_over_sqrt_h": estimate_limit([(h, v) for h, _, _, v, _ in rows]),
        "alpha": estimate_limit([(h, v) for h, *_, v in rows]),
    }
    targets = {
        "j_over_h": 2.0 / 3.0,
        "k_over_h": 4.0 / 3.0,
        "L_over_sqrt_h": 2.0 * math.sqrt(2.0) / math.sqrt(kappa),
        "alpha": math.sqrt(2.0) / math.sqrt(kappa),
    }
    return LimitSuite(x_p=float(x_p), kappa=float(kappa), estimates=estimates, targets=targets)


def _fit_outcome(name, x_p, fit, lam_target, cfg):
    passed = (
        abs(fit.mu - 1.0) <= cfg.tol_mu
        and abs(fit.lam - lam_target) <= cfg.tol_lam
        and fit.residual <= cfg.tol_res
    )
    return TestOutcome(
        test=name, x_p=x_p, passed=bool(passed),
        measures={
            "lambda": fit.lam, "mu": fit.mu, "residual": fit.residual,
            "lambda_target": lam_target,
        },
    )


def _ratio_outcome(name, x_p, hs, ratios, target, cfg):
    devs = [abs(r - target) for r in ratios]
    return TestOutcome(
        test=name, x_p=x_p, passed=bool(max(devs) <= cfg.tol_ratio),
        measures={
            "target": target, "max_abs_dev": max(devs),
            "grid": list(hs), "ratios": list(ratios),
        },
    )


def classify_parabola(curve: CurveSpec, probes, config: DetectionConfig | None = None) -> Verdict:
    """Decide parabola / not-parabola from chord functionals at the given probes.

    Four tests per probe: power-law fits of the two centroid distances
    against 2/3 and 4/3, the area ratio pinned at 4/3 across the grid,
    and the section-centroid ratio pinned at 2/5 across the grid.  Any
    failing test or inconclusive probe yields not-parabola.
    """
    cfg = config or DetectionConfig()
    probes = tuple(float(p) for p in probes)
    outcomes: list[TestOutcome] = []
    inconclusive: list[str] = []
    for x_p in probes:
        try:
            frame = probe_frame(curve, x_p)
            hs = probe_grid(curve, frame, cfg.grid)
            rows = [probe_functionals(curve, frame, h) for h in hs]
        except (ChordGeomError, ValueError) as exc:
            inconclusive.append(f"x_p={x_p!r}: {type(exc).__name__}: {exc}")
            continue
        outcomes.append(_fit_outcome(
            "j_power_law", x_p, power_law_fit([(r.h, r.j) for r in rows]), 2.0 / 3.0, cfg))
        outcomes.append(_fit_outcome(
            "k_power_law", x_p, power_law_fit([(r.h, r.k) for r in rows]), 4.0 / 3.0, cfg))
        outcomes.append(_ratio_outcome(
            "area_ratio", x_p, hs, [r.S / r.T for r in rows], 4.0 / 3.0, cfg))
        outcomes.append(_ratio_outcome(
            "g_ratio", x_p, hs, [r.g / r.h for r in rows], 2.0 / 5.0, cfg))
    is_parabola = not inconclusive and all(o.passed for o in outcomes)
    return Verdict(
        classification="parabola" if is_parabola else "not-parabola",
        probes=probes,
        outcomes=tuple(outcomes),
        inconclusive=tuple(inconclusive),
    )
