"""Chords parallel to the probe tangent, and the tangent-triangle geometry.

The chord at offset h is cut by the line through P + h*N parallel to the
tangent at P.  Its endpoints A, B carry tangent lines that meet at the
apex Q below the probe tangent and hit that tangent at the feet A1, B1.
All triangle quantities are computed in the probe frame, where the chord
line is v = h and the probe tangent is v = 0, then mapped back to world
coordinates.
"""

import math
from dataclasses import dataclass

import numpy as np

from .curves import CurveSpec, ProbeFrame, from_frame
from .errors import ChordGeomError, DegenerateGeometryError, NoChordError

__all__ = [
    "ChordSolution",
    "TangentApex",
    "TriangleReport",
    "chord_endpoints",
    "max_offset",
    "frame_slopes",
    "tangent_apex",
    "tangent_feet",
    "centroid_distances",
    "alpha",
    "triangle_report",
    "chord_growth_residual",
]

_EPS = float(np.finfo(float).eps)
_GRAPH_SAMPLES = 64


@dataclass(frozen=True, eq=False)
class ChordSolution:
    """Chord at normal offset h: world endpoints A, B and frame abscissas s < 0 < t."""

    frame: ProbeFrame
    h: float
    xA: float
    xB: float
    A: np.ndarray
    B: np.ndarray
    s: float
    t: float
    L: float


@dataclass(frozen=True, eq=False)
class TangentApex:
    """Intersection Q of the endpoint tangents, with its frame coordinates."""

    Q: np.ndarray
    x0: float
    y0: float


@dataclass(frozen=True, eq=False)
class TriangleReport:
    """Apex, feet, centroids and the centroid distances to the chord line."""

    Q: np.ndarray
    x0: float
    y0: float
    A1: np.ndarray
    B1: np.ndarray
    J: np.ndarray
    K: np.ndarray
    j: float
    k: float
    delta: float
    alpha: float


def offset_coord(curve: CurveSpec, frame: ProbeFrame, x):
    """Normal offset v of the curve point (x, f(x)) from the probe tangent."""
    x = np.asarray(x, float)
    return (x - frame.P[0]) * frame.N[0] + (curve.f(x) - frame.P[1]) * frame.N[1]


def tangent_coord(curve: CurveSpec, frame: ProbeFrame, x):
    """Tangential coordinate u of the curve point (x, f(x))."""
    x = np.asarray(x, float)
    return (x - frame.P[0]) * frame.T[0] + (curve.f(x) - frame.P[1]) * frame.T[1]


def offset_slope(curve: CurveSpec, frame: ProbeFrame, x):
    """d/dx of the normal offset."""
    return frame.N[0] + curve.fp(np.asarray(x, float)) * frame.N[1]


def tangent_slope(curve: CurveSpec, frame: ProbeFrame, x):
    """d/dx of the tangential coordinate; positive iff the arc is graph-like."""
    return frame.T[0] + curve.fp(np.asarray(x, float)) * frame.T[1]


def _bracket_side(curve, frame, h, side):
    """Expand outward from x_p until the offset reaches h; return (x_neg, x_pos)."""
    x_p = frame.x_p
    lo, hi = curve.domain
    edge = hi if side > 0 else lo
    prev = x_p
    if math.isinf(edge):
        step = 2.0 ** -16 * max(1.0, abs(x_p))
        for k in range(160):
            cand = x_p + side * step * 2.0 ** k
            if not math.isfinite(cand):
                break
            val = float(offset_coord(curve, frame, cand))
            if math.isnan(val):
                break
            if val >= h:
                return prev, cand
            prev = cand
    else:
        gap = edge - x_p
        for k in range(1, 80):
            cand = edge - gap * 0.5 ** k
            if cand == prev or cand == edge:
                break
            val = float(offset_coord(curve, frame, cand))
            if math.isnan(val):
                break
            if val >= h:
                return prev, cand
            prev = cand
    raise NoChordError(
        f"no chord at offset h={h!r} on the {'right' if side > 0 else 'left'} "
        f"side of x_p={x_p!r} for {curve.label}"
    )


def _refine_root(curve, frame, h, x_neg, x_pos):
    """Safeguarded Newton/bisection for offset(x) = h on a sign-change bracket."""
    def g(x):
        return float(offset_coord(curve, frame, x)) - h

    def gp(x):
        return float(offset_slope(curve, frame, x))

    rtol = 4.0 * _EPS * max(1.0, h)
    x, gx = x_pos, g(x_pos)
    best_x, best_g = x, abs(gx)
    for _ in range(200):
        if abs(gx) <= rtol:
            break
        lo, hi = min(x_neg, x_pos), max(x_neg, x_pos)
        if hi - lo <= 4.0 * _EPS * max(1.0, abs(lo), abs(hi)):
            break
        d = gp(x)
        if d != 0.0 and math.isfinite(d):
            cand = x - gx / d
        else:
            cand = 0.5 * (lo + hi)
        if not (lo < cand < hi):
            cand = 0.5 * (lo + hi)
        if cand == x_neg or cand == x_pos:
            break
        gc = g(cand)
        if math.isnan(gc):
            # retreat toward the interior of the bracket
            cand = 0.5 * (cand + (x_neg if abs(cand - x_pos) < abs(cand - x_neg) else x_pos))
            gc = g(cand)
            if math.isnan(gc):
                break
        if gc < 0.0:
            x_neg = cand
        else:
            x_pos = cand
        x, gx = cand, gc
        if abs(gc) < best_g:
            best_x, best_g = cand, abs(gc)
    if best_g > 1e-12 * max(1.0, h):
        raise ChordGeomError(
            f"chord root refinement stalled at residual {best_g:.3e} for h={h!r}"
        )
    return best_x


def chord_endpoints(curve: CurveSpec, frame: ProbeFrame, h: float) -> ChordSolution:
    """Solve for the chord at normal offset h > 0.

    Finds the unique offset root on each side of the probe, checks that
    the arc between them is graph-like in the frame (u strictly
    increasing, sampled at 64 points), and returns endpoints with frame
    abscissas s < 0 < t and length L = t - s.
    """
    h = float(h)
    if h <= 0:
        raise ValueError(f"offset h must be positive, got {h!r}")
    xB = _refine_root(curve, frame, h, *_bracket_side(curve, frame, h, +1))
    xA = _refine_root(curve, frame, h, *_bracket_side(curve, frame, h, -1))
    xs = np.linspace(xA, xB, _GRAPH_SAMPLES)
    if not np.all(tangent_slope(curve, frame, xs) > 0):
        raise DegenerateGeometryError(
            f"arc for h={h!r} at x_p={frame.x_p!r} is not graph-like in the probe frame"
        )
    s = float(tangent_coord(curve, frame, xA))
    t = float(tangent_coord(curve, frame, xB))
    if not s < 0 < t:
        raise DegenerateGeometryError(
            f"frame abscissas do not straddle the probe: s={s!r}, t={t!r}"
        )
    A = np.array([xA, float(curve.f(xA))])
    B = np.array([xB, float(curve.f(xB))])
    return ChordSolution(frame=frame, h=h, xA=xA, xB=xB, A=A, B=B, s=s, t=t, L=t - s)


def max_offset(curve: CurveSpec, frame: ProbeFrame, cap: float = 1024.0) -> float:
    """Largest offset (up to cap) at which the chord construction is valid.

    Validity means both offset roots bracket inside the domain and the
    arc stays graph-like; the boundary is located by bisection.
    """
    def valid(h):
        try:
            chord_endpoints(curve, frame, h)
            return True
        except ChordGeomError:
            return False

    if valid(cap):
        return cap
    hi = cap
    lo = cap
    for _ in range(100):
        lo /= 4.0
        if lo < 1e-12:
            raise NoChordError(f"no positive offset admits a chord at x_p={frame.x_p!r}")
        if valid(lo):
            break
        hi = lo
    else:
        raise NoChordError(f"no positive offset admits a chord at x_p={frame.x_p!r}")
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        if valid(mid):
            lo = mid
        else:
            hi = mid
    return lo


def frame_slopes(curve: CurveSpec, chord: ChordSolution, frame: ProbeFrame | None = None):
    """Slopes of the curve graph in the probe frame at the chord endpoints.

    Strict convexity forces ms < 0 < mt for a valid chord.
    """
    fr = chord.frame if frame is None else frame
    def slope(x):
        fpx = float(curve.fp(x))
        return (fr.N[0] + fpx * fr.N[1]) / (fr.T[0] + fpx * fr.T[1])
    ms, mt = slope(chord.xA), slope(chord.xB)
    if not ms < 0 < mt:
        raise DegenerateGeometryError(
            f"endpoint tangents are not transverse to the probe tangent: "
            f"ms={ms!r}, mt={mt!r}"
        )
    return ms, mt


def tangent_apex(curve: CurveSpec, chord: ChordSolution, frame: ProbeFrame | None = None) -> TangentApex:
    """Intersection of the endpoint tangents.

    In the frame, with endpoint slopes ms and mt at (s, h) and (t, h):
    x0 = (t*mt - s*ms) / (mt - ms) and y0 = h + L*ms*mt / (mt - ms) < 0.
    """
    fr = chord.frame if frame is None else frame
    ms, mt = frame_slopes(curve, chord, fr)
    if abs(mt - ms) <= 1e-14 * max(1.0, abs(ms), abs(mt)):
        raise DegenerateGeometryError(f"endpoint tangents are parallel: ms={ms!r}, mt={mt!r}")
    s, t, h = chord.s, chord.t, chord.h
    x0 = (t * mt - s * ms) / (mt - ms)
    y0 = h + chord.L * ms * mt / (mt - ms)
    if not y0 < 0:
        raise DegenerateGeometryError(f"apex is not below the probe tangent: y0={y0!r}")
    return TangentApex(Q=from_frame(fr, (x0, y0)), x0=float(x0), y0=float(y0))


def tangent_feet(curve: CurveSpec, chord: ChordSolution, frame: ProbeFrame | None = None):
    """Points where the endpoint tangents meet the probe tangent line.

    Frame coordinates (s - h/ms, 0) and (t - h/mt, 0).
    """
    fr = chord.frame if frame is None else frame
    ms, mt = frame_slopes(curve, chord, fr)
    a1 = chord.s - chord.h / ms
    b1 = chord.t - chord.h / mt
    return from_frame(fr, (a1, 0.0)), from_frame(fr, (b1, 0.0))


def centroid_distances(chord: ChordSolution, apex: TangentApex, frame: ProbeFrame | None = None):
    """Distances from the three triangle centroids to the chord line.

    j for the apex/endpoints triangle, k for the apex/feet triangle,
    delta for the probe/endpoints triangle; each is h minus the frame
    v-coordinate of the centroid, so a sign bug shows up as a negative.
    """
    h = chord.h
    j = h - (apex.y0 + 2.0 * h) / 3.0
    k = h - apex.y0 / 3.0
    delta = h - (2.0 * h) / 3.0
    return j, k, delta


def alpha(curve: CurveSpec, chord: ChordSolution, frame: ProbeFrame | None = None) -> float:
    """Slope-combination functional (ms - mt)/(ms*mt) * sqrt(h), always positive."""
    ms, mt = frame_slopes(curve, chord, frame)
    return (ms - mt) / (ms * mt) * math.sqrt(chord.h)


def triangle_report(curve: CurveSpec, chord: ChordSolution) -> TriangleReport:
    """Assemble apex, feet, centroids and the derived distances for one chord."""
    fr = chord.frame
    apex = tangent_apex(curve, chord, fr)
    ms, mt = frame_slopes(curve, chord, fr)
    a1 = chord.s - chord.h / ms
    b1 = chord.t - chord.h / mt
    j, k, delta = centroid_distances(chord, apex, fr)
    J = from_frame(fr, ((apex.x0 + chord.s + chord.t) / 3.0, (apex.y0 + 2.0 * chord.h) / 3.0))
    K = from_frame(fr, ((apex.x0 + a1 + b1) / 3.0, apex.y0 / 3.0))
    a = (ms - mt) / (ms * mt) * math.sqrt(chord.h)
    return TriangleReport(
        Q=apex.Q, x0=apex.x0, y0=apex.y0,
        A1=from_frame(fr, (a1, 0.0)), B1=from_frame(fr, (b1, 0.0)),
        J=J, K=K, j=j, k=k, delta=delta, alpha=a,
    )


def chord_growth_residual(curve: CurveSpec, frame: ProbeFrame, h: float) -> float:
    """|sqrt(h) * dL/dh - alpha| with dL/dh by a fourth-order central stencil.

    Step h/100.  Because L scales like sqrt(h), a plain two-point
    difference at this step has relative truncation 1.25e-5; the
    fourth-order stencil pushes it below 1e-8.
    """
    h = float(h)
    e = h / 100.0
    def L(hh):
        return chord_endpoints(curve, frame, hh).L
    deriv = (-L(h + 2 * e) + 8.0 * L(h + e) - 8.0 * L(h - e) + L(h - 2 * e)) / (12.0 * e)
    chord = chord_endpoints(curve, frame, h)
    return abs(math.sqrt(h) * deriv - alpha(curve, chord))
