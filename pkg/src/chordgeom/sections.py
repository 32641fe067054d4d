"""Areas and centroids of the section cut off by a chord.

The section is the region between the curve arc and the chord.  In the
probe frame the chord line is v = h, so area and moments reduce to
one-dimensional integrals over the original parametrization:

    S  = integral of (h - v(x)) * u'(x) dx
    Mv = integral of (h^2 - v(x)^2)/2 * u'(x) dx      (first moment in v)
    Mu = integral of u(x) * (h - v(x)) * u'(x) dx     (first moment in u)

between the chord endpoints.  All three come out of a single adaptive
quadrature pass.
"""

from dataclasses import dataclass

import numpy as np

from .chords import ChordSolution, chord_endpoints, offset_coord, tangent_coord, tangent_slope
from .curves import CurveSpec, ProbeFrame, from_frame
from .quadrature import integrate

__all__ = [
    "SectionReport",
    "triangle_area",
    "section_area",
    "section_centroid",
    "section_report",
    "area_derivative_residual",
]


@dataclass(frozen=True, eq=False)
class SectionReport:
    """Section area S, inscribed triangle area T, centroid G and its distances."""

    S: float
    T: float
    G: np.ndarray
    g: float
    d: float
    ratio: float


def triangle_area(h: float, L: float) -> float:
    """Area of the triangle with base the chord (length L) and apex at the probe."""
    if h < 0 or L < 0:
        raise ValueError(f"negative h or L: h={h!r}, L={L!r}")
    return 0.5 * h * L


def _section_moments(curve: CurveSpec, frame: ProbeFrame, chord: ChordSolution):
    h = chord.h

    def integrand(xs):
        v = np.asarray(offset_coord(curve, frame, xs), float)
        du = np.asarray(tangent_slope(curve, frame, xs), float)
        u = np.asarray(tangent_coord(curve, frame, xs), float)
        band = h - v
        return np.stack([band * du, 0.5 * (h * h - v * v) * du, u * band * du], axis=-1)

    S, Mv, Mu = integrate(integrand, chord.xA, chord.xB)
    return float(S), float(Mv), float(Mu)


def section_area(curve: CurveSpec, frame: ProbeFrame, chord: ChordSolution) -> float:
    """Area of the region bounded by the curve arc and the chord."""
    S, _, _ = _section_moments(curve, frame, chord)
    return S


def section_centroid(curve: CurveSpec, frame: ProbeFrame, chord: ChordSolution):
    """Centroid of the section, its distance g to the chord line and d to the probe tangent.

    g + d = h by construction; g = h - vbar where vbar is the mean frame
    height of the section.
    """
    S, Mv, Mu = _section_moments(curve, frame, chord)
    vbar = Mv / S
    ubar = Mu / S
    G = from_frame(frame, (ubar, vbar))
    return G, chord.h - vbar, vbar


def section_report(curve: CurveSpec, frame: ProbeFrame, chord: ChordSolution) -> SectionReport:
    """Area, triangle area, centroid and distance ratios for one chord."""
    S, Mv, Mu = _section_moments(curve, frame, chord)
    T = triangle_area(chord.h, chord.L)
    vbar = Mv / S
    G = from_frame(frame, (Mu / S, vbar))
    return SectionReport(S=S, T=T, G=G, g=chord.h - vbar, d=vbar, ratio=S / T)


def area_derivative_residual(curve: CurveSpec, frame: ProbeFrame, h: float) -> float:
    """|dS/dh - L| with dS/dh by the two-point central difference at step h/100.

    The section area grows exactly at the chord length; the residual
    measures how well the computed areas reproduce that.
    """
    h = float(h)
    e = h / 100.0
    def S(hh):
        chord = chord_endpoints(curve, frame, hh)
        return section_area(curve, frame, chord)
    deriv = (S(h + e) - S(h - e)) / (2.0 * e)
    return abs(deriv - chord_endpoints(curve, frame, h).L)
