"""Section area, centroid, and quadrature tests."""

import math

import numpy as np
import pytest

import oracles as orc
from chordgeom import (
    QuadratureError,
    area_derivative_residual,
    chord_endpoints,
    make_curve,
    probe_frame,
    section_area,
    section_centroid,
    section_report,
    to_frame,
    triangle_area,
)
from chordgeom.quadrature import integrate


def _section(kind, params, x_p, h):
    curve = make_curve(kind, params)
    fr = probe_frame(curve, x_p)
    ch = chord_endpoints(curve, fr, h)
    return curve, fr, ch


def test_triangle_area_examples():
    assert triangle_area(1.0, 2.0) == 1.0
    assert triangle_area(0.5, orc.circle_length(1.0, 0.5)) == pytest.approx(
        0.4330127018922193, abs=1e-15)
    assert triangle_area(0.7, 0.0) == 0.0
    with pytest.raises(ValueError):
        triangle_area(-1.0, 2.0)


def test_parabola_section_exact():
    curve, fr, ch = _section("parabola", (1.0,), 0.0, 1.0)
    assert section_area(curve, fr, ch) == pytest.approx(4.0 / 3.0, rel=1e-13)
    curve, fr, ch = _section("parabola", (1.0,), 0.0, 0.01)
    assert section_area(curve, fr, ch) == pytest.approx(4.0 / 3.0 * 1e-3, rel=1e-12)


def test_parabola_ratios_all_probes():
    for a in (0.5, 1.0, 2.0):
        curve = make_curve("parabola", (a,))
        for x_p in (-1.0, 0.0, 1.5):
            fr = probe_frame(curve, x_p)
            for h in (0.5, 0.05):
                ch = chord_endpoints(curve, fr, h)
                rep = section_report(curve, fr, ch)
                assert rep.ratio == pytest.approx(4.0 / 3.0, abs=1e-7)
                assert rep.g / h == pytest.approx(0.4, abs=1e-7)


def test_circle_section_against_oracle():
    curve, fr, ch = _section("circle", (1.0,), 0.0, 0.5)
    S = section_area(curve, fr, ch)
    assert S == pytest.approx(orc.circle_area(1.0, 0.5), abs=1e-12)
    G, g, d = section_centroid(curve, fr, ch)
    assert g == pytest.approx(orc.circle_g(1.0, 0.5), abs=1e-12)
    assert g + d == pytest.approx(0.5, abs=1e-12)
    assert 0.0 < g < 0.5
    assert G[0] == pytest.approx(0.0, abs=1e-12)  # symmetric segment
    assert G[1] == pytest.approx(d, abs=1e-12)
    rep = section_report(curve, fr, ch)
    assert rep.ratio == pytest.approx(1.4183991523122905, abs=1e-10)
    assert rep.S > rep.T > 0


def test_generic_curves_against_scipy_oracle():
    for name, kind, params, x_p, h in (
        ("catenary", "catenary", (), 0.0, 0.3),
        ("catenary", "catenary", (), 0.5, 0.2),
        ("exp", "exp", (), 0.0, 0.3),
        ("poly_x2_x4", "poly", (0.0, 0.0, 1.0, 0.0, 1.0), 0.4, 0.15),
        ("ellipse_2_1", "ellipse", (2.0, 1.0), 0.5, 0.2),
    ):
        f, fp, dom = orc.ORACLE_CURVES[name]
        want = orc.generic_functionals(f, fp, x_p, h, domain=dom)
        curve, fr, ch = _section(kind, params, x_p, h)
        rep = section_report(curve, fr, ch)
        assert rep.S == pytest.approx(want["S"], rel=1e-10)
        assert rep.g == pytest.approx(want["g"], rel=1e-9)
        assert ch.L == pytest.approx(want["L"], rel=1e-11)


def test_centroid_world_point_consistent():
    curve, fr, ch = _section("catenary", (), 0.5, 0.2)
    G, g, d = section_centroid(curve, fr, ch)
    u, v = to_frame(fr, G)
    assert v == pytest.approx(d, abs=1e-12)
    assert g + d == pytest.approx(ch.h, abs=1e-12)


def test_area_derivative_residual():
    curve = make_curve("parabola", (1.0,))
    fr = probe_frame(curve, 0.0)
    ch = chord_endpoints(curve, fr, 1.0)
    assert area_derivative_residual(curve, fr, 1.0) <= 1e-5 * ch.L
    # analytic derivative of the area is the chord length 2*sqrt(h/a)
    fd = area_derivative_residual(curve, fr, 0.25)
    assert fd <= 1e-5 * 2.0 * math.sqrt(0.25)

    curve = make_curve("circle", (1.0,))
    fr = probe_frame(curve, 0.0)
    L = orc.circle_length(1.0, 0.5)
    assert area_derivative_residual(curve, fr, 0.5) <= 1e-5 * L


def test_section_centroid_ratio_limit():
    # g/h extrapolates into 2/5 on non-parabolas as well
    from chordgeom import estimate_limit

    for kind, params in (("circle", (1.0,)), ("catenary", ())):
        curve = make_curve(kind, params)
        fr = probe_frame(curve, 0.0)
        samples = []
        for k in range(6, 13):
            h = 2.0 ** -k
            ch = chord_endpoints(curve, fr, h)
            _, g, _ = section_centroid(curve, fr, ch)
            samples.append((h, g / h))
        est = estimate_limit(samples)
        assert est.value == pytest.approx(0.4, abs=1e-4), kind


def test_quadrature_basics():
    assert integrate(lambda x: x * x, 0.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-14)
    vec = integrate(lambda x: np.stack([np.ones_like(x), x, x * x], axis=-1), 0.0, 2.0)
    assert np.allclose(vec, [2.0, 2.0, 8.0 / 3.0], rtol=1e-13)
    # smooth but oscillatory integrand needs subdivision
    got = integrate(lambda x: np.sin(40.0 * x), 0.0, math.pi)
    want = (1.0 - math.cos(40.0 * math.pi)) / 40.0
    assert got == pytest.approx(want, abs=1e-12)
    with pytest.raises(ValueError):
        integrate(lambda x: x, 1.0, 0.0)


def test_quadrature_budget_exhaustion():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sin(1000.0 * x), 0.0, 50.0, max_panels=3)
