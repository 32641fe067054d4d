"""Limit extrapolation, power-law fitting, and detector tests."""

import math

import pytest

import oracles as orc
from chordgeom import (
    DetectionConfig,
    GridConfig,
    classify_parabola,
    estimate_limit,
    h_grid,
    limit_suite,
    make_curve,
    power_law_fit,
    probe_frame,
    probe_functionals,
)


def test_h_grid_examples():
    assert h_grid(0.5, 0.5, 4) == [0.5, 0.25, 0.125, 0.0625]
    assert h_grid(1e-3, 0.5, 3) == [1e-3, 5e-4, 2.5e-4]
    with pytest.raises(ValueError):
        h_grid(0.5, 0.5, 4, h_max=0.4)
    with pytest.raises(ValueError):
        h_grid(0.5, 1.5, 4)
    with pytest.raises(ValueError):
        h_grid(0.5, 0.5, 2)
    with pytest.raises(ValueError):
        h_grid(-1.0, 0.5, 4)


def test_h_grid_underflow_truncates():
    with pytest.warns(UserWarning):
        grid = h_grid(1e-300, 0.5, 120)
    assert len(grid) < 120
    assert all(h > 0 for h in grid)


def test_estimate_limit_constant():
    est = estimate_limit([(0.4, 2.5), (0.2, 2.5), (0.1, 2.5), (0.05, 2.5)])
    assert est.value == 2.5
    assert est.err == 0.0


def test_estimate_limit_polynomial_data():
    # v(h) = 1 + h + h^2 is resolved exactly with three levels
    samples = [(h, 1.0 + h + h * h) for h in (0.4, 0.2, 0.1, 0.05)]
    est = estimate_limit(samples)
    assert est.value == pytest.approx(1.0, abs=1e-14)


def test_estimate_limit_circle_ratio():
    # oracle samples of j/h on h = 2^-k, k = 6..12
    samples = [(2.0 ** -k, orc.circle_j(1.0, 2.0 ** -k) / 2.0 ** -k) for k in range(6, 13)]
    est = estimate_limit(samples)
    assert est.value == pytest.approx(2.0 / 3.0, abs=1e-4)
    assert abs(est.value - 2.0 / 3.0) <= 1e-10  # far better in practice
    assert est.err >= 0.0


def test_estimate_limit_validation():
    with pytest.raises(ValueError):
        estimate_limit([(0.4, 1.0), (0.2, 1.0)])
    with pytest.raises(ValueError):
        estimate_limit([(0.4, 1.0), (0.2, 1.0), (0.15, 1.0)])


def test_power_law_fit_exact():
    for lam, mu in ((2.0 / 3.0, 1.0), (4.0 / 3.0, 1.0)):
        samples = [(h, lam * h ** mu) for h in h_grid(0.5, 0.5, 8)]
        fit = power_law_fit(samples)
        assert fit.lam == pytest.approx(lam, abs=1e-12)
        assert fit.mu == pytest.approx(mu, abs=1e-12)
        assert fit.residual <= 1e-12


def test_power_law_fit_synthetic_recovery():
    for lam in (0.1, 2.0 / 3.0, 4.0 / 3.0):
        for mu in (0.5, 1.0, 1.5):
            samples = [(h, lam * h ** mu) for h in h_grid(0.5, 0.5, 8)]
            fit = power_law_fit(samples)
            assert abs(fit.lam - lam) <= 1e-12
            assert abs(fit.mu - mu) <= 1e-12


def test_power_law_fit_rejects_circle_samples():
    # oracle j values on [0.05, 0.5] do not follow a power law
    hs = [0.5, 0.35, 0.245, 0.1715, 0.12, 0.084, 0.0588, 0.05]
    samples = [(h, orc.circle_j(1.0, h)) for h in hs[:7]]
    with pytest.raises(ValueError):
        power_law_fit([(0.5, 1.0), (0.25, 0.0), (0.125, 1.0)])
    # geometric grid for the actual fit
    samples = [(h, orc.circle_j(1.0, h)) for h in h_grid(0.5, 0.5, 8)]
    assert power_law_fit(samples).residual > 1e-3


def test_limit_suite_targets():
    grid = GridConfig(h0=2.0 ** -6, ratio=0.5, n=8)
    for kind, params in (("circle", (1.0,)), ("catenary", ()), ("exp", ())):
        curve = make_curve(kind, params)
        suite = limit_suite(curve, 0.0, grid)
        assert suite.kappa == pytest.approx(1.0, rel=1e-12)
        for name, target in suite.targets.items():
            assert suite.estimates[name].value == pytest.approx(target, abs=1e-4), name


def test_limit_suite_parabola_exact_at_every_h():
    curve = make_curve("parabola", (1.0,))
    suite = limit_suite(curve, 0.0, GridConfig(h0=0.5, ratio=0.5, n=6))
    for h, v in suite.estimates["L_over_sqrt_h"].samples:
        assert v == pytest.approx(2.0, rel=1e-12)
    assert suite.estimates["L_over_sqrt_h"].value == pytest.approx(2.0, rel=1e-12)
    for h, v in suite.estimates["j_over_h"].samples:
        assert v == pytest.approx(2.0 / 3.0, rel=1e-12)


def test_centroid_gap_identity_per_sample():
    curve = make_curve("catenary", ())
    suite = limit_suite(curve, 0.3, GridConfig(h0=0.25, ratio=0.5, n=8))
    js = dict(suite.estimates["j_over_h"].samples)
    ks = dict(suite.estimates["k_over_h"].samples)
    for h in js:
        assert ks[h] - js[h] == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_extrapolation_consistency_under_h0_halving():
    # halving h0 moves each limit by at most 5x the reported err
    # (plus a machine-precision allowance for exactly-constant data)
    for kind, params, x_p in (("circle", (1.0,), 0.0), ("exp", (), 0.0),
                              ("parabola", (1.0,), 0.5)):
        curve = make_curve(kind, params)
        s1 = limit_suite(curve, x_p, GridConfig(h0=2.0 ** -6, ratio=0.5, n=8))
        s2 = limit_suite(curve, x_p, GridConfig(h0=2.0 ** -7, ratio=0.5, n=8))
        for name in s1.estimates:
            e1, e2 = s1.estimates[name], s2.estimates[name]
            change = abs(e1.value - e2.value)
            assert change <= 5.0 * e1.err + 1e-13 * max(1.0, abs(e1.value)), name


def test_detection_config_from_mapping():
    cfg = DetectionConfig.from_mapping(
        {"tol_mu": 1e-2, "tol_ratio": 1e-5, "h0": 0.25, "ratio": 0.4, "n": 6})
    assert cfg.tol_mu == 1e-2
    assert cfg.tol_lam == 1e-3          # default preserved
    assert cfg.tol_ratio == 1e-5
    assert cfg.grid == GridConfig(h0=0.25, ratio=0.4, n=6)
    with pytest.raises(ValueError):
        DetectionConfig.from_mapping({"tol_bogus": 1.0})


def test_classify_parabola_positive():
    curve = make_curve("parabola", (2.0,))
    verdict = classify_parabola(curve, [-1.0, 0.0, 1.5])
    assert verdict.classification == "parabola"
    assert not verdict.inconclusive
    assert len(verdict.outcomes) == 12
    assert all(o.passed for o in verdict.outcomes)


def test_classify_parabola_reparameterization_invariance():
    v1 = classify_parabola(make_curve("parabola", (1.0,)), [1.0])
    v2 = classify_parabola(make_curve("parabola", (2.0,)), [0.0])
    assert v1.classification == v2.classification == "parabola"


def test_classify_negatives():
    for kind, params in (("circle", (1.0,)), ("ellipse", (2.0, 1.0)),
                         ("catenary", ()), ("poly", (0.0, 0.0, 1.0, 0.0, 1.0))):
        verdict = classify_parabola(make_curve(kind, params), [0.0])
        assert verdict.classification == "not-parabola", kind
        failed = {o.test for o in verdict.outcomes if not o.passed}
        assert failed, kind


def test_classify_circle_measures():
    verdict = classify_parabola(make_curve("circle", (1.0,)), [0.0])
    by_test = {o.test: o for o in verdict.outcomes}
    assert by_test["j_power_law"].measures["residual"] > 1e-3
    assert by_test["area_ratio"].measures["max_abs_dev"] > 1e-3
    assert by_test["g_ratio"].measures["max_abs_dev"] > 1e-3
    # intermediate measurements are exposed
    assert len(by_test["area_ratio"].measures["grid"]) == 8


def test_classify_inconclusive_probe():
    # an impossible grid start turns the probe inconclusive -> not-parabola
    curve = make_curve("circle", (1.0,))
    cfg = DetectionConfig(grid=GridConfig(h0=1.5))
    verdict = classify_parabola(curve, [0.0], cfg)
    assert verdict.classification == "not-parabola"
    assert verdict.inconclusive
    assert "x_p=0.0" in verdict.inconclusive[0]


def test_probe_functionals_fields():
    curve = make_curve("circle", (1.0,))
    fr = probe_frame(curve, 0.0)
    f = probe_functionals(curve, fr, 0.5)
    assert f.L == pytest.approx(orc.circle_length(1.0, 0.5), abs=1e-12)
    assert f.S == pytest.approx(orc.circle_area(1.0, 0.5), abs=1e-12)
    assert f.T == pytest.approx(0.5 * 0.5 * f.L, abs=1e-15)
    assert f.g + f.d == pytest.approx(0.5, abs=1e-13)
    assert f.j == pytest.approx(orc.circle_j(1.0, 0.5), abs=1e-13)
    assert f.k == pytest.approx(orc.circle_k(1.0, 0.5), abs=1e-13)
    assert f.delta == pytest.approx(0.5 / 3.0, abs=1e-15)
    assert f.alpha == pytest.approx(orc.circle_alpha(1.0, 0.5), abs=1e-13)
