import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.spatial.transform import Rotation

from devgeom import curves as cv
from devgeom.errors import (
    ClassificationError,
    ConstructionError,
    DomainError,
    FrameUndefinedError,
)

from conftest import CATALOG


# -- jets ---------------------------------------------------------------------


def test_circle_jet_at_zero(circle):
    j = cv.eval_jet(circle, 0.0, 2)
    np.testing.assert_allclose(j.d0, [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(j.d1, [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(j.d2, [-1, 0, 0], atol=1e-15)
    assert j.absent == (3, 4, 5)
    assert not j.d3.any()


@pytest.mark.parametrize("s", [-4.0, 0.0, 2.5])
def test_line_jet(s):
    j = cv.line().jet(s, 4)
    np.testing.assert_array_equal(j.d1, [1, 0, 0])
    assert not (j.d2.any() or j.d3.any() or j.d4.any())


def test_helix_first_derivative_matches_symbolic(helix):
    t = sp.Symbol("t")
    c = sp.sqrt(5)
    alpha = sp.Matrix([2 * sp.cos(t / c), 2 * sp.sin(t / c), t / c])
    j = helix.jet(0.0)
    for k in range(6):
        want = [float(v) for v in alpha.diff(t, k).subs(t, 0)]
        np.testing.assert_allclose(j.d[k], want, atol=1e-14)
    assert abs(np.linalg.norm(j.d1) - 1) < 1e-15


def test_domain_error(helix):
    with pytest.raises(DomainError):
        helix.jet(10.5)
    with pytest.raises(ValueError):
        helix.jet(0.0, 6)


def test_nonfinite_jet_is_numeric_error():
    bad = cv.AnalyticCurve(lambda t: (t, np.log(t), 0.0), (-1.0, 1.0))
    with pytest.raises((ValueError, ArithmeticError)):
        bad.jet(-0.5)


# -- Frenet apparatus ---------------------------------------------------------


def test_circle_frame(circle):
    fd = cv.frenet_apparatus(circle.jet(0.0))
    assert fd.kappa == pytest.approx(1.0, abs=1e-15)
    assert fd.tau == pytest.approx(0.0, abs=1e-15)
    np.testing.assert_allclose(fd.T, [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(fd.N, [-1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(fd.B, [0, 0, 1], atol=1e-15)


@pytest.mark.parametrize("a, b", [(2.0, 1.0), (1.0, 3.0), (0.5, -0.2)])
def test_helix_curvature_torsion_symbolic(a, b):
    h = cv.helix(a, b)
    for s in np.linspace(-9, 9, 7):
        fd = cv.frenet_apparatus(h.jet(s))
        assert fd.kappa == pytest.approx(a / (a * a + b * b), abs=1e-12)
        assert fd.tau == pytest.approx(b / (a * a + b * b), abs=1e-12)


def test_line_has_no_frame():
    with pytest.raises(FrameUndefinedError):
        cv.frenet_apparatus(cv.line().jet(0.0))


def test_frame_needs_order_three(helix):
    with pytest.raises(ValueError):
        cv.frenet_apparatus(helix.jet(0.0, 2))


def test_general_path_on_raw_twisted_cubic():
    t = sp.Symbol("t")
    a = sp.Matrix([t, t**2, t**3])
    d1, d2, d3 = a.diff(t), a.diff(t, 2), a.diff(t, 3)
    c = d1.cross(d2)
    raw = cv.AnalyticCurve(lambda u: (u, u * u, u * u * u), (0.0, 1.0))
    for t0 in (0.1, 0.5, 0.9):
        fd = cv.frenet_apparatus(raw.jet(t0), path="general")
        kappa = float((c.norm() / d1.norm() ** 3).subs(t, t0))
        tau = float((c.dot(d3) / c.dot(c)).subs(t, t0))
        assert fd.kappa == pytest.approx(kappa, rel=1e-12)
        assert fd.tau == pytest.approx(tau, rel=1e-12)


def _random_point(curve, u):
    a, b = curve.domain
    return a + (b - a) * (0.02 + 0.96 * u)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CATALOG), st.floats(0, 1))
def test_frame_orthonormal_and_paths_agree(name, u):
    curve = cv.parse_curve(name)
    j = curve.jet(_random_point(curve, u))
    fd = cv.frenet_apparatus(j, "unit")
    fg = cv.frenet_apparatus(j, "general")
    frame = np.array([fd.T, fd.N, fd.B])
    np.testing.assert_allclose(frame @ frame.T, np.eye(3), atol=1e-9)
    np.testing.assert_array_equal(fd.B, np.cross(fd.T, fd.N))
    assert fd.kappa == pytest.approx(fg.kappa, abs=1e-8)
    assert fd.tau == pytest.approx(fg.tau, abs=1e-8)
    np.testing.assert_allclose(frame, [fg.T, fg.N, fg.B], atol=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(CATALOG), st.floats(0, 1))
def test_frenet_equations_by_differencing_the_frame(name, u):
    curve = cv.parse_curve(name)
    s, h = _random_point(curve, u), 1e-4
    fp = cv.frenet_apparatus(curve.jet(s + h))
    fm = cv.frenet_apparatus(curve.jet(s - h))
    f0 = cv.frenet_apparatus(curve.jet(s))
    dT, dN, dB = ((getattr(fp, k) - getattr(fm, k)) / (2 * h) for k in "TNB")
    assert np.linalg.norm(dT - f0.kappa * f0.N) < 1e-5
    assert np.linalg.norm(dN + f0.kappa * f0.T - f0.tau * f0.B) < 1e-5
    assert np.linalg.norm(dB + f0.tau * f0.N) < 1e-5


def test_series_scalars_match_finite_differences(cubic):
    # kappa', tau' and sigma from the series against differencing kappa, tau
    s, h = 0.6, 1e-3
    q = cv.series_at(cubic, s).scalars()

    def kt(x):
        fd = cv.frenet_apparatus(cubic.jet(x))
        return np.array([fd.kappa, fd.tau])

    vals = np.array([kt(s + k * h) for k in (-2, -1, 0, 1, 2)])
    d1 = (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)
    d2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
    assert q["dkappa"] == pytest.approx(d1[0], abs=1e-6)
    assert q["dtau"] == pytest.approx(d1[1], abs=1e-6)
    assert q["ddkappa"] == pytest.approx(d2[0], abs=1e-4)
    assert q["ddtau"] == pytest.approx(d2[1], abs=1e-4)
    k, t = vals[2]
    sig = k * k * (d1[1] * k - t * d1[0]) / k**2 / (k * k + t * t) ** 1.5
    assert q["sigma"] == pytest.approx(sig, abs=1e-6)


# -- sigma --------------------------------------------------------------------


def test_sigma_helix_is_zero(helix):
    for s in np.linspace(-9, 9, 11):
        assert abs(cv.sigma(helix, s)) < 1e-12


@pytest.mark.parametrize("s", [-4.0, 0.0, 1.7, 4.9])
def test_sigma_slant_helix(slant, s):
    assert cv.sigma(slant, s) == pytest.approx(0.3, abs=1e-9)


def test_sigma_plane_curve_is_finite_and_zero():
    parabola = cv.reparametrize_arclength(cv.AnalyticCurve(lambda t: (t, t * t, 0.0), (-1.0, 1.0)))
    for s in np.linspace(0.2, parabola.domain[1] - 0.2, 5):
        val = cv.sigma(parabola, s)
        assert math.isfinite(val) and abs(val) < 1e-10


def test_invariants_under_rigid_motion():
    rot = Rotation.from_euler("zyx", [0.3, -1.1, 0.7]).as_matrix()
    shift = np.array([1.0, -2.0, 0.5])

    def moved(p):
        return lambda t: tuple(rot[i, 0] * p(t)[0] + rot[i, 1] * p(t)[1] + rot[i, 2] * p(t)[2] + shift[i]
                               for i in range(3))

    base = lambda t: (t, t * t, t * t * t)  # noqa: E731
    c0 = cv.AnalyticCurve(base, (0.0, 1.0))
    c1 = cv.AnalyticCurve(moved(base), (0.0, 1.0))
    for t0 in (0.2, 0.5, 0.8):
        a, b = cv.frenet_series(c0.jet(t0)).scalars(), cv.frenet_series(c1.jet(t0)).scalars()
        for key in ("kappa", "tau", "sigma"):
            assert a[key] == pytest.approx(b[key], abs=1e-6)


# -- reparametrization --------------------------------------------------------


def test_reparametrize_unit_speed_helix(helix):
    r = cv.reparametrize_arclength(helix)
    assert r.domain[1] == pytest.approx(20.0, abs=1e-10)
    for s in np.linspace(0, 20, 50):
        assert abs(r.jet(s, 1).speed - 1) < 1e-9


def test_reparametrize_circle_radius_two():
    c = cv.AnalyticCurve(lambda t: (2 * np.cos(t), 2 * np.sin(t), 0.0), (0.0, 2 * np.pi))
    r = cv.reparametrize_arclength(c)
    assert r.domain[1] == pytest.approx(4 * np.pi, rel=1e-12)
    assert r.parameter(3.0) == pytest.approx(1.5, abs=1e-12)
    np.testing.assert_allclose(r(3.0), [2 * np.cos(1.5), 2 * np.sin(1.5), 0.0], atol=1e-12)


def test_reparametrize_twisted_cubic(cubic):
    def speed(t):
        return math.sqrt(1 + 4 * t * t + 9 * t**4)

    length, _ = quad(speed, 0, 1, epsabs=1e-13)
    assert cubic.domain[1] == pytest.approx(length, abs=1e-12)
    for s in np.linspace(0, cubic.domain[1], 1000):
        assert abs(cubic.jet(s, 1).speed - 1) < 1e-6
    # the inverse map agrees with adaptive quadrature
    s0 = 0.8
    t0 = cubic.parameter(s0)
    assert quad(speed, 0, t0, epsabs=1e-13)[0] == pytest.approx(s0, abs=1e-12)


def test_reparametrize_rejects_singular_curve():
    cusp = cv.AnalyticCurve(lambda t: (t * t, t * t * t, 0.0), (0.0, 1.0))
    with pytest.raises(ConstructionError, match="t=0"):
        cv.reparametrize_arclength(cusp)


# -- classification -----------------------------------------------------------


def test_classify_catalog(catalog):
    got = {name: cv.classify_curve(c).verdict for name, c in catalog.items()}
    assert got == {
        "circle": "plane-curve",
        "helix:a=2,b=1": "circular-helix",
        "slant:sigma=0.3": "slant-helix",
        "twisted-cubic": "generic",
    }
    assert cv.classify_curve(cv.line()).verdict == "line"
    assert cv.classify_curve(catalog["slant:sigma=0.3"]).evidence < 1e-6


def test_classify_general_helix():
    gh = cv.FrenetCurve(lambda s: 1.0 + 0.5 * np.sin(s), lambda s: 0.5 + 0.25 * np.sin(s), (-3.0, 3.0))
    res = cv.classify_curve(gh)
    assert res.verdict == "general-helix"
    assert res.deviations["kappa"] > 0.1


def test_classify_never_general_helix_when_rho_varies(cubic):
    res = cv.classify_curve(cubic)
    assert res.deviations["rho"] > 10 * cv.CLASS_TOL
    assert res.verdict != "general-helix"


def test_classify_mixed_frame_error():
    c = cv.AnalyticCurve(lambda t: (t, t * t * t, 0.0), (-1.0, 1.0))
    with pytest.raises(ClassificationError):
        cv.classify_curve(c, np.linspace(-1, 1, 9))
    with pytest.raises(ValueError):
        cv.classify_curve(c, [0.1, 0.2])


# -- other curve sources ------------------------------------------------------


def test_fd_engine_matches_analytic(helix):
    c = math.sqrt(5)
    fd_helix = cv.AnalyticCurve(lambda t: (2 * np.cos(t / c), 2 * np.sin(t / c), t / c),
                                (-10, 10), engine="fd", unit_speed=True)
    for s in (-3.0, 0.0, 4.0):
        ja, jf = helix.jet(s), fd_helix.jet(s)
        for k, tol in zip(range(1, 6), (1e-10, 1e-8, 1e-7, 1e-6, 5e-5)):
            np.testing.assert_allclose(jf.d[k], ja.d[k], atol=tol)
        fd = cv.frenet_apparatus(jf)
        assert fd.kappa == pytest.approx(0.4, abs=1e-8)
        assert fd.tau == pytest.approx(0.2, abs=1e-7)


def test_fd_step_rule():
    assert cv._fd_step(1, 0.5) == 1e-4
    assert cv._fd_step(1, 50.0) == pytest.approx(5e-3)
    assert cv._fd_step(4, 0.0) == pytest.approx(np.finfo(float).eps ** 0.125)


def test_frenet_curve_reproduces_helix():
    fc = cv.FrenetCurve(lambda s: 0.4 + 0.0 * s, lambda s: 0.2 + 0.0 * s, (-10.0, 10.0))
    for s in (-9.5, -0.37, 3.3, 10.0):
        fd = cv.frenet_apparatus(fc.jet(s))
        assert fd.kappa == pytest.approx(0.4, abs=1e-10)
        assert fd.tau == pytest.approx(0.2, abs=1e-10)
    # chord between two points of a circular helix depends only on the gap
    d1 = np.linalg.norm(fc(1.0) - fc(-1.0))
    d2 = np.linalg.norm(fc(7.0) - fc(5.0))
    assert d1 == pytest.approx(d2, abs=1e-10)


def test_sampled_curve_roundtrip(tmp_path, helix):
    path = tmp_path / "helix.json"
    cv.export_samples(helix, 401, path)
    loaded = cv.parse_curve(str(path))
    assert isinstance(loaded, cv.SampledCurve)
    for s in np.linspace(-8, 8, 9):
        fd = cv.frenet_apparatus(loaded.jet(s))
        assert fd.kappa == pytest.approx(0.4, abs=1e-4)
        assert fd.tau == pytest.approx(0.2, abs=1e-4)


def test_sampled_curve_validation(tmp_path):
    with pytest.raises(ConstructionError):
        cv.SampledCurve([[0, 0, 0, 0], [1, 1, 0, 0]])
    with pytest.raises(ConstructionError):
        cv.SampledCurve([[0, 0, 0, 0], [0, 1, 0, 0], [1, 2, 0, 0], [2, 3, 0, 0]])
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": []}')
    with pytest.raises(ConstructionError):
        cv.load_samples(bad)


@pytest.mark.parametrize("spec", ["spiral", "helix:a=2,c=1", "circle:r", "circle:r=-1"])
def test_parse_curve_errors(spec):
    with pytest.raises(ValueError):
        cv.parse_curve(spec)


def test_parse_curve_params():
    h = cv.parse_curve("helix:a=1,b=3")
    assert cv.frenet_apparatus(h.jet(0.0)).tau == pytest.approx(0.3)
    assert cv.parse_curve("circle:r=2").domain[1] == pytest.approx(4 * np.pi)
