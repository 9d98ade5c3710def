import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from devgeom import ruled as rs
from devgeom import special as sp
from devgeom.curves import AnalyticCurve, frenet_apparatus, line, parse_curve, series_at
from devgeom.errors import ConstructionError, SingularPointError

from conftest import CATALOG


def test_constructor_examples(helix):
    t = sp.make_special("tangent", helix)
    r = t.ruling(1.0)
    fd = frenet_apparatus(helix.jet(1.0))
    np.testing.assert_allclose(r.gamma[0], helix(1.0), atol=1e-15)
    np.testing.assert_allclose(r.delta[0], fd.T, atol=1e-15)
    d = sp.make_special("darboux", helix).ruling(1.0)
    np.testing.assert_allclose(d.gamma[0], fd.B, atol=1e-15)
    np.testing.assert_allclose(d.delta[0], fd.T, atol=1e-15)
    rect = sp.make_special("rectifying", helix)
    assert not rect.unit_director
    np.testing.assert_allclose(rect.ruling(1.0).delta[0], 0.5 * fd.T + fd.B, atol=1e-15)


def test_constructor_rejects_degenerate_curves():
    with pytest.raises(ConstructionError):
        sp.make_special("normal", line())
    raw = AnalyticCurve(lambda t: (t, t * t, t * t * t), (0.0, 1.0))
    with pytest.raises(ConstructionError, match="unit-speed"):
        sp.make_special("normal", raw)
    with pytest.raises(ValueError):
        sp.make_special("conical", parse_curve("circle"))


def _compare(kind, curve, s, v):
    cf = sp.closed_form_forms(kind, curve, s, v)
    ff = rs.fundamental_forms(rs.surface_jet(sp.make_special(kind, curve), s, v))
    for key in "EFGefg":
        a, b = getattr(cf, key), getattr(ff, key)
        assert abs(a - b) <= 1e-6 * max(1.0, abs(b)), (key, a, b)
    return cf, ff


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(CATALOG), st.sampled_from(sp.KINDS), st.floats(0, 1), st.floats(-2, 2))
def test_closed_form_matches_generic(name, kind, u, v):
    curve = parse_curve(name)
    a, b = curve.domain
    try:
        _compare(kind, curve, a + (b - a) * u, v)
    except SingularPointError:
        pass


def test_closed_form_examples(helix):
    for s, v in [(0.0, 0.3), (3.0, -1.7), (-5.0, 1.2)]:
        assert sp.closed_form_forms("normal", helix, s, v).e == pytest.approx(0.0, abs=1e-15)
    cf, _ = _compare("binormal", helix, 0.5, 1.0)
    assert cf.f == pytest.approx(0.2 / math.sqrt(1.04), abs=1e-14)
    cf, _ = _compare("rectifying", helix, 0.5, 1.0)
    assert (cf.F, cf.G) == pytest.approx((0.5, 1.25), abs=1e-14)


def test_closed_form_gaussian(helix, circle):
    assert sp.closed_form_gaussian("normal", helix, 1.0, 0.0) == pytest.approx(-0.04, abs=1e-15)
    assert sp.closed_form_gaussian("binormal", helix, 1.0, 1.0) == pytest.approx(-0.04 / 1.0816, abs=1e-15)
    for v in (-1.5, 0.0, 2.0):
        assert sp.closed_form_gaussian("binormal", circle, 1.0, v) == 0.0
    with pytest.raises(ValueError):
        sp.closed_form_gaussian("tangent", helix, 1.0, 1.0)


@pytest.mark.parametrize("name", ["slant:sigma=0.3", "twisted-cubic"])
def test_printed_normal_e_agrees_where_tau_nonzero(name):
    curve = parse_curve(name)
    a, b = curve.domain
    for s in np.linspace(a, b, 9)[1:-1]:
        if abs(series_at(curve, s).tau.value) <= 1e-6:
            continue
        for v in (-1.0, 0.4, 1.6):
            direct = sp.closed_form_forms("normal", curve, s, v).e
            assert sp.normal_e_printed(curve, s, v) == pytest.approx(direct, abs=1e-10)
    with pytest.raises(ValueError):
        sp.normal_e_printed(parse_curve("circle"), 1.0, 0.5)


REFERENCE = {"tangent": "B", "darboux": "B", "rectifying": "N", "tangential-darboux": "Dbar"}


@pytest.mark.parametrize("name", CATALOG)
@pytest.mark.parametrize("kind", sorted(REFERENCE))
def test_unit_normal_identities(name, kind):
    curve = parse_curve(name)
    surf = sp.make_special(kind, curve)
    a, b = curve.domain
    for s in np.linspace(a, b, 6)[1:-1]:
        fs = series_at(curve, s)
        ref = {"B": fs.B.value, "N": fs.N.value, "Dbar": fs.darboux_unit.value}[REFERENCE[kind]]
        for v in (-1.9, 1.3):
            try:
                U = rs.unit_normal(rs.surface_jet(surf, s, v))
            except SingularPointError:
                continue
            assert abs(abs(U @ ref) - 1) < 1e-8
            cf = sp.closed_form_forms(kind, curve, s, v)
            assert cf.orientation * (U @ ref) > 0
            assert cf.f == 0.0 and cf.g == 0.0


@pytest.mark.parametrize("name", CATALOG)
def test_normal_binormal_orthogonal_chart(name):
    curve = parse_curve(name)
    for kind in ("normal", "binormal"):
        surf = sp.make_special(kind, curve)
        for s in np.linspace(*curve.domain, 5)[1:-1]:
            jet = rs.surface_jet(surf, s, 0.9)
            assert abs(jet.K_s @ jet.K_v) < 1e-14


@pytest.mark.parametrize("name", CATALOG)
def test_tangential_darboux_chart_identity(name):
    # K_s = (v - sigma) N' with N' = -kappa T + tau B
    curve = parse_curve(name)
    surf = sp.make_special("tangential-darboux", curve)
    for s in np.linspace(*curve.domain, 6)[1:-1]:
        fs = series_at(curve, s)
        q = fs.scalars()
        dN = -q["kappa"] * fs.T.value + q["tau"] * fs.B.value
        for v in (-1.0, 0.5):
            jet = rs.surface_jet(surf, s, v)
            assert np.linalg.norm(jet.K_s - (v - q["sigma"]) * dN) < 1e-5


def test_singular_closed_form(helix, slant):
    with pytest.raises(SingularPointError):
        sp.closed_form_forms("tangent", helix, 1.0, 0.0)
    with pytest.raises(SingularPointError):
        sp.closed_form_forms("darboux", helix, 1.0, 0.5)
    with pytest.raises(SingularPointError):
        sp.closed_form_forms("tangential-darboux", slant, 1.0, 0.3)
