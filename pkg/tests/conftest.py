import numpy as np
import pytest

from devgeom.curves import FrenetCurve, parse_curve

CATALOG = ("circle", "helix:a=2,b=1", "slant:sigma=0.3", "twisted-cubic")


@pytest.fixture(scope="session")
def helix():
    return parse_curve("helix:a=2,b=1")


@pytest.fixture(scope="session")
def circle():
    return parse_curve("circle")


@pytest.fixture(scope="session")
def slant():
    return parse_curve("slant:sigma=0.3")


@pytest.fixture(scope="session")
def cubic():
    return parse_curve("twisted-cubic")


@pytest.fixture(scope="session")
def catalog():
    return {name: parse_curve(name) for name in CATALOG}


@pytest.fixture(scope="session")
def linear_rho():
    """kappa = 1, tau = s / 2: tau/kappa is linear with slope 1/2."""
    return FrenetCurve(lambda s: 1.0 + 0.0 * s, lambda s: 0.5 * s, (-2.0, 2.0), name="linear-rho")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def theorem_reports(catalog, linear_rho):
    """verify_theorem on every catalog curve plus ``linear-rho``, keyed by (theorem, name)."""
    from devgeom.classification import THEOREM_KINDS, verify_theorem

    curves = dict(catalog, **{"linear-rho": linear_rho})
    return {(th, name): verify_theorem(th, c) for th in THEOREM_KINDS for name, c in curves.items()}
