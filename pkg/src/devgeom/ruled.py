"""Ruled surfaces K(s, v) = gamma(s) + v * delta(s).

The surface is described by a function returning the second-order jets of
the base curve gamma and the director delta at a parameter ``s``.  Everything
else (partials, normal, fundamental forms, Gaussian curvature) is computed
from those six vectors.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._vec import cross3, det3
from .curves import Curve, default_samples
from .errors import ConstructionError, DomainError, SingularPointError

SINGULAR_TOL = 1e-8
DET_FLOOR = 1e-14
UNIT_DIRECTOR_TOL = 1e-8

KINDS = ("normal", "binormal", "tangent", "darboux", "rectifying", "tangential-darboux")

__all__ = [
    "SINGULAR_TOL",
    "KINDS",
    "Ruling",
    "RuledSurface",
    "SurfaceJet",
    "FundamentalForms",
    "GridSample",
    "ruled_surface",
    "surface_jet",
    "unit_normal",
    "normal_derivatives",
    "ruling_normal",
    "fundamental_forms",
    "gaussian_from_forms",
    "gaussian_ruled",
    "is_developable",
    "developability_derivative",
    "eq32_residual",
    "sample_grid",
]


@dataclass(frozen=True)
class Ruling:
    """Rows 0..2 hold the value, first and second s-derivative."""

    gamma: np.ndarray
    delta: np.ndarray


@dataclass(frozen=True, eq=False)
class RuledSurface:
    ruling: Callable[[float], Ruling]
    s_domain: tuple[float, float]
    v_domain: tuple[float, float] = (-2.0, 2.0)
    kind: str = "generic"
    name: str = "ruled"
    curve: Curve | None = None
    unit_director: bool = True
    developable: bool | None = None

    def __call__(self, s, v):
        r = self.ruling(float(s))
        return r.gamma[0] + v * r.delta[0]

    def check(self, s, v):
        for x, (a, b), label in ((s, self.s_domain, "s"), (v, self.v_domain, "v")):
            slack = 1e-12 * max(1.0, abs(a), abs(b))
            if not a - slack <= x <= b + slack:
                raise DomainError(f"{label}={x} outside [{a}, {b}] of {self.name}")


@dataclass(frozen=True)
class SurfaceJet:
    s: float
    v: float
    K: np.ndarray
    K_s: np.ndarray
    K_v: np.ndarray
    K_ss: np.ndarray
    K_vs: np.ndarray
    K_vv: np.ndarray
    gamma_s: np.ndarray | None = field(default=None, repr=False)

    @property
    def normal_vector(self) -> np.ndarray:
        """K_s x K_v, expanded as gamma' x delta + v delta' x delta when gamma' is known.

        The expansion avoids the cancellation in K_s x K_v near the edge of
        regression, where K_s is nearly parallel to the ruling.
        """
        if self.gamma_s is None:
            return cross3(self.K_s, self.K_v)
        return cross3(self.gamma_s, self.K_v) + self.v * cross3(self.K_vs, self.K_v)


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    e: float
    f: float
    g: float
    s: float = 0.0
    v: float = 0.0
    U: np.ndarray | None = field(default=None, compare=False, repr=False)
    normal_sq: float | None = field(default=None, compare=False, repr=False)

    @property
    def metric_det(self) -> float:
        """EG - F^2, taken as |K_s x K_v|^2 when known (no cancellation near singular points)."""
        if self.normal_sq is not None:
            return self.normal_sq
        return self.E * self.G - self.F**2

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("E", "F", "G", "e", "f", "g")}


def ruled_surface(base: Curve, director: Curve, v_domain=(-2.0, 2.0), *, name="ruled",
                  unit_director: bool = True) -> RuledSurface:
    """Generic ruled surface from two curve objects (director need not be regular)."""
    lo = max(base.domain[0], director.domain[0])
    hi = min(base.domain[1], director.domain[1])
    if not lo < hi:
        raise ConstructionError("base and director domains do not overlap")

    @functools.lru_cache(maxsize=4096)
    def ruling(s):
        return Ruling(base._derivatives(s, 2), director._derivatives(s, 2))

    if unit_director:
        for s in np.linspace(lo, hi, 33):
            nd = np.linalg.norm(director._derivatives(float(s), 0)[0])
            if abs(nd - 1.0) > UNIT_DIRECTOR_TOL:
                raise ConstructionError(f"director norm {nd:.9g} at s={s:g} is not 1")
    return RuledSurface(ruling, (lo, hi), tuple(map(float, v_domain)), name=name,
                        curve=base, unit_director=unit_director)


def surface_jet(surface: RuledSurface, s: float, v: float) -> SurfaceJet:
    s, v = float(s), float(v)
    surface.check(s, v)
    r = surface.ruling(s)
    g, d = r.gamma, r.delta
    return SurfaceJet(
        s, v,
        K=g[0] + v * d[0],
        K_s=g[1] + v * d[1],
        K_v=d[0].copy(),
        K_ss=g[2] + v * d[2],
        K_vs=d[1].copy(),
        K_vv=np.zeros(3),
        gamma_s=g[1],
    )


def unit_normal(jet: SurfaceJet, singular_tol: float = SINGULAR_TOL) -> np.ndarray:
    n = jet.normal_vector
    nn = float(np.linalg.norm(n))
    if not nn > singular_tol:
        raise SingularPointError(jet.s, jet.v, nn)
    return n / nn


def normal_derivatives(jet: SurfaceJet, singular_tol: float = SINGULAR_TOL):
    """(U_s, U_v), the partials of the unit normal."""
    n = jet.normal_vector
    nn = float(np.linalg.norm(n))
    if not nn > singular_tol:
        raise SingularPointError(jet.s, jet.v, nn)
    U = n / nn
    n_s = cross3(jet.K_ss, jet.K_v) + cross3(jet.K_s, jet.K_vs)
    n_v = cross3(jet.K_vs, jet.K_v)
    return (n_s - U * U.dot(n_s)) / nn, (n_v - U * U.dot(n_v)) / nn


_RULING_OFFSETS = (0.25, -0.25, 0.5, -0.5, 1.0, -1.0, 0.1, -0.1)


def ruling_normal(surface: RuledSurface, s: float, v: float) -> np.ndarray:
    """Unit normal of a developable surface taken along the ruling through (s, v).

    On a developable the tangent plane is constant along each ruling, so a
    regular point on the same line supplies the normal at a singular one.
    The orientation is that of the borrowed point.
    """
    surface.check(s, v)
    r = surface.ruling(float(s))
    for dv in _RULING_OFFSETS:
        n = cross3(r.gamma[1] + (v + dv) * r.delta[1], r.delta[0])
        nn = np.linalg.norm(n)
        if nn > 1e-6:
            return n / nn
    raise SingularPointError(s, v, 0.0)


def fundamental_forms(jet: SurfaceJet, U: np.ndarray | None = None) -> FundamentalForms:
    """First and second fundamental coefficients; ``U`` overrides the normal."""
    if U is None:
        U = unit_normal(jet)
    n = jet.normal_vector
    return FundamentalForms(
        E=float(jet.K_s @ jet.K_s),
        F=float(jet.K_s @ jet.K_v),
        G=float(jet.K_v @ jet.K_v),
        e=float(U @ jet.K_ss),
        f=float(U @ jet.K_vs),
        g=float(U @ jet.K_vv),
        s=jet.s,
        v=jet.v,
        U=U,
        normal_sq=float(n @ n),
    )


def gaussian_from_forms(forms: FundamentalForms) -> float:
    det = forms.metric_det
    if not det > DET_FLOOR:
        raise SingularPointError(forms.s, forms.v, max(det, 0.0) ** 0.5)
    return (forms.e * forms.g - forms.f**2) / det


def gaussian_ruled(surface: RuledSurface, s: float, v: float) -> float:
    """K = -det(gamma', delta, delta')^2 / (EG - F^2)^2."""
    jet = surface_jet(surface, s, v)
    r = surface.ruling(float(s))
    n = jet.normal_vector
    metric = float(n @ n)
    if not np.sqrt(metric) > SINGULAR_TOL:
        raise SingularPointError(jet.s, jet.v, float(np.sqrt(metric)))
    d = det3(r.gamma[1], r.delta[0], r.delta[1])
    return -(d**2) / max(metric, DET_FLOOR) ** 2


def _developability(r: Ruling) -> float:
    t = r.gamma[1]
    speed = np.linalg.norm(t)
    if speed > SINGULAR_TOL:
        t = t / speed
    return float(det3(t, r.delta[0], r.delta[1]))


def is_developable(surface: RuledSurface, s_samples=None, tol: float = 1e-8):
    """(flag, max |det(T, delta, delta')|) over ``s_samples``.

    T is the unit tangent of the base, so the test also accepts bases that are
    not parametrized by arc length (the Darboux developable is one).  Where the
    base is stationary the raw determinant with gamma' is used.
    """
    if s_samples is None:
        s_samples = _s_samples(surface)
    res = max(abs(_developability(surface.ruling(float(s)))) for s in s_samples)
    return res < tol, res


def developability_derivative(surface: RuledSurface, s: float) -> float:
    """s-derivative of det(gamma', delta, delta').

    For a unit-speed base this is <T x delta, delta''> + kappa <N x delta, delta'>;
    it must vanish along a developable.
    """
    r = surface.ruling(float(s))
    g, d = r.gamma, r.delta
    return float(np.dot(cross3(g[1], d[0]), d[2]) + np.dot(cross3(g[2], d[0]), d[1]))


# name used by the public interface
eq32_residual = developability_derivative


def _s_samples(surface, n=64):
    a, b = surface.s_domain
    return a + (b - a) * (np.arange(n) + 0.5) / n


@dataclass(frozen=True)
class GridSample:
    """Row-major (s outer, v inner) samples of a surface."""

    s: np.ndarray
    v: np.ndarray
    points: np.ndarray
    K: np.ndarray
    mask: np.ndarray

    @property
    def skipped(self) -> list[tuple[float, float]]:
        return [(float(self.s[i]), float(self.v[j])) for i, j in zip(*np.nonzero(self.mask))]


def sample_grid(surface: RuledSurface, s_values, v_values) -> GridSample:
    """Positions and Gaussian curvature; singular samples are masked, not fatal."""
    s_values = np.asarray(s_values, dtype=float)
    v_values = np.asarray(v_values, dtype=float)
    pts = np.zeros((len(s_values), len(v_values), 3))
    K = np.full((len(s_values), len(v_values)), np.nan)
    mask = np.zeros(K.shape, dtype=bool)
    for i, s in enumerate(s_values):
        for j, v in enumerate(v_values):
            jet = surface_jet(surface, s, v)
            pts[i, j] = jet.K
            try:
                K[i, j] = gaussian_from_forms(fundamental_forms(jet))
            except SingularPointError:
                mask[i, j] = True
    return GridSample(s_values, v_values, pts, K, mask)
