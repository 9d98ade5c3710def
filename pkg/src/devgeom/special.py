"""The six ruled surfaces built from the Frenet apparatus of a curve.

=====================  ===========  ====================================
kind                   base         director
=====================  ===========  ====================================
normal                 alpha        N
binormal               alpha        B
tangent                alpha        T
darboux                B            T
rectifying             alpha        (tau/kappa) T + B   (not unit)
tangential-darboux     Dbar         N
=====================  ===========  ====================================

with ``Dbar = (tau T + kappa B) / sqrt(kappa^2 + tau^2)``.  All except the
first two are developable.  :func:`closed_form_forms` evaluates the
fundamental coefficients from kappa, tau and their derivatives; the sign of
every "+-" coefficient follows the normal ``K_s x K_v`` of the chart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import KAPPA_MIN, Curve, FrenetSeries, series_at
from .errors import ConstructionError, FrameUndefinedError, SingularPointError
from .ruled import KINDS, SINGULAR_TOL, FundamentalForms, RuledSurface, Ruling

DEVELOPABLE_KINDS = ("tangent", "darboux", "rectifying", "tangential-darboux")

__all__ = [
    "KINDS",
    "DEVELOPABLE_KINDS",
    "ClosedFormForms",
    "make_special",
    "closed_form_forms",
    "closed_form_gaussian",
    "normal_e_printed",
    "series_at",
]


@dataclass(frozen=True)
class ClosedFormForms(FundamentalForms):
    kind: str = ""
    orientation: float = 1.0
    gaussian: float | None = None


def _rows(x, n=3):
    d = x.derivatives()
    out = np.zeros((n, 3))
    out[: min(n, len(d))] = d[:n]
    return out


def _ruling(kind, fs: FrenetSeries) -> Ruling:
    if kind == "normal":
        return Ruling(_rows(fs.position), _rows(fs.N))
    if kind == "binormal":
        return Ruling(_rows(fs.position), _rows(fs.B))
    if kind == "tangent":
        return Ruling(_rows(fs.position), _rows(fs.T))
    if kind == "darboux":
        return Ruling(_rows(fs.B), _rows(fs.T))
    if kind == "rectifying":
        return Ruling(_rows(fs.position), _rows(fs.darboux_modified))
    if kind == "tangential-darboux":
        return Ruling(_rows(fs.darboux_unit), _rows(fs.N))
    raise ValueError(f"unknown surface kind {kind!r}; expected one of {', '.join(KINDS)}")


def _check_curve(curve: Curve, n: int = 65):
    a, b = curve.domain
    for s in np.linspace(a, b, n):
        j = curve.jet(float(s), 2)
        if not curve.unit_speed and abs(j.speed - 1.0) > 1e-6:
            raise ConstructionError(
                f"{curve.name} is not unit-speed (|a'|={j.speed:.6g} at s={s:.6g}); "
                "reparametrize by arc length first")
        kappa = np.linalg.norm(np.cross(j.d1, j.d2)) / j.speed**3
        if kappa < KAPPA_MIN:
            raise ConstructionError(f"curvature of {curve.name} vanishes at s={s:.6g}; frame undefined")


def make_special(kind: str, curve: Curve, v_domain=(-2.0, 2.0)) -> RuledSurface:
    """Ruled surface of the given kind over a unit-speed curve with kappa > 0."""
    if kind not in KINDS:
        raise ValueError(f"unknown surface kind {kind!r}; expected one of {', '.join(KINDS)}")
    _check_curve(curve)

    def ruling(s):
        try:
            return _ruling(kind, series_at(curve, s))
        except FrameUndefinedError as exc:
            raise ConstructionError(str(exc)) from exc

    return RuledSurface(
        ruling, curve.domain, tuple(map(float, v_domain)), kind=kind,
        name=f"{kind}({curve.name})", curve=curve,
        unit_director=kind != "rectifying",
        developable=kind in DEVELOPABLE_KINDS,
    )


def _sign(x):
    return 1.0 if x >= 0 else -1.0


def closed_form_forms(kind: str, curve: Curve, s: float, v: float) -> ClosedFormForms:
    """Fundamental coefficients from the Frenet invariants of ``curve`` at ``s``.

    ``orientation`` is +1 when the chart normal agrees with the reference
    field of the kind (B for tangent and darboux, N for rectifying, Dbar for
    tangential-darboux); the "+-" coefficients are multiplied by it.
    """
    fs = series_at(curve, s)
    q = fs.scalars()
    k, t = q["kappa"], q["tau"]
    dk, dt = q["dkappa"], q["dtau"]
    rho, drho = q["rho"], q["drho"]
    sig = q["sigma"]
    w2 = k * k + t * t
    gaussian = None
    o = 1.0
    if kind == "normal":
        E = (1 - v * k) ** 2 + v * v * t * t
        W = math.sqrt(E)
        norm = W
        F, G = 0.0, 1.0
        e = (v * dt * (1 - v * k) + v * v * dk * t) / W if W > 0 else 0.0
        f = t / W if W > 0 else 0.0
        gaussian = -t * t / E**2 if E > 0 else None
    elif kind == "binormal":
        E = 1 + v * v * t * t
        W = math.sqrt(E)
        norm = W
        F, G = 0.0, 1.0
        e = (-v * v * k * t * t - k + v * dt) / W
        f = t / W
        gaussian = -t * t / E**2
    elif kind == "tangent":
        c = -v * k
        norm, o = abs(c), _sign(c)
        E, F, G = 1 + v * v * k * k, 1.0, 1.0
        e, f = o * v * k * t, 0.0
    elif kind == "darboux":
        c = -(v * k - t)
        norm, o = abs(c), _sign(c)
        E, F, G = (v * k - t) ** 2, 0.0, 1.0
        e, f = o * t * (v * k - t), 0.0
    elif kind == "rectifying":
        c = -(1 + v * drho)
        norm, o = abs(c), _sign(c)
        E, F, G = (1 + v * drho) ** 2, rho * (1 + v * drho), 1 + rho * rho
        e, f = o * k * (1 + v * drho), 0.0
    elif kind == "tangential-darboux":
        c = -(v - sig) * math.sqrt(w2)
        norm, o = abs(c), _sign(c)
        E, F, G = (v - sig) ** 2 * w2, 0.0, 1.0
        e, f = o * w2 * sig * (v - sig), 0.0
    else:
        raise ValueError(f"unknown surface kind {kind!r}")
    if not norm > SINGULAR_TOL:
        raise SingularPointError(s, v, norm)
    if gaussian is None and kind in DEVELOPABLE_KINDS:
        gaussian = 0.0
    return ClosedFormForms(E=E, F=F, G=G, e=e, f=f, g=0.0, s=float(s), v=float(v),
                           kind=kind, orientation=o, gaussian=gaussian)


def closed_form_gaussian(kind: str, curve: Curve, s: float, v: float) -> float:
    """-tau^2 / E^2 for the normal and binormal surfaces."""
    if kind not in ("normal", "binormal"):
        raise ValueError(f"no printed curvature formula for {kind!r} (it is developable, K = 0)")
    return closed_form_forms(kind, curve, s, v).gaussian


def normal_e_printed(curve: Curve, s: float, v: float) -> float:
    """Normal-surface e written with (kappa/tau)'; needs tau != 0."""
    q = series_at(curve, s).scalars()
    k, t, dk, dt = q["kappa"], q["tau"], q["dkappa"], q["dtau"]
    if abs(t) <= 1e-6:
        raise ValueError("printed form of e needs |tau| > 1e-6")
    W = math.sqrt((1 - v * k) ** 2 + v * v * t * t)
    d_ratio = (dk * t - k * dt) / (t * t)
    return (v * dt + v * v * t * t * d_ratio) / W
