"""Space curves, their derivative jets, Frenet apparatus and curve classes.

Every curve is a regular map from a closed interval into R^3.  Curves expose
``jet(s, order)`` returning position and derivatives up to order 5; the
Frenet quantities and their arc-length derivatives are obtained by running the
jet through truncated Taylor arithmetic (see :mod:`devgeom.taylor`).
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from ._vec import cross3
from scipy.interpolate import CubicSpline, make_interp_spline

from . import taylor as tl
from .errors import (
    ClassificationError,
    ConstructionError,
    DomainError,
    FrameUndefinedError,
    NumericError,
)

KAPPA_MIN = 1e-8
UNIT_SPEED_TOL = 1e-9
CLASS_TOL = 1e-5
MAX_ORDER = 5

__all__ = [
    "KAPPA_MIN",
    "CLASS_TOL",
    "Curve",
    "AnalyticCurve",
    "FrenetCurve",
    "SampledCurve",
    "ArcLengthCurve",
    "CurveJet",
    "FrenetData",
    "FrenetSeries",
    "CurveClass",
    "eval_jet",
    "frenet_apparatus",
    "frenet_series",
    "series_at",
    "sigma",
    "reparametrize_arclength",
    "classify_curve",
    "curve_invariants",
    "line",
    "circle",
    "helix",
    "slant_helix",
    "twisted_cubic",
    "parse_curve",
    "load_samples",
    "export_samples",
]


# ---------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class CurveJet:
    """Position and derivatives ``d[k] = alpha^(k)(s)`` at one parameter value.

    ``d`` always has six rows; rows above ``order`` are zero and reported by
    :attr:`absent`.
    """

    s: float
    d: np.ndarray
    order: int

    @property
    def absent(self) -> tuple[int, ...]:
        return tuple(range(self.order + 1, MAX_ORDER + 1))

    d0 = property(lambda self: self.d[0])
    d1 = property(lambda self: self.d[1])
    d2 = property(lambda self: self.d[2])
    d3 = property(lambda self: self.d[3])
    d4 = property(lambda self: self.d[4])
    d5 = property(lambda self: self.d[5])

    @property
    def speed(self) -> float:
        return float(np.linalg.norm(self.d[1]))

    def series(self) -> tl.Taylor:
        fac = np.array([math.factorial(k) for k in range(self.order + 1)], dtype=float)
        return tl.Taylor(self.d[: self.order + 1] / fac[:, None])


@dataclass(frozen=True)
class FrenetData:
    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: float
    tau: float
    sigma: float | None = None


@dataclass(frozen=True)
class CurveClass:
    verdict: str
    evidence: float
    deviations: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# finite differences for user curves


@functools.lru_cache(maxsize=None)
def _fd_weights(k: int, m: int) -> np.ndarray:
    offsets = np.arange(-m, m + 1, dtype=float)
    vander = np.vander(offsets, increasing=True).T
    rhs = np.zeros(2 * m + 1)
    rhs[k] = math.factorial(k)
    return np.linalg.solve(vander, rhs)


def _fd_step(k: int, s: float) -> float:
    base = 1e-4 if k == 1 else max(1e-4, np.finfo(float).eps ** (1.0 / (k + 4)))
    return max(base, base * abs(s))


def fd_derivatives(func: Callable, s: float, order: int) -> np.ndarray:
    """Central differences, fourth order accurate, one step size per order."""
    out = np.zeros((order + 1, 3))
    out[0] = np.asarray(func(s), dtype=float)
    for k in range(1, order + 1):
        m = (k + 1) // 2 + 1
        h = _fd_step(k, s)
        w = _fd_weights(k, m)
        acc = np.zeros(3)
        for j, wj in zip(range(-m, m + 1), w):
            if wj != 0.0:
                acc += wj * np.asarray(func(s + j * h), dtype=float)
        out[k] = acc / h**k
    return out


# ---------------------------------------------------------------------------
# curve types


class Curve:
    """Regular parametrized space curve on ``domain = (s_min, s_max)``."""

    name: str = "curve"
    domain: tuple[float, float] = (0.0, 1.0)
    unit_speed: bool = False

    def __call__(self, s):
        return self._derivatives(float(s), 0)[0]

    def jet(self, s: float, order: int = MAX_ORDER) -> CurveJet:
        return eval_jet(self, s, order)

    def contains(self, s: float) -> bool:
        a, b = self.domain
        slack = 1e-12 * max(1.0, abs(a), abs(b))
        return a - slack <= s <= b + slack

    def _derivatives(self, s: float, order: int) -> np.ndarray:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} on [{self.domain[0]:g}, {self.domain[1]:g}]>"


class AnalyticCurve(Curve):
    """Curve given by a function ``t -> (x, y, z)``.

    With ``engine="taylor"`` the function is called on a Taylor variable, so
    it must be written with numpy ufuncs (or plain arithmetic) and return a
    sequence of three components.  ``engine="fd"`` treats it as a black box.
    """

    def __init__(self, func, domain, *, name="analytic", unit_speed=False, engine="taylor"):
        if engine not in ("taylor", "fd"):
            raise ValueError(f"unknown differentiation engine {engine!r}")
        a, b = map(float, domain)
        if not a < b:
            raise ConstructionError(f"empty domain [{a}, {b}]")
        self.func = func
        self.domain = (a, b)
        self.name = name
        self.unit_speed = unit_speed
        self.engine = engine

    def __call__(self, s):
        return np.asarray(self.func(float(s)), dtype=float)

    def _derivatives(self, s, order):
        if order == 0:
            return np.asarray(self.func(s), dtype=float).reshape(1, 3)
        if self.engine == "fd":
            return fd_derivatives(self.func, s, order)
        t = tl.variable(s, order)
        comps = list(self.func(t))
        if len(comps) != 3:
            raise ConstructionError("curve function must return three components")
        return tl.stack(comps, order).derivatives()


def _as_series(x, order):
    if isinstance(x, tl.Taylor):
        return x.truncate(order)
    return tl.constant(float(x), order)


class FrenetCurve(Curve):
    """Unit-speed curve recovered from prescribed curvature and torsion.

    The Frenet system is integrated with the classical RK4 scheme on a
    uniform mesh (step at most ``step``); evaluation between mesh nodes takes
    one extra RK4 step from the nearest node.  Derivatives of order >= 2 come
    from differentiating the Frenet equations with ``kappa`` and ``tau``
    expanded as Taylor series, so ``kappa`` and ``tau`` must accept
    :class:`~devgeom.taylor.Taylor` arguments.
    """

    unit_speed = True

    def __init__(self, kappa, tau, domain, *, s0=0.0, origin=(0.0, 0.0, 0.0),
                 frame=None, step=1e-3, name="frenet"):
        a, b = map(float, domain)
        if not a <= s0 <= b or not a < b:
            raise ConstructionError(f"bad domain [{a}, {b}] for start point {s0}")
        self.kappa = kappa
        self.tau = tau
        self.domain = (a, b)
        self.name = name
        frame = np.eye(3) if frame is None else np.asarray(frame, dtype=float)
        y0 = np.concatenate([np.asarray(origin, dtype=float), frame.reshape(9)])
        fwd_s, fwd_y = self._integrate(s0, b, y0, step)
        bwd_s, bwd_y = self._integrate(s0, a, y0, step)
        self._nodes = np.concatenate([bwd_s[::-1], fwd_s[1:]])
        self._states = np.concatenate([bwd_y[::-1], fwd_y[1:]])

    def _rhs(self, s, y):
        k = float(self.kappa(s))
        t = float(self.tau(s))
        T, N, B = y[3:6], y[6:9], y[9:12]
        return np.concatenate([T, k * N, -k * T + t * B, -t * N])

    def _rk4(self, s, y, h):
        k1 = self._rhs(s, y)
        k2 = self._rhs(s + h / 2, y + h / 2 * k1)
        k3 = self._rhs(s + h / 2, y + h / 2 * k2)
        k4 = self._rhs(s + h, y + h * k3)
        return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    def _integrate(self, s0, s1, y0, step):
        n = max(1, int(math.ceil(abs(s1 - s0) / step)))
        h = (s1 - s0) / n
        ss = s0 + h * np.arange(n + 1)
        ys = np.empty((n + 1, 12))
        ys[0] = y0
        for i in range(n):
            ys[i + 1] = self._rk4(ss[i], ys[i], h)
        return ss, ys

    def _state(self, s):
        i = int(np.clip(np.searchsorted(self._nodes, s), 1, len(self._nodes) - 1))
        if s - self._nodes[i - 1] < self._nodes[i] - s:
            i -= 1
        h = s - self._nodes[i]
        if h == 0.0:
            return self._states[i]
        return self._rk4(self._nodes[i], self._states[i], h)

    def _derivatives(self, s, order):
        y = self._state(s)
        frame = y[3:12].reshape(3, 3)
        out = np.zeros((order + 1, 3))
        out[0] = y[:3]
        if order == 0:
            return out
        x = tl.variable(s, order)
        k = _as_series(self.kappa(x), order)
        t = _as_series(self.tau(x), order)
        a, b, c = tl.constant(1.0, order), tl.constant(0.0, order), tl.constant(0.0, order)
        for j in range(1, order + 1):
            out[j] = np.array([a.value, b.value, c.value]) @ frame
            if j == order:
                break
            a, b, c = (a.deriv() - k * b, b.deriv() + k * a - t * c, c.deriv() + t * b)
        return out


class SampledCurve(Curve):
    """Curve interpolated through ``[s, x, y, z]`` samples by a B-spline."""

    def __init__(self, samples, *, name="sampled", degree=7):
        data = np.asarray(samples, dtype=float)
        if data.ndim != 2 or data.shape[1] != 4:
            raise ConstructionError("samples must be rows of [s, x, y, z]")
        if len(data) < 4:
            raise ConstructionError("need at least four samples")
        order = np.argsort(data[:, 0])
        data = data[order]
        if np.any(np.diff(data[:, 0]) <= 0):
            raise ConstructionError("sample parameters must be distinct")
        if not np.all(np.isfinite(data)):
            raise ConstructionError("samples contain non-finite values")
        k = min(degree, len(data) - 1)
        if k % 2 == 0:
            k -= 1
        self._spline = make_interp_spline(data[:, 0], data[:, 1:], k=k)
        self.degree = k
        self.domain = (float(data[0, 0]), float(data[-1, 0]))
        self.name = name
        self.samples = data

    def _derivatives(self, s, order):
        out = np.zeros((order + 1, 3))
        for j in range(min(order, self.degree) + 1):
            out[j] = self._spline(s, nu=j)
        return out


_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


class ArcLengthCurve(Curve):
    """Arc-length reparametrization of a regular curve.

    The arc-length function is tabulated on ``n_nodes`` parameter nodes with
    16-point Gauss-Legendre quadrature.  A cubic spline of the inverse map
    gives the starting guess for Newton's method, which is then run against
    the quadrature to machine precision.  Jets are the base jets re-expanded
    in arc length.
    """

    unit_speed = True

    def __init__(self, base: Curve, n_nodes: int = 256, *, name=None):
        if n_nodes < 4:
            raise ValueError("n_nodes must be at least 4")
        self.base = base
        self.name = name or f"{base.name}@arclength"
        a, b = base.domain
        t = np.linspace(a, b, n_nodes)
        lengths = np.zeros(n_nodes)
        for i in range(n_nodes - 1):
            lengths[i + 1] = lengths[i] + self._segment(t[i], t[i + 1], check=True)
        self._t = t
        self._s = lengths
        self._inverse = CubicSpline(lengths, t)
        self._params = {}
        self.domain = (0.0, float(lengths[-1]))

    def _speed(self, t):
        return float(np.linalg.norm(self.base._derivatives(float(t), 1)[1]))

    def _segment(self, t0, t1, check=False):
        if t1 == t0:
            return 0.0
        mid, half = 0.5 * (t0 + t1), 0.5 * (t1 - t0)
        total = 0.0
        for x, w in zip(_GL_X, _GL_W):
            tt = mid + half * x
            sp = self._speed(tt)
            if check and not sp > 1e-12:
                raise ConstructionError(f"curve {self.base.name} is not regular near t={tt:.6g}")
            total += w * sp
        if check:
            for tt in (t0, t1):
                if not self._speed(tt) > 1e-12:
                    raise ConstructionError(f"curve {self.base.name} is not regular at t={tt:.6g}")
        return half * total

    def parameter(self, s: float) -> float:
        """Base-curve parameter t with arc length s."""
        t = self._params.get(s)
        if t is None:
            t = self._params[s] = self._solve(s)
        return t

    def _solve(self, s):
        i = int(np.clip(np.searchsorted(self._s, s) - 1, 0, len(self._s) - 2))
        t = float(np.clip(self._inverse(s), self._t[i] - 1.0, self._t[i + 1] + 1.0))
        for _ in range(8):
            dt = (self._s[i] + self._segment(self._t[i], t) - s) / self._speed(t)
            t -= dt
            if abs(dt) < 1e-15 * max(1.0, abs(t)):
                break
        return t

    def _derivatives(self, s, order):
        t = self.parameter(s)
        d = self.base._derivatives(t, order)
        if order == 0:
            return d
        fac = np.array([math.factorial(k) for k in range(order + 1)], dtype=float)
        return tl.unit_speed(tl.Taylor(d / fac[:, None])).derivatives()


# ---------------------------------------------------------------------------
# operations


def eval_jet(curve: Curve, s: float, order: int = MAX_ORDER) -> CurveJet:
    """Position and derivatives of ``curve`` at ``s`` through ``order`` (<= 5)."""
    if not 0 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in 0..{MAX_ORDER}")
    s = float(s)
    if not curve.contains(s):
        raise DomainError(f"s={s} outside domain {curve.domain} of {curve.name}")
    d = np.asarray(curve._derivatives(s, order), dtype=float)
    if not np.all(np.isfinite(d)):
        raise NumericError(f"non-finite jet of {curve.name} at s={s}")
    full = np.zeros((MAX_ORDER + 1, 3))
    full[: order + 1] = d[: order + 1]
    if order >= 1 and not np.linalg.norm(full[1]) > 0.0:
        raise NumericError(f"{curve.name} is not regular at s={s}")
    return CurveJet(s, full, order)


def frenet_apparatus(jet: CurveJet, path: str = "auto") -> FrenetData:
    """Frame, curvature and torsion from a jet of order >= 3.

    ``path="unit"`` uses kappa = |a''| and tau = <a' x a'', a'''>/kappa^2 (valid
    for arc-length jets); ``path="general"`` uses the speed-independent
    formulas.  ``"auto"`` picks the unit path when |a'| is 1 within 1e-9.
    """
    if jet.order < 3:
        raise ValueError("frenet_apparatus needs a jet of order >= 3")
    d1, d2, d3 = jet.d1, jet.d2, jet.d3
    speed = np.linalg.norm(d1)
    if not speed > 0.0:
        raise NumericError(f"zero speed at s={jet.s}")
    if path == "auto":
        path = "unit" if abs(speed - 1.0) < UNIT_SPEED_TOL else "general"
    c = cross3(d1, d2)
    if path == "unit":
        kappa = float(np.linalg.norm(d2))
        if kappa < KAPPA_MIN:
            raise FrameUndefinedError(jet.s, kappa)
        T = d1
        N = d2 / kappa
        tau = float(np.dot(c, d3) / kappa**2)
    elif path == "general":
        cn = np.linalg.norm(c)
        kappa = float(cn / speed**3)
        if kappa < KAPPA_MIN:
            raise FrameUndefinedError(jet.s, kappa)
        T = d1 / speed
        n = d2 - np.dot(d2, T) * T
        N = n / np.linalg.norm(n)
        tau = float(np.dot(c, d3) / cn**2)
    else:
        raise ValueError(f"unknown path {path!r}")
    return FrenetData(T=T, N=N, B=cross3(T, N), kappa=kappa, tau=tau)


@dataclass(frozen=True)
class FrenetSeries:
    """Frenet apparatus as arc-length Taylor series around one point."""

    s: float
    position: tl.Taylor
    T: tl.Taylor
    N: tl.Taylor
    B: tl.Taylor
    kappa: tl.Taylor
    tau: tl.Taylor

    @property
    def rho(self) -> tl.Taylor:
        """tau / kappa (constant exactly for general helices)."""
        return self.tau / self.kappa.truncate(self.tau.order)

    @property
    def omega(self) -> tl.Taylor:
        """sqrt(kappa^2 + tau^2)."""
        k = self.kappa.truncate(self.tau.order)
        return (k * k + self.tau * self.tau).sqrt()

    @property
    def sigma(self) -> tl.Taylor:
        """kappa^2 (tau/kappa)' / (kappa^2 + tau^2)^(3/2), "+" branch."""
        r = self.rho
        if r.order < 1:
            raise ValueError("sigma needs a jet of order >= 4")
        dr = r.deriv()
        k = self.kappa.truncate(dr.order)
        w = self.omega.truncate(dr.order)
        return k * k * dr / (w * w * w)

    @property
    def darboux_unit(self) -> tl.Taylor:
        """(tau T + kappa B) / sqrt(kappa^2 + tau^2)."""
        n = self.tau.order
        return (self.tau * self.T.truncate(n) + self.kappa.truncate(n) * self.B.truncate(n)) / self.omega

    @property
    def darboux_modified(self) -> tl.Taylor:
        """(tau/kappa) T + B."""
        n = self.tau.order
        return self.rho * self.T.truncate(n) + self.B.truncate(n)

    def scalars(self) -> dict:
        """Curvature, torsion and the derived invariants with derivatives."""
        out = {}
        for name, ser in (("kappa", self.kappa), ("tau", self.tau), ("rho", self.rho)):
            d = ser.derivatives()
            for j, label in enumerate(("", "d", "dd", "ddd")[: len(d)]):
                out[label + name] = float(d[j])
        if self.rho.order >= 1:
            d = self.sigma.derivatives()
            out["sigma"] = float(d[0])
            if len(d) > 1:
                out["dsigma"] = float(d[1])
        return out


def frenet_series(jet: CurveJet, *, unit_speed: bool | None = None) -> FrenetSeries:
    """Expand T, N, B, kappa, tau around ``jet.s`` in arc length.

    The jet is re-expanded in arc length first unless ``unit_speed`` is true
    (default: decided from |a'|).  With an order-5 jet the series reach
    kappa''' and tau'', enough for sigma' and for second derivatives of the
    Darboux fields.
    """
    if jet.order < 3:
        raise ValueError("frenet_series needs a jet of order >= 3")
    p = jet.series()
    if unit_speed is None:
        unit_speed = abs(jet.speed - 1.0) < 1e-14
    if not unit_speed:
        p = tl.unit_speed(p)
    d1 = p.deriv()
    d2 = d1.deriv()
    d3 = d2.deriv()
    sp = tl.norm(d1)
    c = tl.cross(d1, d2)
    cn = tl.norm(c)
    kappa = cn / sp.truncate(cn.order) ** 3
    if kappa.value < KAPPA_MIN:
        raise FrameUndefinedError(jet.s, float(kappa.value))
    T = d1 / sp
    B = c / cn
    N = tl.cross(B, T)
    tau = tl.dot(c, d3) / tl.dot(c, c).truncate(d3.order)
    return FrenetSeries(jet.s, p, T, N, B, kappa, tau)


@functools.lru_cache(maxsize=16384)
def _series_at(curve, s):
    return frenet_series(curve.jet(s, MAX_ORDER), unit_speed=True if curve.unit_speed else None)


def series_at(curve: Curve, s: float) -> FrenetSeries:
    """Memoized :func:`frenet_series` of ``curve`` at ``s`` (curves are immutable)."""
    return _series_at(curve, float(s))


def sigma(curve: Curve, s: float) -> float:
    """Slant-helix invariant at ``s`` (fixed "+" sign convention)."""
    return float(series_at(curve, s).sigma.value)


def reparametrize_arclength(curve: Curve, n_nodes: int = 256, *, validate: int = 200,
                            tol: float = 1e-6) -> ArcLengthCurve:
    """Unit-speed version of ``curve``; speed is checked on ``validate`` points."""
    out = ArcLengthCurve(curve, n_nodes)
    a, b = out.domain
    for s in np.linspace(a, b, validate):
        sp = np.linalg.norm(out._derivatives(float(s), 1)[1])
        if abs(sp - 1.0) > tol:
            raise NumericError(f"reparametrized speed {sp:.9f} at s={s:.6g} off by more than {tol}")
    return out


def _dev(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.max(np.abs(x - x.mean())))


def default_samples(curve: Curve, n: int = 64) -> np.ndarray:
    """Cell-centred samples; stays clear of domain endpoints."""
    a, b = curve.domain
    return a + (b - a) * (np.arange(n) + 0.5) / n


def curve_invariants(curve: Curve, samples) -> dict:
    """Arrays of kappa, tau, rho, sigma (and derivatives) over ``samples``."""
    rows = [series_at(curve, s).scalars() for s in samples]
    return {k: np.array([r[k] for r in rows]) for k in rows[0]}


def classify_curve(curve: Curve, samples=None, tol: float = CLASS_TOL) -> CurveClass:
    """Most specific class whose defining invariant is constant within ``tol``."""
    samples = default_samples(curve) if samples is None else np.asarray(samples, dtype=float)
    if len(samples) < 8:
        raise ValueError("classify_curve needs at least 8 samples")
    kap = []
    for s in samples:
        j = curve.jet(float(s), 3)
        kap.append(np.linalg.norm(cross3(j.d1, j.d2)) / j.speed**3)
    kap = np.array(kap)
    flat = kap < KAPPA_MIN
    if flat.all():
        return CurveClass("line", float(kap.max()), {"kappa": float(kap.max())})
    if flat.any():
        bad = samples[flat][0]
        raise ClassificationError(f"frame undefined at s={bad:g} but defined elsewhere")
    inv = curve_invariants(curve, samples)
    devs = {
        "tau": float(np.max(np.abs(inv["tau"]))),
        "kappa": _dev(inv["kappa"]),
        "tau_dev": _dev(inv["tau"]),
        "rho": _dev(inv["rho"]),
        "sigma": _dev(np.abs(inv["sigma"])),
    }
    if devs["tau"] < tol:
        return CurveClass("plane-curve", devs["tau"], devs)
    circ = max(devs["kappa"], devs["tau_dev"])
    if circ < tol:
        return CurveClass("circular-helix", circ, devs)
    if devs["rho"] < tol:
        return CurveClass("general-helix", devs["rho"], devs)
    if devs["sigma"] < tol:
        return CurveClass("slant-helix", devs["sigma"], devs)
    return CurveClass("generic", devs["sigma"], devs)


# ---------------------------------------------------------------------------
# catalog


def line() -> AnalyticCurve:
    return AnalyticCurve(lambda t: (t, 0.0, 0.0), (-5.0, 5.0), name="line", unit_speed=True)


def circle(r: float = 1.0) -> AnalyticCurve:
    if not r > 0:
        raise ConstructionError("circle radius must be positive")
    return AnalyticCurve(
        lambda t: (r * np.cos(t / r), r * np.sin(t / r), 0.0),
        (0.0, 2 * math.pi * r), name=f"circle:r={r:g}", unit_speed=True,
    )


def helix(a: float = 2.0, b: float = 1.0) -> AnalyticCurve:
    """Unit-speed circular helix of radius ``a`` and pitch ``2 pi b``."""
    if not a > 0:
        raise ConstructionError("helix radius must be positive")
    c = math.hypot(a, b)
    return AnalyticCurve(
        lambda t: (a * np.cos(t / c), a * np.sin(t / c), b * t / c),
        (-10.0, 10.0), name=f"helix:a={a:g},b={b:g}", unit_speed=True,
    )


def slant_helix(sigma0: float = 0.3, *, step: float = 1e-3) -> FrenetCurve:
    """kappa = cos(sigma0 s), tau = sin(sigma0 s) on |sigma0 s| <= 1.5."""
    if not sigma0 > 0:
        raise ConstructionError("slant helix needs sigma > 0")
    half = 1.5 / sigma0
    return FrenetCurve(
        lambda s: np.cos(sigma0 * s), lambda s: np.sin(sigma0 * s),
        (-half, half), step=step, name=f"slant:sigma={sigma0:g}",
    )


def twisted_cubic(n_nodes: int = 256) -> ArcLengthCurve:
    raw = AnalyticCurve(lambda t: (t, t * t, t * t * t), (0.0, 1.0), name="twisted-cubic-raw")
    return ArcLengthCurve(raw, n_nodes, name="twisted-cubic")


def _parse_params(text: str) -> dict:
    out = {}
    for part in filter(None, text.split(",")):
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"bad curve parameter {part!r}")
        out[key.strip()] = float(val)
    return out


@functools.lru_cache(maxsize=32)
def parse_curve(spec: str) -> Curve:
    """Catalog entry (``helix:a=2,b=1`` ...) or path to a samples JSON file."""
    spec = spec.strip()
    if spec.endswith(".json") or Path(spec).is_file():
        return load_samples(spec)
    tag, _, rest = spec.partition(":")
    params = _parse_params(rest)
    makers = {
        "line": (line, ()),
        "circle": (circle, ("r",)),
        "helix": (helix, ("a", "b")),
        "slant": (slant_helix, ("sigma",)),
        "twisted-cubic": (twisted_cubic, ()),
    }
    if tag not in makers:
        raise ValueError(f"unknown curve {tag!r}; expected one of {sorted(makers)} or a .json file")
    maker, allowed = makers[tag]
    extra = set(params) - set(allowed)
    if extra:
        raise ValueError(f"curve {tag!r} takes no parameter(s) {sorted(extra)}")
    if tag == "slant":
        return maker(params.get("sigma", 0.3))
    return maker(**params)


def load_samples(path) -> SampledCurve:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "samples" not in doc:
        raise ConstructionError(f"{path}: expected an object with a 'samples' list")
    return SampledCurve(doc["samples"], name=Path(path).stem)


def export_samples(curve: Curve, n: int, path=None) -> dict:
    """Sample ``curve`` at ``n`` uniform parameters as ``{"samples": ...}``."""
    a, b = curve.domain
    rows = [[float(s), *map(float, curve(s))] for s in np.linspace(a, b, n)]
    doc = {"samples": rows}
    if path is not None:
        with open(path, "w") as fh:
            json.dump(doc, fh)
    return doc
