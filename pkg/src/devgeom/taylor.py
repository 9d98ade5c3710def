"""Truncated Taylor series arithmetic (higher-order dual numbers).

A :class:`Taylor` holds normalized coefficients ``c[k] = f^(k)(x0) / k!`` of a
scalar or vector valued function around a point.  Arithmetic on these objects
propagates exact derivatives up to the truncation order, which is what the
curve and surface code uses to get kappa', tau'', sigma', D'' and friends
without finite differences.

The class implements ``__array_ufunc__`` for the common numpy ufuncs so that
user functions written with ``np.sin``/``np.cos``/... can be differentiated by
simply calling them on a :class:`Taylor` variable.
"""

from __future__ import annotations

import math

import numpy as np

from ._vec import cross3

__all__ = [
    "Taylor",
    "variable",
    "constant",
    "dot",
    "cross",
    "norm",
    "stack",
    "compose",
    "unit_speed",
]


def _factorials(n):
    return np.array([math.factorial(k) for k in range(n + 1)], dtype=float)


class Taylor:
    """Truncated power series ``sum_k c[k] * eps**k``.

    ``c`` has shape ``(order + 1,)`` for scalar series and ``(order + 1, 3)``
    for vector series.
    """

    __slots__ = ("c",)
    __array_priority__ = 1000

    def __init__(self, c):
        self.c = np.array(c, dtype=float)
        if self.c.ndim == 0:
            self.c = self.c.reshape(1)

    # -- construction / inspection -------------------------------------
    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def shape(self) -> tuple:
        return self.c.shape[1:]

    @property
    def value(self):
        return self.c[0]

    def derivatives(self) -> np.ndarray:
        """Return ``f^(k)(x0)`` for ``k = 0..order`` (un-normalized)."""
        fac = _factorials(self.order).reshape((-1,) + (1,) * len(self.shape))
        return self.c * fac

    def derivative(self, k: int):
        return self.c[k] * math.factorial(k)

    def truncate(self, order: int) -> "Taylor":
        return Taylor(self.c[: order + 1])

    def deriv(self) -> "Taylor":
        """Series of the derivative; the order drops by one."""
        if self.order == 0:
            raise ValueError("cannot differentiate an order-0 series")
        k = np.arange(1, self.order + 1, dtype=float).reshape((-1,) + (1,) * len(self.shape))
        return Taylor(self.c[1:] * k)

    def integral(self, c0=0.0) -> "Taylor":
        """Antiderivative with constant term ``c0``; the order grows by one."""
        k = np.arange(1, self.order + 2, dtype=float).reshape((-1,) + (1,) * len(self.shape))
        out = np.empty((self.order + 2,) + self.shape)
        out[0] = c0
        out[1:] = self.c / k
        return Taylor(out)

    def __repr__(self) -> str:
        return f"Taylor({self.c.tolist()!r})"

    def __len__(self):
        if not self.shape:
            raise TypeError("scalar Taylor series has no len()")
        return self.shape[0]

    def __getitem__(self, i) -> "Taylor":
        return Taylor(self.c[:, i])

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Taylor):
            return other
        other = np.asarray(other, dtype=float)
        c = np.zeros((self.order + 1,) + other.shape)
        c[0] = other
        return Taylor(c)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return Taylor(self.c[: n + 1] + other.c[: n + 1])

    __radd__ = __add__

    def __neg__(self):
        return Taylor(-self.c)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Taylor):
            other = np.asarray(other, dtype=float)
            if other.ndim == 0:
                return Taylor(self.c * other)
            other = self._coerce(other)
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Taylor):
            other = np.asarray(other, dtype=float)
            if other.ndim == 0:
                return Taylor(self.c / other)
            other = self._coerce(other)
        return _mul(self, other.reciprocal())

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, p):
        if isinstance(p, Taylor):
            return (p * self.log()).exp()
        if float(p) == int(p) and 0 <= int(p) <= 8:
            out = self._coerce(1.0)
            for _ in range(int(p)):
                out = out * self
            return out
        return self._rpow(float(p))

    def __rpow__(self, base):
        return (self * math.log(base)).exp()

    # -- elementary functions (scalar series only) ---------------------
    def _scalar(self):
        if self.shape:
            raise TypeError("operation defined for scalar series only")
        return self.c

    def reciprocal(self) -> "Taylor":
        a = self._scalar()
        if a[0] == 0.0:
            raise ZeroDivisionError("reciprocal of a series with zero constant term")
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for k in range(1, len(a)):
            b[k] = -np.dot(a[1 : k + 1], b[k - 1 :: -1][:k]) / a[0]
        return Taylor(b)

    def sqrt(self) -> "Taylor":
        a = self._scalar()
        if a[0] <= 0.0:
            raise ValueError("sqrt of a series needs a positive constant term")
        b = np.zeros_like(a)
        b[0] = math.sqrt(a[0])
        for k in range(1, len(a)):
            b[k] = (a[k] - np.dot(b[1:k], b[k - 1 : 0 : -1])) / (2.0 * b[0])
        return Taylor(b)

    def _rpow(self, p: float) -> "Taylor":
        a = self._scalar()
        if a[0] == 0.0:
            raise ValueError("non-integer power of a series with zero constant term")
        b = np.zeros_like(a)
        b[0] = a[0] ** p
        for k in range(1, len(a)):
            j = np.arange(1, k + 1)
            b[k] = np.sum(((p + 1.0) * j - k) * a[j] * b[k - j]) / (k * a[0])
        return Taylor(b)

    def exp(self) -> "Taylor":
        a = self._scalar()
        b = np.zeros_like(a)
        b[0] = math.exp(a[0])
        for k in range(1, len(a)):
            j = np.arange(1, k + 1)
            b[k] = np.sum(j * a[j] * b[k - j]) / k
        return Taylor(b)

    def log(self) -> "Taylor":
        a = self._scalar()
        if a[0] <= 0.0:
            raise ValueError("log of a series needs a positive constant term")
        b = np.zeros_like(a)
        b[0] = math.log(a[0])
        for k in range(1, len(a)):
            j = np.arange(1, k)
            b[k] = (a[k] - np.sum(j * b[j] * a[k - j]) / k) / a[0]
        return Taylor(b)

    def sincos(self):
        a = self._scalar()
        s = np.zeros_like(a)
        c = np.zeros_like(a)
        s[0], c[0] = math.sin(a[0]), math.cos(a[0])
        for k in range(1, len(a)):
            j = np.arange(1, k + 1)
            s[k] = np.sum(j * a[j] * c[k - j]) / k
            c[k] = -np.sum(j * a[j] * s[k - j]) / k
        return Taylor(s), Taylor(c)

    def sin(self):
        return self.sincos()[0]

    def cos(self):
        return self.sincos()[1]

    def tan(self):
        s, c = self.sincos()
        return s / c

    def sinh(self):
        e = self.exp()
        return (e - e.reciprocal()) * 0.5

    def cosh(self):
        e = self.exp()
        return (e + e.reciprocal()) * 0.5

    def arctan(self):
        a = self._scalar()
        d = (self * self + 1.0).reciprocal() * self.deriv()
        return d.integral(math.atan(a[0]))

    # -- numpy interop -------------------------------------------------
    _UFUNCS = {
        "add": lambda a, b: a + b,
        "subtract": lambda a, b: a - b,
        "multiply": lambda a, b: a * b,
        "true_divide": lambda a, b: a / b,
        "divide": lambda a, b: a / b,
        "power": lambda a, b: a ** b,
        "negative": lambda a: -a,
        "positive": lambda a: a,
        "square": lambda a: a * a,
        "sqrt": lambda a: a.sqrt(),
        "exp": lambda a: a.exp(),
        "log": lambda a: a.log(),
        "sin": lambda a: a.sin(),
        "cos": lambda a: a.cos(),
        "tan": lambda a: a.tan(),
        "sinh": lambda a: a.sinh(),
        "cosh": lambda a: a.cosh(),
        "arctan": lambda a: a.arctan(),
        "reciprocal": lambda a: a.reciprocal(),
    }

    def __array_ufunc__(self, ufunc, method, *inputs, **kwargs):
        if method != "__call__" or kwargs:
            return NotImplemented
        fn = self._UFUNCS.get(ufunc.__name__)
        if fn is None:
            return NotImplemented
        args = []
        for x in inputs:
            if isinstance(x, Taylor):
                args.append(x)
            else:
                x = np.asarray(x, dtype=float)
                if x.ndim:
                    return NotImplemented
                args.append(float(x))
        if len(args) == 2 and not isinstance(args[0], Taylor):
            a, b = args
            if ufunc.__name__ == "power":
                return b.__rpow__(a)
            return fn(b._coerce(a), b)
        return fn(*args)


def _mul(a: Taylor, b: Taylor) -> Taylor:
    n = min(a.order, b.order)
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros((n + 1,) + shape)
    for k in range(n + 1):
        for i in range(k + 1):
            out[k] = out[k] + a.c[i] * b.c[k - i]
    return Taylor(out)


def variable(x0: float, order: int) -> Taylor:
    """The identity function ``x`` expanded around ``x0``."""
    c = np.zeros(order + 1)
    c[0] = x0
    if order >= 1:
        c[1] = 1.0
    return Taylor(c)


def constant(x, order: int) -> Taylor:
    x = np.asarray(x, dtype=float)
    c = np.zeros((order + 1,) + x.shape)
    c[0] = x
    return Taylor(c)


def stack(components, order: int | None = None) -> Taylor:
    """Assemble a vector series from scalar series or plain numbers."""
    ts = [x for x in components if isinstance(x, Taylor)]
    if order is None:
        if not ts:
            raise ValueError("cannot infer the order of a series of constants")
        order = min(t.order for t in ts)
    cols = []
    for x in components:
        if isinstance(x, Taylor):
            cols.append(x.truncate(order).c)
        else:
            col = np.zeros(order + 1)
            col[0] = float(x)
            cols.append(col)
    return Taylor(np.stack(cols, axis=-1))


def dot(a: Taylor, b: Taylor) -> Taylor:
    n = min(a.order, b.order)
    out = np.zeros(n + 1)
    for k in range(n + 1):
        for i in range(k + 1):
            out[k] += np.dot(a.c[i], b.c[k - i])
    return Taylor(out)


def cross(a: Taylor, b: Taylor) -> Taylor:
    n = min(a.order, b.order)
    out = np.zeros((n + 1, 3))
    for k in range(n + 1):
        for i in range(k + 1):
            out[k] += cross3(a.c[i], b.c[k - i])
    return Taylor(out)


def norm(a: Taylor) -> Taylor:
    return dot(a, a).sqrt()


def compose(p: Taylor, q: Taylor) -> Taylor:
    """Series of ``p(q(eps))``; ``q`` must have a zero constant term."""
    if q.shape:
        raise TypeError("inner series must be scalar")
    if abs(q.c[0]) > 0.0:
        raise ValueError("inner series must vanish at eps=0")
    n = min(p.order, q.order)
    q = q.truncate(n)
    out = constant(p.c[n], n)
    for k in range(n - 1, -1, -1):
        out = out * q + p.c[k]
    return out


def unit_speed(p: Taylor) -> Taylor:
    """Re-expand a position series in arc length measured from eps=0.

    Solves ``dt/ds = 1/|p'(t)|`` order by order, then composes.
    """
    n = p.order
    dp = p.deriv()
    q = constant(0.0, n)
    for _ in range(n):
        speed = norm(compose(dp, q.truncate(n - 1)))
        q = speed.reciprocal().integral(0.0)
    return compose(p, q)
