"""Exception hierarchy shared by all modules."""


class GeometryError(Exception):
    """Base class for every error raised by devgeom."""


class DomainError(GeometryError, ValueError):
    """A parameter value lies outside the domain of a curve or surface."""


class ConstructionError(GeometryError, ValueError):
    """A curve or surface cannot be built from the given input."""


class PreconditionError(GeometryError, ValueError):
    """An operation was called on input that violates its precondition."""


class ClassificationError(GeometryError, ValueError):
    """The sample set is degenerate (mixed defined/undefined frames)."""


class NumericError(GeometryError, ArithmeticError):
    """A computation produced or would produce a non-finite value."""


class FrameUndefinedError(NumericError):
    """Curvature is below the threshold where N, B and tau make sense."""

    def __init__(self, s, kappa):
        self.s = s
        self.kappa = kappa
        super().__init__(f"Frenet frame undefined at s={s!r} (kappa={kappa:.3e})")


class SingularPointError(NumericError):
    """K_s x K_v vanishes, so the unit normal is undefined."""

    def __init__(self, s, v, norm=0.0):
        self.s = s
        self.v = v
        self.norm = norm
        super().__init__(f"singular surface point at (s, v)=({s!r}, {v!r}), |K_s x K_v|={norm:.3e}")
