"""Frenet apparatus, special developable surfaces and parameter-curve checks."""

from .curves import (
    AnalyticCurve,
    ArcLengthCurve,
    Curve,
    FrenetCurve,
    SampledCurve,
    classify_curve,
    eval_jet,
    frenet_apparatus,
    frenet_series,
    parse_curve,
    reparametrize_arclength,
    sigma,
)
from .errors import (
    ClassificationError,
    ConstructionError,
    DomainError,
    FrameUndefinedError,
    GeometryError,
    NumericError,
    PreconditionError,
    SingularPointError,
)
from .ruled import (
    RuledSurface,
    developability_derivative,
    eq32_residual,
    fundamental_forms,
    gaussian_from_forms,
    gaussian_ruled,
    is_developable,
    ruled_surface,
    surface_jet,
    unit_normal,
)
from .special import KINDS, closed_form_forms, closed_form_gaussian, make_special
from .classification import (
    CurveOnSurface,
    asymptotic_residual,
    geodesic_residual,
    line_of_curvature_residuals,
    thm4_ratio_check,
    verify_theorem,
)

__version__ = "0.1.0"
