"""Numerical toolkit for boundary limits of bounded holomorphic functions
on finite-type domains in C^2: boundary-point types, special/restricted
curve classification, admissible approach regions, Schwarz-lemma slice
bounds, and end-to-end limit-transfer scenarios."""

from .contact import (
    AnalyticDisc,
    ContactOrder,
    SeriesJet,
    compose_rho_disc,
    contact_order,
    point_type,
    tangent_line_disc,
)
from .curves import (
    DEFAULT_SCHEDULE,
    STOLZ_ALPHA_GRID,
    AdmissibleRegion,
    Capture,
    CurveClassification,
    ExponentCurve,
    PhaseLaw,
    SampledCurve,
    Verdict,
    classify,
    eventually_in_admissible,
    geometric_schedule,
    in_admissible,
    project_curve,
)
from .errors import (
    BadScenario,
    DegenerateSlice,
    InapplicableCurve,
    Lindelof2Error,
    NotOnBoundary,
    PointLeftDomain,
    ScenarioParseError,
    SingularPoint,
    TooFewSamples,
    TruncationTooSmall,
    TypeUnboundedAtSearchDepth,
    UnknownFunction,
)
from .geometry import (
    BoundaryFrame,
    ComplexPoint,
    DefiningFunction,
    DomainModel,
    Membership,
    boundary_frame,
    contains,
    egg_domain,
    eval_rho,
    hermitian_inner,
    perturbed_egg_domain,
    project_to_normal_line,
)
from .holo import BoundedHolomorphicFunction, catalog, catalog_names, eval_along
from .lindelof import (
    LimitEstimate,
    LimitStatus,
    OneVarCheck,
    Scenario,
    SchwarzCheck,
    SliceGeometry,
    VerificationReport,
    estimate_k,
    estimate_limit,
    one_var_lindelof_check,
    schwarz_gap_check,
    slice_disc_inside,
    slice_geometry,
    slice_radius,
    verify_theorem,
)

__version__ = "0.1.0"
