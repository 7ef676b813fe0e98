"""Exception types shared across the toolkit."""


class Lindelof2Error(Exception):
    """Base class for all toolkit errors."""


class NotOnBoundary(Lindelof2Error):
    """A point claimed to lie on the boundary does not satisfy |rho| <= tol."""


class SingularPoint(Lindelof2Error):
    """The defining-function gradient vanishes where a frame was requested."""


class TruncationTooSmall(Lindelof2Error):
    """Requested jet truncation cannot witness a nonzero term."""


class TypeUnboundedAtSearchDepth(Lindelof2Error):
    """Jet cancellation succeeded up to the truncation limit; the contact
    order may be infinite or the search bound is too small."""


class TooFewSamples(Lindelof2Error):
    """A numeric verdict was requested with fewer than the minimum number
    of samples in the tail window."""


class UnknownFunction(Lindelof2Error):
    """Catalog lookup with an id that does not exist."""


class PointLeftDomain(Lindelof2Error):
    """A curve or slice point failed the domain membership check."""

    def __init__(self, t, point, message=""):
        self.t = t
        self.point = point
        super().__init__(message or f"point left the domain at t={t!r}")


class DegenerateSlice(Lindelof2Error):
    """The tangential displacement |Gamma(t)-gamma(t)| is numerically zero,
    so the slice disc is unbounded."""


class InapplicableCurve(Lindelof2Error):
    """A one-variable comparison was requested for a curve that has a
    tangential component or a tangential normal projection."""


class BadScenario(Lindelof2Error):
    """A theorem scenario violates a hypothesis (base curve not restricted,
    or the function does not converge along it)."""

    def __init__(self, reason, report=None):
        self.reason = reason
        self.report = report
        super().__init__(reason)


class ScenarioParseError(Lindelof2Error):
    """Scenario file rejected; carries the offending line and field."""

    def __init__(self, line_no, field, message):
        self.line_no = line_no
        self.field = field
        super().__init__(f"line {line_no}, field {field!r}: {message}")
