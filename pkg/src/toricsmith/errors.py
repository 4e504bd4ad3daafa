class ToricsmithError(Exception):
    """Base class for every error raised by the package."""


class ZeroVector(ToricsmithError):
    pass


class DimensionMismatch(ToricsmithError):
    pass


class NotSaturated(ToricsmithError):
    pass


class EmptyPolytope(ToricsmithError):
    pass


class UnboundedPolytope(ToricsmithError):
    pass


class NotFullDimensional(ToricsmithError):
    pass


class OriginNotInterior(ToricsmithError):
    pass


class BadWeights(ToricsmithError):
    pass


class TimeOutOfRange(ToricsmithError):
    pass


class InfeasibleWeights(ToricsmithError):
    """No positive relation among the normals: the input is not compact."""


class RankDeficient(ToricsmithError):
    pass


class NotSimple(ToricsmithError):
    pass


class CertificateCheckFailed(ToricsmithError):
    pass


class NotReflexiveCompanion(ToricsmithError):
    pass


class NoRelationFound(ToricsmithError):
    pass


class InputError(ToricsmithError):
    """Malformed input: unreadable file, bad JSON or a wrongly typed field."""


class InvalidPolytope(ToricsmithError):
    """Well-formed input that violates a polytope-file invariant."""
