"""Exception hierarchy shared by every module of the package."""


class XHermiteError(ValueError):
    """Base class for all errors raised by xhermite."""


class NonIncreasingViolation(XHermiteError):
    pass


class NonPositivePart(XHermiteError):
    pass


class DegreeMismatch(XHermiteError):
    pass


class InadmissibleDegree(XHermiteError):
    pass


class NotSquarefree(XHermiteError):
    pass


class NonConvergence(XHermiteError):
    pass


class CountMismatch(XHermiteError):
    pass


class MatchingAmbiguous(XHermiteError):
    pass


class DegenerateDistance(XHermiteError):
    pass


class CoincidentPoints(XHermiteError):
    pass


class PointAtPoleOfW(XHermiteError):
    pass


class RealExceptionalZero(XHermiteError):
    pass


class PartitionMismatch(XHermiteError):
    pass


class SingularBlock(XHermiteError):
    pass


class BlockShapeMismatch(XHermiteError):
    pass


class NotSymmetric(XHermiteError):
    pass


class PoleOfDnu(XHermiteError):
    pass


class PoleProximity(XHermiteError):
    pass


class DegenerateFit(XHermiteError):
    pass


class ConfigError(XHermiteError):
    pass
