"""Exception hierarchy shared by all knotwkb modules."""


class KnotError(Exception):
    """Base class for every error raised by knotwkb."""


class MalformedInput(KnotError, ValueError):
    """Input text is not valid JSON or does not follow the schema."""


class InconsistentDiagram(KnotError, ValueError):
    """Diagram data violates a structural invariant."""


class BadIndex(KnotError, IndexError):
    """Component or crossing index out of range."""


class BadSite(KnotError, ValueError):
    """A rewrite site does not match the required local pattern."""


class RecursionBudgetExceeded(KnotError, RuntimeError):
    pass


class PoleAtZero(KnotError, ZeroDivisionError):
    pass


class CurvesTooClose(KnotError, ValueError):
    pass


class DegenerateSegments(KnotError, ValueError):
    pass


class EpsilonTooLarge(KnotError, ValueError):
    pass


class PointOnCurve(KnotError, ValueError):
    pass
