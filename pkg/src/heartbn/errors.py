"""Exception types shared across the package."""


class HeartBnError(Exception):
    """Base class for all heartbn errors."""


class CycleDetectedError(HeartBnError):
    """The edge set admits no topological order (includes self-loops)."""


class UnknownNodeError(HeartBnError):
    """A referenced node is not declared in the graph or network."""


class DuplicateEdgeError(HeartBnError):
    """The same directed edge was declared twice."""


class IncompleteAssignmentError(HeartBnError):
    """A full joint probability was requested for a partial assignment."""


class ZeroEvidenceError(HeartBnError):
    """The supplied evidence has probability exactly zero under the model."""


class SchemaMismatchError(HeartBnError):
    """Data columns do not cover the variables an operation needs."""


class InsufficientDataError(HeartBnError):
    """An independence test was attempted on effectively empty data."""


class MalformedRowError(HeartBnError):
    """A raw data row does not have the expected number of fields."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnknownCategoryError(HeartBnError):
    """A categorical cell holds a code outside the attribute's domain."""


class NonMonotoneCutpointsError(HeartBnError):
    """Discretization thresholds are not strictly increasing."""


class ConflictingOrientationWarning(UserWarning):
    """Both directions of an edge were forced during orientation."""
