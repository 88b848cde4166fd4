"""Exception types raised by the library."""


class JordanGeoError(Exception):
    """Base class for all library errors."""


class DegenerateInput(JordanGeoError):
    pass


class SimplicityViolation(JordanGeoError):
    """Raised when a vertex loop is not a simple polygon.

    ``edges`` holds the offending pair of edge indices, where edge ``i`` runs
    from vertex ``i`` to vertex ``i + 1`` of the (normalized) loop.
    """

    def __init__(self, message, edges=None):
        super().__init__(message)
        self.edges = edges


class InvalidParameter(JordanGeoError):
    pass


class PointOutsideDomain(JordanGeoError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class ArclengthOutOfRange(JordanGeoError):
    pass


class InvalidChord(JordanGeoError):
    pass


class DegenerateTriangle(JordanGeoError):
    pass


class InternalError(JordanGeoError):
    pass
