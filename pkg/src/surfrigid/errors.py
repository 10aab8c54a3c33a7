"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the domain an operation accepts."""


class GraphError(ValueError):
    """A graph operation was given an invalid edge or vertex."""


class DegenerateConfigurationError(ValueError):
    """A point sits on the axis, the origin or the cone apex.

    ``vertex`` holds the offending vertex index when one is known.
    """

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class GenericityError(RuntimeError):
    """Random sampling failed to produce a realization with the expected rank."""


class CertificateRefused(ValueError):
    """A certificate route was requested whose hypotheses cannot hold."""
