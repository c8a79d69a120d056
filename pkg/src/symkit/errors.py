"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific class that applies rather than bare ValueError.
"""


class SymkitError(Exception):
    """Base class for all package errors."""


class InvalidInput(SymkitError):
    """Malformed user input: bad file, bad schema, bad argument combination."""


class EmptyInput(InvalidInput):
    """A construction was asked to build a body from no points."""


class Empty(SymkitError):
    """A halfspace system has no feasible point."""


class Unbounded(SymkitError):
    """A halfspace system has a feasible but unbounded region."""


class Unsupported(SymkitError):
    """A parameter combination outside the implemented range (dims, subspace pairs, grids)."""


class InvalidSubspace(InvalidInput):
    """Subspace parameters are inconsistent with the ambient dimension."""


class InvalidM(InvalidInput):
    """Gauge polygon M violates its contract (not in the first quadrant, or not swap-symmetric)."""


class OriginNotInside(SymkitError):
    """Operation needs the origin inside the body and it is not."""


class Degenerate(SymkitError):
    """Body is lower-dimensional where full dimension is required."""


class CapExceeded(SymkitError):
    """Vertex count exceeded the configured cap during iteration.

    Carries the partial trajectory so callers can persist what was computed.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory
