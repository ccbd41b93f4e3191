"""Exception types shared across the package."""


class CatecError(Exception):
    """Base class for all package-specific errors."""


class InstanceTooLarge(CatecError):
    """Exhaustive enumeration was requested for an instance beyond the guard."""


class ParseError(CatecError):
    """A text input could not be parsed; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateNodeInEdge(ParseError):
    pass


class LabelOutOfRange(ParseError):
    pass


class InvalidNetwork(CatecError):
    """A flow network violates its structural invariants."""


class WrongArity(CatecError):
    """An operation restricted to size-2 edges received a larger hyperedge."""


class WrongCategoryCount(CatecError):
    """An operation restricted to a fixed number of categories got another."""


class WildcardUnsupported(CatecError):
    """Wildcard (label-0) edges are not handled by the requested operation."""


class InfeasibleLp(CatecError):
    """The LP solver reported infeasibility (internal error for well-formed input)."""


class IterationLimit(CatecError):
    """The LP solver hit its iteration limit before reaching optimality."""


class BadThreshold(CatecError):
    """A rounding threshold outside [1/2, 2/3] was supplied."""


class TooManyTuples(CatecError):
    """A synthetic hypergraph request would materialize too many edges."""


class FewerEdgesThanBins(CatecError):
    """Timestamp binning was asked for more bins than there are edges."""


class EmptyEdgeSet(CatecError):
    """A metric that normalizes by total edge weight got an edgeless instance."""


class LengthMismatch(CatecError):
    """Two label sequences being compared have different lengths."""


class NoInteriorEdges(CatecError):
    """Time-dispersion metric is undefined: no edge lies inside a single cluster."""
