"""Exception hierarchy shared by all modules."""


class HypereigError(Exception):
    """Base class for every error raised by this package."""


class InvalidHypergraph(HypereigError, ValueError):
    pass


class EdgeWrongSize(InvalidHypergraph):
    pass


class VertexOutOfRange(InvalidHypergraph):
    pass


class DuplicateEdge(InvalidHypergraph):
    pass


class EdgeIndexOutOfRange(HypereigError, IndexError):
    pass


class DisconnectedInput(HypereigError, ValueError):
    pass


class NoEdges(HypereigError, ValueError):
    pass


class InfeasibleParameters(HypereigError, ValueError):
    pass


class InvalidParameters(HypereigError, ValueError):
    pass


class DimensionMismatch(HypereigError, ValueError):
    pass


class NotNormalized(HypereigError, ValueError):
    pass


class NotConverged(HypereigError, ValueError):
    pass


class NonPositiveDenominator(HypereigError, ValueError):
    pass


class BoundInapplicable(HypereigError, ValueError):
    pass


class MaxIterationsExceeded(HypereigError, RuntimeError):
    """Power iteration ran out of iterations.

    The best Collatz-Wielandt bracket seen so far is kept on the exception
    so callers can still report an enclosure of the spectral radius.
    """

    def __init__(self, iterations, lambda_lo, lambda_hi, x=None):
        super().__init__(
            f"no convergence after {iterations} iterations; "
            f"bracket [{lambda_lo!r}, {lambda_hi!r}]"
        )
        self.iterations = iterations
        self.lambda_lo = lambda_lo
        self.lambda_hi = lambda_hi
        self.x = x


class ParseError(HypereigError, ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
