"""Exception hierarchy shared by all bigeo modules."""


class BigeoError(Exception):
    """Base class for every error raised by the package."""

    # short tag used by the CLI when reporting failures
    category = "error"


class DomainError(BigeoError, ValueError):
    category = "domain"


class DivisionByGeometricZero(DomainError, ZeroDivisionError):
    """Geometric division by 1, the geometric zero."""

    category = "division-by-geometric-zero"


class EvaluationError(BigeoError, ValueError):
    """A user function returned a value outside R(G) at a probe point."""

    category = "evaluation"


class IndexOutOfRange(BigeoError, IndexError):
    category = "index"


class InvalidP(BigeoError, ValueError):
    category = "invalid-p"


class DimensionMismatch(BigeoError, ValueError):
    category = "dimension"


class DegenerateNodes(BigeoError, ValueError):
    category = "degenerate-nodes"


class ParseError(BigeoError, ValueError):
    category = "parse"
