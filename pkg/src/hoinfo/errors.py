"""Exception hierarchy for hoinfo.

Everything derives from :class:`HoinfoError` so callers can catch the whole
family at once. The CLI maps these onto its exit-code contract (numerical
failures, usage errors, data errors).
"""


class HoinfoError(Exception):
    """Base class for all hoinfo errors."""


# --- numerical failures ---------------------------------------------------

class SingularSubmatrix(HoinfoError):
    """Cholesky factorization failed: the selected submatrix is not positive definite."""


class NonPositiveVariance(HoinfoError):
    """Gaussian entropy requires a strictly positive variance."""


class PerfectCorrelation(HoinfoError):
    """|rho| >= 1 has infinite Gaussian mutual information."""


# --- subset / arity errors ------------------------------------------------

class InvalidSubset(HoinfoError, ValueError):
    """Subset indices are empty, duplicated, or out of range."""


class SubsetTooSmall(HoinfoError, ValueError):
    """The measure is undefined below its minimum subset size."""


class SubsetTooLarge(HoinfoError, ValueError):
    """Requested subset size exceeds the system size."""


class WrongArity(HoinfoError, ValueError):
    """Operation is defined for exactly one subset size (e.g. co-information at 3)."""


class ExactLimitExceeded(HoinfoError):
    """Exhaustive enumeration was requested beyond the configured size limit."""


class IndexOverlap(HoinfoError, ValueError):
    """Variable index appears on both sides of a conditional measure."""


# --- data / input errors --------------------------------------------------

class InvalidDistribution(HoinfoError, ValueError):
    """Probability table violates non-negativity, normalization, or size limits."""


class ParseError(HoinfoError):
    """Input file could not be parsed; message names the offending row/column."""


class EmptyInput(HoinfoError, ValueError):
    """Operation requires at least one element."""


class ZeroVariance(HoinfoError):
    """A node's time series is constant; its correlations are undefined."""


class ShapeMismatch(HoinfoError, ValueError):
    """Inputs disagree on dimension, node order, or record shape."""


class IrreparableMatrix(HoinfoError):
    """Matrix is still not positive definite after shrinkage repair."""


class UnknownNode(HoinfoError, ValueError):
    """Label file and matrix node names do not match up."""


class DuplicateNode(HoinfoError, ValueError):
    """A node appears more than once in a label file."""


class InfeasibleStratum(HoinfoError, ValueError):
    """No combination of systems can host the requested stratified subset."""


class EmptyAfterFilter(HoinfoError, ValueError):
    """No records qualify after applying the filter predicate."""


class LengthMismatch(HoinfoError, ValueError):
    """Paired vectors have different lengths."""


class DegenerateInput(HoinfoError, ValueError):
    """Rank correlation is undefined for a constant vector."""


class LabelMismatch(HoinfoError, ValueError):
    """Node labels do not cover the nodes of the table/matrix."""
