"""Exception hierarchy shared by all stripcert modules.

Every mathematically meaningful failure gets its own class so that callers
(and the command line front end) can react to the *reason*, not to message
strings.  Exceptions that carry structured payloads (a witness point, a
search trace, a hypothesis report) store them as attributes.
"""


class StripcertError(Exception):
    """Base class for all stripcert errors."""


class ZeroPolynomial(StripcertError):
    """An operation that requires a nonzero polynomial received zero."""


class InvalidTarget(StripcertError):
    """Requested homogenization degree is below the actual Y-degree."""


class NotHomogeneous(StripcertError):
    """Input polynomial is not homogeneous where homogeneity is required."""


class PolyParseError(StripcertError):
    """Syntax error in the text form of a polynomial.

    Attributes:
        pos: 0-based character offset of the offending token.
    """

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownVariable(StripcertError):
    """A variable name outside the allowed set appeared in parsed text."""

    def __init__(self, name, pos, allowed):
        super().__init__(
            f"unknown variable {name!r} (allowed: {', '.join(allowed)}) at position {pos}"
        )
        self.name = name
        self.pos = pos


class OddDegreeY(StripcertError):
    """The Polya route requires an even Y-degree."""


class InvalidBound(StripcertError):
    """A search bound (for example N_max) is negative or otherwise unusable."""


class DegreeTooSmall(StripcertError):
    """deg_X f < 2: the Polya exponent bound does not apply, use the
    low-degree constructions instead."""


class NotPositive(StripcertError):
    """A quantity that must be strictly positive is not."""


class NotNonnegative(StripcertError):
    """A polynomial required to be nonnegative (on R or on a boundary line)
    is not.  ``witness`` optionally holds a rational point with a negative
    value."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotNonnegativeOn01(StripcertError):
    """A univariate polynomial required to be nonnegative on [0,1] is not."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NumericRequired(StripcertError):
    """Exact mode was requested but the computation needs floating point
    root finding (irrational roots or touching points)."""


class PolyaNotFound(StripcertError):
    """Incremental search exhausted N_max without all coefficients becoming
    nonnegative.  ``trace`` is a list of (N, failing_index) pairs."""

    def __init__(self, n_max, trace):
        super().__init__(f"no valid Polya exponent N <= {n_max}")
        self.n_max = n_max
        self.trace = trace


class HypothesisViolated(StripcertError):
    """The input violates a hypothesis of the selected pipeline.
    ``report`` holds the HypothesisReport when available."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParityMismatch(StripcertError):
    """The cone parameters d, e differ in parity; the extreme-ray
    characterization does not apply."""


class InternalInvariant(StripcertError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class FormatError(StripcertError):
    """A certificate file is malformed (bad JSON or missing fields)."""
