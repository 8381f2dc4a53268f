"""Shared exception types."""


class QuarticlogError(Exception):
    """Base class for all package errors."""


class ContextMismatchError(QuarticlogError):
    """Two polynomials do not share a variable context."""


class DegreeError(QuarticlogError):
    """An operation's degree precondition is violated."""


class ZeroPolynomialError(QuarticlogError):
    """The zero polynomial was passed where a nonzero one is required."""


class ExactDivisionError(QuarticlogError):
    """An exact polynomial division left a nonzero remainder."""


class ParseError(QuarticlogError):
    """Malformed polynomial or quartic text input."""


class SingularQuarticError(QuarticlogError):
    """A quartic failed its smoothness certificate.

    ``locus`` carries a description of a singular point when one was found.
    """

    def __init__(self, message, locus=None):
        super().__init__(message)
        self.locus = locus


class GenericityError(QuarticlogError):
    """A 'very general' certificate failed; ``reason`` names the rejection."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class DegenerateModulusError(QuarticlogError):
    """Cross-ratio / j-invariant input on the boundary (repeated points)."""


class UndefinedLocusError(QuarticlogError):
    """A modulus map is evaluated where it is undefined.

    ``cause`` is ``"flex locus"`` (contact order >= 3 on the line) or
    ``"tangency coincidence"`` (marked point equals a tangency point).
    """

    def __init__(self, message, cause):
        super().__init__(message)
        self.cause = cause


class CertificationError(QuarticlogError):
    """A rigorous validation failed (e.g. precision cap exhausted)."""
