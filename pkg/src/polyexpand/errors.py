"""Exception hierarchy.

Structural non-decomposability is never an error (functions return None);
these are raised only for precondition violations and resource caps.
"""


class PolyExpandError(Exception):
    """Base class for all errors raised by this package."""


class TrivialDependence(PolyExpandError, ValueError):
    """A polynomial does not depend on both x and y."""


class DegenerateParameters(PolyExpandError, ValueError):
    """A curve parameter makes a section P(x, b) or Q(x, b) constant."""


class UnreachableCardinality(PolyExpandError):
    """Witness construction hit its cap before collecting n elements."""


class PrecisionExhausted(PolyExpandError):
    """Certified deduplication could not settle within the retry cap."""


class CertificateError(PolyExpandError, AssertionError):
    """A certificate failed to recompose to its source polynomial."""
