"""Exception hierarchy shared across the package.

Every library-raised error derives from QccsError so callers can catch one
type; each leaf also derives from ValueError because all of them signal bad
input of some kind.  The CLI maps leaves to distinct exit codes.
"""

from __future__ import annotations


class QccsError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(QccsError, ValueError):
    """Invalid parameter or argument: bad (p, m, n, lambda), an out-of-range
    point or shift, or mismatched shapes between operands."""


class NotQuadraticError(QccsError, ValueError):
    """A variable graph was requested for a function of total degree > 2."""


class SuperpositionError(QccsError, ValueError):
    """Sequences with overlapping supports cannot be superposed."""


class SeedError(QccsError, ValueError):
    """A seed function fails certification (no uniform-weight spanning path
    on some restriction) or violates the layout a construction requires."""


class FormatError(QccsError, ValueError):
    """A file or document could not be parsed or fails schema validation."""
