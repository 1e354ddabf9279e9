"""Exception types shared across the library.

The CLI maps these onto its exit-code contract: precondition failures
exit with 2, precision exhaustion with 3, configuration problems with 4.
"""


class FiberscopeError(Exception):
    """Base class for all library errors."""


class PreconditionError(FiberscopeError):
    """A mathematical precondition of an operation is violated.

    Examples: a modulus that is not prime, a wildly ramified input,
    a fiber requested on the branch locus.
    """


class BelowPrecisionError(FiberscopeError):
    """A quantity is indistinguishable from zero at the working precision.

    Raised when a valuation, polygon or factorization cannot be certified
    at the current absolute precision.  Callers with a retry policy double
    the precision and try again before giving up.
    """


class ConfigError(FiberscopeError):
    """Malformed configuration: unknown options, bad cover files, invalid flags."""
