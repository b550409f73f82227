"""Exception types shared across the package."""


class NumericError(RuntimeError):
    """An iterative numerical routine failed to deliver its accuracy contract.

    Raised by eigensolvers, power iterations and LP solves when the iteration
    cap is hit or the backend reports non-convergence.  The message carries
    whatever partial diagnostics are available.
    """


class InvalidCertificateError(ValueError):
    """A claimed decomposition certificate does not reproduce its instance."""
