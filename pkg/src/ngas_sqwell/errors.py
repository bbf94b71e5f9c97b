"""Exception types raised by the solvers."""


class NgasError(Exception):
    """Base class for all package errors."""


class InvalidCoupling(NgasError, ValueError):
    """Couplings violate the sign/zero constraints of the chosen system."""


class NoPhysicalRoot(NgasError, ArithmeticError):
    """The variational cubic has no positive root (P = Q = 0)."""


class OutOfDomain(NgasError, ValueError):
    """A position lies outside the walls of the square well."""


class UnsupportedPower(NgasError, ValueError):
    """Only even powers x**2 and x**4 have matrix elements here."""


class QuadratureFailure(NgasError, ArithmeticError):
    """Numeric integration did not reach its absolute tolerance."""


class NotConverged(NgasError, ArithmeticError):
    """A series or grid refinement stopped before reaching its tolerance.

    The partially converged value is kept on ``result`` so callers can still
    report it alongside a flag.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ConfigTooSmall(NgasError, ValueError):
    """The reference box is too narrow for the requested eigenvalues."""
