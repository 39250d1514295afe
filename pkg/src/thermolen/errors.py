"""Exception hierarchy shared by the library and the CLI."""


class ThermolenError(Exception):
    """Base class for every error raised by thermolen."""


class DomainError(ThermolenError, ValueError):
    """A state point or volume lies outside the domain of the equation of state."""


class ConfigError(ThermolenError, ValueError):
    """Invalid or incomplete configuration."""


class UnsupportedOrderError(ThermolenError, ValueError):
    """No closed form exists for the requested expansion order."""


class StabilityError(ThermolenError):
    """Mechanical stability ((dp/dv)_T < 0) fails somewhere on the request.

    ``interval`` brackets the offending volumes when it is known.
    """

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class DegeneracyError(ThermolenError):
    """The metric has a (numerically) vanishing eigenvalue."""


class SignatureError(ThermolenError):
    """Operation requires a Lorentzian metric."""


class NullVectorError(ThermolenError, ValueError):
    """A vector of zero squared length (or the zero vector) where one is not allowed."""


class ConvergenceError(ThermolenError, ArithmeticError):
    """Adaptive quadrature failed to reach the requested tolerance."""
