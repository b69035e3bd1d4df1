"""Exception hierarchy shared across the package."""


class KgflowError(Exception):
    """Base class for all kgflow errors."""


class InputError(KgflowError):
    """User input failed to parse or validate (CLI exit code 3)."""


class ExpressionSyntaxError(InputError):
    """Malformed expression text; carries the character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NonTrigTermError(InputError):
    """A bare x or y appeared outside a sin/cos argument."""

    def __init__(self, position):
        super().__init__(
            f"variable outside trig argument (at position {position})"
        )
        self.position = position


class NonLinearTrigArgumentError(InputError):
    """A trig argument did not normalize to pi*(m*x + n*y + c) with integer
    slopes and half-integer phase."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotPeriodicError(InputError):
    """Function has an odd frequency key, hence is not 1-periodic."""


class NotRealError(InputError):
    """Coefficients violate the conjugate-symmetry (reality) predicate."""


class MismatchedSeriesError(KgflowError):
    """Two coordinate series disagree in order or Hamiltonian."""


class BadConstantTermError(KgflowError):
    """Series inversion requires a constant term equal to one."""


class NoDegenerationError(KgflowError):
    """No degeneration found in the scanned time range (informative)."""


class StepFailureError(KgflowError):
    """The adaptive ODE integrator could not meet its tolerance."""
