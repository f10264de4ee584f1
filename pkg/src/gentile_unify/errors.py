"""Exception hierarchy shared by all modules."""


class GentileUnifyError(Exception):
    """Base class for errors raised by this package."""


class DomainError(GentileUnifyError, ValueError):
    """An argument lies outside the range where a formula is defined."""


class PreconditionError(GentileUnifyError, ValueError):
    """A required input (e.g. a chemical potential) is missing or inconsistent."""


class RegimeError(GentileUnifyError, ValueError):
    """The inputs fall outside the regime a formula was derived for."""


class SingularityError(GentileUnifyError, ZeroDivisionError):
    """A denominator vanishes within tolerance."""


class NoSolutionError(GentileUnifyError, ArithmeticError):
    """A root-find found no admissible root.

    The ``diagnostics`` mapping carries whatever the solver saw (brackets,
    residual curves) so callers can report it.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class QuadratureError(GentileUnifyError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
