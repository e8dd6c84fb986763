"""Exception types shared across the package.

The CLI maps these onto process exit codes: domain-type failures (bad
arguments, poles, capability and input problems) exit 2, convergence
failures exit 3, argparse usage failures exit 64.
"""

__all__ = [
    "PolyzetaError",
    "DomainError",
    "PoleError",
    "CapabilityError",
    "InputError",
    "BindingError",
    "ConvergenceError",
]


class PolyzetaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PolyzetaError, ValueError):
    """An argument is outside the documented domain of an operation."""


class PoleError(DomainError):
    """Evaluation was requested too close to a pole of the function."""


class CapabilityError(PolyzetaError):
    """The request is valid but exceeds what this build can deliver
    (for example more precision than the stored constants carry)."""


class InputError(DomainError):
    """A caller-supplied table or structure is malformed or incomplete."""


class BindingError(PolyzetaError, LookupError):
    """A numeric evaluation needed a constant that the binding lacks."""

    def __init__(self, symbol):
        self.symbol = symbol
        super().__init__(f"no value bound for constant symbol {symbol}")


class ConvergenceError(PolyzetaError, RuntimeError):
    """An iteration failed to meet its stopping rule within its budget.

    ``bracket`` carries the best enclosing interval found so far, when the
    failing iteration had one.
    """

    def __init__(self, message, bracket=None):
        self.bracket = bracket
        super().__init__(message)
