"""Exception taxonomy shared across the toolkit.

Each class maps to one CLI exit code, see `hopf_moduli.cli.EXIT_CODES`.
"""


class HopfModuliError(Exception):
    """Base class for all toolkit errors."""


class ParseError(HopfModuliError):
    """Malformed input document (JSON syntax, schema, missing fields)."""


class InvariantViolation(HopfModuliError):
    """A computed object failed one of its structural invariants."""


class PrecisionError(InvariantViolation):
    """A numerical target could not be met at the available precision."""


class PreconditionError(HopfModuliError):
    """Operation called on inputs outside its stated domain."""


class BudgetExhausted(HopfModuliError):
    """Search/certification budget ran out; retryable, never a negative claim."""


class SingularCurveError(HopfModuliError):
    """Spectral curve is singular (or undefined): Jacobian data unavailable."""
