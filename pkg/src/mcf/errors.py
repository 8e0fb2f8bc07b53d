"""Exception hierarchy. Every class carries a distinct process exit code
so the CLI can map failures deterministically."""


class McfError(Exception):
    exit_code = 1


class InvalidSurdError(McfError):
    """Rejected surd construction (d <= 0 or r = 0)."""

    exit_code = 10


class CrossFieldError(McfError):
    """Exact arithmetic attempted between distinct quadratic fields."""

    exit_code = 11


class HorizonExceededError(McfError):
    """Period not detected within the allowed number of quotients."""

    exit_code = 12


class FiniteExpansionError(McfError):
    """A finite continued fraction ran out of quotients."""

    exit_code = 13


class FiniteChainError(McfError):
    """Chain construction requested for a rational number."""

    exit_code = 14


class InsufficientHorizonError(McfError):
    """Built data does not cover the requested index or t range."""

    exit_code = 15


class PoleError(McfError):
    """Evaluation at a pole of a two-variable form."""

    exit_code = 16


class NotDefinedError(McfError):
    """Limit quantity requested for a rational input."""

    exit_code = 17


class UndecidedError(McfError):
    """Interval refinement hit its precision cap without separating values."""

    exit_code = 18


class NotApplicableError(McfError):
    """Inputs fail a structural precondition (e.g. linear dependence)."""

    exit_code = 19


class InvalidSequenceError(McfError):
    """Generator sequence violates its monotonicity requirements."""

    exit_code = 20


class InternalConsistencyError(McfError):
    """Two independent exact routes disagreed; aborting is safer than warning."""

    exit_code = 21


class EqualInputsError(McfError):
    """Comparison of a number with itself produces an identically zero difference."""

    exit_code = 22


class LiteralParseError(McfError):
    """Malformed number or word literal."""

    exit_code = 23
