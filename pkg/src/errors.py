"""
Error types and exception classes with Rich formatting support.
"""

from enum import Enum
from typing import Any, Optional

from rich.console import Console
from rich.text import Text


class ValidationErrorType(Enum):
    """Input errors: malformed specs, graphs, matrices and parameters."""

    # Degree specs
    DEGREE_SUM_MISMATCH = "degree_sum_mismatch"
    INTEGRALITY_VIOLATION = "integrality_violation"
    NEGATIVE_DEGREE = "negative_degree"
    NOT_STRICT = "not_strict"
    EMPTY_DEGREES = "empty_degrees"
    NON_POSITIVE_SIZE = "non_positive_size"

    # Graphs and matrices
    SHAPE_MISMATCH = "shape_mismatch"
    LENGTH_MISMATCH = "length_mismatch"
    INVALID_COLOUR = "invalid_colour"
    DUPLICATE_EDGE = "duplicate_edge"
    EDGE_OUT_OF_RANGE = "edge_out_of_range"
    NOT_SEMIREGULAR = "not_semiregular"
    INVALID_PERMUTATION = "invalid_permutation"
    GRAPH_FILE = "graph_file"

    # Formula arguments
    NON_INTEGRAL = "non_integral"
    K_OUT_OF_RANGE = "k_out_of_range"
    DEGENERATE_DENSITY = "degenerate_density"
    INVALID_DENSITY = "invalid_density"
    HYPOTHESIS_VIOLATED = "hypothesis_violated"
    ZERO_DENOMINATOR = "zero_denominator"
    INVALID_ARGUMENT = "invalid_argument"


class LimitErrorType(Enum):
    """Resource guards on exact computations."""

    STATE_BUDGET = "state_budget"
    TIME_BUDGET = "time_budget"
    TOO_LARGE = "too_large"


def get_validation_error_message(error_type: ValidationErrorType) -> str:
    """Get the descriptive error message for a validation error type."""
    messages = {
        ValidationErrorType.DEGREE_SUM_MISMATCH: "Factor degrees do not sum to n",
        ValidationErrorType.INTEGRALITY_VIOLATION: "V2-side degree is not an integer",
        ValidationErrorType.NEGATIVE_DEGREE: "Negative factor degree",
        ValidationErrorType.NOT_STRICT: "Non-complement factor has degree zero",
        ValidationErrorType.EMPTY_DEGREES: "Degree list is empty",
        ValidationErrorType.NON_POSITIVE_SIZE: "Part sizes must be positive",

        ValidationErrorType.SHAPE_MISMATCH: "Shape mismatch",
        ValidationErrorType.LENGTH_MISMATCH: "Permutation length mismatch",
        ValidationErrorType.INVALID_COLOUR: "Colour index out of range",
        ValidationErrorType.DUPLICATE_EDGE: "Duplicate edge",
        ValidationErrorType.EDGE_OUT_OF_RANGE: "Edge endpoint out of range",
        ValidationErrorType.NOT_SEMIREGULAR: "Graph is not semiregular",
        ValidationErrorType.INVALID_PERMUTATION: "Not a permutation",
        ValidationErrorType.GRAPH_FILE: "Cannot read graph file",

        ValidationErrorType.NON_INTEGRAL: "Argument must be an integer",
        ValidationErrorType.K_OUT_OF_RANGE: "Number of factors out of range",
        ValidationErrorType.DEGENERATE_DENSITY: "Density must lie strictly between 0 and 1",
        ValidationErrorType.INVALID_DENSITY: "Density out of range",
        ValidationErrorType.HYPOTHESIS_VIOLATED: "Hypothesis of the summation bound violated",
        ValidationErrorType.ZERO_DENOMINATOR: "Denominator count is zero",
        ValidationErrorType.INVALID_ARGUMENT: "Invalid argument",
    }
    return messages.get(error_type, "Invalid input")


def get_validation_error_advice(error_type: ValidationErrorType) -> str:
    """Get helpful advice for fixing a validation error."""
    advice = {
        ValidationErrorType.DEGREE_SUM_MISMATCH: "The V1-side degrees s0,...,sk must add up to n",
        ValidationErrorType.INTEGRALITY_VIOLATION: "Each s_i*m must be divisible by n",
        ValidationErrorType.NEGATIVE_DEGREE: "Degrees must be nonnegative integers",
        ValidationErrorType.NOT_STRICT: "Drop the zero factor or disable strict mode",
        ValidationErrorType.EMPTY_DEGREES: "Pass at least one degree, e.g. --degrees 1,1",
        ValidationErrorType.NON_POSITIVE_SIZE: "Use m >= 1 and n >= 1",

        ValidationErrorType.SHAPE_MISMATCH: "Both arguments must live on the same (m, n)",
        ValidationErrorType.LENGTH_MISMATCH: "sigma needs length m and tau needs length n",
        ValidationErrorType.INVALID_COLOUR: "Colours must lie in 0..k",
        ValidationErrorType.DUPLICATE_EDGE: "List every edge once",
        ValidationErrorType.EDGE_OUT_OF_RANGE: "Use 0-based indices with i < m and j < n",
        ValidationErrorType.NOT_SEMIREGULAR: "All V1 degrees and all V2 degrees must be equal",
        ValidationErrorType.INVALID_PERMUTATION: "Each index must appear exactly once",
        ValidationErrorType.GRAPH_FILE: 'Expected JSON {"m": int, "n": int, "edges": [[i, j], ...]}',

        ValidationErrorType.NON_INTEGRAL: "Choose parameters that make the product an integer",
        ValidationErrorType.K_OUT_OF_RANGE: "Check the allowed range of k for this formula",
        ValidationErrorType.DEGENERATE_DENSITY: "Every factor needs at least one edge per vertex",
        ValidationErrorType.INVALID_DENSITY: "Densities must lie in [0, 1]",
        ValidationErrorType.HYPOTHESIS_VIOLATED: "Adjust A, B or c-hat so that every precondition holds",
        ValidationErrorType.ZERO_DENOMINATOR: "No graph of the combined density exists for these sizes",
        ValidationErrorType.INVALID_ARGUMENT: "Check the argument against the operation's preconditions",
    }
    return advice.get(error_type, "Check the input")


def get_limit_error_message(error_type: LimitErrorType) -> str:
    """Get the descriptive error message for a limit error type."""
    messages = {
        LimitErrorType.STATE_BUDGET: "State budget exceeded",
        LimitErrorType.TIME_BUDGET: "Time budget exceeded",
        LimitErrorType.TOO_LARGE: "Enumeration too large",
    }
    return messages.get(error_type, "Limit exceeded")


def get_limit_error_advice(error_type: LimitErrorType) -> str:
    """Get helpful advice for fixing a limit error."""
    advice = {
        LimitErrorType.STATE_BUDGET: "Raise --max-states or use a smaller instance",
        LimitErrorType.TIME_BUDGET: "Raise --seconds or SEMIFACTOR_BUDGET_SECS",
        LimitErrorType.TOO_LARGE: "Exhaustive oracles only run at desk scale",
    }
    return advice.get(error_type, "Use a smaller instance")


class SemifactorError(Exception):
    """Base class for all errors raised by the library."""

    category = "error"

    def __init__(
        self,
        message: str,
        error_type: Optional[Enum] = None,
        context: Optional[str] = None,
        details: Optional[dict[str, Any]] = None,
    ):
        self.message = message
        self.error_type = error_type
        self.context = context
        self.details = details or {}
        super().__init__(self._format_message())

    def _format_message(self) -> str:
        if self.context:
            return f"{self.message}: {self.context}"
        return self.message

    @property
    def hint(self) -> Optional[str]:
        return None

    def to_dict(self) -> dict[str, Any]:
        """Machine-readable form used by the CLI error payload."""
        return {
            "category": self.category,
            "type": self.error_type.value if self.error_type else type(self).__name__,
            "message": str(self),
            "hint": self.hint,
            "details": self.details,
        }

    def display(self, console: Optional[Console] = None) -> None:
        """Display this error with rich formatting."""
        ErrorFormatter(console).format_error(self)


class ValidationError(SemifactorError):
    """Rejected input: spec, graph, matrix or formula argument."""

    category = "validation"

    @classmethod
    def from_type(
        cls,
        error_type: ValidationErrorType,
        context: Optional[str] = None,
        custom_message: Optional[str] = None,
        **details: Any,
    ) -> "ValidationError":
        """Create a ValidationError from an error type."""
        message = custom_message or get_validation_error_message(error_type)
        return cls(message, error_type, context, details)

    @property
    def hint(self) -> Optional[str]:
        if isinstance(self.error_type, ValidationErrorType):
            return get_validation_error_advice(self.error_type)
        return None


class LimitError(SemifactorError):
    """An exact computation hit a guard. Never silently approximated."""

    category = "budget"

    @property
    def hint(self) -> Optional[str]:
        if isinstance(self.error_type, LimitErrorType):
            return get_limit_error_advice(self.error_type)
        return None


class BudgetExceeded(LimitError):
    """The DP state budget or wall-time budget ran out."""

    def __init__(
        self,
        error_type: LimitErrorType,
        states_explored: int,
        elapsed_seconds: float,
        context: Optional[str] = None,
    ):
        self.states_explored = states_explored
        self.elapsed_seconds = elapsed_seconds
        super().__init__(
            get_limit_error_message(error_type),
            error_type,
            context,
            {"states_explored": states_explored, "elapsed_seconds": round(elapsed_seconds, 3)},
        )


class TooLargeError(LimitError):
    """An exhaustive enumeration exceeds its size guard."""

    def __init__(self, size: int, limit: int, context: Optional[str] = None):
        self.size = size
        self.limit = limit
        super().__init__(
            get_limit_error_message(LimitErrorType.TOO_LARGE),
            LimitErrorType.TOO_LARGE,
            context,
            {"size": str(size), "limit": str(limit)},
        )


class ErrorFormatter:
    """Rich-based error formatter."""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console(stderr=True)

    def format_error(self, error: SemifactorError) -> None:
        error_msg = Text()
        error_msg.append("error", style="red bold")
        error_msg.append(": ", style="red")
        error_msg.append(error.message, style="red")
        if error.context:
            error_msg.append(f" ({error.context})", style="dim white")
        self.console.print(error_msg)

        for key, value in error.details.items():
            detail = Text()
            detail.append(f"  {key}", style="yellow")
            detail.append(f" = {value}", style="white")
            self.console.print(detail)

        if error.hint:
            advice_msg = Text()
            advice_msg.append("hint", style="cyan bold")
            advice_msg.append(": ", style="cyan")
            advice_msg.append(error.hint, style="cyan dim")
            self.console.print(advice_msg)


def display_error(error: SemifactorError, console: Optional[Console] = None) -> None:
    """Convenience function to display any library error with rich formatting."""
    error.display(console)
