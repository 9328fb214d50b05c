"""Exception hierarchy shared by all betti modules.

Every class carries the process ``exit_code`` the CLI returns for it:
``1`` for bad input, ``2`` for numerical failures and ``3`` for identity
violations.
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class BettiError(Exception):
    """Base exception for betti operations."""

    exit_code = 1

    def __init__(self, message: str, **context: Any):
        self.context: Dict[str, Any] = dict(context)
        super().__init__(message)


class InputError(BettiError):
    """Invalid user input."""

    exit_code = 1


class ExpressionParseError(InputError):
    """Raised when an expression cannot be parsed."""

    def __init__(self, text: str, position: int, reason: str):
        self.text = text
        self.position = position
        self.line = text.count("\n", 0, position) + 1
        self.column = position - (text.rfind("\n", 0, position) + 1) + 1
        self.reason = reason
        msg = f"cannot parse expression at line {self.line}, column {self.column}: {reason}"
        super().__init__(msg, text=text, line=self.line, column=self.column)


class JobSpecError(InputError):
    """Raised when a job file is not valid JSON or violates the job schema."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"invalid job specification{where}: {message}", line=line, column=column)


class SingularModelError(InputError):
    """Raised when ``4A^3 + 27B^2`` vanishes identically."""


class OffCurveError(InputError):
    """Raised when a point does not satisfy the Weierstrass equation."""


class PlaceError(InputError):
    """Raised for malformed places and undefined valuations."""


class CoverCollisionError(InputError):
    """Raised when a cover is branched over a bad place."""

    def __init__(self, branch_value: str, place: str):
        self.branch_value = branch_value
        self.place = place
        super().__init__(
            f"cover is branched over the bad place {place} (branch value {branch_value})",
            branch_value=branch_value,
            place=place,
        )


class TorsionPointError(InputError):
    """Raised when a torsion section is supplied where infinite order is required."""

    def __init__(self, order: int):
        self.order = order
        super().__init__(f"section is torsion of order {order}", order=order)


class RatFuncZeroDivisionError(BettiError, ZeroDivisionError):
    """Division of a rational function by zero."""


class NumericalError(BettiError):
    """Numerical routines failed to reach the requested accuracy."""

    exit_code = 2


class NoConvergenceError(NumericalError):
    """Raised when an iteration hits its cap before converging."""

    def __init__(self, routine: str, iterations: int, residual: float, **context: Any):
        self.routine = routine
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"{routine} did not converge after {iterations} iterations (residual {residual:.3e})",
            routine=routine,
            iterations=iterations,
            residual=residual,
            **context,
        )


class BranchTrackingError(NumericalError):
    """Raised when analytic continuation of periods or logarithms jumps."""


class ContourRefinementError(NumericalError):
    """Raised when a contour cannot be sampled finely enough."""


class NearSingularFiberError(NumericalError):
    """Raised when an evaluation point lies numerically on a singular fiber."""


class IdentityViolation(BettiError):
    """A checked identity or consistency condition failed."""

    exit_code = 3


class InvariantMismatchError(IdentityViolation):
    """Two computations of the same invariant disagree."""

    def __init__(self, name: str, expected: Any, actual: Any):
        self.name = name
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{name}: expected {expected}, got {actual}",
            name=name,
            expected=expected,
            actual=actual,
        )


class ClassificationError(IdentityViolation):
    """Raised when a valuation triple matches no Kodaira type."""

    def __init__(self, ord_c4: Optional[int], ord_c6: Optional[int], ord_delta: int):
        self.ord_c4 = ord_c4
        self.ord_c6 = ord_c6
        self.ord_delta = ord_delta
        super().__init__(
            f"inconsistent valuations (c4={ord_c4}, c6={ord_c6}, delta={ord_delta})",
            ord_c4=ord_c4,
            ord_c6=ord_c6,
            ord_delta=ord_delta,
        )


class MinimalizationError(IdentityViolation):
    """Raised when the minimal discriminant degree is not divisible by 12."""


class ComponentUndeterminedError(IdentityViolation):
    """Raised when the component met by a section cannot be decided."""
