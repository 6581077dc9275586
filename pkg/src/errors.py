"""
Slice Workbench - Error Types
Exceptions raised by the arithmetic and verification layers
"""


class WorkbenchError(Exception):
    """Base class for workbench failures that carry a payload error code"""

    code = "INTERNAL"
    user_message = "The computation failed unexpectedly."


class NotInvertibleError(WorkbenchError, ArithmeticError):
    """A power series or ring element that should be a unit is not"""

    code = "NOT_INVERTIBLE"
    user_message = "A series with a non-unit linear coefficient cannot be inverted."


class NonIntegralError(WorkbenchError, ArithmeticError):
    """A value expected in Z[zeta_8] still carries a denominator"""

    code = "NON_INTEGRAL"
    user_message = "An exported value was not integral; this is an arithmetic bug."


class ConsistencyError(WorkbenchError, AssertionError):
    """An internal cross-check failed (d^2 != 0, E-infinity mismatch, ...)"""

    code = "CONSISTENCY"
    user_message = "An internal consistency check failed."
