"""Exceptions raised by the library.

Every error carries a human readable ``detail`` and the process ``exit_code``
the command line reports for it: 2 for usage, parse and guard problems, 1 for
property violations.
"""

USAGE_EXIT_CODE = 2
VIOLATION_EXIT_CODE = 1


class OimLabError(Exception):
    exit_code = USAGE_EXIT_CODE

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class EdgeListParseError(OimLabError):
    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line


class DimensionMismatchError(OimLabError):
    def __init__(self, expected: int, got: int, what: str = "vector"):
        super().__init__(f"{what} has length {got}, instance has n={expected}")
        self.expected = expected
        self.got = got


class GuardExceededError(OimLabError):
    def __init__(self, n: int, guard: int, hint: str = ""):
        message = f"n={n} exceeds the enumeration guard of {guard}"
        if hint:
            message = f"{message}; {hint}"
        super().__init__(message)
        self.n = n
        self.guard = guard


class InvalidParameterError(OimLabError):
    pass


class IntegrationError(OimLabError):
    exit_code = VIOLATION_EXIT_CODE

    def __init__(self, step: int):
        super().__init__(f"non-finite phase state at integration step {step}")
        self.step = step


class SingularJacobianError(OimLabError):
    exit_code = VIOLATION_EXIT_CODE


class MaxIterationsError(OimLabError):
    exit_code = VIOLATION_EXIT_CODE


class EigenConvergenceError(OimLabError):
    exit_code = VIOLATION_EXIT_CODE


class ResidualError(OimLabError):
    exit_code = VIOLATION_EXIT_CODE
