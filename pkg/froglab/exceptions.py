"""
FrogLab
Exceptions v1.0
20260911

Error hierarchy shared by the library and the CLI.

Exit codes used by the CLI:
    1  invariant violation found by verify
    2  invalid configuration
    3  horizon cap exhausted (partial results flagged)
    4  output / I/O failure
"""

from typing import Any, Dict, Optional


class FroglabError(Exception):
    """Base class for all FrogLab errors"""

    exit_code = 1


class ConfigError(FroglabError):
    """Configuration file missing, unparsable or invalid"""

    exit_code = 2


class HorizonExhausted(FroglabError):
    """
    Adaptive horizon doubling reached its cap without the destination
    being activated.
    """

    exit_code = 3

    def __init__(self, message: str, horizon: int, partial: bool = False):
        super().__init__(message)
        self.horizon = horizon
        self.partial = partial


class OutputError(FroglabError):
    """Results could not be written or read"""

    exit_code = 4


class ExactnessCapExceeded(ValueError):
    """An exact combinatorial search was asked for an instance above its cap"""

    def __init__(self, operation: str, requested: int, cap: int):
        super().__init__(
            f"{operation}: requested size {requested} exceeds exactness cap {cap}"
        )
        self.operation = operation
        self.requested = requested
        self.cap = cap


class InvariantViolation(FroglabError):
    """A hard invariant failed; carries a witness sufficient to replay it"""

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.witness = witness or {}
