from typing import Any, Dict, Optional, Sequence, Tuple


class QsmError(Exception):
    """Base class for every error raised by qsm_multipliers.

    ``exit_code`` is what the CLI returns when the error reaches it.
    """

    exit_code: int = 1


class ConfigError(QsmError):
    exit_code = 1


class ArgumentError(ConfigError, ValueError):
    """Invalid call arguments (out of range indices, grid mismatch, ...)."""


class NumericError(QsmError):
    exit_code = 2


class SymmetryViolationError(NumericError):
    def __init__(self, residue: float, tolerance: float) -> None:
        self.residue = residue
        self.tolerance = tolerance
        super().__init__(
            f"inverse FFT imaginary residue {residue:.3e} exceeds tolerance {tolerance:.1e}"
        )


class SymbolDomainError(NumericError):
    def __init__(self, index: Tuple[int, ...], value: Any, symbol: str = "symbol") -> None:
        self.index = tuple(int(i) for i in index)
        self.value = value
        super().__init__(f"{symbol} is not finite at frequency index {self.index}: {value}")


class ConsistencyError(NumericError):
    def __init__(self, message: str, residuals: Optional[Dict[str, float]] = None) -> None:
        self.residuals = dict(residuals or {})
        super().__init__(message)


class VolumeIOError(QsmError):
    exit_code = 3


class VolumeFormatError(VolumeIOError):
    def __init__(self, message: str, offset: int) -> None:
        self.offset = offset
        super().__init__(f"{message} (at byte offset {offset})")


class TruncatedVolumeError(VolumeFormatError):
    pass


class StageError(QsmError):
    """Wraps a failure inside one experiment stage, keeping the cause's exit code."""

    def __init__(self, stage: str, cause: BaseException) -> None:
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3 if isinstance(cause, OSError) else 2)
        super().__init__(f"stage '{stage}' failed: {cause}")


def offenders_message(offenders: Sequence[str]) -> str:
    return "consistency checks failed: " + ", ".join(offenders)
