"""Exception hierarchy shared by the solver, the sweeps and the CLI."""

from __future__ import annotations


class CentrifugalError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(CentrifugalError, ValueError):
    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field
        self.detail = message


class AiryDomainError(CentrifugalError, ValueError):
    pass


class ConvergenceError(CentrifugalError, RuntimeError):
    def __init__(self, index: int, last_iterate: complex, message: str = "did not converge") -> None:
        super().__init__(f"state n={index}: {message} (last iterate {last_iterate!r})")
        self.index = index
        self.last_iterate = last_iterate


class RootCollisionError(CentrifugalError, RuntimeError):
    pass


class StateAboveBarrierError(CentrifugalError, ValueError):
    pass


class DegenerateFitError(CentrifugalError, ValueError):
    pass


class PartialSweepError(CentrifugalError, RuntimeError):
    """Raised when too many sweep points failed; the incomplete curve is attached."""

    def __init__(self, failed: int, total: int, curve=None) -> None:
        super().__init__(f"{failed} of {total} sweep points failed")
        self.failed = failed
        self.total = total
        self.curve = curve


class ConfigError(CentrifugalError, ValueError):
    def __init__(self, message: str, *, line: int | None = None, key: str | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.detail = message
        self.line = line
        self.key = key
