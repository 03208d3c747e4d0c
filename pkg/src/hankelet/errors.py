"""Exception hierarchy shared by every module."""


class HankeletError(Exception):
    """Base class for all package errors."""


class DomainError(HankeletError, ValueError):
    """An argument lies outside the domain of the operation."""


class InadmissibleWaveletError(DomainError):
    """The admissibility integral of a wavelet is zero or divergent."""


class GridMismatchError(HankeletError, ValueError):
    """Two objects that must share a grid (or an alpha) do not."""


class ConfigError(HankeletError):
    """Invalid audit configuration; maps to CLI exit code 2."""


class NumericalError(HankeletError, ArithmeticError):
    """Non-finite values or a quadrature that failed to converge; exit code 3."""


class DivergenceError(NumericalError):
    """An integral that should be finite does not decay at an endpoint."""


class OracleError(NumericalError):
    """A cross-validation oracle could not reach its accuracy target."""


class PreconditionError(HankeletError):
    """An inequality's hypothesis is not met; the audit records a refusal."""
