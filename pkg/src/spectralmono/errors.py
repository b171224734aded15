"""Exception hierarchy shared by the package."""


class SpectralMonoError(Exception):
    """Base class for all errors raised by spectralmono."""


class InvalidEdgeError(SpectralMonoError, ValueError):
    """Loop, duplicate edge or out-of-range endpoint."""


class EdgeListParseError(SpectralMonoError, ValueError):
    def __init__(self, lineno: int, line: str, reason: str = "malformed line"):
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno


class UndefinedIndexError(SpectralMonoError, ValueError):
    """Centrality not defined on this graph (e.g. no edges)."""


class ConvergenceError(SpectralMonoError, RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class DivergenceError(SpectralMonoError, ValueError):
    """Damping factor at or beyond the reciprocal spectral radius."""


class SingularMatrixError(SpectralMonoError, ArithmeticError):
    def __init__(self, column: int):
        super().__init__(f"singular matrix: no nonzero pivot in column {column}")
        self.column = column


class MorphismError(SpectralMonoError, ValueError):
    """Node/arc maps do not define a (weight-preserving) graph morphism."""


class NotFoundError(SpectralMonoError, LookupError):
    pass


class ConstructionError(SpectralMonoError, AssertionError):
    """A built object failed its mandatory self-check."""
