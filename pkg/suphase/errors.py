class SuphaseError(Exception):
    """Root of every error raised by suphase."""


class InvalidRepresentationError(SuphaseError, ValueError):
    """Invalid irrep label, root, Cartan index, spin or dimension."""


class NotUnitaryError(SuphaseError, ValueError):
    pass


class CompletionError(SuphaseError):
    """Numerical kernel of a ladder matrix disagrees with the combinatorial kernel."""


class FitError(SuphaseError, ValueError):
    pass


class ConfigError(SuphaseError, ValueError):
    pass


class ResidualBreach(SuphaseError):
    """An internal residual exceeded its tolerance.

    This signals an implementation bug rather than a user error.
    """

    def __init__(self, name: str, residual: float, tolerance: float) -> None:
        super().__init__(f"{name}: residual {residual:.3e} exceeds tolerance {tolerance:.1e}")
        self.name = name
        self.residual = residual
        self.tolerance = tolerance
