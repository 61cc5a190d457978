"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a special function or bound."""


class InvalidQuantumNumbers(ValueError):
    """Quantum numbers violate the admissibility rules of a state."""


class NotNormalized(ValueError):
    """A probability density does not integrate to one."""

    def __init__(self, norm):
        norm = float(norm)
        super().__init__(f"density integrates to {norm:.12g}, expected 1 within 1e-6")
        self.norm = norm


class NonConvergence(RuntimeError):
    """Adaptive quadrature ran out of subdivisions.

    The best available estimate is kept on ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NoBoundState(RuntimeError):
    """No bound state with the requested node count exists in the energy bracket."""


class StiffOrigin(ValueError):
    """The potential is too singular at the origin for the power-law start."""


class BandwidthExceeded(ValueError):
    """Requested momenta are not resolvable on the radial grid."""


class ExpressionError(ValueError):
    """Syntax error in a potential expression, with a 1-based column."""

    def __init__(self, message, column):
        super().__init__(f"column {column}: {message}")
        self.column = column
