"""Entropic uncertainty bounds for D-dimensional central potentials."""

from .bounds import (
    BoundReport,
    bbm_bound,
    central_bound,
    decarli_constant,
    log_bound,
    renyi_radial_bound,
    shannon_radial_bound,
)
from .errors import (
    BandwidthExceeded,
    DomainError,
    ExpressionError,
    InvalidQuantumNumbers,
    NoBoundState,
    NonConvergence,
    NotNormalized,
    StiffOrigin,
)
from .hyperangular import AngularState, angular_density, angular_entropy
from .quadrature import QuadConfig, QuadResult
from .states import EntropyReport, QuantumStateSpec, entropy_report, sweep

__version__ = "0.1.0"

__all__ = [
    "AngularState",
    "BandwidthExceeded",
    "BoundReport",
    "DomainError",
    "EntropyReport",
    "ExpressionError",
    "InvalidQuantumNumbers",
    "NoBoundState",
    "NonConvergence",
    "NotNormalized",
    "QuadConfig",
    "QuadResult",
    "QuantumStateSpec",
    "StiffOrigin",
    "angular_density",
    "angular_entropy",
    "bbm_bound",
    "central_bound",
    "decarli_constant",
    "entropy_report",
    "log_bound",
    "renyi_radial_bound",
    "shannon_radial_bound",
    "sweep",
]
