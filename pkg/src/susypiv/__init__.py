"""Darboux (SUSY) partners of the complex oscillator and Painleve IV candidates.

The library builds first- and higher-order partner potentials of the
oscillator with unit-modulus complex frequency, their eigenstates and ladder
algebra, and turns extremal states into Painleve IV solution candidates that
are certified by direct residual evaluation.
"""

from ._backend import backend_name
from .errors import (
    DegenerateSolution,
    DegenerateTriple,
    DeletedLevel,
    EmptyGrid,
    LadderEdge,
    LambdaPole,
    NoValidAssignment,
    NonNormalizable,
    NotConverged,
    PoleAtB,
    RepulsiveOscillator,
    SingularPoint,
    SusypivError,
    ZeroCrossing,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "SusypivError",
    "PoleAtB",
    "NotConverged",
    "RepulsiveOscillator",
    "LambdaPole",
    "SingularPoint",
    "DeletedLevel",
    "NonNormalizable",
    "LadderEdge",
    "DegenerateTriple",
    "DegenerateSolution",
    "ZeroCrossing",
    "NoValidAssignment",
    "EmptyGrid",
]
