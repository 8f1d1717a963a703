"""Entangling capability of two-qubit gates, with and without ancillas."""
from .ancilla import AncillaInput, optimize_measure, output_measure
from .canonical import (
    CanonicalDecomposition,
    ChamberPoint,
    InteractionVector,
    build_ud,
    canonicalize_capability,
    decompose,
)
from .capability import (
    best_input,
    brute_force_max_concurrence,
    capability_of_gate,
    is_perfect_entangler,
    max_concurrence,
)
from .config import Tolerances, get_tolerances
from .magic import concurrence
from .states import Measure, PureState

__all__ = [
    "AncillaInput",
    "CanonicalDecomposition",
    "ChamberPoint",
    "InteractionVector",
    "Measure",
    "PureState",
    "Tolerances",
    "best_input",
    "brute_force_max_concurrence",
    "build_ud",
    "canonicalize_capability",
    "capability_of_gate",
    "concurrence",
    "decompose",
    "get_tolerances",
    "is_perfect_entangler",
    "max_concurrence",
    "optimize_measure",
    "output_measure",
]
