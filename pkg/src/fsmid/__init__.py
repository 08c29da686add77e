"""Identification of Moore machines from partial observational data."""

from .automata import (
    Alphabet,
    MooreMachine,
    behaviors,
    canonicalize,
    equivalent,
    find_witness,
    minimize,
    run,
)
from .observations import ObservationSet
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Alphabet", "MooreMachine", "ObservationSet", "behaviors", "canonicalize",
    "equivalent", "find_witness", "minimize", "run",
]
