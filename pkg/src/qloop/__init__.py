"""Exact shuffle-algebra computations for quantum loop algebras over Q(q)."""

from ._backend import BACKEND
from .scalars import Q, RATQ_ONE, RATQ_ZERO, RatQ, ratq
from .zetadata import (AlgebraDatum, DatumError, constant_datum,
                       datum_from_json, datum_to_json,
                       preset_quantum_affine, sl2, sl3)
from .shuffle import (MINUS, PLUS, ShuffleElement, SlopeWindow, as_words,
                      basis_window, eword_to_shuffle, shuffle_mul,
                      slope_test, wheel_check)
from .pairing import (LoopWeight, pair, pair_residue, pair_word,
                      twisted_functional)

__version__ = "0.1.0"

__all__ = [
    "AlgebraDatum", "BACKEND", "DatumError", "LoopWeight", "MINUS", "PLUS",
    "Q", "RATQ_ONE", "RATQ_ZERO", "RatQ", "ShuffleElement", "SlopeWindow",
    "as_words", "basis_window", "constant_datum", "datum_from_json",
    "datum_to_json", "eword_to_shuffle", "pair", "pair_residue", "pair_word",
    "preset_quantum_affine", "ratq", "shuffle_mul", "sl2", "sl3",
    "slope_test", "twisted_functional", "wheel_check", "__version__",
]
