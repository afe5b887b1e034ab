"""Exact verification of a Sunada pair of genus-2 covers with different simple length spectra."""

from .covers import Homomorphism, evaluate, lift_orbit_partition, preimage_components
from .exact_linalg import MetricAssignment, RationalMat2, hyperbolic_length, trace_invariant, word_matrix
from .group_core import FiniteAffineGroup, GroupElement, Subgroup, is_almost_conjugate
from .words import CyclicWord, Word, cyclic_reduce, format_word, parse_word

__version__ = "0.1.0"

__all__ = [
    "CyclicWord", "FiniteAffineGroup", "GroupElement", "Homomorphism", "MetricAssignment", "RationalMat2",
    "Subgroup", "Word", "cyclic_reduce", "evaluate", "format_word", "hyperbolic_length", "is_almost_conjugate",
    "lift_orbit_partition", "parse_word", "preimage_components", "trace_invariant", "word_matrix",
]
