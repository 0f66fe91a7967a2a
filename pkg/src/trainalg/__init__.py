"""Exact computations with double cosets of infinite-dimensional classical groups.

Matrices have finite support (they differ from the identity in finitely
many entries) and rational or Gaussian-rational entries, so every identity
except the spherical-function evaluation is checked exactly.
"""

from .exact_linalg import QI, Q, GaussRat, Matrix, Subspace
from .groups import (
    GroupDescriptor,
    GroupElement,
    FiniteSupportOperator,
    Kind,
    PairDescriptor,
    pair_preset,
    PAIR_PRESETS,
)
from .relations import LinearRelation, ProjectivePoint, char_function, relation_compose
from .train import DoubleCoset, Verdict, coset_compose, coset_eq, coset_invariants, involution

__version__ = "0.1.0"

__all__ = [
    "Q", "QI", "GaussRat", "Matrix", "Subspace",
    "GroupDescriptor", "GroupElement", "FiniteSupportOperator", "Kind", "PairDescriptor",
    "pair_preset", "PAIR_PRESETS",
    "LinearRelation", "ProjectivePoint", "char_function", "relation_compose",
    "DoubleCoset", "Verdict", "coset_compose", "coset_eq", "coset_invariants", "involution",
]
