"""Cube chain complexes, their free omega-categories, and cubical nerves
characterised by thin fillers."""

from .chains import Chain, ComplexId
from .omega import DoubleSequence, atom, comp, d, decompose

__all__ = ["Chain", "ComplexId", "DoubleSequence", "atom", "comp", "d", "decompose"]
