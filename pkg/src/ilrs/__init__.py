"""Decoding interleaved linearized Reed-Solomon codes in the sum-rank metric."""
from .gf import FieldTower, make_field
from .lrs import LrsCode, random_code
from .skew import SkewPolynomial, SkewRing
from .sumrank import LengthPartition, weight

__version__ = "0.1.0"

__all__ = ["FieldTower", "LengthPartition", "LrsCode", "SkewPolynomial", "SkewRing",
           "make_field", "random_code", "weight"]
