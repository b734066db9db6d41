"""Free braided and symmetric categories with duals, their matrix representations,
2D TQFTs from Frobenius algebras, and checkers for finite algebraic structures."""

from __future__ import annotations

__version__ = "0.1.0"
