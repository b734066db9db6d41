"""Finite-structure checkers: categories, 2-categories, centers, pentagon, star products."""

from __future__ import annotations

from .centers import FreeMonoid, abelianize, center, free_monoid_normalize, suspend_set
from .checks import (
    EHVerdict, MonoidalAssocData, check_exchange, check_natural, check_pentagon, eckmann_hilton,
    eckmann_hilton_exhaustive, eckmann_hilton_random,
)
from .finite import (
    Finite2Category, FiniteCategory, FiniteMonoid, Functor, StructureError, product_category,
)
from .star import StarData, StarDataError, star_check

__all__ = [
    "EHVerdict", "Finite2Category", "FiniteCategory", "FiniteMonoid", "FreeMonoid", "Functor",
    "MonoidalAssocData", "StarData", "StarDataError", "StructureError", "abelianize", "center",
    "check_exchange", "check_natural", "check_pentagon", "eckmann_hilton",
    "eckmann_hilton_exhaustive", "eckmann_hilton_random", "free_monoid_normalize",
    "product_category", "star_check", "suspend_set",
]
