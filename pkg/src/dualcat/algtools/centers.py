"""Generalized centers, suspension to free monoids, and abelianization."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .finite import Elem, FiniteCategory, FiniteMonoid, StructureError, endofunction_monoid


def monoid_center(m: FiniteMonoid) -> FiniteMonoid:
    elems = tuple(a for a in m.elems if all(m.mul(a, b) == m.mul(b, a) for b in m.elems))
    table = {(a, b): m.mul(a, b) for a in elems for b in elems}
    z = FiniteMonoid(elems, m.unit, table)
    if not z.is_commutative():  # pragma: no cover - central elements commute
        raise AssertionError("center is not commutative")
    return z


def category_center(c: FiniteCategory) -> FiniteMonoid:
    """Natural endo-transformations of the identity functor.

    Elements are tuples of components ordered like ``c.objects``; the product
    composes componentwise.
    """
    objs = c.objects
    ends = {x: c.hom(x, x) for x in objs}
    # a component must commute with every endomorphism of its own object
    cands = {x: [a for a in ends[x] if all(c.compose(a, f) == c.compose(f, a) for f in ends[x])] for x in objs}
    cross = [m for m in c.morphisms if m.dom != m.cod]
    families = []
    for combo in itertools.product(*(cands[x] for x in objs)):
        comp = dict(zip(objs, combo))
        if all(c.compose(m.id, comp[m.cod]) == c.compose(comp[m.dom], m.id) for m in cross):
            families.append(combo)
    index = {x: i for i, x in enumerate(objs)}
    table = {}
    for a in families:
        for b in families:
            table[a, b] = tuple(c.compose(a[index[x]], b[index[x]]) for x in objs)
    unit = tuple(c.identities[x] for x in objs)
    z = FiniteMonoid(tuple(families), unit, table)
    if not z.is_commutative():
        raise AssertionError("End(1_C) is not commutative")
    return z


def center(structure: Any) -> FiniteMonoid:
    """Set -> all endofunctions; monoid -> classical center; category -> End(1_C)."""
    if isinstance(structure, FiniteMonoid):
        return monoid_center(structure)
    if isinstance(structure, FiniteCategory):
        return category_center(structure)
    if isinstance(structure, (set, frozenset, list, tuple)):
        elems = sorted(structure, key=repr) if isinstance(structure, (set, frozenset)) else list(structure)
        if len(set(elems)) != len(elems):
            raise StructureError("set has repeated elements")
        return endofunction_monoid(elems)
    raise StructureError(f"no center for {type(structure).__name__}")


# -- suspension -------------------------------------------------------------------------

@dataclass(frozen=True)
class FreeMonoid:
    """Words over an alphabet; the product is concatenation, the unit the empty word."""

    alphabet: tuple

    def word(self, letters: Iterable[Elem]) -> tuple:
        w = tuple(letters)
        for a in w:
            if a not in self.alphabet:
                raise StructureError(f"letter {a!r} not in the alphabet")
        return w

    @property
    def unit(self) -> tuple:
        return ()

    def mul(self, u: Sequence[Elem], v: Sequence[Elem]) -> tuple:
        return self.word(u) + self.word(v)

    def normalize(self, w: Sequence[Elem]) -> tuple:
        return free_monoid_normalize(self.word(w))


def suspend_set(elems: Iterable[Elem]) -> FreeMonoid:
    alphabet = tuple(dict.fromkeys(elems))
    return FreeMonoid(alphabet)


def free_monoid_normalize(word: Sequence[Elem]) -> tuple:
    """Concatenation is already normal: the word itself."""
    return tuple(word)


def abelianize(word: Sequence[Elem] | Mapping[Elem, int]) -> dict:
    """Letter counts, keys sorted; a multiset passes through unchanged."""
    if isinstance(word, Mapping):
        counts = Counter({k: int(v) for k, v in word.items() if int(v) > 0})
        if any(int(v) < 0 for v in word.values()):
            raise StructureError("multiplicities must be non-negative")
    else:
        counts = Counter(word)
    return {k: counts[k] for k in sorted(counts, key=repr)}


__all__ = [
    "FreeMonoid", "abelianize", "category_center", "center", "free_monoid_normalize",
    "monoid_center", "suspend_set",
]
