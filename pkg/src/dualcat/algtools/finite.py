"""Finite monoids, categories and 2-categories given by explicit tables.

Composition tables are written diagrammatically: ``compose(f, g)`` is ``f``
followed by ``g`` and needs ``cod(f) == dom(g)``.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterator, Mapping, Sequence


class StructureError(ValueError):
    """A table is malformed or violates an axiom."""


Elem = Hashable


# -- monoids ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    elems: tuple
    unit: Elem
    table: Mapping[tuple[Elem, Elem], Elem]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elems", tuple(self.elems))
        object.__setattr__(self, "table", dict(self.table))
        bad = monoid_violation(self.elems, self.unit, self.table)
        if bad is not None:
            raise StructureError(bad)

    def mul(self, a: Elem, b: Elem) -> Elem:
        return self.table[a, b]

    def __len__(self) -> int:
        return len(self.elems)

    def is_commutative(self) -> bool:
        return all(self.table[a, b] == self.table[b, a] for a in self.elems for b in self.elems)

    def same_as(self, other: FiniteMonoid) -> bool:
        return (set(self.elems) == set(other.elems) and self.unit == other.unit
                and all(self.table[a, b] == other.table[a, b] for a in self.elems for b in self.elems))

    def to_json(self) -> dict[str, Any]:
        elems = [_jsonable(e) for e in self.elems]
        return {
            "elems": elems,
            "table": [[_jsonable(self.table[a, b]) for b in self.elems] for a in self.elems],
            "unit": _jsonable(self.unit),
        }


def _jsonable(e: Any) -> Any:
    return [_jsonable(x) for x in e] if isinstance(e, tuple) else e


def _hashable(e: Any) -> Any:
    return tuple(_hashable(x) for x in e) if isinstance(e, list) else e


def monoid_violation(elems: Sequence[Elem], unit: Elem, table: Mapping) -> str | None:
    """First failed monoid axiom, or ``None``."""
    es = set(elems)
    if len(es) != len(elems):
        return "duplicate elements"
    if unit not in es:
        return f"unit {unit!r} is not an element"
    for a in elems:
        for b in elems:
            if (a, b) not in table:
                return f"product {a!r}*{b!r} undefined"
            if table[a, b] not in es:
                return f"product {a!r}*{b!r} = {table[a, b]!r} leaves the set"
    for a in elems:
        if table[unit, a] != a or table[a, unit] != a:
            return f"unit law fails at {a!r}"
    for a in elems:
        for b in elems:
            ab = table[a, b]
            for c in elems:
                if table[ab, c] != table[a, table[b, c]]:
                    return f"associativity fails at ({a!r}, {b!r}, {c!r})"
    return None


def monoid_from_table(elems: Sequence[Elem], unit: Elem, rows: Sequence[Sequence[Elem]]) -> FiniteMonoid:
    """``rows[i][j]`` is ``elems[i] * elems[j]``."""
    if len(rows) != len(elems) or any(len(r) != len(elems) for r in rows):
        raise StructureError("multiplication table must be square over the elements")
    table = {(a, b): rows[i][j] for i, a in enumerate(elems) for j, b in enumerate(elems)}
    return FiniteMonoid(tuple(elems), unit, table)


def monoid_from_json(obj: Mapping[str, Any]) -> FiniteMonoid:
    try:
        elems = [_hashable(e) for e in obj["elems"]]
        rows = [[_hashable(e) for e in row] for row in obj["table"]]
        unit = _hashable(obj["unit"])
    except (KeyError, TypeError) as exc:
        raise StructureError(f"bad monoid JSON: {exc}") from None
    return monoid_from_table(elems, unit, rows)


def cyclic_monoid(n: int) -> FiniteMonoid:
    """``Z/n`` under addition."""
    return FiniteMonoid(tuple(range(n)), 0, {(a, b): (a + b) % n for a in range(n) for b in range(n)})


def symmetric_group(n: int) -> FiniteMonoid:
    """Permutations of ``range(n)`` as tuples; ``p * q`` applies ``q`` first."""
    elems = tuple(itertools.permutations(range(n)))
    table = {(p, q): tuple(p[q[i]] for i in range(n)) for p in elems for q in elems}
    return FiniteMonoid(elems, tuple(range(n)), table)


def endofunction_monoid(elems: Sequence[Elem]) -> FiniteMonoid:
    """All functions on a finite set, as image tuples, under ``(f*g)(x) = f(g(x))``."""
    elems = tuple(elems)
    index = {e: i for i, e in enumerate(elems)}
    funcs = tuple(itertools.product(elems, repeat=len(elems)))
    table = {(f, g): tuple(f[index[g[i]]] for i in range(len(elems))) for f in funcs for g in funcs}
    return FiniteMonoid(funcs, elems, table)


def random_monoid(rng: random.Random, max_size: int = 5, tries: int = 200) -> FiniteMonoid:
    """A random finite monoid of size <= ``max_size``.

    The sample is the submonoid of functions on at most three points
    generated by one to three random functions, relabelled ``0..n-1``.
    """
    for _ in range(tries):
        n = rng.randint(1, 3)
        pts = tuple(range(n))
        gens = [tuple(rng.randrange(n) for _ in pts) for _ in range(rng.randint(1, 3))]
        elems = {pts}
        frontier = list(elems)
        while frontier:
            f = frontier.pop()
            for g in gens:
                h = tuple(f[g[i]] for i in pts)
                if h not in elems:
                    elems.add(h)
                    frontier.append(h)
            if len(elems) > max_size:
                break
        if len(elems) <= max_size:
            es = tuple(sorted(elems))
            names = {e: i for i, e in enumerate(es)}
            table = {(names[f], names[g]): names[tuple(f[g[i]] for i in pts)] for f in es for g in es}
            return FiniteMonoid(tuple(range(len(es))), names[pts], table)
    raise RuntimeError("could not sample a small monoid")


# -- categories ----------------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    id: Elem
    dom: Elem
    cod: Elem


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    objects: tuple
    morphisms: tuple[Morphism, ...]
    compose_table: Mapping[tuple[Elem, Elem], Elem]
    identities: Mapping[Elem, Elem]
    _by_id: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "compose_table", dict(self.compose_table))
        object.__setattr__(self, "identities", dict(self.identities))
        object.__setattr__(self, "_by_id", {m.id: m for m in self.morphisms})
        bad = category_violation(self)
        if bad is not None:
            raise StructureError(bad)

    def mor(self, f: Elem) -> Morphism:
        return self._by_id[f]

    def dom(self, f: Elem) -> Elem:
        return self._by_id[f].dom

    def cod(self, f: Elem) -> Elem:
        return self._by_id[f].cod

    def compose(self, f: Elem, g: Elem) -> Elem:
        """``f`` then ``g``."""
        try:
            return self.compose_table[f, g]
        except KeyError:
            raise StructureError(f"{f!r} ; {g!r} is not composable") from None

    def hom(self, x: Elem, y: Elem) -> list[Elem]:
        return [m.id for m in self.morphisms if m.dom == x and m.cod == y]

    def ids(self) -> list[Elem]:
        return [m.id for m in self.morphisms]

    def composable_pairs(self) -> Iterator[tuple[Elem, Elem]]:
        for f in self.morphisms:
            for g in self.morphisms:
                if f.cod == g.dom:
                    yield f.id, g.id

    def to_json(self) -> dict[str, Any]:
        ids = self.ids()
        return {
            "compose": [[_jsonable(self.compose_table.get((f, g))) for g in ids] for f in ids],
            "identities": {str(x): _jsonable(self.identities[x]) for x in self.objects},
            "morphisms": [{"cod": _jsonable(m.cod), "dom": _jsonable(m.dom), "id": _jsonable(m.id)}
                          for m in self.morphisms],
            "objects": [_jsonable(x) for x in self.objects],
        }


def category_violation(c: FiniteCategory) -> str | None:
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        return "duplicate objects"
    if len(c._by_id) != len(c.morphisms):
        return "duplicate morphism ids"
    for m in c.morphisms:
        if m.dom not in objs or m.cod not in objs:
            return f"morphism {m.id!r} has an unknown endpoint"
    for x in c.objects:
        i = c.identities.get(x)
        if i not in c._by_id or c.dom(i) != x or c.cod(i) != x:
            return f"identity of {x!r} is missing or not an endomorphism of {x!r}"
    table = c.compose_table
    for (f, g), h in table.items():
        if f not in c._by_id or g not in c._by_id:
            return f"composite entry for unknown morphisms ({f!r}, {g!r})"
        if c.cod(f) != c.dom(g):
            return f"composite {f!r} ; {g!r} given for non-composable pair"
    for f, g in c.composable_pairs():
        if (f, g) not in table:
            return f"composite {f!r} ; {g!r} missing"
        h = table[f, g]
        if h not in c._by_id or c.dom(h) != c.dom(f) or c.cod(h) != c.cod(g):
            return f"composite {f!r} ; {g!r} = {h!r} has the wrong type"
    for m in c.morphisms:
        if table[c.identities[m.dom], m.id] != m.id or table[m.id, c.identities[m.cod]] != m.id:
            return f"identity law fails at {m.id!r}"
    for f, g in c.composable_pairs():
        fg = table[f, g]
        for h in (m.id for m in c.morphisms if m.dom == c.cod(g)):
            if table[fg, h] != table[f, table[g, h]]:
                return f"associativity fails at ({f!r}, {g!r}, {h!r})"
    return None


def category_from_json(obj: Mapping[str, Any]) -> FiniteCategory:
    try:
        objects = [_hashable(x) for x in obj["objects"]]
        mors = [Morphism(_hashable(m["id"]), _hashable(m["dom"]), _hashable(m["cod"])) for m in obj["morphisms"]]
        rows = obj["compose"]
        ident_raw = obj["identities"]
    except (KeyError, TypeError) as exc:
        raise StructureError(f"bad category JSON: {exc}") from None
    if len(rows) != len(mors) or any(len(r) != len(mors) for r in rows):
        raise StructureError("compose table must be square over the morphisms")
    table = {}
    for i, f in enumerate(mors):
        for j, g in enumerate(mors):
            if rows[i][j] is not None:
                table[f.id, g.id] = _hashable(rows[i][j])
    by_name = {str(x): x for x in objects}
    identities = {}
    for key, val in ident_raw.items():
        if key not in by_name:
            raise StructureError(f"identity given for unknown object {key!r}")
        identities[by_name[key]] = _hashable(val)
    return FiniteCategory(tuple(objects), tuple(mors), table, identities)


def one_object_category(m: FiniteMonoid, obj: Elem = "*") -> FiniteCategory:
    """``M`` as a one-object category; ``a ; b`` is the product ``a * b``."""
    mors = tuple(Morphism(a, obj, obj) for a in m.elems)
    table = {(a, b): m.mul(a, b) for a in m.elems for b in m.elems}
    return FiniteCategory((obj,), mors, table, {obj: m.unit})


def discrete_category(objects: Sequence[Elem]) -> FiniteCategory:
    objs = tuple(objects)
    mors = tuple(Morphism(("id", x), x, x) for x in objs)
    return FiniteCategory(objs, mors, {(m.id, m.id): m.id for m in mors}, {x: ("id", x) for x in objs})


def terminal_category() -> FiniteCategory:
    return discrete_category(["*"])


def poset_category(elems: Sequence[Elem], leq) -> FiniteCategory:
    """A preorder as a category: one arrow ``(a, b)`` whenever ``leq(a, b)``."""
    objs = tuple(elems)
    mors = tuple(Morphism((a, b), a, b) for a in objs for b in objs if leq(a, b))
    table = {(f.id, g.id): (f.dom, g.cod) for f in mors for g in mors if f.cod == g.dom}
    return FiniteCategory(objs, mors, table, {x: (x, x) for x in objs})


def random_category(rng: random.Random, n_objects: int = 3) -> FiniteCategory:
    """A random preorder category, or a random monoid when ``n_objects == 1``."""
    if n_objects == 1:
        return one_object_category(random_monoid(rng, 4))
    objs = list(range(n_objects))
    rank = {x: rng.randrange(n_objects) for x in objs}
    return poset_category(objs, lambda a, b: a == b or rank[a] < rank[b])


def product_category(c: FiniteCategory, d: FiniteCategory) -> FiniteCategory:
    """Objects and morphisms are pairs; composition is componentwise."""
    objs = tuple(itertools.product(c.objects, d.objects))
    mors = tuple(Morphism((f.id, g.id), (f.dom, g.dom), (f.cod, g.cod))
                 for f in c.morphisms for g in d.morphisms)
    table = {}
    for f1, f2 in c.composable_pairs():
        for g1, g2 in d.composable_pairs():
            table[(f1, g1), (f2, g2)] = (c.compose(f1, f2), d.compose(g1, g2))
    ids = {(x, y): (c.identities[x], d.identities[y]) for x, y in objs}
    return FiniteCategory(objs, mors, table, ids)


# -- functors -------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    on_objects: Mapping[Elem, Elem]
    on_morphisms: Mapping[Elem, Elem]

    def __post_init__(self) -> None:
        object.__setattr__(self, "on_objects", dict(self.on_objects))
        object.__setattr__(self, "on_morphisms", dict(self.on_morphisms))
        bad = functor_violation(self)
        if bad is not None:
            raise StructureError(bad)

    def __call__(self, f: Elem) -> Elem:
        return self.on_morphisms[f]


def functor_violation(F: Functor) -> str | None:
    c, d = F.source, F.target
    for x in c.objects:
        if F.on_objects.get(x) not in set(d.objects):
            return f"object {x!r} has no image"
    for m in c.morphisms:
        fm = F.on_morphisms.get(m.id)
        if fm is None or fm not in d._by_id:
            return f"morphism {m.id!r} has no image"
        if d.dom(fm) != F.on_objects[m.dom] or d.cod(fm) != F.on_objects[m.cod]:
            return f"image of {m.id!r} has the wrong type"
    for x in c.objects:
        if F.on_morphisms[c.identities[x]] != d.identities[F.on_objects[x]]:
            return f"identity of {x!r} is not preserved"
    for f, g in c.composable_pairs():
        if F.on_morphisms[c.compose(f, g)] != d.compose(F.on_morphisms[f], F.on_morphisms[g]):
            return f"composite {f!r} ; {g!r} is not preserved"
    return None


def identity_functor(c: FiniteCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.ids()})


def projections(c: FiniteCategory, d: FiniteCategory, prod: FiniteCategory | None = None) -> tuple[Functor, Functor]:
    prod = prod or product_category(c, d)
    p1 = Functor(prod, c, {o: o[0] for o in prod.objects}, {f: f[0] for f in prod.ids()})
    p2 = Functor(prod, d, {o: o[1] for o in prod.objects}, {f: f[1] for f in prod.ids()})
    return p1, p2


def lookup_json_key(table: Mapping[str, Any], x: Elem) -> Any:
    """``table[k]`` where ``k`` is the JSON spelling of ``x`` or its ``str()``."""
    for k in (json.dumps(_jsonable(x)), str(x)):
        if k in table:
            return table[k]
    raise KeyError(f"no entry for {x!r}")


def functor_from_json(obj: Mapping[str, Any], source: FiniteCategory, target: FiniteCategory) -> Functor:
    try:
        objs = {x: _hashable(lookup_json_key(obj["objects"], x)) for x in source.objects}
        mors = {f: _hashable(lookup_json_key(obj["morphisms"], f)) for f in source.ids()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise StructureError(f"bad functor JSON: {exc}") from None
    return Functor(source, target, objs, mors)


# -- 2-categories ---------------------------------------------------------------------

@dataclass(frozen=True)
class TwoCell:
    id: Elem
    src: Elem  # source 1-morphism
    tgt: Elem  # target 1-morphism


@dataclass(frozen=True, eq=False)
class Finite2Category:
    """A strict 2-category: 1-cells form ``base``; 2-cells compose vertically
    (``vertical[a, b]`` is ``a`` then ``b``) and horizontally (``horizontal[a, b]``
    for ``a`` over ``f: x -> y`` and ``b`` over ``g: y -> z``)."""

    base: FiniteCategory
    cells: tuple[TwoCell, ...]
    vertical: Mapping[tuple[Elem, Elem], Elem]
    horizontal: Mapping[tuple[Elem, Elem], Elem]
    identities2: Mapping[Elem, Elem]
    _by_id: dict = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(self, "vertical", dict(self.vertical))
        object.__setattr__(self, "horizontal", dict(self.horizontal))
        object.__setattr__(self, "identities2", dict(self.identities2))
        object.__setattr__(self, "_by_id", {a.id: a for a in self.cells})
        bad = two_category_violation(self)
        if bad is not None:
            raise StructureError(bad)

    def cell(self, a: Elem) -> TwoCell:
        return self._by_id[a]

    def hom_category(self, x: Elem, y: Elem) -> FiniteCategory:
        ones = self.base.hom(x, y)
        cells = tuple(Morphism(a.id, a.src, a.tgt) for a in self.cells if a.src in ones)
        table = {(a.id, b.id): self.vertical[a.id, b.id] for a in cells for b in cells if a.cod == b.dom}
        return FiniteCategory(tuple(ones), cells, table, {f: self.identities2[f] for f in ones})

    def vertical_pairs(self) -> Iterator[tuple[Elem, Elem]]:
        for a in self.cells:
            for b in self.cells:
                if a.tgt == b.src:
                    yield a.id, b.id

    def horizontal_pairs(self) -> Iterator[tuple[Elem, Elem]]:
        b1 = self.base
        for a in self.cells:
            for b in self.cells:
                if b1.cod(a.src) == b1.dom(b.src):
                    yield a.id, b.id

    def to_json(self) -> dict[str, Any]:
        ids = [a.id for a in self.cells]
        return {
            "base": self.base.to_json(),
            "cells": [{"id": _jsonable(a.id), "src": _jsonable(a.src), "tgt": _jsonable(a.tgt)} for a in self.cells],
            "horizontal": [[_jsonable(self.horizontal.get((a, b))) for b in ids] for a in ids],
            "identities": {str(f): _jsonable(self.identities2[f]) for f in self.base.ids()},
            "vertical": [[_jsonable(self.vertical.get((a, b))) for b in ids] for a in ids],
        }


def two_category_violation(tc: Finite2Category) -> str | None:
    base = tc.base
    if len(tc._by_id) != len(tc.cells):
        return "duplicate 2-cell ids"
    for a in tc.cells:
        if a.src not in base._by_id or a.tgt not in base._by_id:
            return f"2-cell {a.id!r} has an unknown boundary"
        if base.dom(a.src) != base.dom(a.tgt) or base.cod(a.src) != base.cod(a.tgt):
            return f"2-cell {a.id!r} joins 1-cells with different endpoints"
    for f in base.ids():
        i = tc.identities2.get(f)
        if i not in tc._by_id or tc.cell(i).src != f or tc.cell(i).tgt != f:
            return f"identity 2-cell of {f!r} is missing or mistyped"
    for x in base.objects:
        for y in base.objects:
            try:
                tc.hom_category(x, y)
            except StructureError as exc:
                return f"hom({x!r}, {y!r}) is not a category: {exc}"
            except KeyError as exc:
                return f"vertical composite {exc} missing"
    for a, b in tc.horizontal_pairs():
        h = tc.horizontal.get((a, b))
        if h not in tc._by_id:
            return f"horizontal composite of ({a!r}, {b!r}) missing"
        ca, cb, ch = tc.cell(a), tc.cell(b), tc.cell(h)
        if ch.src != base.compose(ca.src, cb.src) or ch.tgt != base.compose(ca.tgt, cb.tgt):
            return f"horizontal composite of ({a!r}, {b!r}) = {h!r} has the wrong boundary"
    return None


def two_category_from_json(obj: Mapping[str, Any]) -> Finite2Category:
    try:
        base = category_from_json(obj["base"])
        cells = [TwoCell(_hashable(a["id"]), _hashable(a["src"]), _hashable(a["tgt"])) for a in obj["cells"]]
        vrows, hrows, ident = obj["vertical"], obj["horizontal"], obj["identities"]
    except (KeyError, TypeError) as exc:
        raise StructureError(f"bad 2-category JSON: {exc}") from None
    n = len(cells)
    for rows in (vrows, hrows):
        if len(rows) != n or any(len(r) != n for r in rows):
            raise StructureError("2-cell tables must be square over the 2-cells")
    vert = {(a.id, b.id): _hashable(vrows[i][j]) for i, a in enumerate(cells)
            for j, b in enumerate(cells) if vrows[i][j] is not None}
    horiz = {(a.id, b.id): _hashable(hrows[i][j]) for i, a in enumerate(cells)
             for j, b in enumerate(cells) if hrows[i][j] is not None}
    by_name = {str(f): f for f in base.ids()}
    ids2 = {}
    for key, val in ident.items():
        if key not in by_name:
            raise StructureError(f"identity 2-cell for unknown 1-cell {key!r}")
        ids2[by_name[key]] = _hashable(val)
    return Finite2Category(base, tuple(cells), vert, horiz, ids2)


def monoid_2category(vertical: FiniteMonoid, horizontal: FiniteMonoid | None = None) -> Finite2Category:
    """One object, one 1-cell, 2-cells the monoid elements.

    Both compositions default to the same product; the units must agree.
    """
    horizontal = horizontal or vertical
    if set(horizontal.elems) != set(vertical.elems) or horizontal.unit != vertical.unit:
        raise StructureError("the two products must live on one set with one unit")
    base = terminal_category()
    one = base.ids()[0]
    cells = tuple(TwoCell(a, one, one) for a in vertical.elems)
    return Finite2Category(base, cells, dict(vertical.table), dict(horizontal.table), {one: vertical.unit})


__all__ = [
    "Finite2Category", "FiniteCategory", "FiniteMonoid", "Functor", "Morphism", "StructureError",
    "TwoCell", "category_from_json", "category_violation", "cyclic_monoid", "discrete_category",
    "endofunction_monoid", "functor_from_json", "functor_violation", "identity_functor", "lookup_json_key",
    "monoid_2category", "monoid_from_json", "monoid_from_table", "monoid_violation",
    "one_object_category", "poset_category", "product_category", "projections", "random_category",
    "random_monoid", "symmetric_group", "terminal_category", "two_category_from_json",
    "two_category_violation",
]
