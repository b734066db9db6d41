"""Exchange, naturality, pentagon and Eckmann-Hilton checkers."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Mapping, Sequence

import numpy as np

from ..report import Report
from .finite import (
    Elem, Finite2Category, FiniteCategory, FiniteMonoid, Functor, StructureError, _hashable,
    functor_violation, monoid_from_json,
)


# -- exchange ----------------------------------------------------------------------

def check_exchange(tc: Finite2Category) -> Report:
    """``(a a') * (b b') == (a * b)(a' * b')`` over every composable quadruple,
    where juxtaposition is vertical and ``*`` horizontal composition."""
    rep = Report("exchange identity")
    v, h = tc.vertical, tc.horizontal
    pairs = list(tc.vertical_pairs())
    base = tc.base
    first = None
    count = 0
    for a, a2 in pairs:
        end = base.cod(tc.cell(a).src)
        for b, b2 in pairs:
            if base.dom(tc.cell(b).src) != end:
                continue
            count += 1
            lhs = h[v[a, a2], v[b, b2]]
            rhs = v[h[a, b], h[a2, b2]]
            if lhs != rhs and first is None:
                first = f"a={a!r}, a'={a2!r}, b={b!r}, b'={b2!r}: {lhs!r} vs {rhs!r}"
    rep.add(f"exchange on {count} quadruples", first is None, first)
    bad = None
    for f, g in base.composable_pairs():
        got = h[tc.identities2[f], tc.identities2[g]]
        if got != tc.identities2[base.compose(f, g)] and bad is None:
            bad = f"1-cells {f!r}, {g!r}: {got!r}"
    rep.add("horizontal composite of identities is an identity", bad is None, bad)
    return rep


# -- naturality -----------------------------------------------------------------------

def check_natural(c: FiniteCategory, d: FiniteCategory, F: Functor, G: Functor,
                  alpha: Mapping[Elem, Elem]) -> Report:
    """``F(f) ; alpha_y == alpha_x ; G(f)`` for every ``f: x -> y``."""
    for name, fun in (("F", F), ("G", G)):
        if fun.source is not c or fun.target is not d:
            raise StructureError(f"{name} does not go from the given source to the given target")
        bad = functor_violation(fun)
        if bad is not None:
            raise StructureError(f"{name} is not a functor: {bad}")
    rep = Report("naturality")
    bad_comp = None
    for x in c.objects:
        a = alpha.get(x)
        if a is None or a not in d._by_id or d.dom(a) != F.on_objects[x] or d.cod(a) != G.on_objects[x]:
            bad_comp = f"component at {x!r} missing or mistyped"
            break
    rep.add("components typed", bad_comp is None, bad_comp)
    if bad_comp is not None:
        return rep
    first = None
    for m in c.morphisms:
        lhs = d.compose(F(m.id), alpha[m.cod])
        rhs = d.compose(alpha[m.dom], G(m.id))
        if lhs != rhs:
            first = f"f={m.id!r}: {lhs!r} vs {rhs!r}"
            break
    rep.add("naturality squares commute", first is None, first)
    return rep


# -- pentagon ------------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MonoidalAssocData:
    """A strict object monoid with scalar associator components in ``Q^x``."""

    objects: FiniteMonoid
    assoc: Mapping[tuple[Elem, Elem, Elem], Fraction]

    def __post_init__(self) -> None:
        table = {}
        for x, y, z in itertools.product(self.objects.elems, repeat=3):
            if (x, y, z) not in self.assoc:
                raise StructureError(f"associator component ({x!r}, {y!r}, {z!r}) missing")
            val = Fraction(self.assoc[x, y, z])
            if val == 0:
                raise StructureError(f"associator component ({x!r}, {y!r}, {z!r}) is not invertible")
            table[x, y, z] = val
        object.__setattr__(self, "assoc", table)

    def with_entry(self, key: tuple, value: Any) -> MonoidalAssocData:
        return MonoidalAssocData(self.objects, {**self.assoc, key: Fraction(value)})

    def to_json(self) -> dict[str, Any]:
        comps = [[x, y, z, str(v)] for (x, y, z), v in self.assoc.items()]
        return {"associator": comps, "objects": self.objects.to_json()}


def pentagon_sides(mad: MonoidalAssocData, w, x, y, z) -> tuple[Fraction, Fraction]:
    """Scalar products along the two rebracketing paths ``((wx)y)z -> w(x(yz))``."""
    m, a = mad.objects.mul, mad.assoc
    long = a[w, x, y] * a[w, m(x, y), z] * a[x, y, z]
    short = a[m(w, x), y, z] * a[w, x, m(y, z)]
    return long, short


def check_pentagon(mad: MonoidalAssocData) -> Report:
    rep = Report("pentagon")
    elems = mad.objects.elems
    first = None
    for quad in itertools.product(elems, repeat=4):
        lhs, rhs = pentagon_sides(mad, *quad)
        if lhs != rhs:
            first = f"(w, x, y, z) = {quad!r}: {lhs} vs {rhs}"
            break
    rep.add(f"pentagon on {len(elems) ** 4} quadruples", first is None, first)
    return rep


def constant_associator(objects: FiniteMonoid, value: Any = 1) -> MonoidalAssocData:
    return MonoidalAssocData(objects, {k: Fraction(value) for k in itertools.product(objects.elems, repeat=3)})


def z2_cocycle(objects: FiniteMonoid | None = None) -> MonoidalAssocData:
    """``A(x, y, z) = -1`` exactly when all three are the generator of ``Z/2``."""
    from .finite import cyclic_monoid

    objects = objects or cyclic_monoid(2)
    g = next(e for e in objects.elems if e != objects.unit)
    return MonoidalAssocData(objects, {k: Fraction(-1 if k == (g, g, g) else 1)
                                       for k in itertools.product(objects.elems, repeat=3)})


def assoc_from_json(obj: Mapping[str, Any]) -> MonoidalAssocData:
    try:
        objects = monoid_from_json(obj["objects"])
        comps = {(_hashable(x), _hashable(y), _hashable(z)): Fraction(v) for x, y, z, v in obj["associator"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"bad associator JSON: {exc}") from None
    return MonoidalAssocData(objects, comps)


# -- Eckmann-Hilton -------------------------------------------------------------------

Op = Mapping[tuple[Elem, Elem], Elem]


@dataclass(frozen=True)
class EHVerdict:
    unit_shared: bool
    interchange: bool
    ops_equal: bool
    commutative: bool
    witness: str | None = None

    @property
    def conclusion(self) -> bool:
        return self.ops_equal and self.commutative

    @property
    def counterexample(self) -> bool:
        """Hypotheses hold but the conclusion fails."""
        return self.unit_shared and self.interchange and not self.conclusion

    @property
    def status(self) -> str:
        if not self.unit_shared:
            return "precondition-failed"
        if not self.interchange:
            return "interchange-fails"
        return "conclusion-holds" if self.conclusion else "counterexample"

    def to_json(self) -> dict[str, Any]:
        return {
            "commutative": self.commutative, "interchange": self.interchange,
            "ops_equal": self.ops_equal, "status": self.status, "unit_shared": self.unit_shared,
            "witness": self.witness,
        }


def is_unit(elems: Sequence[Elem], op: Op, e: Elem) -> bool:
    return all(op[e, a] == a and op[a, e] == a for a in elems)


def eckmann_hilton(elems: Sequence[Elem], op1: Op, op2: Op, shared_unit: Elem) -> EHVerdict:
    """Check ``(a .1 b) .2 (c .1 d) == (a .2 c) .1 (b .2 d)`` and, if it holds,
    that the two operations agree and commute."""
    elems = tuple(elems)
    for name, op in (("op1", op1), ("op2", op2)):
        for a in elems:
            for b in elems:
                if (a, b) not in op or op[a, b] not in elems:
                    raise StructureError(f"{name} is not a total operation at ({a!r}, {b!r})")
    if shared_unit not in elems or not (is_unit(elems, op1, shared_unit) and is_unit(elems, op2, shared_unit)):
        why = "no shared unit" if shared_unit is None else f"{shared_unit!r} is not a unit for both operations"
        return EHVerdict(False, False, False, False, why)
    for a, b, c, d in itertools.product(elems, repeat=4):
        if op2[op1[a, b], op1[c, d]] != op1[op2[a, c], op2[b, d]]:
            return EHVerdict(True, False, False, False, f"(a, b, c, d) = {(a, b, c, d)!r}")
    witness = None
    equal = all(op1[a, b] == op2[a, b] for a in elems for b in elems)
    comm = all(op1[a, b] == op1[b, a] for a in elems for b in elems)
    if not equal:
        witness = next(f"op1 and op2 differ at {(a, b)!r}" for a in elems for b in elems if op1[a, b] != op2[a, b])
    elif not comm:
        witness = next(f"op1 does not commute at {(a, b)!r}" for a in elems for b in elems if op1[a, b] != op1[b, a])
    return EHVerdict(True, True, equal, comm, witness)


def shared_unit(elems: Sequence[Elem], op1: Op, op2: Op) -> Elem | None:
    return next((e for e in elems if is_unit(elems, op1, e) and is_unit(elems, op2, e)), None)


def table_op(elems: Sequence[Elem], rows: Sequence[Sequence[Elem]]) -> dict:
    return {(a, b): rows[i][j] for i, a in enumerate(elems) for j, b in enumerate(elems)}


def all_operations(n: int) -> list[dict]:
    """Every binary operation on ``range(n)``."""
    elems = range(n)
    keys = [(a, b) for a in elems for b in elems]
    return [dict(zip(keys, vals)) for vals in itertools.product(elems, repeat=len(keys))]


@dataclass(frozen=True)
class EHSurvey:
    pairs: int
    unit_shared: int
    interchange: int
    counterexamples: int

    def to_json(self) -> dict[str, int]:
        return {"counterexamples": self.counterexamples, "interchange": self.interchange,
                "pairs": self.pairs, "unit_shared": self.unit_shared}


def eckmann_hilton_exhaustive(n: int = 2) -> EHSurvey:
    """Every ordered pair of operations on an ``n``-element set."""
    ops = all_operations(n)
    elems = tuple(range(n))
    shared = inter = bad = 0
    for op1, op2 in itertools.product(ops, repeat=2):
        e = shared_unit(elems, op1, op2)
        if e is None:
            continue
        shared += 1
        v = eckmann_hilton(elems, op1, op2, e)
        inter += v.interchange
        bad += v.counterexample
    return EHSurvey(len(ops) ** 2, shared, inter, bad)


def eh_batch(o1: np.ndarray, o2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For stacks of operation tables ``(m, n, n)``: where interchange holds, and
    where the conclusion (equal and commutative) holds."""
    m, n, _ = o1.shape
    idx = np.arange(n)
    rows = np.arange(m)[:, None, None, None, None]
    a = idx[:, None, None, None]
    b = idx[None, :, None, None]
    c = idx[None, None, :, None]
    d = idx[None, None, None, :]
    lhs = o2[rows, o1[rows, a, b], o1[rows, c, d]]
    rhs = o1[rows, o2[rows, a, c], o2[rows, b, d]]
    holds = (lhs == rhs).reshape(m, -1).all(axis=1)
    same = (o1 == o2).reshape(m, -1).all(axis=1)
    comm = (o1 == o1.transpose(0, 2, 1)).reshape(m, -1).all(axis=1)
    return holds, same & comm


def random_unital_ops(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """``(2, m, n, n)`` random tables with ``0`` a unit for every one."""
    ops = rng.integers(0, n, size=(2, m, n, n))
    ops[:, :, 0, :] = np.arange(n)
    ops[:, :, :, 0] = np.arange(n)
    return ops


def eckmann_hilton_random(rng: np.random.Generator, n: int = 3, samples: int = 100_000,
                          batch: int = 20_000) -> EHSurvey:
    """Random operation pairs sharing the unit ``0`` on ``range(n)``, checked in vectorized batches."""
    inter = bad = done = 0
    while done < samples:
        m = min(batch, samples - done)
        ops = random_unital_ops(rng, n, m)
        holds, concl = eh_batch(ops[0], ops[1])
        inter += int(holds.sum())
        bad += int((holds & ~concl).sum())
        done += m
    return EHSurvey(samples, samples, inter, bad)


def eh_from_json(obj: Mapping[str, Any]) -> tuple[tuple, dict, dict, Elem | None]:
    try:
        elems = tuple(_hashable(e) for e in obj["elems"])
        op1 = table_op(elems, [[_hashable(v) for v in r] for r in obj["op1"]])
        op2 = table_op(elems, [[_hashable(v) for v in r] for r in obj["op2"]])
    except (KeyError, TypeError, IndexError) as exc:
        raise StructureError(f"bad Eckmann-Hilton JSON: {exc}") from None
    unit = _hashable(obj["unit"]) if "unit" in obj else shared_unit(elems, op1, op2)
    return elems, op1, op2, unit


__all__ = [
    "EHSurvey", "EHVerdict", "MonoidalAssocData", "all_operations", "assoc_from_json",
    "check_exchange", "check_natural", "check_pentagon", "constant_associator", "eckmann_hilton",
    "eckmann_hilton_exhaustive", "eckmann_hilton_random", "eh_batch", "eh_from_json", "is_unit",
    "pentagon_sides", "random_unital_ops", "shared_unit", "table_op", "z2_cocycle",
]
