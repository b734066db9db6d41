from __future__ import annotations

import itertools
import random

import numpy as np
import pytest

from dualcat.algtools import (
    abelianize, center, check_exchange, check_natural, check_pentagon, eckmann_hilton,
    eckmann_hilton_exhaustive, eckmann_hilton_random, free_monoid_normalize, suspend_set,
)
from dualcat.algtools.checks import (
    all_operations, assoc_from_json, constant_associator, eh_batch, random_unital_ops, table_op, z2_cocycle,
)
from dualcat.algtools.finite import (
    FiniteCategory, FiniteMonoid, Functor, Morphism, StructureError, category_from_json, cyclic_monoid,
    discrete_category, endofunction_monoid, identity_functor, monoid_2category, monoid_from_table,
    one_object_category, poset_category, product_category, projections, random_category, random_monoid,
    symmetric_group, two_category_from_json,
)

from oracles import single_entry_is_cocycle


# -- monoids and categories -------------------------------------------------------------

def test_monoid_validation():
    with pytest.raises(StructureError):
        monoid_from_table([0, 1], 0, [[0, 1], [1, 1], [0, 0]])
    with pytest.raises(StructureError):
        monoid_from_table([0, 1], 1, [[0, 1], [1, 0]])
    # a table that is not associative: 1*1 = 2, 2*1 = 0, 1*2 = 1
    with pytest.raises(StructureError):
        monoid_from_table([0, 1, 2], 0, [[0, 1, 2], [1, 2, 1], [2, 0, 2]])
    assert len(symmetric_group(3)) == 6 and not symmetric_group(3).is_commutative()
    assert cyclic_monoid(4).is_commutative()


def test_random_monoids_are_monoids(rng):
    for _ in range(30):
        m = random_monoid(rng)
        assert 1 <= len(m) <= 5
        assert all(m.mul(m.unit, a) == a == m.mul(a, m.unit) for a in m.elems)


def test_category_validation():
    objs = ("a", "b")
    mors = (Morphism("1a", "a", "a"), Morphism("1b", "b", "b"), Morphism("f", "a", "b"))
    table = {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("1a", "f"): "f", ("f", "1b"): "f"}
    c = FiniteCategory(objs, mors, table, {"a": "1a", "b": "1b"})
    assert c.hom("a", "b") == ["f"]
    with pytest.raises(StructureError):
        FiniteCategory(objs, mors, {**table, ("f", "1b"): "1a"}, {"a": "1a", "b": "1b"})
    with pytest.raises(StructureError):
        FiniteCategory(objs, mors, {k: v for k, v in table.items() if k != ("1a", "f")}, {"a": "1a", "b": "1b"})


def test_category_json_round_trip():
    c = poset_category([0, 1, 2], lambda a, b: a <= b)
    back = category_from_json(c.to_json())
    assert back.objects == c.objects
    assert set(back.ids()) == set(c.ids())
    assert all(back.compose(f, g) == c.compose(f, g) for f, g in c.composable_pairs())


def test_product_counts():
    c = poset_category([0, 1], lambda a, b: a <= b)
    d = one_object_category(cyclic_monoid(3))
    p = product_category(c, d)
    assert len(p.objects) == 2 * 1
    assert len(p.morphisms) == 3 * 3
    assert len(list(p.composable_pairs())) == len(list(c.composable_pairs())) * len(list(d.composable_pairs()))


def test_projections_are_functors_and_square_commutes():
    c = poset_category([0, 1, 2], lambda a, b: a <= b)
    d = one_object_category(symmetric_group(3))
    p1, p2 = projections(c, d)
    prod = p1.source
    for f, g in prod.composable_pairs():
        assert p1(prod.compose(f, g)) == c.compose(p1(f), p1(g))
        assert p2(prod.compose(f, g)) == d.compose(p2(f), p2(g))
    # pairing a morphism of c with one of d and projecting recovers both
    for f in c.ids():
        for g in d.ids():
            assert p1((f, g)) == f and p2((f, g)) == g


def test_functor_violation_detected():
    c = one_object_category(cyclic_monoid(2))
    with pytest.raises(StructureError):
        Functor(c, c, {"*": "*"}, {0: 1, 1: 1})


# -- exchange ---------------------------------------------------------------------------

def test_exchange_commutative_monoid_passes():
    rep = check_exchange(monoid_2category(cyclic_monoid(3)))
    assert rep.valid
    assert rep.results[0].name == "exchange on 81 quadruples"


def test_exchange_noncommutative_fails():
    rep = check_exchange(monoid_2category(symmetric_group(3)))
    assert not rep.valid
    assert rep.failures()[0].witness


def test_exchange_perturbed_entry_fails():
    tc = monoid_2category(cyclic_monoid(3))
    data = tc.to_json()
    data["horizontal"][1][1] = 0
    bad = two_category_from_json(data)
    rep = check_exchange(bad)
    assert not rep.valid


def test_exchange_on_product_of_commutative_monoids():
    z2 = cyclic_monoid(2)
    elems = tuple(itertools.product(z2.elems, z2.elems))
    table = {(a, b): ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2) for a in elems for b in elems}
    assert check_exchange(monoid_2category(FiniteMonoid(elems, (0, 0), table))).valid


# -- naturality --------------------------------------------------------------------------

def test_naturality():
    z3 = one_object_category(cyclic_monoid(3))
    ident = identity_functor(z3)
    for k in range(3):
        assert check_natural(z3, z3, ident, ident, {"*": k}).valid
    s3 = one_object_category(symmetric_group(3))
    ident = identity_functor(s3)
    central = check_natural(s3, s3, ident, ident, {"*": (0, 1, 2)})
    assert central.valid
    rep = check_natural(s3, s3, ident, ident, {"*": (1, 0, 2)})
    assert not rep.valid and rep["naturality squares commute"].witness
    typed = check_natural(s3, s3, ident, ident, {"*": "nope"})
    assert not typed["components typed"].ok


# -- pentagon -----------------------------------------------------------------------------

def test_pentagon_known_cocycles():
    z2 = cyclic_monoid(2)
    assert check_pentagon(constant_associator(z2)).valid
    assert check_pentagon(z2_cocycle()).valid
    back = assoc_from_json(z2_cocycle().to_json())
    assert check_pentagon(back).valid


def test_pentagon_mutations_against_oracle():
    for base in (z2_cocycle(), constant_associator(cyclic_monoid(3))):
        m = base.objects
        flagged = 0
        for key in base.assoc:
            for factor in (-1, 2):
                mutated = base.with_entry(key, base.assoc[key] * factor)
                expected = single_entry_is_cocycle(m.elems, m.mul, key, factor)
                assert check_pentagon(mutated).valid == expected
                flagged += not expected
        assert flagged > 0


def test_constant_non_unit_associator():
    # a constant c gives c^3 on the long path and c^2 on the short one
    assert not check_pentagon(constant_associator(cyclic_monoid(2), 3)).valid


# -- Eckmann-Hilton ------------------------------------------------------------------------

def test_eh_exhaustive_counts():
    # on {e, o}: a unit fixes all but o*o, giving 2 operations per unit, so 2 * 2 * 2 = 8 pairs
    # share a unit; interchange forces op1 = op2, and both choices are associative
    s = eckmann_hilton_exhaustive(2)
    assert (s.pairs, s.unit_shared, s.interchange, s.counterexamples) == (256, 8, 4, 0)


def test_eh_batch_agrees_with_pure(rng):
    nrng = np.random.default_rng(rng.randrange(2**32))
    ops = random_unital_ops(nrng, 2, 300)
    holds, concl = eh_batch(ops[0], ops[1])
    elems = (0, 1)
    for i in range(300):
        o1 = table_op(elems, ops[0, i].tolist())
        o2 = table_op(elems, ops[1, i].tolist())
        v = eckmann_hilton(elems, o1, o2, 0)
        assert v.interchange == bool(holds[i])
        if v.interchange:
            assert v.conclusion == bool(concl[i])


def test_eh_random_has_no_counterexample(rng):
    s = eckmann_hilton_random(np.random.default_rng(rng.randrange(2**32)), 3, 20_000)
    assert s.counterexamples == 0
    assert s.interchange > 0


def test_eh_non_commutative_witness():
    # left-zero operation a*b = a has no unit; pairing it with itself fails the precondition
    elems = (0, 1)
    left = table_op(elems, [[0, 0], [1, 1]])
    v = eckmann_hilton(elems, left, left, 0)
    assert v.status == "precondition-failed"
    # distinct operations sharing the unit 0 break interchange instead of giving a counterexample
    o1 = table_op(elems, [[0, 1], [1, 0]])
    o2 = table_op(elems, [[0, 1], [1, 1]])
    v = eckmann_hilton(elems, o1, o2, 0)
    assert v.status == "interchange-fails" and v.witness


def test_all_operations_count():
    assert len(all_operations(2)) == 16


# -- centers and suspension -----------------------------------------------------------------

def test_monoid_centers():
    assert [a for a in center(symmetric_group(3)).elems] == [(0, 1, 2)]
    assert len(center(cyclic_monoid(5))) == 5


def test_set_center_is_endofunctions():
    z = center({"a", "b"})
    assert len(z) == 4
    assert z.unit == ("a", "b")
    # only the identity commutes with every constant map
    assert [f for f in z.elems if all(z.mul(f, g) == z.mul(g, f) for g in z.elems)] == [("a", "b")]


def test_category_center_oracle(rng):
    for _ in range(10):
        m = random_monoid(rng)
        z = center(one_object_category(m))
        central = {a for a in m.elems if all(m.mul(a, b) == m.mul(b, a) for b in m.elems)}
        assert {e[0] for e in z.elems} == central
        assert z.is_commutative()
    assert len(center(discrete_category([1, 2, 3]))) == 1
    assert len(center(poset_category([0, 1], lambda a, b: a <= b))) == 1


def test_category_center_is_commutative(rng):
    for n in (1, 2, 3):
        c = random_category(rng, n)
        assert center(c).is_commutative()


def test_product_center_is_product():
    c = one_object_category(cyclic_monoid(2))
    d = one_object_category(symmetric_group(3))
    z = center(product_category(c, d))
    assert len(z) == 2


def test_endofunction_center():
    for n in (1, 2, 3):
        assert len(center(endofunction_monoid(range(n)))) == 1


def test_suspension_and_abelianization():
    fm = suspend_set(["a", "b"])
    w = fm.mul(fm.word("ab"), fm.word("ba"))
    assert w == ("a", "b", "b", "a")
    assert fm.normalize(w) == w == free_monoid_normalize(w)
    assert fm.mul(fm.unit, w) == w
    assert abelianize(w) == {"a": 2, "b": 2}
    assert abelianize(("a", "b")) == abelianize(("b", "a"))
    with pytest.raises(StructureError):
        fm.word("c")
    with pytest.raises(StructureError):
        abelianize({"a": -1})


def test_center_rejects_unknown():
    with pytest.raises(StructureError):
        center(3)
    with pytest.raises(StructureError):
        center([1, 1])


def test_random_is_reproducible():
    a = random_monoid(random.Random(3))
    b = random_monoid(random.Random(3))
    assert a.same_as(b)
