from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualcat.rigalg import (
    ComplexRational, Rig, RigMatrix, RigMismatchError, ShapeError, UnsupportedOperation, dagger_matrix,
    identity, inverse, kron, mat_add, mat_mul, mat_sub, matrices_equal, permute_factors, swap_matrix,
    trace, transpose,
)

from oracles import kron_entry, matmul

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
naturals = st.integers(min_value=0, max_value=50)
integers = st.integers(min_value=-50, max_value=50)
complexes = st.builds(ComplexRational, fractions, fractions)

CARRIERS = {Rig.NATURAL: naturals, Rig.INTEGER: integers, Rig.RATIONAL: fractions, Rig.COMPLEX: complexes}


@pytest.mark.parametrize("rig", list(CARRIERS))
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_rig_laws(rig, data):
    a, b, c = (data.draw(CARRIERS[rig]) for _ in range(3))
    assert rig.add(rig.add(a, b), c) == rig.add(a, rig.add(b, c))
    assert rig.mul(rig.mul(a, b), c) == rig.mul(a, rig.mul(b, c))
    assert rig.add(a, b) == rig.add(b, a)
    assert rig.mul(a, b) == rig.mul(b, a)
    assert rig.add(a, rig.zero) == a
    assert rig.mul(a, rig.one) == a
    assert rig.mul(a, rig.add(b, c)) == rig.add(rig.mul(a, b), rig.mul(a, c))


def test_float_laws_within_tolerance():
    r = Rig.FLOAT
    rng = random.Random(3)
    for _ in range(100):
        a, b, c = (rng.uniform(-5, 5) for _ in range(3))
        assert r.close(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)))


def test_construction_rejects_bad_entries():
    with pytest.raises(ShapeError):
        RigMatrix(Rig.RATIONAL, 2, 2, (Fraction(1),) * 3)
    with pytest.raises(RigMismatchError):
        RigMatrix(Rig.RATIONAL, 1, 2, (Fraction(1), 2))
    with pytest.raises(RigMismatchError):
        RigMatrix(Rig.NATURAL, 1, 1, (-1,))
    with pytest.raises(RigMismatchError):
        mat_mul(identity(2, Rig.RATIONAL), identity(2, Rig.INTEGER))


def test_mat_mul_examples():
    assert matrices_equal(mat_mul(identity(2), identity(2)), identity(2))
    a = RigMatrix.from_rows(Rig.NATURAL, [[1, 1], [0, 1]])
    b = RigMatrix.from_rows(Rig.NATURAL, [[1, 0], [1, 1]])
    assert mat_mul(a, b).tolist() == [[2, 1], [1, 1]]
    with pytest.raises(ShapeError):
        mat_mul(identity(2), identity(3))


def _rand(rng, rows, cols, rig=Rig.RATIONAL):
    return RigMatrix.from_rows(rig, [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols)]
                                     for _ in range(rows)])


def test_mat_mul_matches_nested_list_oracle(rng):
    for _ in range(20):
        a, b = _rand(rng, 3, 2), _rand(rng, 2, 4)
        assert mat_mul(a, b).tolist() == matmul(a.tolist(), b.tolist())


def test_trace_is_cyclic(rng):
    for _ in range(20):
        a, b = _rand(rng, 3, 3), _rand(rng, 3, 3)
        assert trace(mat_mul(a, b)) == trace(mat_mul(b, a))


def test_kron_examples_and_oracle(rng):
    assert matrices_equal(kron(identity(2), identity(3)), identity(6))
    x = RigMatrix.from_rows(Rig.RATIONAL, [[0, 1], [1, 0]])
    assert kron(x, RigMatrix.from_rows(Rig.RATIONAL, [[2]])).tolist() == [[0, 2], [2, 0]]
    a, b = _rand(rng, 2, 3), _rand(rng, 3, 2)
    k = kron(a, b)
    assert all(k[i, j] == kron_entry(a.tolist(), b.tolist(), i, j) for i in range(6) for j in range(6))


def test_kron_interchange(rng):
    for _ in range(20):
        a, b, c, d = (_rand(rng, 2, 2) for _ in range(4))
        assert matrices_equal(mat_mul(kron(a, b), kron(c, d)), kron(mat_mul(a, c), mat_mul(b, d)))


def test_swap_matrix():
    for d in range(1, 5):
        assert matrices_equal(swap_matrix(1, d), identity(d))
    s = swap_matrix(2, 2)
    perm = [max(range(4), key=lambda j: s[i, j]) for i in range(4)]
    assert perm == [0, 2, 1, 3]
    for d1 in range(1, 5):
        for d2 in range(1, 5):
            assert matrices_equal(mat_mul(swap_matrix(d2, d1), swap_matrix(d1, d2)), identity(d1 * d2))


def test_swap_conjugates_kron(rng):
    a, b = _rand(rng, 2, 2), _rand(rng, 3, 3)
    lhs = mat_mul(swap_matrix(2, 3), kron(a, b))
    rhs = mat_mul(kron(b, a), swap_matrix(2, 3))
    assert matrices_equal(lhs, rhs)


def test_permute_factors_cycle():
    p = permute_factors(2, [1, 2, 0])
    assert matrices_equal(mat_mul(mat_mul(p, p), p), identity(8))


def test_dagger_matrix():
    assert matrices_equal(dagger_matrix(identity(3, Rig.COMPLEX)), identity(3, Rig.COMPLEX))
    i = ComplexRational(Fraction(0), Fraction(1))
    m = RigMatrix(Rig.COMPLEX, 1, 1, (i,))
    assert dagger_matrix(m).entries == (ComplexRational(Fraction(0), Fraction(-1)),)
    with pytest.raises(UnsupportedOperation):
        dagger_matrix(identity(2, Rig.NATURAL))


@settings(max_examples=30, deadline=None)
@given(st.lists(complexes, min_size=6, max_size=6))
def test_dagger_is_an_involution(vals):
    m = RigMatrix(Rig.COMPLEX, 2, 3, tuple(vals))
    assert matrices_equal(dagger_matrix(dagger_matrix(m)), m)
    assert dagger_matrix(m).shape == (3, 2)


def test_transpose_reverses_products(rng):
    a, b = _rand(rng, 2, 3), _rand(rng, 3, 2)
    assert matrices_equal(transpose(mat_mul(a, b)), mat_mul(transpose(b), transpose(a)))


def test_inverse(rng):
    a = RigMatrix.from_rows(Rig.RATIONAL, [[2, 1], [1, 1]])
    assert matrices_equal(mat_mul(a, inverse(a)), identity(2))
    with pytest.raises(UnsupportedOperation):
        inverse(RigMatrix.from_rows(Rig.RATIONAL, [[1, 2], [2, 4]]))
    with pytest.raises(UnsupportedOperation):
        inverse(RigMatrix.from_rows(Rig.INTEGER, [[2, 0], [0, 1]]))
    assert inverse(RigMatrix.from_rows(Rig.INTEGER, [[1, 1], [0, 1]])).tolist() == [[1, -1], [0, 1]]


def test_natural_subtraction_refused():
    with pytest.raises(UnsupportedOperation):
        mat_sub(identity(2, Rig.NATURAL), identity(2, Rig.NATURAL))
    assert mat_add(identity(1, Rig.NATURAL), identity(1, Rig.NATURAL)).tolist() == [[2]]


def test_json_round_trip():
    m = RigMatrix.from_rows(Rig.COMPLEX, [[{"re": "1/2", "im": "-3"}, 0]])
    assert matrices_equal(RigMatrix.from_json(m.to_json()), m)
