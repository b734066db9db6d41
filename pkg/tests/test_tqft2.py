from __future__ import annotations

import random
from fractions import Fraction

import pytest

from dualcat.rigalg import Rig, RigMatrix, UnsupportedOperation, identity, kron_all, matrices_equal
from dualcat.tqft2 import (
    Birth, Death, Merge, Movie, MovieError, Split, Swap, change_basis, check_movie_moves, diagonal_algebra,
    eval_movie, genus_movie, group_algebra, make_frobenius, movie_from_json, mutate_mult, random_frobenius,
    slice_matrix, surface_by_handles, surface_invariant, torus_by_contraction, trivial_algebra,
    validate_frobenius,
)


def test_movie_counts_and_errors():
    mv = genus_movie(2)
    assert mv.counts() == [0, 1, 2, 1, 2, 1, 0]
    with pytest.raises(MovieError):
        Movie(1, (Merge(0),))
    with pytest.raises(MovieError):
        Movie(2, (Split(2),))
    with pytest.raises(MovieError):
        movie_from_json({"in": 0, "slices": [{"op": "birth"}], "out": 2})
    back = movie_from_json(mv.to_json())
    assert back == mv


def test_movie_gluing():
    a = Movie(0, (Birth(0),))
    assert a.then(Movie(1, (Death(0),))).out_circles == 0
    with pytest.raises(MovieError):
        a.then(Movie(2))
    both = a.beside(Movie(1, (Split(0),)))
    assert both.in_circles == 1 and both.out_circles == 3


def test_slice_matrix_is_padded_block():
    fd = group_algebra(2)
    s = slice_matrix(Merge(1), 3, fd)
    assert s.shape == (4, 8)
    assert matrices_equal(s, kron_all([identity(2), fd.mult]))
    assert matrices_equal(slice_matrix(Swap(0), 2, fd), eval_movie(Movie(2, (Swap(0),)), fd))


def test_empty_movie_is_identity():
    fd = group_algebra(3)
    for n in range(3):
        assert matrices_equal(eval_movie(Movie(n), fd), identity(3 ** n))


def test_trivial_algebra_gives_one():
    fd = trivial_algebra()
    assert validate_frobenius(fd).valid
    assert [surface_invariant(g, fd) for g in range(6)] == [1] * 6


def test_zero_trace_fails():
    fd = make_frobenius(Rig.RATIONAL, 1, [1], [1], [0], copairing=[1])
    rep = validate_frobenius(fd)
    assert {r.name for r in rep.failures()} == {"snake left", "snake right"}
    with pytest.raises(UnsupportedOperation):
        surface_invariant(1, fd)
    with pytest.raises(UnsupportedOperation):
        make_frobenius(Rig.RATIONAL, 1, [1], [1], [0])


def group_oracle(n: int, scale: Fraction, g: int) -> Fraction:
    # a group algebra with trace scale * (coefficient of e) has handle operator n/scale
    return scale * (Fraction(n) / scale) ** g


def diagonal_oracle(weights, g: int) -> Fraction:
    return sum(Fraction(w) ** (1 - g) for w in weights)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("scale", [Fraction(1), Fraction(2), Fraction(-1, 3)])
def test_group_algebras_against_formula(n, scale):
    fd = group_algebra(n, scale)
    assert validate_frobenius(fd).valid
    for g in range(5):
        assert surface_invariant(g, fd) == group_oracle(n, scale, g)


def test_z2_values_frozen():
    assert [surface_invariant(g, group_algebra(2)) for g in range(4)] == [1, 2, 4, 8]


def test_diagonal_algebras_against_formula():
    for weights in ([1], [1, 2], [Fraction(1, 2), 3, -1]):
        fd = diagonal_algebra(weights)
        for g in range(5):
            assert surface_invariant(g, fd) == diagonal_oracle(weights, g)


def test_basis_change_preserves_invariants(rng):
    fd = group_algebra(3, 2)
    g = RigMatrix.from_rows(Rig.RATIONAL, [[1, 1, 0], [0, 1, 2], [1, 0, 1]])
    other = change_basis(fd, g)
    assert validate_frobenius(other).valid
    assert not matrices_equal(other.mult, fd.mult)
    for genus in range(4):
        assert surface_invariant(genus, other) == surface_invariant(genus, fd)


def test_random_data_pass_moves_and_torus(rng):
    for _ in range(20):
        fd = random_frobenius(rng)
        assert validate_frobenius(fd).valid
        assert check_movie_moves(fd).valid
        torus = surface_invariant(1, fd)
        assert torus == torus_by_contraction(fd) == fd.dim
        for genus in range(4):
            assert surface_invariant(genus, fd) == surface_by_handles(genus, fd)


def test_mutations_are_caught(rng):
    caught = 0
    for _ in range(50):
        bad, _ = mutate_mult(random_frobenius(rng), rng)
        rep = validate_frobenius(bad)
        caught += not rep.valid
        assert rep.failures()[0].witness
    assert caught == 50


def test_natural_rig_needs_copairing():
    with pytest.raises(UnsupportedOperation):
        make_frobenius(Rig.NATURAL, 1, [1], [1], [1])
    fd = make_frobenius(Rig.NATURAL, 1, [1], [1], [1], copairing=[1])
    assert validate_frobenius(fd).valid
    assert surface_invariant(3, fd) == 1


def test_random_is_reproducible():
    a = random_frobenius(random.Random(7))
    b = random_frobenius(random.Random(7))
    assert a.dim == b.dim and matrices_equal(a.mult, b.mult) and matrices_equal(a.trace, b.trace)
