from __future__ import annotations

import random

import pytest

from dualcat.dsl import ParseError, parse_term, parse_word
from dualcat.freecat import (
    EMPTY, XS, Braid, Cap, Compose, Cup, Id, LevelError, Tensor, TypeMismatch, X, adjoint, check_level,
    clamp_level, dagger, dom_cod, enumerate_terms, format_term, is_well_typed, min_level, size, word,
    word_star,
)


def random_term(rng: random.Random, depth: int, k: int = 3):
    """A random (possibly ill-typed) term tree."""
    if depth == 0 or rng.random() < 0.3:
        pool = [Id(EMPTY), Id((X,)), Id((XS,)), Id((X, XS)), Cup(), Cup(True), Cap(), Cap(True)]
        if k >= 2:
            pool += [Braid(rng.choice([X, XS]), rng.choice([X, XS]), rng.random() < 0.5)]
        return rng.choice(pool)
    op = rng.choice([Compose, Tensor])
    return op(random_term(rng, depth - 1, k), random_term(rng, depth - 1, k))


def test_dom_cod_examples():
    assert dom_cod(Cup()) == (EMPTY, (X, XS))
    tri = Compose(Tensor(Cup(), Id((X,))), Tensor(Id((X,)), Cap()))
    assert dom_cod(tri) == ((X,), (X,))
    with pytest.raises(TypeMismatch):
        dom_cod(Compose(Cup(), Cup()))


def test_generator_types():
    assert dom_cod(Cup(True)) == (EMPTY, (XS, X))
    assert dom_cod(Cap()) == ((XS, X), EMPTY)
    assert dom_cod(Cap(True)) == ((X, XS), EMPTY)
    assert dom_cod(Braid(X, XS)) == ((X, XS), (XS, X))
    assert dom_cod(Braid(X, XS, inverse=True)) == ((XS, X), (X, XS))


def test_word_star():
    assert word_star((X, X)) == (XS, XS)
    assert word_star(EMPTY) == EMPTY
    assert word_star((X, XS, XS)) == (X, X, XS)
    rng = random.Random(0)
    for n in range(7):
        w = tuple(rng.choice([X, XS]) for _ in range(n))
        assert word_star(word_star(w)) == w


def test_level_legality():
    with pytest.raises(LevelError):
        check_level(Braid(X, X), 1)
    with pytest.raises(LevelError):
        check_level(Tensor(Id((X,)), Id((X,))), 0)
    with pytest.raises(LevelError):
        check_level(Cup(), 0)
    check_level(Braid(X, X), 2)
    assert clamp_level(7) == 3
    assert min_level(Braid(X, X)) == 2
    assert min_level(Compose(Id((X,)), Id((X,)))) == 0


def test_dagger_examples():
    assert dagger(Cap()) == Cup(True)
    assert dagger(Cup()) == Cap(True)
    assert dagger(Id((X, XS))) == Id((X, XS))
    assert dagger(Braid(X, XS)) == Braid(X, XS, inverse=True)


def test_dagger_reverses_composition(rng):
    checked = 0
    while checked < 50:
        f, g = random_term(rng, 3), random_term(rng, 3)
        t = Compose(f, g)
        assert dagger(t) == Compose(dagger(g), dagger(f))
        if is_well_typed(t):
            d, c = dom_cod(t)
            assert dom_cod(dagger(t)) == (c, d)
        assert size(t) <= 31
        checked += 1


def test_dagger_is_an_involution(rng):
    for _ in range(100):
        t = random_term(rng, 4)
        assert dagger(dagger(t)) == t


def test_adjoint_type():
    seen = 0
    for t in enumerate_terms(5, 1)[:400]:
        d, c = dom_cod(t)
        assert dom_cod(adjoint(t)) == (word_star(c), word_star(d))
        seen += 1
    assert seen == 400
    # (x @ x*)* reverses and stars, giving x @ x* again
    assert dom_cod(adjoint(Cup())) == ((X, XS), EMPTY)
    assert dom_cod(adjoint(Id((X,)))) == ((XS,), (XS,))


def test_enumeration_counts():
    # frozen from the first run; the counts double as a regression check on the enumerator
    assert len(enumerate_terms(5, 1)) == 1089
    assert len(enumerate_terms(5, 3)) == 8745
    assert enumerate_terms(5, 4) == enumerate_terms(5, 3)
    assert all(is_well_typed(t) for t in enumerate_terms(5, 2))
    assert all(size(t) <= 5 for t in enumerate_terms(5, 3))


def test_parse_examples():
    t = parse_term("cup ; cap*")
    assert t == Compose(Cup(), Cap(True))
    assert dom_cod(t) == (EMPTY, EMPTY)
    tri = parse_term("(cup @ id(x)) ; (id(x) @ cap)")
    assert tri == Compose(Tensor(Cup(), Id((X,))), Tensor(Id((X,)), Cap()))
    assert dom_cod(tri) == ((X,), (X,))
    assert parse_term("id(x) ; id(x) ; id(x)") == Compose(Compose(Id((X,)), Id((X,))), Id((X,)))
    assert parse_term("cup @ cup ; id(x @ x* @ x @ x*)") == Compose(Tensor(Cup(), Cup()), Id((X, XS, X, XS)))
    assert parse_word("x @ x*") == (X, XS)
    assert parse_word("1") == EMPTY


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as exc:
        parse_term("cup ;")
    assert exc.value.col == 6
    with pytest.raises(ParseError):
        parse_term("cup @ (cap")
    with pytest.raises(ParseError):
        parse_term("b(x)")


def test_parse_does_not_typecheck():
    t = parse_term("cup ; cup")
    with pytest.raises(TypeMismatch):
        dom_cod(t)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_printer_round_trip(k):
    for t in enumerate_terms(5, k):
        assert parse_term(format_term(t)) == t


def test_printer_round_trip_random(rng):
    for _ in range(300):
        t = random_term(rng, 5)
        assert parse_term(format_term(t)) == t


def test_word_helper():
    assert word("x", XS) == (X, XS)
