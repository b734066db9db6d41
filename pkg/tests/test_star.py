from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from dualcat.algtools.star import (
    MONOMIAL_NAMES, StarData, StarDataError, heisenberg_star, perturb_m1, star_check, star_from_json,
    truncated_moyal, truncated_polynomials, zero_star,
)
from dualcat.rigalg import Rig, RigMatrix

from oracles import moyal_oracle


@pytest.fixture(scope="module")
def oracle():
    return moyal_oracle()


def column(m: RigMatrix, i: int, j: int, d: int) -> list:
    return [m[r, i * d + j] for r in range(d)]


def first_failure(table: dict) -> str | None:
    for key in itertools.product(range(6), repeat=3):
        if not table[key]:
            return "basis triple (" + ", ".join(MONOMIAL_NAMES[i] for i in key) + ")"
    return None


def test_m1_matches_sympy(oracle):
    sd = truncated_moyal()
    for (i, j), coords in oracle["m1"].items():
        assert column(sd.m1, i, j, 6) == coords


def test_moyal_failures_match_sympy(oracle):
    rep = star_check(truncated_moyal())
    leibniz = rep["bracket Leibniz rule"]
    order_h = rep["order h associativity"]
    assert not leibniz.ok and leibniz.witness == first_failure(oracle["leibniz"])
    assert not order_h.ok and order_h.witness == first_failure(oracle["order_h"])
    assert rep["bracket antisymmetry"].ok
    assert rep["bracket Jacobi identity"].ok
    assert not rep["order h^2 associativity"].ok


def test_leibniz_counterexample_by_hand():
    # {v, u^2 u} vanishes after truncation, {v, u^2} u + u^2 {v, u} = -3 u^2 does not
    sd = truncated_moyal()
    u, v, uu = sd.e(1), sd.e(2), sd.e(3)
    assert sd.bracket(v, sd.prod(uu, u)) == (0,) * 6
    lhs = [a + b for a, b in zip(sd.prod(sd.bracket(v, uu), u), sd.prod(uu, sd.bracket(v, u)))]
    assert lhs == [0, 0, 0, -3, 0, 0]


def test_moyal_perturbations_fail(rng):
    sd = truncated_moyal()
    for _ in range(20):
        bad, _ = perturb_m1(sd, rng)
        assert not star_check(bad).valid


def test_zero_deformation_passes():
    assert star_check(zero_star(truncated_polynomials(), 6, MONOMIAL_NAMES)).valid


def test_heisenberg_passes():
    sd = heisenberg_star()
    assert star_check(sd).valid
    x, y, z = sd.e(1), sd.e(2), sd.e(3)
    assert sd.bracket(x, y) == (0, 0, 0, 1)
    assert sd.bracket(x, z) == (0,) * 4


def test_heisenberg_unit_perturbations():
    # frozen from the first run: only z-valued shifts on (1, 1) and on pairs from {x, y} stay valid
    sd = heisenberg_star()
    d = 4
    survivors = set()
    for row in range(d):
        for col in range(d * d):
            entries = list(sd.m1.entries)
            entries[row * d * d + col] += 1
            rep = star_check(sd.with_m1(RigMatrix(Rig.RATIONAL, d, d * d, tuple(entries))))
            if rep.valid:
                survivors.add((row, divmod(col, d)))
    assert survivors == {(3, (0, 0)), (3, (1, 1)), (3, (1, 2)), (3, (2, 1)), (3, (2, 2))}


def test_algebra_must_be_commutative():
    d = 2
    # 2-dim with e1 * e1 = e1 on one side only
    cols = [(1, 0), (0, 1), (0, 1), (0, 0)]
    mult = RigMatrix(Rig.RATIONAL, d, d * d, tuple(Fraction(cols[c][r]) for r in range(d) for c in range(d * d)))
    zero = RigMatrix(Rig.RATIONAL, d, d * d, (Fraction(0),) * 8)
    StarData(d, mult, zero, zero)
    bad = list(cols)
    bad[2] = (0, 0)
    mult_bad = RigMatrix(Rig.RATIONAL, d, d * d, tuple(Fraction(bad[c][r]) for r in range(d) for c in range(d * d)))
    with pytest.raises(StarDataError):
        StarData(d, mult_bad, zero, zero)


def test_json_round_trip():
    sd = heisenberg_star()
    back = star_from_json(sd.to_json())
    assert back.basis == sd.basis
    assert star_check(back).valid
    with pytest.raises(StarDataError):
        star_from_json({"dim": 2})
