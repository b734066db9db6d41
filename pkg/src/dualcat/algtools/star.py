"""Order-by-order associativity of truncated star products, and the Poisson bracket.

For ``a * b = ab + h m1(a, b) + h^2 m2(a, b)`` associativity up to ``h^2`` reads

    order h:    a m1(b, c) + m1(a, bc) = m1(a, b) c + m1(ab, c)
    order h^2:  a m2(b, c) + m1(a, m1(b, c)) + m2(a, bc)
              = m2(a, b) c + m1(m1(a, b), c) + m2(ab, c)

and the bracket is ``{a, b} = m1(a, b) - m1(b, a)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from ..report import Report
from ..rigalg import Rig, RigMatrix, matrix_from_json

Vec = tuple


class StarDataError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StarData:
    """A commutative algebra ``A`` (``mult``: ``d x d^2``) with bilinear ``m1``, ``m2``."""

    dim: int
    mult: RigMatrix
    m1: RigMatrix
    m2: RigMatrix
    basis: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        d = self.dim
        for name, m in (("mult", self.mult), ("m1", self.m1), ("m2", self.m2)):
            if m.shape != (d, d * d):
                raise StarDataError(f"{name} must be {d}x{d * d}, got {m.rows}x{m.cols}")
            if m.rig is not Rig.RATIONAL:
                raise StarDataError(f"{name} must be rational")
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(d)))
        if len(self.basis) != d:
            raise StarDataError("basis names do not match the dimension")
        for i, j in itertools.product(range(d), repeat=2):
            if self.prod(self.e(i), self.e(j)) != self.prod(self.e(j), self.e(i)):
                raise StarDataError(f"A is not commutative at ({self.basis[i]}, {self.basis[j]})")
        for i, j, k in itertools.product(range(d), repeat=3):
            a, b, c = self.e(i), self.e(j), self.e(k)
            if self.prod(self.prod(a, b), c) != self.prod(a, self.prod(b, c)):
                raise StarDataError(f"A is not associative at {self.name(i, j, k)}")

    def e(self, i: int) -> Vec:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def name(self, *idx: int) -> str:
        return "(" + ", ".join(self.basis[i] for i in idx) + ")"

    def prod(self, a: Vec, b: Vec) -> Vec:
        return apply_bilinear(self.mult, a, b)

    def b1(self, a: Vec, b: Vec) -> Vec:
        return apply_bilinear(self.m1, a, b)

    def b2(self, a: Vec, b: Vec) -> Vec:
        return apply_bilinear(self.m2, a, b)

    def bracket(self, a: Vec, b: Vec) -> Vec:
        return sub(self.b1(a, b), self.b1(b, a))

    def with_m1(self, m1: RigMatrix) -> StarData:
        return StarData(self.dim, self.mult, m1, self.m2, self.basis)

    def to_json(self) -> dict[str, Any]:
        return {"basis": list(self.basis), "dim": self.dim, "m1": self.m1.to_json(),
                "m2": self.m2.to_json(), "mult": self.mult.to_json()}


def apply_bilinear(m: RigMatrix, a: Vec, b: Vec) -> Vec:
    d = len(a)
    out = []
    for c in range(m.rows):
        s = Fraction(0)
        row = c * m.cols
        for i in range(d):
            if a[i]:
                for j in range(d):
                    if b[j]:
                        s += m.entries[row + i * d + j] * a[i] * b[j]
        out.append(s)
    return tuple(out)


def add(*vs: Vec) -> Vec:
    return tuple(sum(xs, Fraction(0)) for xs in zip(*vs))


def sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def star_check(sd: StarData) -> Report:
    rep = Report(f"star product (dim {sd.dim})")
    d = sd.dim
    triples = list(itertools.product(range(d), repeat=3))
    p, b1, b2, br = sd.prod, sd.b1, sd.b2, sd.bracket

    def first(pred) -> str | None:
        for t in triples:
            a, b, c = (sd.e(i) for i in t)
            lhs, rhs = pred(a, b, c)
            if lhs != rhs:
                return f"basis triple {sd.name(*t)}"
        return None

    w = first(lambda a, b, c: (add(p(a, b1(b, c)), b1(a, p(b, c))), add(p(b1(a, b), c), b1(p(a, b), c))))
    rep.add("order h associativity", w is None, w)
    w = first(lambda a, b, c: (add(p(a, b2(b, c)), b1(a, b1(b, c)), b2(a, p(b, c))),
                               add(p(b2(a, b), c), b1(b1(a, b), c), b2(p(a, b), c))))
    rep.add("order h^2 associativity", w is None, w)
    anti = None
    for i, j in itertools.product(range(d), repeat=2):
        x, y = sd.e(i), sd.e(j)
        if br(x, y) != tuple(-v for v in br(y, x)):
            anti = f"basis pair {sd.name(i, j)}"
            break
    rep.add("bracket antisymmetry", anti is None, anti)
    w = first(lambda a, b, c: (br(a, p(b, c)), add(p(br(a, b), c), p(b, br(a, c)))))
    rep.add("bracket Leibniz rule", w is None, w)
    zero = tuple(Fraction(0) for _ in range(d))
    w = first(lambda a, b, c: (add(br(a, br(b, c)), br(b, br(c, a)), br(c, br(a, b))), zero))
    rep.add("bracket Jacobi identity", w is None, w)
    return rep


# -- examples -------------------------------------------------------------------------------

def _matrix(d: int, f) -> RigMatrix:
    """``d x d^2`` matrix whose column ``i*d + j`` is ``f(i, j)``."""
    cols = [f(i, j) for i in range(d) for j in range(d)]
    return RigMatrix(Rig.RATIONAL, d, d * d, tuple(cols[col][row] for row in range(d) for col in range(d * d)))


def zero_star(mult: RigMatrix, dim: int, basis: Sequence[str] = ()) -> StarData:
    z = RigMatrix(Rig.RATIONAL, dim, dim * dim, (Fraction(0),) * (dim ** 3))
    return StarData(dim, mult, z, z, tuple(basis))


MONOMIALS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
MONOMIAL_NAMES = ("1", "u", "v", "u^2", "uv", "v^2")


def _mono_vec(exp: tuple[int, int], coeff: Fraction) -> Vec:
    out = [Fraction(0)] * len(MONOMIALS)
    if exp in MONOMIALS and coeff:
        out[MONOMIALS.index(exp)] = coeff
    return tuple(out)


def _deriv(exp: tuple[int, int], du: int, dv: int) -> tuple[tuple[int, int], Fraction]:
    i, j = exp
    if du > i or dv > j:
        return (0, 0), Fraction(0)
    c = Fraction(1)
    for t in range(du):
        c *= i - t
    for t in range(dv):
        c *= j - t
    return (i - du, j - dv), c


def _bidiff(terms: Sequence[tuple[Fraction, tuple[int, int], tuple[int, int]]]):
    """Bilinear map ``sum coeff * (d^p a)(d^q b)`` on monomials, truncated."""
    def f(i: int, j: int) -> Vec:
        acc = tuple(Fraction(0) for _ in MONOMIALS)
        for coeff, (pu, pv), (qu, qv) in terms:
            ea, ca = _deriv(MONOMIALS[i], pu, pv)
            eb, cb = _deriv(MONOMIALS[j], qu, qv)
            exp = (ea[0] + eb[0], ea[1] + eb[1])
            acc = add(acc, _mono_vec(exp, coeff * ca * cb))
        return acc
    return f


def truncated_polynomials() -> RigMatrix:
    """``Q[u, v]`` modulo total degree >= 3, basis ``1, u, v, u^2, uv, v^2``."""
    return _matrix(6, _bidiff([(Fraction(1), (0, 0), (0, 0))]))


def truncated_moyal() -> StarData:
    half, eighth = Fraction(1, 2), Fraction(1, 8)
    m1 = _matrix(6, _bidiff([(half, (1, 0), (0, 1)), (-half, (0, 1), (1, 0))]))
    m2 = _matrix(6, _bidiff([(eighth, (2, 0), (0, 2)), (-2 * eighth, (1, 1), (1, 1)), (eighth, (0, 2), (2, 0))]))
    return StarData(6, truncated_polynomials(), m1, m2, MONOMIAL_NAMES)


def heisenberg_star() -> StarData:
    """``A = span(1, x, y, z)`` with all products of ``x, y, z`` zero, and
    ``m1(x, y) = z/2 = -m1(y, x)``: every check passes, with a nonzero bracket."""
    d = 4
    names = ("1", "x", "y", "z")

    def mult(i, j):
        v = [Fraction(0)] * d
        if i == 0:
            v[j] = Fraction(1)
        elif j == 0:
            v[i] = Fraction(1)
        return tuple(v)

    def m1(i, j):
        v = [Fraction(0)] * d
        if (i, j) == (1, 2):
            v[3] = Fraction(1, 2)
        elif (i, j) == (2, 1):
            v[3] = Fraction(-1, 2)
        return tuple(v)

    zero = _matrix(d, lambda i, j: (Fraction(0),) * d)
    return StarData(d, _matrix(d, mult), _matrix(d, m1), zero, names)


def perturb_m1(sd: StarData, rng: random.Random) -> tuple[StarData, tuple[int, int]]:
    entries = list(sd.m1.entries)
    idx = rng.randrange(len(entries))
    delta = Fraction(0)
    while not delta:
        delta = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    entries[idx] += delta
    m1 = RigMatrix(Rig.RATIONAL, sd.m1.rows, sd.m1.cols, tuple(entries))
    return sd.with_m1(m1), divmod(idx, sd.m1.cols)


def star_from_json(obj: Mapping[str, Any]) -> StarData:
    try:
        d = int(obj["dim"])
        mats = [matrix_from_json(obj[k], Rig.RATIONAL, d, d * d) for k in ("mult", "m1", "m2")]
    except KeyError as exc:
        raise StarDataError(f"star data missing key {exc}") from None
    return StarData(d, *mats, tuple(obj.get("basis", ())))


__all__ = [
    "MONOMIALS", "MONOMIAL_NAMES", "StarData", "StarDataError", "apply_bilinear", "heisenberg_star",
    "perturb_m1", "star_check", "star_from_json", "truncated_moyal", "truncated_polynomials", "zero_star",
]
