"""Independent reference computations used by the tests."""

from __future__ import annotations

import itertools
from fractions import Fraction


def matmul(a, b):
    """Plain nested-list product."""
    return [[sum((a[i][t] * b[t][j] for t in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def kron_entry(a, b, i, j):
    """Entry of ``a (x) b`` by index arithmetic."""
    rb, cb = len(b), len(b[0])
    return a[i // rb][j // cb] * b[i % rb][j % cb]


def cocycle_exponents(elems, mul, key):
    """Signed number of times ``key`` occurs on the two pentagon paths, per quadruple."""
    out = {}
    for w, x, y, z in itertools.product(elems, repeat=4):
        long = [(w, x, y), (w, mul(x, y), z), (x, y, z)]
        short = [(mul(w, x), y, z), (w, x, mul(y, z))]
        out[w, x, y, z] = long.count(key) - short.count(key)
    return out


def single_entry_is_cocycle(elems, mul, key, factor) -> bool:
    """Multiplying a cocycle by ``factor`` at ``key`` alone keeps it a cocycle iff
    ``factor ** n == 1`` for every pentagon exponent ``n``."""
    return all(Fraction(factor) ** n == 1 for n in cocycle_exponents(elems, mul, key).values())


def moyal_oracle():
    """Truncated Moyal data from sympy differentiation on the monomial basis."""
    import sympy as sp

    u, v = sp.symbols("u v")
    basis = [sp.Integer(1), u, v, u**2, u * v, v**2]

    def truncate(expr):
        poly = sp.Poly(sp.expand(expr), u, v)
        return sum((c * u**i * v**j for (i, j), c in poly.terms() if i + j <= 2), sp.Integer(0))

    def coords(expr):
        poly = sp.Poly(sp.expand(expr), u, v) if expr != 0 else None
        out = [Fraction(0)] * 6
        if poly is None:
            return out
        for (i, j), c in poly.terms():
            if i + j <= 2:
                out[[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)].index((i, j))] = Fraction(str(c))
        return out

    def m1(a, b):
        return sp.Rational(1, 2) * (sp.diff(a, u) * sp.diff(b, v) - sp.diff(a, v) * sp.diff(b, u))

    def bracket(a, b):
        return m1(a, b) - m1(b, a)

    def prod(a, b):
        return truncate(a * b)

    results = {"m1": {}, "leibniz": {}, "order_h": {}}
    for i, j in itertools.product(range(6), repeat=2):
        results["m1"][i, j] = coords(truncate(m1(basis[i], basis[j])))
    for i, j, k in itertools.product(range(6), repeat=3):
        a, b, c = basis[i], basis[j], basis[k]
        lhs = truncate(bracket(a, prod(b, c)))
        rhs = truncate(prod(truncate(bracket(a, b)), c) + prod(b, truncate(bracket(a, c))))
        results["leibniz"][i, j, k] = coords(lhs) == coords(rhs)
        tm1 = lambda p, q: truncate(m1(p, q))  # noqa: E731
        lo = truncate(prod(a, tm1(b, c)) + tm1(a, prod(b, c)))
        ro = truncate(prod(tm1(a, b), c) + tm1(prod(a, b), c))
        results["order_h"][i, j, k] = coords(lo) == coords(ro)
    return results


def torus_contraction(unit, mult, trace, copairing):
    """Genus-one value from nested lists: unit, comultiplication via the copairing, product, trace.

    With ``mult[c][i*d + j]`` the structure constants, the handle sends the unit
    to ``sum m[c; i, j] m[i; k, l] Q[l, j] u_k`` in coordinate ``c``.
    """
    d = len(unit)
    total = Fraction(0)
    for c, i, j, k, l in itertools.product(range(d), repeat=5):
        total += trace[0][c] * mult[c][i * d + j] * mult[i][k * d + l] * copairing[l * d + j][0] * unit[k][0]
    return total
