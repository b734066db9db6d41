"""Representation functors: terms of C_{1,k} evaluated as rig matrices.

A datum fixes the image of ``x`` (a space of dimension ``d``, the image of
``x*`` has the same dimension) and of every generator.  The functor sends
``f ; g`` to ``Z(g) Z(f)`` and ``f @ g`` to ``kron(Z(f), Z(g))``; a word of
length ``n`` goes to dimension ``d**n`` with the Kronecker basis order.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Sequence

from .dsl import parse_term
from .freecat import (
    EMPTY, X, XS, Braid, Cap, Compose, Cup, Id, Letter, LevelError, Tensor, Term, adjoint,
    check_level, clamp_level, compose, dagger, dom_cod, tensor,
)
from .report import Report
from .rigalg import (
    ComplexRational, Rig, RigError, RigMatrix, ShapeError, UnsupportedOperation, dagger_matrix,
    first_difference, identity, inverse, kron, mat_mul, matrices_equal, matrix_from_json,
    swap_matrix,
)

BLOCK_KEYS = {(X, X): "braid", (X, XS): "braid_xs", (XS, X): "braid_sx", (XS, XS): "braid_ss"}


class InvalidDatum(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EvalDatum:
    """Images of the generators.

    Cups are ``d^2 x 1`` columns, caps ``1 x d^2`` rows.  ``braids`` maps a
    letter pair ``(u, v)`` to the image of ``b(u, v)``; pairs that are not
    supplied are derived from ``b(x, x)`` (see :func:`derive_braids`).
    """

    rig: Rig
    dim: int
    k: int
    cup: RigMatrix
    cup_star: RigMatrix
    cap: RigMatrix
    cap_star: RigMatrix
    braids: dict = field(default_factory=dict)
    derived: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", clamp_level(self.k))
        d2 = self.dim * self.dim
        for name, m, shape in (("cup", self.cup, (d2, 1)), ("cup_star", self.cup_star, (d2, 1)),
                               ("cap", self.cap, (1, d2)), ("cap_star", self.cap_star, (1, d2))):
            if m.shape != shape:
                raise ShapeError(f"{name} must be {shape[0]}x{shape[1]}, got {m.rows}x{m.cols}")
            if m.rig is not self.rig:
                raise RigError(f"{name} is over {m.rig.value}, datum is over {self.rig.value}")
        for pair, m in self.braids.items():
            if m.shape != (d2, d2):
                raise ShapeError(f"{BLOCK_KEYS[pair]} must be {d2}x{d2}")
            if m.rig is not self.rig:
                raise RigError(f"{BLOCK_KEYS[pair]} is over the wrong rig")
        if self.k >= 2 and (X, X) not in self.braids:
            raise InvalidDatum("a datum at k >= 2 needs the braid image of b(x, x)")
        object.__setattr__(self, "_cache", {})

    def block(self, u: Letter, v: Letter) -> RigMatrix:
        try:
            return self.braids[(u, v)]
        except KeyError:
            raise LevelError("this datum carries no braiding (k <= 1)") from None

    def block_inverse(self, u: Letter, v: Letter) -> RigMatrix:
        key = ("inv", u, v)
        if key not in self._cache:
            self._cache[key] = inverse(self.block(u, v))
        return self._cache[key]

    @property
    def report(self) -> Report:
        if "report" not in self._cache:
            self._cache["report"] = validate_datum(self)
        return self._cache["report"]

    @property
    def valid(self) -> bool:
        if "valid" not in self._cache:
            self._cache["valid"] = self.report.valid
        return self._cache["valid"]

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "cap": self.cap.to_json(), "cap_star": self.cap_star.to_json(),
            "cup": self.cup.to_json(), "cup_star": self.cup_star.to_json(),
            "dim": self.dim, "k": self.k, "rig": self.rig.value,
        }
        for pair, key in BLOCK_KEYS.items():
            if pair in self.braids and pair not in self.derived:
                out[key] = self.braids[pair].to_json()
        return out


def make_datum(rig: Rig | str, dim: int, k: int, cup, cup_star, cap, cap_star,
               braid=None, braid_xs=None, braid_sx=None, braid_ss=None) -> EvalDatum:
    """Build a datum from matrices or plain entry lists, deriving missing braid blocks."""
    rig = Rig.parse(rig)
    d2 = dim * dim

    def vec(v, rows, cols):
        return v if isinstance(v, RigMatrix) else matrix_from_json(v, rig, rows, cols)

    base = dict(rig=rig, dim=dim, k=k, cup=vec(cup, d2, 1), cup_star=vec(cup_star, d2, 1),
                cap=vec(cap, 1, d2), cap_star=vec(cap_star, 1, d2))
    if clamp_level(k) <= 1:
        return EvalDatum(**base)
    given = {}
    for pair, m in zip(BLOCK_KEYS, (braid, braid_xs, braid_sx, braid_ss)):
        if m is not None:
            given[pair] = vec(m, d2, d2)
    if (X, X) not in given:
        raise InvalidDatum("a datum at k >= 2 needs the braid image of b(x, x)")
    derived = derive_braids(EvalDatum(**{**base, "k": 1}), given)
    missing = tuple(p for p in BLOCK_KEYS if p not in given)
    return EvalDatum(**base, braids=derived, derived=missing)


# The mixed-letter blocks are mates of b(x, x) under the dualities; written
# as terms over b(x, x), b-(x, x), cups and caps.
MATE_TERMS = {
    (X, XS): "(cup* @ id(x @ x*)) ; (id(x*) @ b-(x, x) @ id(x*)) ; (id(x* @ x) @ cap*)",
    (XS, X): "(id(x* @ x) @ cup) ; (id(x*) @ b-(x, x) @ id(x*)) ; (cap @ id(x @ x*))",
}


def derive_braids(base: EvalDatum, given: dict) -> dict:
    """Fill in missing braid blocks from ``b(x, x)`` by the duality composites.

    ``b(x, x*)`` and ``b(x*, x)`` are the two mates of ``b-(x, x)`` and
    ``b(x*, x*)`` is the adjoint of ``b(x, x)``.
    """
    blocks = dict(given)
    xx = EvalDatum(base.rig, base.dim, 2, base.cup, base.cup_star, base.cap, base.cap_star,
                   {(X, X): given[(X, X)]})
    for pair, text in MATE_TERMS.items():
        if pair not in blocks:
            blocks[pair] = eval_term(parse_term(text), xx, check=False)
    if (XS, XS) not in blocks:
        blocks[(XS, XS)] = eval_term(adjoint(Braid(X, X)), xx, check=False)
    return blocks


# -- evaluation ----------------------------------------------------------------------

def _eval(t: Term, ed: EvalDatum) -> RigMatrix:
    cache = ed._cache
    hit = cache.get(t)
    if hit is not None:
        return hit
    d = ed.dim
    if isinstance(t, Id):
        out = identity(d ** len(t.word), ed.rig)
    elif isinstance(t, Cup):
        out = ed.cup_star if t.starred else ed.cup
    elif isinstance(t, Cap):
        out = ed.cap_star if t.starred else ed.cap
    elif isinstance(t, Braid):
        out = ed.block_inverse(t.u, t.v) if t.inverse else ed.block(t.u, t.v)
    elif isinstance(t, Compose):
        out = mat_mul(_eval(t.second, ed), _eval(t.first, ed))
    elif isinstance(t, Tensor):
        out = kron(_eval(t.left, ed), _eval(t.right, ed))
    else:
        raise TypeError(f"not a term: {t!r}")
    if len(cache) < 200_000:
        cache[t] = out
    return out


def eval_term(t: Term, ed: EvalDatum, check: bool = True) -> RigMatrix:
    """The matrix ``Z(t)`` of shape ``d^|cod| x d^|dom|``.

    With ``check`` the datum must pass :func:`validate_datum` (the result is
    cached on the datum) and ``t`` must be legal at the datum's level.
    """
    check_level(t, ed.k)
    dom_cod(t)
    if check and not ed.valid:
        names = ", ".join(r.name for r in ed.report.failures())
        raise InvalidDatum(f"datum fails: {names}")
    return _eval(t, ed)


# -- validation -------------------------------------------------------------------------

ZIGZAGS = {
    "zigzag x (cup, cap)": ("(cup @ id(x)) ; (id(x) @ cap)", "id(x)"),
    "zigzag x* (cup, cap)": ("(id(x*) @ cup) ; (cap @ id(x*))", "id(x*)"),
    "zigzag x* (cup*, cap*)": ("(cup* @ id(x*)) ; (id(x*) @ cap*)", "id(x*)"),
    "zigzag x (cup*, cap*)": ("(id(x) @ cup*) ; (cap* @ id(x))", "id(x)"),
}

BALANCING = "(id(x) @ cup) ; (b(x, x) @ id(x*)) ; (id(x) @ cap*)"


def _letters():
    return (X, XS)


def _cross(a: Letter, b: Letter, s: int) -> Braid:
    return Braid(a, b) if s > 0 else Braid(b, a, inverse=True)


def naturality_instances() -> list[tuple[str, Term, Term]]:
    """Both sides of braid naturality past every cup and cap, for each strand letter and sign."""
    out = []
    for cup in (Cup(), Cup(True)):
        l0, l1 = dom_cod(cup)[1]
        for a in _letters():
            for s in (1, -1):
                tag = f"{cup} {'over' if s > 0 else 'under'} {a}"
                # strand a on the left passes the two legs
                lhs = compose(tensor(Id((a,)), cup), tensor(_cross(a, l0, s), Id((l1,))),
                              tensor(Id((l0,)), _cross(a, l1, s)))
                rhs = tensor(cup, Id((a,)))
                out.append((f"natural {tag} left", lhs, rhs))
                # strand a on the right passes the two legs
                lhs = compose(tensor(cup, Id((a,))), tensor(Id((l0,)), _cross(l1, a, s)),
                              tensor(_cross(l0, a, s), Id((l1,))))
                rhs = tensor(Id((a,)), cup)
                out.append((f"natural {tag} right", lhs, rhs))
    for cap in (Cap(), Cap(True)):
        l0, l1 = dom_cod(cap)[0]
        for a in _letters():
            for s in (1, -1):
                tag = f"{cap} {'over' if s > 0 else 'under'} {a}"
                lhs = compose(tensor(_cross(a, l0, s), Id((l1,))), tensor(Id((l0,)), _cross(a, l1, s)),
                              tensor(cap, Id((a,))))
                rhs = tensor(Id((a,)), cap)
                out.append((f"natural {tag} left", lhs, rhs))
                lhs = compose(tensor(Id((l0,)), _cross(l1, a, s)), tensor(_cross(l0, a, s), Id((l1,))),
                              tensor(Id((a,)), cap))
                rhs = tensor(cap, Id((a,)))
                out.append((f"natural {tag} right", lhs, rhs))
    return out


def yang_baxter_instances() -> list[tuple[str, Term, Term]]:
    out = []
    for a in _letters():
        for b in _letters():
            for c in _letters():
                lhs = compose(tensor(Braid(a, b), Id((c,))), tensor(Id((b,)), Braid(a, c)),
                              tensor(Braid(b, c), Id((a,))))
                rhs = compose(tensor(Id((a,)), Braid(b, c)), tensor(Braid(a, c), Id((b,))),
                              tensor(Id((c,)), Braid(a, b)))
                out.append((f"yang-baxter {a} {b} {c}", lhs, rhs))
    return out


def _compare(rep: Report, name: str, lhs: RigMatrix, rhs: RigMatrix) -> bool:
    ok = matrices_equal(lhs, rhs)
    witness = None
    if not ok:
        if lhs.shape != rhs.shape:
            witness = f"shape {lhs.shape} vs {rhs.shape}"
        else:
            i, j = first_difference(lhs, rhs)
            witness = f"entry ({i}, {j}): {lhs.rig.format(lhs[i, j])} vs {rhs.rig.format(rhs[i, j])}"
    rep.add(name, ok, witness)
    return ok


def _is_unitary(m: RigMatrix) -> bool:
    return matrices_equal(mat_mul(dagger_matrix(m), m), identity(m.rows, m.rig))


def validate_datum(ed: EvalDatum, unitarity: bool | None = None) -> Report:
    """Check the relations of C_{1,k} on the datum.

    Unitarity of the braiding and the balancing is checked over the complex
    rig by default and reported as skipped elsewhere; pass ``unitarity=True``
    to force it on any rig with an involution.
    """
    rep = Report(f"datum (dim {ed.dim}, k {ed.k}, {ed.rig.value})")
    ev = lambda text: _eval(parse_term(text), ed) if isinstance(text, str) else _eval(text, ed)  # noqa: E731
    for name, (lhs, rhs) in ZIGZAGS.items():
        _compare(rep, name, ev(lhs), ev(rhs))
    if ed.k < 2:
        rep.skip("braiding", "k <= 1")
        return rep
    invertible = True
    for (u, v), key in BLOCK_KEYS.items():
        try:
            inverse(ed.block(u, v))
            rep.add(f"{key} invertible", True)
        except UnsupportedOperation as exc:
            rep.add(f"{key} invertible", False, str(exc))
            invertible = False
    if not invertible:
        return rep
    for name, lhs, rhs in yang_baxter_instances():
        _compare(rep, name, ev(lhs), ev(rhs))
    for name, lhs, rhs in naturality_instances():
        _compare(rep, name, ev(lhs), ev(rhs))
    balancing = ev(BALANCING)
    try:
        inverse(balancing)
        rep.add("balancing invertible", True)
    except UnsupportedOperation as exc:
        rep.add("balancing invertible", False, str(exc))
    check_unitary = ed.rig is Rig.COMPLEX if unitarity is None else unitarity
    if check_unitary and ed.rig.has_involution:
        for (u, v), key in BLOCK_KEYS.items():
            rep.add(f"{key} unitary", _is_unitary(ed.block(u, v)))
        rep.add("balancing unitary", _is_unitary(balancing))
    else:
        rep.skip("unitarity", f"not checked over {ed.rig.value}")
    if ed.k >= 3:
        for u in _letters():
            for v in _letters():
                _compare(rep, f"symmetry {u} {v}", ev(compose(Braid(u, v), Braid(v, u))), ev(Id((u, v))))
        for g in (Cup(), Cup(True)):
            legs = dom_cod(g)[1]
            _compare(rep, f"twist {g}", ev(compose(g, Braid(*legs))), ev(Cup(not g.starred)))
        for g in (Cap(), Cap(True)):
            legs = dom_cod(g)[0]
            _compare(rep, f"twist {g}", ev(compose(Braid(legs[1], legs[0]), g)), ev(Cap(not g.starred)))
    return rep


# -- dagger compatibility -----------------------------------------------------------------

def check_dagger_compat(t: Term, ed: EvalDatum, partners: Sequence[Term] = ()) -> Report:
    """``Z(dagger t) = Z(t)^dagger``; for ``t : 1 -> w`` also the inner products with ``partners``.

    The inner product of ``Z(f)1`` and ``Z(g)1`` is ``Z(g ; dagger f)``.
    """
    if not ed.rig.has_involution:
        raise UnsupportedOperation(f"{ed.rig.value} carries no involution")
    rep = Report(f"dagger compatibility of {t}")
    _compare(rep, "Z(dagger t) = Z(t)^dagger", eval_term(dagger(t), ed, check=False),
             dagger_matrix(eval_term(t, ed, check=False)))
    dom, cod = dom_cod(t)
    for g in partners:
        if dom != EMPTY or dom_cod(g) != (EMPTY, cod):
            continue
        lhs = mat_mul(dagger_matrix(eval_term(t, ed, check=False)), eval_term(g, ed, check=False))
        rhs = eval_term(Compose(g, dagger(t)), ed, check=False)
        _compare(rep, f"inner product with {g}", lhs, rhs)
    return rep


# -- data ------------------------------------------------------------------------------------

def _delta(dim: int, rig: Rig) -> list:
    return [rig.one if i == j else rig.zero for i in range(dim) for j in range(dim)]


def standard_datum(dim: int, k: int = 3, rig: Rig | str = Rig.RATIONAL) -> EvalDatum:
    """All cups and caps the standard pairing ``sum_i e_i (x) e_i``; braiding the swap."""
    rig = Rig.parse(rig)
    v = _delta(dim, rig)
    braid = swap_matrix(dim, dim, rig) if clamp_level(k) >= 2 else None
    return make_datum(rig, dim, k, v, v, v, v, braid=braid)


def trivial_datum(k: int = 3, rig: Rig | str = Rig.RATIONAL, q: Any = 1) -> EvalDatum:
    rig = Rig.parse(rig)
    one = [rig.one]
    braid = [[rig.coerce(q)]] if clamp_level(k) >= 2 else None
    return make_datum(rig, 1, k, one, one, one, one, braid=braid)


def _vec_of(m: list[list]) -> list:
    return [v for row in m for v in row]


def random_invertible(rng: random.Random, dim: int, rig: Rig = Rig.RATIONAL, lo: int = -3, hi: int = 3) -> RigMatrix:
    while True:
        if rig is Rig.COMPLEX:
            rows = [[ComplexRational(Fraction(rng.randint(lo, hi)), Fraction(rng.randint(lo, hi)))
                     for _ in range(dim)] for _ in range(dim)]
        else:
            rows = [[rig.coerce(rng.randint(lo, hi)) for _ in range(dim)] for _ in range(dim)]
        m = RigMatrix.from_rows(rig, rows)
        try:
            inverse(m)
        except UnsupportedOperation:
            continue
        return m


def _transpose_rows(m: RigMatrix) -> list[list]:
    return [list(col) for col in zip(*m.tolist())]


def random_datum(rng: random.Random, dim: int, k: int = 1, rig: Rig | str = Rig.RATIONAL) -> EvalDatum:
    """A random valid datum.

    At ``k = 1`` the two cup/cap pairs come from independent invertible
    matrices ``C`` and ``D`` (caps are the inverses).  At ``k >= 3`` the
    braiding is the swap and ``D`` is forced to ``C^T`` so that the twist
    relation holds.  ``k = 2`` uses the ``k = 3`` recipe.
    """
    rig = Rig.parse(rig)
    k = clamp_level(k)
    c = random_invertible(rng, dim, rig)
    d = random_invertible(rng, dim, rig) if k <= 1 else RigMatrix.from_rows(rig, _transpose_rows(c))
    cap = inverse(c)
    cap_star = inverse(d)
    braid = swap_matrix(dim, dim, rig) if k >= 2 else None
    return make_datum(rig, dim, k, _vec_of(c.tolist()), _vec_of(d.tolist()),
                      _vec_of(cap.tolist()), _vec_of(cap_star.tolist()), braid=braid)


def kauffman_datum(a: Any = 2, rig: Rig | str = Rig.RATIONAL) -> EvalDatum:
    """The q-deformed swap on a 2-dimensional space (Kauffman bracket at ``A = a``).

    Every cup is ``(0, a, -1/a, 0)`` and every cap ``(0, -a, 1/a, 0)``; the
    braiding is ``a I + a^-1 E`` with ``E`` the cup-cap projector.  The other
    braid blocks are derived.
    """
    rig = Rig.parse(rig)
    a = rig.coerce(a)
    ai = rig.inv(a)
    zero = rig.zero
    cup = [zero, a, rig.neg(ai), zero]
    cap = [zero, rig.neg(a), ai, zero]
    e = [[ci * cj for cj in cap] for ci in cup]
    braid = [[(a if i == j else zero) + ai * e[i][j] for j in range(4)] for i in range(4)]
    return make_datum(rig, 2, 2, cup, cup, cap, cap, braid=braid)


def datum_from_json(obj: dict[str, Any]) -> EvalDatum:
    try:
        rig = Rig.parse(obj["rig"])
        dim, k = int(obj["dim"]), int(obj["k"])
        parts = [obj[key] for key in ("cup", "cup_star", "cap", "cap_star")]
    except KeyError as exc:
        raise InvalidDatum(f"datum missing key {exc}") from None
    return make_datum(rig, dim, k, *parts, **{key: obj.get(key) for key in BLOCK_KEYS.values()})


def datum_to_json(ed: EvalDatum) -> dict[str, Any]:
    return ed.to_json()


@lru_cache(maxsize=1)
def bundled_datum() -> EvalDatum:
    """The shipped k = 2 datum used to separate terms in :func:`rewrite.equal`."""
    text = resources.files("dualcat.data").joinpath("braided_q2.json").read_text()
    return datum_from_json(json.loads(text))


__all__ = [
    "BLOCK_KEYS", "EvalDatum", "InvalidDatum", "bundled_datum", "check_dagger_compat",
    "datum_from_json", "datum_to_json", "derive_braids", "eval_term", "kauffman_datum",
    "make_datum", "naturality_instances", "random_datum", "standard_datum", "trivial_datum",
    "validate_datum", "yang_baxter_instances",
]
