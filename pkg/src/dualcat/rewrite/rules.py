"""Relations of C_{1,k} as position-addressed rewrite rules.

Two kinds of rule live here.

*Structural* rules act on a single tree node: identity absorption, the
associativity and unit laws of the strict skeleton, and the exchange identity
in its various shapes.

*Chain* rules act on the right spine of a ``Compose`` node.  A term in slice
form is a right-nested chain ``s1 ; (s2 ; (... ; sn))`` of whiskered slices
``id(u) @ g @ id(v)``, each with exactly one generator ``g``.  A chain rule at
a ``Compose`` node reads the first few spine elements as slices and replaces
them.  Slices are stored as ``(p, g)``: generator ``g`` sitting after the first
``p`` letters of the current word.

Braid signs: ``+`` means the left strand passes over, so ``b(u, v)`` is ``+``
and ``b-(u, v)`` is ``-``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from ..freecat import (
    EMPTY, GENERATOR_TYPES, X, XS, Braid, Cap, Compose, Cup, Id, Letter, LevelError, Tensor, Term,
    TermError, Word, children, clamp_level, dom_cod, generator_type, replace_at, subterm,
)

Slice = tuple  # (offset, generator)


class RuleError(TermError):
    """The rule does not match at the given position."""


# -- slices ------------------------------------------------------------------------

def arity(g) -> tuple[int, int]:
    d, c = generator_type(g)
    return len(d), len(c)


def apply_slice(w: Word, s: Slice) -> Word:
    p, g = s
    d, c = generator_type(g)
    if w[p:p + len(d)] != d or p > len(w) - len(d):
        raise RuleError(f"slice {g} at {p} does not fit word of length {len(w)}")
    return w[:p] + c + w[p + len(d):]


def words_along(dom: Word, slices: Sequence[Slice]) -> list[Word]:
    """Words before, between and after the slices (length ``len(slices) + 1``)."""
    out = [dom]
    for s in slices:
        out.append(apply_slice(out[-1], s))
    return out


def whisker(w: Word, s: Slice) -> Term:
    """The canonical slice term ``id(u) @ g @ id(v)`` for slice ``s`` on word ``w``."""
    p, g = s
    n_in = arity(g)[0]
    u, v = w[:p], w[p + n_in:]
    t: Term = g
    if u:
        t = Tensor(Id(u), t)
    if v:
        t = Tensor(t, Id(v))
    return t


def chain_term(dom: Word, slices: Sequence[Slice], rest: Term | None = None) -> Term:
    """Right-nested composite of the slices, optionally continued by ``rest``."""
    ws = words_along(dom, slices)
    parts = [whisker(ws[i], s) for i, s in enumerate(slices)]
    if rest is not None:
        parts.append(rest)
    if not parts:
        return Id(dom)
    out = parts[-1]
    for t in reversed(parts[:-1]):
        out = Compose(t, out)
    return out


def _leaves_of_tensor(t: Term) -> list[Term] | None:
    if isinstance(t, Tensor):
        a, b = _leaves_of_tensor(t.left), _leaves_of_tensor(t.right)
        return None if a is None or b is None else a + b
    if isinstance(t, Compose):
        return None
    return [t]


def as_slice(t: Term) -> tuple[Word, Slice] | None:
    """Read a tensor tree with exactly one generator leaf as ``(dom, (p, g))``."""
    leaves = _leaves_of_tensor(t)
    if leaves is None:
        return None
    gens = [i for i, leaf in enumerate(leaves) if isinstance(leaf, GENERATOR_TYPES)]
    if len(gens) != 1:
        return None
    i = gens[0]
    u = tuple(ltr for leaf in leaves[:i] for ltr in leaf.word)
    v = tuple(ltr for leaf in leaves[i + 1:] for ltr in leaf.word)
    g = leaves[i]
    return u + generator_type(g)[0] + v, (len(u), g)


def spine(t: Term) -> list[Term]:
    out = []
    while isinstance(t, Compose):
        out.append(t.first)
        t = t.second
    out.append(t)
    return out


def read_chain(t: Term) -> tuple[Word, tuple[Slice, ...]] | None:
    """``(dom, slices)`` if ``t`` is an identity or a chain of slices, else ``None``."""
    if isinstance(t, Id):
        return t.word, ()
    parts = spine(t)
    slices = []
    dom = None
    for part in parts:
        got = as_slice(part)
        if got is None:
            return None
        w, s = got
        if dom is None:
            dom = w
        slices.append(s)
    return dom, tuple(slices)


def is_slice_form(t: Term) -> bool:
    got = read_chain(t)
    return got is not None and chain_term(*got) == t


# -- braid helpers -------------------------------------------------------------------

def sign(b: Braid) -> int:
    return -1 if b.inverse else 1


def crossing(w: Word, p: int, s: int) -> Braid:
    """The braid at offset ``p`` of word ``w`` with crossing sign ``s``."""
    a, b = w[p], w[p + 1]
    return Braid(a, b) if s > 0 else Braid(b, a, inverse=True)


def braid_inverse_of(b: Braid) -> Braid:
    return Braid(b.u, b.v, not b.inverse)


def flip_symmetric(b: Braid) -> Braid:
    """At k >= 3 the inverse braiding ``b-(u, v)`` equals ``b(v, u)``."""
    return Braid(b.v, b.u) if b.inverse else b


def cup_for(legs: tuple[Letter, Letter]) -> Cup:
    return Cup(starred=legs == (XS, X))


def cap_for(legs: tuple[Letter, Letter]) -> Cap:
    return Cap(starred=legs == (X, XS))


_CYCLIC = {(1, -1, 1), (-1, 1, -1)}


# -- chain rules ---------------------------------------------------------------------
#
# Each chain rule takes the word before the prefix, the remaining slices and the
# level, and returns the list of ``(consumed, replacement)`` rewrites available
# at the head of the chain (several when a rule has tie variants).

ChainRule = Callable[[Word, Sequence[Slice], int, bool], list]


def _triangle(w, ss, k, merge):
    if len(ss) >= 2 and isinstance(ss[0][1], Cup) and isinstance(ss[1][1], Cap):
        p, q = ss[0][0], ss[1][0]
        if q in (p - 1, p + 1):
            return [(2, [])]
    return []


def _interchange_all(w, ss):
    if len(ss) < 2:
        return []
    (p, g), (q, h) = ss[0], ss[1]
    gi, go = arity(g)
    hi, ho = arity(h)
    out = []
    if q + hi <= p:
        out.append((2, [(q, h), (p + ho - hi, g)]))
    if q >= p + go:
        out.append((2, [(q - go + gi, h), (p, g)]))
    return out


def _interchange(w, ss, k, merge):
    return _interchange_all(w, ss)[:1]


def _interchange_tie(w, ss, k, merge):
    return _interchange_all(w, ss)[1:]


def _loop_slide(w, ss, k, merge):
    if len(ss) >= 2 and isinstance(ss[0][1], Cup) and isinstance(ss[1][1], Cap):
        p, q = ss[0][0], ss[1][0]
        if p == q and p > 0:
            return [(2, [(0, ss[0][1]), (0, ss[1][1])])]
    return []


def _braid_inverse(w, ss, k, merge):
    if len(ss) >= 2 and isinstance(ss[0][1], Braid) and ss[0][0] == ss[1][0]:
        if ss[1][1] == braid_inverse_of(ss[0][1]):
            return [(2, [])]
    return []


def _symmetry(w, ss, k, merge):
    if len(ss) >= 2 and isinstance(ss[0][1], Braid) and ss[0][0] == ss[1][0]:
        b, c = ss[0][1], ss[1][1]
        if isinstance(c, Braid) and c == Braid(b.v, b.u, b.inverse):
            return [(2, [])]
    return []


def _yang_baxter(w, ss, k, merge):
    if len(ss) < 3 or not all(isinstance(s[1], Braid) for s in ss[:3]):
        return []
    (p0, b0), (p1, b1), (p2, b2) = ss[:3]
    signs = (sign(b0), sign(b1), sign(b2))
    if signs in _CYCLIC or p0 != p2 or abs(p1 - p0) != 1:
        return []
    q0, q1 = p1, p0
    w1 = apply_slice(w, (q0, crossing(w, q0, signs[2])))
    n0 = crossing(w, q0, signs[2])
    n1 = crossing(w1, q1, signs[1])
    w2 = apply_slice(w1, (q1, n1))
    n2 = crossing(w2, q0, signs[0])
    return [(3, [(q0, n0), (q1, n1), (q0, n2)])]


def _braid_natural(w, ss, k, merge):
    if len(ss) < 3:
        return []
    (p0, g0), (p1, g1), (p2, g2) = ss[:3]
    if isinstance(g0, Cup) and isinstance(g1, Braid) and isinstance(g2, Braid) \
            and sign(g1) == sign(g2) and p2 == p0:
        if p1 == p0 - 1:
            return [(3, [(p0 - 1, g0)])]
        if p1 == p0 + 1:
            return [(3, [(p0 + 1, g0)])]
    if isinstance(g0, Braid) and isinstance(g1, Braid) and isinstance(g2, Cap) \
            and sign(g0) == sign(g1):
        if p1 == p0 + 1 and p2 == p0:
            return [(3, [(p0 + 1, g2)])]
        if p1 == p0 - 1 and p2 == p0:
            return [(3, [(p1, g2)])]
    return []


def _twist(w, ss, k, merge):
    if len(ss) < 2:
        return []
    (p0, g0), (p1, g1) = ss[:2]
    if p0 != p1:
        return []
    if isinstance(g0, Cup) and isinstance(g1, Braid):
        return [(2, [(p0, Cup(not g0.starred))])]
    if isinstance(g0, Braid) and isinstance(g1, Cap):
        return [(2, [(p0, Cap(not g1.starred))])]
    return []


@dataclass(frozen=True)
class ChainRuleSpec:
    name: str
    fn: ChainRule
    min_k: int
    max_k: int = 3
    needs_merge: bool = False

    def legal(self, k: int, merge: bool) -> bool:
        return self.min_k <= k <= self.max_k and (merge or not self.needs_merge)


CHAIN_RULES: dict[str, ChainRuleSpec] = {r.name: r for r in (
    ChainRuleSpec("triangle", _triangle, 1),
    ChainRuleSpec("interchange", _interchange, 1),
    ChainRuleSpec("interchange-tie", _interchange_tie, 1),
    ChainRuleSpec("loop-slide", _loop_slide, 1),
    ChainRuleSpec("braid-inverse", _braid_inverse, 2),
    ChainRuleSpec("yang-baxter", _yang_baxter, 2),
    ChainRuleSpec("braid-natural", _braid_natural, 2),
    ChainRuleSpec("symmetry", _symmetry, 3),
    ChainRuleSpec("twist", _twist, 3, needs_merge=True),
)}


def chain_rewrites(rule: str, w: Word, ss: Sequence[Slice], k: int, merge: bool = True) -> list:
    spec = CHAIN_RULES[rule]
    if not spec.legal(clamp_level(k), merge):
        return []
    return spec.fn(w, ss, clamp_level(k), merge)


# -- inverse chain moves (used by the bounded search) ------------------------------------

def _zigzags(w: Word) -> Iterator[tuple[int, list]]:
    """All ways to insert one zigzag into the identity on ``w`` (triangle read backwards)."""
    for j, ltr in enumerate(w):
        yield 0, [(j, cup_for((ltr, ltr.star))), (j + 1, cap_for((ltr.star, ltr)))]
        yield 0, [(j + 1, cup_for((ltr.star, ltr))), (j, cap_for((ltr, ltr.star)))]


def inverse_moves(w: Word, ss: Sequence[Slice], k: int, merge: bool) -> Iterator[tuple[str, int, list]]:
    """Rewrites ``(rule^-1, consumed, replacement)`` at the head of a chain on word ``w``."""
    k = clamp_level(k)
    for _, rep in _zigzags(w):
        yield "triangle^-1", 0, rep
    signs = (1,) if k >= 3 else (1, -1)
    if k >= 2:
        for p in range(len(w) - 1):
            for s in signs:
                b = crossing(w, p, s)
                if k >= 3:
                    yield "symmetry^-1", 0, [(p, b), (p, Braid(b.v, b.u))]
                else:
                    yield "braid-inverse^-1", 0, [(p, b), (p, braid_inverse_of(b))]
    if not ss:
        return
    p, g = ss[0]
    if isinstance(g, Cup) and k >= 2:
        for s in signs:
            if p < len(w):  # the strand at p passes the cup legs left to right
                w1 = apply_slice(w, (p + 1, g))
                b1 = crossing(w1, p, s)
                w2 = apply_slice(w1, (p, b1))
                yield "braid-natural^-1", 1, [(p + 1, g), (p, b1), (p + 1, crossing(w2, p + 1, s))]
            if p >= 1:
                w1 = apply_slice(w, (p - 1, g))
                b1 = crossing(w1, p, s)
                w2 = apply_slice(w1, (p, b1))
                yield "braid-natural^-1", 1, [(p - 1, g), (p, b1), (p - 1, crossing(w2, p - 1, s))]
    if isinstance(g, Cap) and k >= 2:
        for s in signs:
            if p >= 1:
                b0 = crossing(w, p - 1, s)
                w1 = apply_slice(w, (p - 1, b0))
                yield "braid-natural^-1", 1, [(p - 1, b0), (p, crossing(w1, p, s)), (p - 1, g)]
            if p + 2 < len(w):
                b0 = crossing(w, p + 1, s)
                w1 = apply_slice(w, (p + 1, b0))
                yield "braid-natural^-1", 1, [(p + 1, b0), (p, crossing(w1, p, s)), (p + 1, g)]
    if isinstance(g, (Cup, Cap)) and k >= 3 and merge:
        if isinstance(g, Cup):
            w1 = apply_slice(w, (p, Cup(not g.starred)))
            yield "twist^-1", 1, [(p, Cup(not g.starred)), (p, crossing(w1, p, 1))]
        else:
            yield "twist^-1", 1, [(p, crossing(w, p, 1)), (p, Cap(not g.starred))]
    if len(ss) >= 2 and isinstance(g, Cup) and isinstance(ss[1][1], Cap) and ss[1][0] == p == 0:
        for q in range(1, len(w) + 1):
            yield "loop-slide^-1", 2, [(q, g), (q, ss[1][1])]


# -- structural rules --------------------------------------------------------------------

def _has_generator(t: Term) -> bool:
    if isinstance(t, GENERATOR_TYPES):
        return True
    return any(_has_generator(c) for c in children(t))


def _identity_absorption(t: Term) -> Term | None:
    if isinstance(t, Compose):
        if isinstance(t.first, Id):
            return t.second
        if isinstance(t.second, Id):
            return t.first
    return None


def _assoc_compose(t):
    if isinstance(t, Compose) and isinstance(t.first, Compose):
        return Compose(t.first.first, Compose(t.first.second, t.second))
    return None


def _assoc_compose_inv(t):
    if isinstance(t, Compose) and isinstance(t.second, Compose):
        return Compose(Compose(t.first, t.second.first), t.second.second)
    return None


def _assoc_tensor(t):
    if isinstance(t, Tensor) and isinstance(t.left, Tensor):
        return Tensor(t.left.left, Tensor(t.left.right, t.right))
    return None


def _assoc_tensor_inv(t):
    if isinstance(t, Tensor) and isinstance(t.right, Tensor):
        return Tensor(Tensor(t.left, t.right.left), t.right.right)
    return None


def _unit_tensor_left(t):
    if isinstance(t, Tensor) and t.left == Id(EMPTY):
        return t.right
    return None


def _unit_tensor_right(t):
    if isinstance(t, Tensor) and t.right == Id(EMPTY):
        return t.left
    return None


def _id_tensor(t):
    if isinstance(t, Tensor) and isinstance(t.right, Id):
        if isinstance(t.left, Id):
            return Id(t.left.word + t.right.word)
        if isinstance(t.left, Tensor) and isinstance(t.left.right, Id):
            return Tensor(t.left.left, Id(t.left.right.word + t.right.word))
    return None


def _exchange(t):
    if not isinstance(t, Tensor):
        return None
    a, b = t.left, t.right
    if isinstance(a, Compose) and isinstance(b, Compose):
        return Compose(Tensor(a.first, b.first), Tensor(a.second, b.second))
    if isinstance(a, Compose) and isinstance(b, Id):
        return Compose(Tensor(a.first, b), Tensor(a.second, b))
    if isinstance(a, Id) and isinstance(b, Compose):
        return Compose(Tensor(a, b.first), Tensor(a, b.second))
    return None


def _exchange_inv(t):
    if isinstance(t, Compose) and isinstance(t.first, Tensor) and isinstance(t.second, Tensor):
        (a, c), (b, d) = (t.first.left, t.first.right), (t.second.left, t.second.right)
        if dom_cod(a)[1] == dom_cod(b)[0]:
            return Tensor(Compose(a, b), Compose(c, d))
    return None


def _slide_apart(t):
    if isinstance(t, Tensor) and _has_generator(t.left) and _has_generator(t.right):
        f, g = t.left, t.right
        return Compose(Tensor(f, Id(dom_cod(g)[0])), Tensor(Id(dom_cod(f)[1]), g))
    return None


def _symmetric_braid(t):
    if isinstance(t, Braid) and t.inverse:
        return Braid(t.v, t.u)
    return None


@dataclass(frozen=True)
class NodeRuleSpec:
    name: str
    fn: Callable[[Term], Term | None]
    min_k: int = 0


NODE_RULES: dict[str, NodeRuleSpec] = {r.name: r for r in (
    NodeRuleSpec("identity-absorption", _identity_absorption),
    NodeRuleSpec("assoc-compose", _assoc_compose),
    NodeRuleSpec("assoc-compose^-1", _assoc_compose_inv),
    NodeRuleSpec("assoc-tensor", _assoc_tensor, 1),
    NodeRuleSpec("assoc-tensor^-1", _assoc_tensor_inv, 1),
    NodeRuleSpec("unit-tensor-left", _unit_tensor_left, 1),
    NodeRuleSpec("unit-tensor-right", _unit_tensor_right, 1),
    NodeRuleSpec("id-tensor", _id_tensor, 1),
    NodeRuleSpec("exchange", _exchange, 1),
    NodeRuleSpec("exchange^-1", _exchange_inv, 1),
    NodeRuleSpec("slide-apart", _slide_apart, 1),
    NodeRuleSpec("symmetric-braid", _symmetric_braid, 3),
)}

RULES = tuple(NODE_RULES) + tuple(CHAIN_RULES)


def rules_at_level(k: int, merge_loops: bool = True) -> list[str]:
    k = clamp_level(k)
    out = [n for n, r in NODE_RULES.items() if r.min_k <= k]
    out += [n for n, r in CHAIN_RULES.items() if r.legal(k, merge_loops)]
    return out


def _chain_at(t: Term, dom: Word, rule: str, k: int, merge: bool, variant: int) -> Term:
    parts = spine(t)
    slices: list[Slice] = []
    w = dom
    for part in parts:
        got = as_slice(part)
        if got is None or got[0] != w:
            break
        slices.append(got[1])
        w = apply_slice(w, got[1])
    options = chain_rewrites(rule, dom, slices, k, merge)
    if variant >= len(options):
        raise RuleError(f"rule {rule!r} does not match")
    used, rep = options[variant]
    rest = None
    if used < len(parts):
        rest = parts[used] if used == len(parts) - 1 else _rebuild(parts[used:])
    new = chain_term(dom, rep, rest)
    if rest is None and not rep:
        new = Id(words_along(dom, slices[:used])[-1])
    return new


def _rebuild(parts: list[Term]) -> Term:
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Compose(p, out)
    return out


def apply_relation(t: Term, rule: str, position: tuple[int, ...] = (), *, k: int = 3,
                   merge_loops: bool = True, variant: int = 0) -> Term:
    """Rewrite ``t`` by ``rule`` at node path ``position``.

    Raises :class:`RuleError` when the rule does not match there, and
    :class:`LevelError` when the rule is not a relation at level ``k``.
    """
    k = clamp_level(k)
    try:
        node = subterm(t, tuple(position))
    except TermError as exc:
        raise RuleError(str(exc)) from None
    if rule in NODE_RULES:
        spec = NODE_RULES[rule]
        if k < spec.min_k:
            raise LevelError(f"rule {rule!r} needs k >= {spec.min_k}")
        new = spec.fn(node)
        if new is None:
            raise RuleError(f"rule {rule!r} does not match at {position}")
    elif rule in CHAIN_RULES:
        if not CHAIN_RULES[rule].legal(k, merge_loops):
            raise LevelError(f"rule {rule!r} is not a relation at k = {k}")
        if not isinstance(node, Compose):
            raise RuleError(f"rule {rule!r} needs a composite at {position}")
        new = _chain_at(node, dom_cod(node)[0], rule, k, merge_loops, variant)
    else:
        raise RuleError(f"unknown rule {rule!r}")
    return replace_at(t, tuple(position), new)


def applicable(t: Term, k: int = 3, merge_loops: bool = True,
               rules: Sequence[str] | None = None) -> Iterator[tuple[str, tuple[int, ...], int, Term]]:
    """Every ``(rule, position, variant, result)`` that applies somewhere in ``t``."""
    from ..freecat import positions

    names = rules if rules is not None else rules_at_level(k, merge_loops)
    for pos in positions(t):
        node = subterm(t, pos)
        for name in names:
            if name in NODE_RULES:
                new = NODE_RULES[name].fn(node)
                if new is not None:
                    yield name, pos, 0, replace_at(t, pos, new)
            elif isinstance(node, Compose):
                for v in range(2):
                    try:
                        yield name, pos, v, apply_relation(t, name, pos, k=k, merge_loops=merge_loops, variant=v)
                    except RuleError:
                        break
