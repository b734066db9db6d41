"""Objects and morphism terms of the free monoidal category with duals on ``x``.

Composition is written in *diagrammatic* order throughout: ``Compose(f, g)``
(DSL ``f ; g``) means "first ``f``, then ``g``".  Objects are words over the
letters ``x`` and ``x*``; the empty word is the unit object.  The category is
kept strict, so words are compared literally and ``x** = x``.

Generators and their types::

    Cup(False)   i_x     : 1       -> x x*
    Cup(True)    i_{x*}  : 1       -> x* x
    Cap(False)   e_x     : x* x    -> 1
    Cap(True)    e_{x*}  : x x*    -> 1
    Braid(u, v)          : u v     -> v u
    Braid(u, v, True)    : v u     -> u v     (inverse of Braid(u, v))
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union


class Letter(enum.Enum):
    X = "x"
    XSTAR = "x*"

    @property
    def star(self) -> Letter:
        return Letter.XSTAR if self is Letter.X else Letter.X

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"Letter.{self.name}"


X = Letter.X
XS = Letter.XSTAR

Word = tuple  # tuple[Letter, ...]
EMPTY: Word = ()


def word(*letters: Letter | str) -> Word:
    out = []
    for ltr in letters:
        out.append(ltr if isinstance(ltr, Letter) else Letter(ltr))
    return tuple(out)


def word_star(w: Word) -> Word:
    """Dual object: reverse the word and star every letter."""
    return tuple(ltr.star for ltr in reversed(w))


def format_word(w: Word) -> str:
    return " @ ".join(str(ltr) for ltr in w) if w else "1"


class TermError(ValueError):
    pass


class TypeMismatch(TermError):
    def __init__(self, path: tuple[int, ...], cod: Word, dom: Word):
        self.path, self.cod, self.dom = path, cod, dom
        where = "root" if not path else "/".join(map(str, path))
        super().__init__(
            f"type mismatch at {where}: cod [{format_word(cod)}] != dom [{format_word(dom)}]"
        )


class LevelError(TermError):
    pass


# -- terms ---------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Id:
    word: Word = EMPTY

    def __post_init__(self) -> None:
        if not isinstance(self.word, tuple):
            object.__setattr__(self, "word", tuple(self.word))

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Cup:
    starred: bool = False

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Cap:
    starred: bool = False

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Braid:
    u: Letter
    v: Letter
    inverse: bool = False

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Compose:
    first: Term
    second: Term

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Tensor:
    left: Term
    right: Term

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Id, Cup, Cap, Braid, Compose, Tensor]
Generator = Union[Cup, Cap, Braid]
GENERATOR_TYPES = (Cup, Cap, Braid)


def generator_type(g: Generator) -> tuple[Word, Word]:
    if isinstance(g, Cup):
        return EMPTY, ((XS, X) if g.starred else (X, XS))
    if isinstance(g, Cap):
        return ((X, XS) if g.starred else (XS, X)), EMPTY
    if g.inverse:
        return (g.v, g.u), (g.u, g.v)
    return (g.u, g.v), (g.v, g.u)


def children(t: Term) -> tuple[Term, ...]:
    if isinstance(t, Compose):
        return (t.first, t.second)
    if isinstance(t, Tensor):
        return (t.left, t.right)
    return ()


def size(t: Term) -> int:
    """Number of constructors in the tree."""
    return 1 + sum(size(c) for c in children(t))


def subterm(t: Term, path: tuple[int, ...]) -> Term:
    for step in path:
        kids = children(t)
        if step >= len(kids):
            raise TermError(f"invalid position {path}")
        t = kids[step]
    return t


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    kids = children(t)
    if path[0] >= len(kids):
        raise TermError(f"invalid position {path}")
    head, rest = path[0], path[1:]
    if isinstance(t, Compose):
        return Compose(replace_at(t.first, rest, new), t.second) if head == 0 \
            else Compose(t.first, replace_at(t.second, rest, new))
    return Tensor(replace_at(t.left, rest, new), t.right) if head == 0 \
        else Tensor(t.left, replace_at(t.right, rest, new))


def positions(t: Term, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    yield prefix
    for i, c in enumerate(children(t)):
        yield from positions(c, prefix + (i,))


# -- levels ----------------------------------------------------------------

MAX_LEVEL = 3


def clamp_level(k: int) -> int:
    """Levels ``k >= 3`` behave identically; they are represented by 3."""
    if k < 0:
        raise LevelError(f"level must be non-negative, got {k}")
    return min(k, MAX_LEVEL)


@dataclass(frozen=True)
class Level:
    k: int = 1
    n: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", clamp_level(self.k))
        if self.n not in (0, 1):
            raise LevelError(f"only n in {{0, 1}} is supported, got {self.n}")


def check_level(t: Term, k: int, path: tuple[int, ...] = ()) -> None:
    """Raise :class:`LevelError` if ``t`` uses a constructor illegal at level ``k``."""
    k = clamp_level(k)
    where = "/".join(map(str, path)) or "root"
    if isinstance(t, Braid) and k <= 1:
        raise LevelError(f"braiding at {where} needs k >= 2 (k = {k})")
    if k == 0:
        if isinstance(t, (Tensor, Cup, Cap)):
            raise LevelError(f"{type(t).__name__} at {where} needs k >= 1")
        if isinstance(t, Id) and len(t.word) != 1:
            raise LevelError(f"at k = 0 the only objects are x and x*; got id at {where}")
    for i, c in enumerate(children(t)):
        check_level(c, k, path + (i,))


def at_level(t: Term, k: int) -> Term:
    """Return ``t`` after checking it is legal (and well typed) at level ``k``."""
    check_level(t, k)
    dom_cod(t)
    return t


# -- typing ------------------------------------------------------------------

def dom_cod(t: Term, k: int | None = None) -> tuple[Word, Word]:
    """Domain and codomain of ``t``; raises :class:`TypeMismatch` with the node path."""
    if k is not None:
        check_level(t, k)
    return _dom_cod(t, ())


def _dom_cod(t: Term, path: tuple[int, ...]) -> tuple[Word, Word]:
    if isinstance(t, Id):
        return t.word, t.word
    if isinstance(t, GENERATOR_TYPES):
        return generator_type(t)
    if isinstance(t, Compose):
        d1, c1 = _dom_cod(t.first, path + (0,))
        d2, c2 = _dom_cod(t.second, path + (1,))
        if c1 != d2:
            raise TypeMismatch(path, c1, d2)
        return d1, c2
    if isinstance(t, Tensor):
        d1, c1 = _dom_cod(t.left, path + (0,))
        d2, c2 = _dom_cod(t.right, path + (1,))
        return d1 + d2, c1 + c2
    raise TermError(f"not a term: {t!r}")


def is_well_typed(t: Term) -> bool:
    try:
        dom_cod(t)
    except TypeMismatch:
        return False
    return True


def min_level(t: Term) -> int:
    """Smallest level at which ``t`` is legal."""
    for k in range(MAX_LEVEL + 1):
        try:
            check_level(t, k)
        except LevelError:
            continue
        return k
    raise LevelError("term is illegal at every level")


# -- smart constructors --------------------------------------------------------

def tensor(*terms: Term) -> Term:
    """Tensor product dropping ``id(1)`` factors."""
    kept = [t for t in terms if not (isinstance(t, Id) and not t.word)]
    if not kept:
        return Id(EMPTY)
    out = kept[0]
    for t in kept[1:]:
        out = Tensor(out, t)
    return out


def compose(*terms: Term) -> Term:
    """Left-nested composite (the way the DSL parses ``a ; b ; c``)."""
    out = terms[0]
    for t in terms[1:]:
        out = Compose(out, t)
    return out


def cup_word(w: Word) -> Term:
    """Unit ``i_w : 1 -> w w*`` as nested letter cups."""
    if not w:
        return Id(EMPTY)
    head, rest = w[0], w[1:]
    outer = Cup(starred=head is XS)
    if not rest:
        return outer
    return Compose(outer, tensor(Id((head,)), cup_word(rest), Id((head.star,))))


def cap_word(w: Word) -> Term:
    """Counit ``e_w : w* w -> 1`` as nested letter caps."""
    if not w:
        return Id(EMPTY)
    head, rest = w[0], w[1:]
    inner = Cap(starred=head is XS)
    if not rest:
        return inner
    return Compose(tensor(Id(word_star(rest)), inner, Id(rest)), cap_word(rest))


# -- dualities ---------------------------------------------------------------

def dagger(t: Term) -> Term:
    """Orientation reversal: contravariant, identity on objects.

    ``e_x`` goes to ``i_{x*}`` and vice versa; a braiding goes to its inverse.
    """
    if isinstance(t, Id):
        return t
    if isinstance(t, Cup):
        return Cap(starred=not t.starred)
    if isinstance(t, Cap):
        return Cup(starred=not t.starred)
    if isinstance(t, Braid):
        return Braid(t.u, t.v, not t.inverse)
    if isinstance(t, Compose):
        return Compose(dagger(t.second), dagger(t.first))
    if isinstance(t, Tensor):
        return Tensor(dagger(t.left), dagger(t.right))
    raise TermError(f"not a term: {t!r}")


def adjoint(t: Term, k: int = 1) -> Term:
    """The adjoint ``f* : cod* -> dom*`` built from units and counits.

    Realised as ``(1 (x) i_dom) ; (1 (x) f (x) 1) ; (e_cod (x) 1)``.
    """
    if clamp_level(k) == 0:
        raise LevelError("adjoint needs a monoidal structure (k >= 1)")
    dom, cod = dom_cod(t)
    cod_s, dom_s = word_star(cod), word_star(dom)
    return compose(
        tensor(Id(cod_s), cup_word(dom)),
        tensor(Id(cod_s), t, Id(dom_s)),
        tensor(cap_word(cod), Id(dom_s)),
    )


# -- printing ------------------------------------------------------------------

def format_term(t: Term) -> str:
    """Render ``t`` in the term DSL; ``parse_term(format_term(t)) == t``."""
    if isinstance(t, Id):
        return f"id({format_word(t.word)})"
    if isinstance(t, Cup):
        return "cup*" if t.starred else "cup"
    if isinstance(t, Cap):
        return "cap*" if t.starred else "cap"
    if isinstance(t, Braid):
        return f"{'b-' if t.inverse else 'b'}({t.u}, {t.v})"
    if isinstance(t, Compose):
        left = format_term(t.first)
        right = format_term(t.second)
        if isinstance(t.second, Compose):
            right = f"({right})"
        return f"{left} ; {right}"
    if isinstance(t, Tensor):
        left = format_term(t.left)
        right = format_term(t.right)
        if isinstance(t.left, Compose):
            left = f"({left})"
        if isinstance(t.right, (Compose, Tensor)):
            right = f"({right})"
        return f"{left} @ {right}"
    raise TermError(f"not a term: {t!r}")


# -- enumeration ----------------------------------------------------------------

def leaves(k: int) -> list[Term]:
    """Leaf terms legal at level ``k``: identities on words of length <= 1 and the generators."""
    k = clamp_level(k)
    if k == 0:
        return [Id((X,)), Id((XS,))]
    out: list[Term] = [Id(EMPTY), Id((X,)), Id((XS,)), Cup(), Cup(True), Cap(), Cap(True)]
    if k >= 2:
        out += [Braid(u, v, inv) for inv in (False, True) for u in (X, XS) for v in (X, XS)]
    return out


def enumerate_terms(max_size: int, k: int, well_typed: bool = True) -> list[Term]:
    """All terms with at most ``max_size`` constructors, in a fixed order."""
    k = clamp_level(k)
    by_size: dict[int, list[Term]] = {1: leaves(k)}
    ops = (Compose,) if k == 0 else (Compose, Tensor)
    for n in range(3, max_size + 1, 2):
        found = []
        for left in range(1, n - 1, 2):
            for a in by_size.get(left, []):
                for b in by_size.get(n - 1 - left, []):
                    for op in ops:
                        found.append(op(a, b))
        by_size[n] = found
    out = [t for n in sorted(by_size) for t in by_size[n]]
    if well_typed:
        out = [t for t in out if is_well_typed(t)]
    return out
