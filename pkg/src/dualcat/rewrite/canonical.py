"""Canonical forms by strand tracing.

A term denotes an oriented 1-tangle.  Tracing its strands yields a matching
of the boundary points plus a multiset of closed loops; at ``k = 1`` (planar)
and ``k >= 3`` (where all crossings can be undone) this data is a complete
invariant.

Conventions: boundary points are numbered left to right, domain first, so
domain point ``i`` is ``i`` and codomain point ``j`` is ``len(dom) + j``.  An
``x`` endpoint carries a strand running downward (from domain towards
codomain), an ``x*`` endpoint one running upward.  Each tracked arc carries
its total turning in half-turns, counter-clockwise positive, which is how
closed loops get an orientation class.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any

from ..freecat import (
    XS, Braid, Cap, Compose, Cup, Id, Letter, Tensor, Term, Word, check_level, clamp_level,
    dom_cod, word,
)

DOM, COD = 0, 1
Point = tuple[int, int]  # (side, index)


class CanonicalFormError(ValueError):
    pass


@dataclass(frozen=True)
class Strands:
    """Traced picture of a term: arcs ``start -> (end, turning)`` plus loop turnings."""

    n_dom: int
    n_cod: int
    arcs: dict
    loops: tuple


def _letter_arc(side_letter: Letter, i: int) -> tuple[Point, Point]:
    if side_letter is XS:
        return (COD, i), (DOM, i)
    return (DOM, i), (COD, i)


def trace(t: Term) -> Strands:
    if isinstance(t, Id):
        arcs = {}
        for i, ltr in enumerate(t.word):
            s, e = _letter_arc(ltr, i)
            arcs[s] = (e, 0)
        return Strands(len(t.word), len(t.word), arcs, ())
    if isinstance(t, Cup):
        # i_x is a counter-clockwise half turn from the x* leg to the x leg
        if t.starred:
            return Strands(0, 2, {(COD, 0): ((COD, 1), -1)}, ())
        return Strands(0, 2, {(COD, 1): ((COD, 0), 1)}, ())
    if isinstance(t, Cap):
        if t.starred:
            return Strands(2, 0, {(DOM, 0): ((DOM, 1), 1)}, ())
        return Strands(2, 0, {(DOM, 1): ((DOM, 0), -1)}, ())
    if isinstance(t, Braid):
        (a, b), _ = ((t.v, t.u), None) if t.inverse else ((t.u, t.v), None)
        arcs = {}
        for i, ltr in ((0, a), (1, b)):
            j = 1 - i
            if ltr is XS:
                arcs[(COD, j)] = ((DOM, i), 0)
            else:
                arcs[(DOM, i)] = ((COD, j), 0)
        return Strands(2, 2, arcs, ())
    if isinstance(t, Tensor):
        f, g = trace(t.left), trace(t.right)
        shift = {DOM: f.n_dom, COD: f.n_cod}
        arcs = dict(f.arcs)
        for (s_side, s_i), ((e_side, e_i), rot) in g.arcs.items():
            arcs[(s_side, s_i + shift[s_side])] = ((e_side, e_i + shift[e_side]), rot)
        return Strands(f.n_dom + g.n_dom, f.n_cod + g.n_cod, arcs, f.loops + g.loops)
    if isinstance(t, Compose):
        return _glue(trace(t.first), trace(t.second))
    raise CanonicalFormError(f"not a term: {t!r}")


def _glue(f: Strands, g: Strands) -> Strands:
    if f.n_cod != g.n_dom:
        raise CanonicalFormError("cannot glue strand pictures of mismatched width")
    visited: set[int] = set()
    arcs = {}

    def follow(in_f: bool, point: Point) -> tuple[Point, int, bool]:
        rot = 0
        while True:
            end, r = (f if in_f else g).arcs[point]
            rot += r
            side, idx = end
            if in_f and side == COD:
                visited.add(idx)
                in_f, point = False, (DOM, idx)
            elif not in_f and side == DOM:
                visited.add(idx)
                in_f, point = True, (COD, idx)
            else:
                return end, rot, in_f

    for point in f.arcs:
        if point[0] == DOM:
            end, rot, in_f = follow(True, point)
            arcs[point] = ((DOM, end[1]) if in_f else (COD, end[1]), rot)
    for point in g.arcs:
        if point[0] == COD:
            end, rot, in_f = follow(False, point)
            arcs[point] = ((DOM, end[1]) if in_f else (COD, end[1]), rot)

    loops = list(f.loops + g.loops)
    for mid in range(f.n_cod):
        if mid in visited:
            continue
        # a closed component through the middle row; start wherever an arc begins
        in_f = (COD, mid) in f.arcs
        start = (COD, mid) if in_f else (DOM, mid)
        rot, point, cur_f = 0, start, in_f
        while True:
            visited.add(point[1])
            end, r = (f if cur_f else g).arcs[point]
            rot += r
            cur_f, point = (False, (DOM, end[1])) if cur_f else (True, (COD, end[1]))
            if point == start and cur_f == in_f:
                break
        loops.append(rot)
    return Strands(f.n_dom, g.n_cod, arcs, tuple(loops))


@dataclass(frozen=True)
class CanonicalForm:
    """Boundary matching plus loop counts.

    ``matching`` holds triples ``(p, q, orient)`` with ``p < q`` in boundary
    numbering and ``orient`` ``"+"`` when the strand runs from ``p`` to ``q``.
    ``loops`` is a sorted tuple of ``(class, count)`` with classes ``"ccw"`` and
    ``"cw"`` (or the single class ``"any"`` once loop orientations merge).
    """

    k: int
    n_dom: int
    n_cod: int
    matching: tuple
    loops: tuple
    merged: bool = False

    def loop_counts(self) -> dict[str, int]:
        return dict(self.loops)

    def to_json(self) -> dict[str, Any]:
        def point(p: int) -> list:
            return ["dom", p] if p < self.n_dom else ["cod", p - self.n_dom]

        counts = self.loop_counts()
        if self.merged:
            loops = {"any": counts.get("any", 0)}
        elif set(counts) <= {"cw", "ccw"}:
            loops = {"ccw": counts.get("ccw", 0), "cw": counts.get("cw", 0)}
        else:
            loops = counts
        return {
            "k": self.k,
            "loops": loops,
            "matching": [point(p) + point(q) + [o] for p, q, o in self.matching],
        }

    def is_planar(self) -> bool:
        return matching_is_planar(self.n_dom, self.n_cod, [(p, q) for p, q, _ in self.matching])


def matching_is_planar(n_dom: int, n_cod: int, pairs: list[tuple[int, int]]) -> bool:
    """No two pairs cross when the boundary is read around the rectangle."""
    total = n_dom + n_cod

    def around(p: int) -> int:
        return p if p < n_dom else total - 1 - (p - n_dom)

    chords = [tuple(sorted((around(p), around(q)))) for p, q in pairs]
    for i, (a, b) in enumerate(chords):
        for c, d in chords[i + 1:]:
            if a < c < b < d or c < a < d < b:
                return False
    return True


def loop_class(turning: int, merge: bool) -> str:
    if merge:
        return "any"
    if turning == 2:
        return "ccw"
    if turning == -2:
        return "cw"
    return f"turn{turning // 2}"


def canonical_form(t: Term, k: int, merge_loops: bool = True) -> CanonicalForm:
    """Canonical form at ``k = 1`` or ``k >= 3``.

    ``merge_loops`` identifies the two loop orientations at ``k >= 3``; it has
    no effect at ``k = 1``.
    """
    k = clamp_level(k)
    if k == 0:
        raise CanonicalFormError("k = 0: use normalize_c0 / word equality instead")
    if k == 2:
        raise CanonicalFormError("k = 2: no canonical form; equality is a bounded search (equal)")
    check_level(t, k)
    dom, cod = dom_cod(t)
    s = trace(t)
    n_dom = len(dom)

    def num(p: Point) -> int:
        return p[1] if p[0] == DOM else n_dom + p[1]

    matching = []
    for start, (end, _) in s.arcs.items():
        a, b = num(start), num(end)
        matching.append((a, b, "+") if a < b else (b, a, "-"))
    matching.sort()
    merge = merge_loops and k >= 3
    counts = Counter(loop_class(r, merge) for r in s.loops)
    cf = CanonicalForm(k, n_dom, len(cod), tuple(matching), tuple(sorted(counts.items())), merge)
    if k == 1 and not cf.is_planar():
        raise CanonicalFormError("non-planar matching at k = 1")
    return cf


# -- the n = 0 column -------------------------------------------------------------

@dataclass(frozen=True)
class C0Word:
    """Normal form of an object of ``C_{0,k}``: a word for ``k <= 1``, exponents for ``k >= 2``."""

    k: int
    letters: Word | None = None
    exponents: tuple[int, int] | None = None

    def __str__(self) -> str:
        if self.exponents is not None:
            n, m = self.exponents
            return f"x^{n} (x*)^{m}"
        return " ".join(str(ltr) for ltr in self.letters) or "1"


def parse_c0(text: str) -> Word:
    """Read a word such as ``"x x* x**"``; any number of stars per letter."""
    letters = []
    for tok in text.replace("@", " ").split():
        if tok == "1":
            continue
        if tok.rstrip("*") != "x":
            raise CanonicalFormError(f"bad letter {tok!r}")
        stars = len(tok) - 1
        letters.append(XS if stars % 2 else Letter.X)
    return tuple(letters)


def normalize_c0(w: str | Word, k: int) -> C0Word:
    letters = parse_c0(w) if isinstance(w, str) else tuple(w)
    k = clamp_level(k)
    if k == 0:
        if len(letters) != 1:
            raise CanonicalFormError("k = 0 has no monoidal structure: objects are x and x* only")
        return C0Word(0, letters=letters)
    if k == 1:
        return C0Word(1, letters=letters)
    return C0Word(k, exponents=(sum(ltr is Letter.X for ltr in letters), sum(ltr is XS for ltr in letters)))


__all__ = [
    "C0Word", "CanonicalForm", "CanonicalFormError", "Strands", "canonical_form",
    "matching_is_planar", "normalize_c0", "parse_c0", "trace", "word",
]
