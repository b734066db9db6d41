"""Normalization to slice form and bounded rewriting search."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from ..freecat import Braid, Term, Word, check_level, clamp_level, dom_cod, positions, size, subterm
from .canonical import canonical_form, normalize_c0
from .rules import (
    CHAIN_RULES, NODE_RULES, Slice, apply_relation, chain_rewrites, chain_term, flip_symmetric,
    inverse_moves, read_chain, words_along,
)

# Structural rules in the priority order the normalizer tries them at a node.
ORIENTED = (
    "identity-absorption", "unit-tensor-left", "unit-tensor-right", "id-tensor",
    "assoc-compose", "exchange", "slide-apart", "assoc-tensor^-1",
)


@dataclass(frozen=True)
class Step:
    rule: str
    position: tuple[int, ...]
    variant: int = 0


def _postorder(t: Term) -> list[tuple[int, ...]]:
    pos = list(positions(t))
    return sorted(pos, key=lambda p: (-len(p), p))


def normalize_structure(t: Term, k: int = 3) -> tuple[Term, list[Step]]:
    """Rewrite ``t`` into slice form using structural rules only.

    Returns the slice-form term and the list of rule applications, which
    replays through :func:`apply_relation`.
    """
    k = clamp_level(k)
    steps: list[Step] = []
    if k == 0:
        while True:
            for pos in _postorder(t):
                if NODE_RULES["identity-absorption"].fn(subterm(t, pos)) is not None:
                    t = apply_relation(t, "identity-absorption", pos, k=k)
                    steps.append(Step("identity-absorption", pos))
                    break
            else:
                return t, steps
    names = ORIENTED
    while True:
        for pos in _postorder(t):
            node = subterm(t, pos)
            hit = next((n for n in names if NODE_RULES[n].fn(node) is not None), None)
            if hit is not None:
                t = apply_relation(t, hit, pos, k=k)
                steps.append(Step(hit, pos))
                break
        else:
            return t, steps


# -- chain states ------------------------------------------------------------------------

State = tuple  # (dom, slices)


def settle(state: State, k: int) -> State:
    """Apply the eager normalizations of a level: at ``k >= 3`` every braid becomes positive."""
    if clamp_level(k) < 3:
        return state
    dom, slices = state
    return dom, tuple((p, flip_symmetric(g)) if isinstance(g, Braid) else (p, g) for p, g in slices)


def to_state(t: Term, k: int) -> State:
    snf, _ = normalize_structure(t, k)
    got = read_chain(snf)
    if got is None:  # pragma: no cover - normalize_structure guarantees slice form
        raise AssertionError(f"not in slice form: {snf}")
    return settle(got, k)


def state_term(state: State) -> Term:
    return chain_term(*state)


def state_size(state: State) -> int:
    return size(state_term(state))


def neighbours(state: State, k: int, merge: bool = True, grow: bool = False) -> Iterator[tuple[str, int, State]]:
    """States one rule application away; ``grow`` adds relations read right to left."""
    dom, slices = state
    words = words_along(dom, slices)
    names = [n for n, r in CHAIN_RULES.items() if r.legal(clamp_level(k), merge)]
    for i in range(len(slices) + 1):
        head, tail = slices[:i], slices[i:]
        for name in names:
            for used, rep in chain_rewrites(name, words[i], tail, k, merge):
                yield name, i, settle((dom, head + tuple(rep) + tail[used:]), k)
        if grow:
            for name, used, rep in inverse_moves(words[i], tail, k, merge):
                yield name, i, settle((dom, head + tuple(rep) + tail[used:]), k)


@dataclass
class SearchResult:
    found: bool
    applications: int
    explored: int
    path: list = field(default_factory=list)


def bidirectional_search(a: State, b: State, k: int, *, merge: bool = True, budget: int = 10_000,
                         size_cap: int | None = None, grow: bool = True) -> SearchResult:
    """Breadth-first search from both ends; counts every generated rule application."""
    if a == b:
        return SearchResult(True, 0, 1)
    parents = [{a: None}, {b: None}]
    frontiers = [deque([a]), deque([b])]
    applications = 0
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        nxt: deque = deque()
        for state in frontiers[side]:
            for rule, i, new in neighbours(state, k, merge, grow):
                applications += 1
                if applications > budget:
                    return SearchResult(False, applications, len(parents[0]) + len(parents[1]))
                if size_cap is not None and state_size(new) > size_cap:
                    continue
                if new in parents[side]:
                    continue
                parents[side][new] = (state, rule, i)
                if new in parents[1 - side]:
                    path = _join(parents, new, side)
                    return SearchResult(True, applications, len(parents[0]) + len(parents[1]), path)
                nxt.append(new)
        frontiers[side] = nxt
    return SearchResult(False, applications, len(parents[0]) + len(parents[1]))


def _join(parents, meet, side) -> list:
    """Rule trail from ``a`` to the meeting state, then from there back to ``b``."""
    def trail(d, s):
        out = []
        while d[s] is not None:
            prev, rule, i = d[s]
            out.append((rule, i))
            s = prev
        return out

    left = trail(parents[0], meet)[::-1]
    right = trail(parents[1], meet)
    return left + right


class UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=repr)] = min(ra, rb, key=repr)


def rewrite_classes(states: Iterable[State], k: int, *, merge: bool = True, grow: bool = False,
                    size_cap: int | None = None, limit: int = 200_000) -> UnionFind:
    """Union-find over everything reachable from ``states`` by chain rules.

    Without ``grow`` only size-non-increasing rules are followed, so the closure
    is finite; with ``grow`` the inverse rules are added under ``size_cap``.
    """
    uf = UnionFind()
    seen: set = set()
    for start in states:
        if start in seen:
            continue
        seen.add(start)
        uf.find(start)
        queue = deque([start])
        cap = size_cap
        while queue:
            state = queue.popleft()
            for _, _, new in neighbours(state, k, merge, grow):
                if cap is not None and state_size(new) > cap:
                    continue
                uf.union(state, new)
                if new not in seen:
                    seen.add(new)
                    if len(seen) > limit:
                        raise RuntimeError("rewrite_classes exceeded its state limit")
                    queue.append(new)
    return uf


# -- equality --------------------------------------------------------------------------

class Decision(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EqualityReport:
    decision: Decision
    method: str
    applications: int = 0

    def to_json(self) -> dict:
        return {"applications": self.applications, "decision": self.decision.value, "method": self.method}


class SignatureMismatch(ValueError):
    pass


def decide(s: Term, t: Term, k: int, *, budget: int = 10_000, merge_loops: bool = True) -> EqualityReport:
    k = clamp_level(k)
    check_level(s, k)
    check_level(t, k)
    if dom_cod(s) != dom_cod(t):
        a, b = dom_cod(s), dom_cod(t)
        raise SignatureMismatch(f"terms have different types: {a} vs {b}")
    if k == 0:
        same = normalize_c0(dom_cod(s)[0], 0) == normalize_c0(dom_cod(t)[0], 0)
        return EqualityReport(Decision.EQUAL if same else Decision.DISTINCT, "word")
    if k in (1, 3):
        same = canonical_form(s, k, merge_loops) == canonical_form(t, k, merge_loops)
        return EqualityReport(Decision.EQUAL if same else Decision.DISTINCT, "canonical-form")
    a, b = to_state(s, k), to_state(t, k)
    cap = 3 * max(size(s), size(t))
    res = bidirectional_search(a, b, k, budget=budget, size_cap=cap)
    if res.found:
        return EqualityReport(Decision.EQUAL, "rewriting", res.applications)
    from ..repfun import bundled_datum, eval_term
    from ..rigalg import matrices_equal

    ed = bundled_datum()
    if not matrices_equal(eval_term(s, ed), eval_term(t, ed)):
        return EqualityReport(Decision.DISTINCT, "bundled-datum", res.applications)
    return EqualityReport(Decision.UNKNOWN, "budget-exhausted", res.applications)


def equal(s: Term, t: Term, k: int, budget: int = 10_000, merge_loops: bool = True) -> Decision:
    """Equality of morphisms in C_{1,k}: total for k in {0, 1, 3}, a semi-decision at k = 2."""
    return decide(s, t, k, budget=budget, merge_loops=merge_loops).decision


def reduce_state(state: State, k: int, merge: bool = True, limit: int = 5_000) -> State:
    """Smallest state (by size, then text) among those reachable without growing."""
    best = state
    seen = {state}
    queue = deque([state])
    while queue and len(seen) < limit:
        cur = queue.popleft()
        for _, _, new in neighbours(cur, k, merge):
            if new not in seen:
                seen.add(new)
                queue.append(new)
                if (state_size(new), repr(new)) < (state_size(best), repr(best)):
                    best = new
    return best


def normalize(t: Term, k: int, merge_loops: bool = True) -> Term:
    """A reduced representative of ``t``: slice form, then the smallest form the
    size-non-increasing relations reach."""
    k = clamp_level(k)
    if k == 0:
        return normalize_structure(t, 0)[0]
    return state_term(reduce_state(to_state(t, k), k, merge_loops))


__all__ = [
    "Decision", "EqualityReport", "ORIENTED", "SearchResult", "SignatureMismatch", "Step",
    "UnionFind", "bidirectional_search", "decide", "equal", "neighbours", "normalize",
    "normalize_structure", "reduce_state", "rewrite_classes", "settle", "state_size",
    "state_term", "to_state",
]
