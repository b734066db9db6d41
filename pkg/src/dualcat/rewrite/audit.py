"""Exhaustive soundness and completeness audits of the rewriting engine."""

from __future__ import annotations

import collections
from dataclasses import dataclass, field
from typing import Sequence

from ..freecat import Term, dom_cod, format_term
from ..rigalg import matrices_equal
from .canonical import canonical_form
from .rules import applicable
from .search import bidirectional_search, rewrite_classes, state_size, state_term, to_state


@dataclass
class SoundnessAudit:
    terms: int = 0
    applications: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def soundness_audit(terms: Sequence[Term], k: int, data: Sequence = (), *, merge_loops: bool = True,
                    max_report: int = 10) -> SoundnessAudit:
    """Every single rule application keeps the type, the canonical form and every datum's value."""
    from ..repfun import eval_term

    audit = SoundnessAudit()
    for t in terms:
        audit.terms += 1
        cf = canonical_form(t, k, merge_loops)
        values = [eval_term(t, ed) for ed in data]
        for rule, pos, _, new in applicable(t, k, merge_loops):
            audit.applications += 1
            problem = None
            if dom_cod(new) != dom_cod(t):
                problem = "type"
            elif canonical_form(new, k, merge_loops) != cf:
                problem = "canonical form"
            elif any(not matrices_equal(eval_term(new, ed), v) for ed, v in zip(data, values)):
                problem = "value"
            if problem and len(audit.violations) < max_report:
                audit.violations.append(f"{rule} at {pos} changes the {problem}: {format_term(t)} -> {format_term(new)}")
    return audit


@dataclass
class CompletenessAudit:
    terms: int = 0
    classes: int = 0
    split_groups: int = 0
    joined_by_search: int = 0
    max_applications: int = 0
    unreachable: list[str] = field(default_factory=list)
    mixed_classes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unreachable and not self.mixed_classes


def completeness_audit(terms: Sequence[Term], k: int, *, merge_loops: bool = True, budget: int = 10_000,
                       size_factor: int = 3) -> CompletenessAudit:
    """Canonical-form classes against rewriting classes.

    The closure under size-non-increasing rules is computed by union-find;
    canonical-form groups it leaves split are joined by bidirectional search
    under a size cap of ``size_factor`` times the larger term.
    """
    audit = CompletenessAudit(terms=len(terms))
    states = {t: to_state(t, k) for t in terms}
    uf = rewrite_classes(set(states.values()), k, merge=merge_loops)
    groups: dict = collections.defaultdict(set)
    by_class: dict = collections.defaultdict(set)
    for t in terms:
        key = (dom_cod(t), canonical_form(t, k, merge_loops))
        root = uf.find(states[t])
        groups[key].add(root)
        by_class[root].add(key)
    audit.classes = len(groups)
    for root, keys in by_class.items():
        if len(keys) > 1:
            audit.mixed_classes.append(format_term(state_term(root)))
    for key, roots in groups.items():
        if len(roots) == 1:
            continue
        audit.split_groups += 1
        ordered = sorted(roots, key=repr)
        for other in ordered[1:]:
            cap = size_factor * max(state_size(ordered[0]), state_size(other))
            res = bidirectional_search(ordered[0], other, k, merge=merge_loops, budget=budget, size_cap=cap)
            audit.max_applications = max(audit.max_applications, res.applications)
            if res.found:
                audit.joined_by_search += 1
            else:
                audit.unreachable.append(f"{format_term(state_term(ordered[0]))} vs {format_term(state_term(other))}")
    return audit


__all__ = ["CompletenessAudit", "SoundnessAudit", "completeness_audit", "soundness_audit"]
