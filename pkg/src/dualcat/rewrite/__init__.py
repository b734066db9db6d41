"""Relations, canonical forms and equality for C_{0,k} and C_{1,k}."""

from .canonical import C0Word, CanonicalForm, CanonicalFormError, canonical_form, normalize_c0, trace
from .rules import RULES, RuleError, apply_relation, applicable, rules_at_level
from .search import Decision, decide, equal, normalize, normalize_structure, to_state

__all__ = [
    "C0Word", "CanonicalForm", "CanonicalFormError", "Decision", "RULES", "RuleError",
    "applicable", "apply_relation", "canonical_form", "decide", "equal", "normalize",
    "normalize_c0", "normalize_structure", "rules_at_level", "to_state", "trace",
]
