"""Command-line front end.

Exit codes: 0 success, 1 a checker found a violation, 2 malformed invocation
or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .algtools import centers, checks, finite, star
from .dsl import ParseError, parse_term
from .freecat import TermError, clamp_level, dom_cod, format_term, format_word
from .repfun import InvalidDatum, bundled_datum, datum_from_json, eval_term, standard_datum, validate_datum
from .report import Report
from .rewrite import CanonicalFormError, canonical_form, decide, normalize
from .rewrite.search import SignatureMismatch
from .rigalg import RigError
from .tqft2 import (
    MovieError, check_movie_moves, eval_movie, frobenius_from_json, group_algebra, movie_from_json,
    surface_invariant, trivial_algebra, validate_frobenius,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

INPUT_ERRORS = (
    ParseError, TermError, RigError, InvalidDatum, CanonicalFormError, SignatureMismatch, MovieError,
    finite.StructureError, star.StarDataError, OSError, json.JSONDecodeError, KeyError, ValueError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load(path: str) -> Any:
    return json.loads(Path(path).read_text())


def _emit(out, args, obj: Any, text: str) -> None:
    out.write((_dump(obj) if args.json else text) + "\n")


def _report(out, args, rep: Report) -> int:
    _emit(out, args, rep.to_dict(), rep.format())
    return EXIT_OK if rep.valid else EXIT_FAIL


def _algebra(spec: str):
    builtin = {"trivial": trivial_algebra, "z2": lambda: group_algebra(2), "z3": lambda: group_algebra(3)}
    if spec in builtin:
        return builtin[spec]()
    return frobenius_from_json(_load(spec))


def _datum(spec: str):
    if spec == "bundled":
        return bundled_datum()
    if spec.startswith("standard:"):
        return standard_datum(int(spec.split(":", 1)[1]))
    return datum_from_json(_load(spec))


# -- commands ---------------------------------------------------------------------------

def cmd_normalize(args, out) -> int:
    t = parse_term(args.term)
    k = clamp_level(args.k)
    dom, cod = dom_cod(t, k)
    cf = canonical_form(t, k) if k in (1, 3) else None
    nf = normalize(t, k)
    obj = {
        "canonical_form": cf.to_json() if cf else None,
        "cod": format_word(cod), "dom": format_word(dom), "k": k, "normal_form": format_term(nf),
    }
    lines = [f"{format_word(dom)} -> {format_word(cod)} at k={k}", f"normal form: {format_term(nf)}"]
    if cf is not None:
        lines.append("canonical form: " + json.dumps(cf.to_json(), sort_keys=True))
    _emit(out, args, obj, "\n".join(lines))
    return EXIT_OK


def cmd_equal(args, out) -> int:
    s, t = parse_term(args.lhs), parse_term(args.rhs)
    rep = decide(s, t, args.k, budget=args.budget)
    _emit(out, args, rep.to_json(), f"{rep.decision.value} ({rep.method})")
    return EXIT_OK if rep.decision.value == "equal" else EXIT_FAIL


def cmd_eval(args, out) -> int:
    ed = _datum(args.datum)
    if not ed.valid:
        return _report(out, args, ed.report)
    m = eval_term(parse_term(args.term), ed)
    _emit(out, args, m.to_json(), str(m))
    return EXIT_OK


def cmd_surface(args, out) -> int:
    fd = _algebra(args.algebra)
    rep = validate_frobenius(fd)
    if not rep.valid:
        return _report(out, args, rep)
    val = surface_invariant(args.genus, fd, check=False)
    _emit(out, args, {"genus": args.genus, "value": fd.rig.to_json(val)}, fd.rig.format(val))
    return EXIT_OK


def cmd_movie(args, out) -> int:
    mv = movie_from_json(_load(args.movie))
    fd = _algebra(args.algebra)
    m = eval_movie(mv, fd)
    _emit(out, args, {"in": mv.in_circles, "matrix": m.to_json(), "out": mv.out_circles}, str(m))
    return EXIT_OK


def cmd_check(args, out) -> int:
    what, path = args.what, args.path
    if what == "frobenius":
        return _report(out, args, validate_frobenius(_algebra(path)))
    if what == "moves":
        return _report(out, args, check_movie_moves(_algebra(path)))
    if what == "datum":
        return _report(out, args, validate_datum(_datum(path)))
    if what == "pentagon":
        return _report(out, args, checks.check_pentagon(checks.assoc_from_json(_load(path))))
    if what == "exchange":
        return _report(out, args, checks.check_exchange(finite.two_category_from_json(_load(path))))
    if what == "star":
        return _report(out, args, star.star_check(star.star_from_json(_load(path))))
    # natural: {"source", "target", "F", "G", "alpha"}
    obj = _load(path)
    c, d = finite.category_from_json(obj["source"]), finite.category_from_json(obj["target"])
    F = finite.functor_from_json(obj["F"], c, d)
    G = finite.functor_from_json(obj["G"], c, d)
    alpha = {x: finite._hashable(finite.lookup_json_key(obj["alpha"], x)) for x in c.objects}
    return _report(out, args, checks.check_natural(c, d, F, G, alpha))


def cmd_center(args, out) -> int:
    obj = _load(args.path)
    if args.kind == "set":
        elems = obj["elems"] if isinstance(obj, dict) else obj
        z = centers.center([finite._hashable(e) for e in elems])
    elif args.kind == "monoid":
        z = centers.center(finite.monoid_from_json(obj))
    else:
        z = centers.center(finite.category_from_json(obj))
    data = z.to_json()
    text = f"center of size {len(z)}: " + ", ".join(json.dumps(e) for e in data["elems"])
    _emit(out, args, {"size": len(z), **data}, text)
    return EXIT_OK


def cmd_suspend(args, out) -> int:
    words = [tuple(w.split(",")) if w else () for w in args.words]
    alphabet = sorted({a for w in words for a in w})
    fm = centers.suspend_set(alphabet)
    product: tuple = fm.unit
    for w in words:
        product = fm.mul(product, w)
    ab = centers.abelianize(product)
    obj = {"abelianized": ab, "alphabet": alphabet, "product": list(fm.normalize(product)),
           "words": [list(w) for w in words]}
    text = f"product: {'.'.join(product) or '(empty word)'}\nabelianized: " + (
        " ".join(f"{a}^{n}" for a, n in ab.items()) or "(empty)")
    _emit(out, args, obj, text)
    return EXIT_OK


def cmd_eckmann_hilton(args, out) -> int:
    if args.path is None:
        if args.random:
            survey = checks.eckmann_hilton_random(np.random.default_rng(args.seed), args.size, args.random)
        else:
            survey = checks.eckmann_hilton_exhaustive(args.size)
        obj = {**survey.to_json(), "seed": args.seed if args.random else None, "size": args.size}
        text = (f"{survey.pairs} pairs, {survey.unit_shared} with a shared unit, {survey.interchange} "
                f"satisfying interchange, {survey.counterexamples} counterexamples")
        _emit(out, args, obj, text)
        return EXIT_OK if survey.counterexamples == 0 else EXIT_FAIL
    elems, op1, op2, unit = checks.eh_from_json(_load(args.path))
    verdict = checks.eckmann_hilton(elems, op1, op2, unit)
    text = verdict.status + (f" ({verdict.witness})" if verdict.witness else "")
    _emit(out, args, verdict.to_json(), text)
    return EXIT_FAIL if verdict.status in ("precondition-failed", "counterexample") else EXIT_OK


# -- parser ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    p = _Parser(prog="dualcat", description="Free braided categories with duals, 2D TQFTs and finite checkers.")
    # accepted before the subcommand too; merged into ``json`` in ``main``
    p.add_argument("--json", dest="json_top", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--seed", dest="seed_top", type=int, default=None, help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("normalize", parents=[common], help="normal and canonical form of a term")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("term")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("equal", parents=[common], help="decide equality of two terms")
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--budget", type=int, default=10_000)
    s.add_argument("lhs")
    s.add_argument("rhs")
    s.set_defaults(fn=cmd_equal)

    s = sub.add_parser("eval", parents=[common], help="evaluate a term under a datum")
    s.add_argument("--datum", required=True, help="JSON path, 'bundled' or 'standard:D'")
    s.add_argument("term")
    s.set_defaults(fn=cmd_eval)

    s = sub.add_parser("surface", parents=[common], help="closed surface invariant")
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--algebra", required=True, help="JSON path or one of trivial, z2, z3")
    s.set_defaults(fn=cmd_surface)

    s = sub.add_parser("movie", parents=[common], help="evaluate a cobordism movie")
    s.add_argument("--movie", required=True)
    s.add_argument("--algebra", required=True)
    s.set_defaults(fn=cmd_movie)

    s = sub.add_parser("check", parents=[common], help="run a validator")
    s.add_argument("what", choices=["frobenius", "datum", "moves", "pentagon", "exchange", "natural", "star"])
    s.add_argument("path")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("center", parents=[common], help="generalized center")
    s.add_argument("--kind", choices=["set", "monoid", "category"], required=True)
    s.add_argument("path")
    s.set_defaults(fn=cmd_center)

    s = sub.add_parser("suspend", parents=[common], help="free monoid product and abelianization")
    s.add_argument("words", nargs="*", help="comma-separated letters; '' is the empty word")
    s.set_defaults(fn=cmd_suspend)

    s = sub.add_parser("eckmann-hilton", parents=[common], help="interchange implies equal commutative products")
    s.add_argument("path", nargs="?", help="JSON with elems, op1, op2 and optionally unit")
    s.add_argument("--size", type=int, default=2, help="set size for the survey modes")
    s.add_argument("--random", type=int, default=0, metavar="N", help="sample N random pairs instead of all")
    s.set_defaults(fn=cmd_eckmann_hilton)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.json = args.json or args.json_top
        if args.seed_top is not None:
            args.seed = args.seed_top
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    try:
        return args.fn(args, out)
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
    except INPUT_ERRORS as exc:
        err.write(f"error: {exc}\n")
    return EXIT_USAGE


__all__ = ["build_parser", "main"]
