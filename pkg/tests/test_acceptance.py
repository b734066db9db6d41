"""One test per acceptance criterion; each records a pass/fail line printed after the run."""

from __future__ import annotations

import collections
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from conftest import ACCEPTANCE
from dualcat.algtools import center, check_pentagon, eckmann_hilton_exhaustive, eckmann_hilton_random
from dualcat.algtools.checks import constant_associator, z2_cocycle
from dualcat.algtools.finite import cyclic_monoid, one_object_category, random_monoid, symmetric_group
from dualcat.algtools.star import perturb_m1, star_check, truncated_moyal
from dualcat.dsl import parse_term
from dualcat.freecat import EMPTY, X, XS, Id, dom_cod, enumerate_terms
from dualcat.repfun import check_dagger_compat, eval_term, random_datum, standard_datum, validate_datum
from dualcat.rewrite import canonical_form, decide, to_state
from dualcat.rewrite.audit import completeness_audit, soundness_audit
from dualcat.rigalg import Rig, identity, matrices_equal
from dualcat.tqft2 import (
    check_movie_moves, mutate_mult, random_frobenius, surface_invariant, trivial_algebra, validate_frobenius,
)

from oracles import single_entry_is_cocycle, torus_contraction
from test_cli import CASES, FIX

TRIANGLES = {
    "(cup @ id(x)) ; (id(x) @ cap)": (X,),
    "(id(x*) @ cup) ; (cap @ id(x*))": (XS,),
}


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = ("PASS" if ok else "FAIL", detail)
    assert ok, f"criterion {n}: {detail}"


class Timer:
    def __enter__(self) -> Timer:
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.seconds = time.perf_counter() - self.start


def test_criterion_01_triangles(rng):
    with Timer() as tm:
        ok = all(canonical_form(parse_term(text), 1) == canonical_form(Id(word), 1)
                 for text, word in TRIANGLES.items())
        data = [random_datum(rng, rng.randint(1, 3), 1) for _ in range(5)]
        for ed in data:
            ok &= validate_datum(ed).valid
            for text in TRIANGLES:
                ok &= matrices_equal(eval_term(parse_term(text), ed), identity(ed.dim))
    ok &= tm.seconds < 5
    record(1, ok, f"2 triangles, 5 data (dims {sorted(ed.dim for ed in data)}), {tm.seconds:.2f}s")


def test_criterion_02_soundness_completeness(rng):
    parts = []
    ok = True
    with Timer() as tm:
        for k in (1, 3):
            terms = enumerate_terms(5, k)
            data = [random_datum(rng, 2, k), standard_datum(2, k)]
            snd = soundness_audit(terms, k, data)
            cmp = completeness_audit(terms, k)
            ok &= snd.ok and cmp.ok
            parts.append(f"k={k}: {len(terms)} terms, {snd.applications} rule applications, "
                         f"{len(snd.violations)} violations, {cmp.classes} classes, "
                         f"{cmp.split_groups} joined by search, {len(cmp.unreachable)} unreachable")
    ok &= tm.seconds < 60
    record(2, ok, "; ".join(parts) + f"; {tm.seconds:.1f}s")


def test_criterion_03_stabilization(rng):
    with Timer() as tm:
        terms = enumerate_terms(5, 3)
        same_terms = enumerate_terms(5, 4) == terms
        part3 = collections.defaultdict(list)
        part4 = collections.defaultdict(list)
        for i, t in enumerate(terms):
            part3[dom_cod(t), canonical_form(t, 3)].append(i)
            part4[dom_cod(t), canonical_form(t, 4)].append(i)
        # equal partitions give identical verdicts on every pair
        same_partition = sorted(part3.values()) == sorted(part4.values())
        same_states = all(to_state(t, 3) == to_state(t, 4) for t in terms)
        by_type = collections.defaultdict(list)
        for t in terms:
            by_type[dom_cod(t)].append(t)
        pools = [v for v in by_type.values() if len(v) > 1]
        sampled = 0
        agree = True
        for _ in range(2000):
            pool = rng.choice(pools)
            s, t = rng.sample(pool, 2)
            agree &= decide(s, t, 3).decision == decide(s, t, 4).decision
            sampled += 1
    ok = same_terms and same_partition and same_states and agree and tm.seconds < 10
    record(3, ok, f"{len(terms)} terms, {len(part3)} classes at both levels, {sampled} sampled pair verdicts "
                  f"agree={agree}, {tm.seconds:.1f}s")


def test_criterion_04_functoriality(rng):
    with Timer() as tm:
        good = 0
        for _ in range(20):
            fd = random_frobenius(rng)
            good += validate_frobenius(fd).valid and check_movie_moves(fd).valid
        caught = 0
        for _ in range(100):
            bad, _ = mutate_mult(random_frobenius(rng), rng)
            caught += not check_movie_moves(bad).valid
    ok = good == 20 and caught >= 95 and tm.seconds < 30
    record(4, ok, f"20/20 data pass every move: {good == 20}; mutations caught {caught}/100; {tm.seconds:.1f}s")


def test_criterion_05_surfaces(rng):
    triv = trivial_algebra()
    values = [surface_invariant(g, triv) for g in range(6)]
    ok = values == [1] * 6
    matches = 0
    for _ in range(20):
        fd = random_frobenius(rng)
        oracle = torus_contraction(fd.unit.tolist(), fd.mult.tolist(), fd.trace.tolist(), fd.copairing.tolist())
        matches += surface_invariant(1, fd) == oracle
    ok &= matches == 20
    record(5, ok, f"trivial algebra g=0..5 -> {' '.join(map(str, values))}; "
                  f"genus 1 equals contraction oracle on {matches}/20 data")


def test_criterion_06_eckmann_hilton(seed):
    with Timer() as tm:
        ex = eckmann_hilton_exhaustive(2)
        rnd = eckmann_hilton_random(np.random.default_rng(seed), n=3, samples=100_000)
    ok = ex.pairs == 256 and ex.counterexamples == 0 and rnd.counterexamples == 0 and tm.seconds < 60
    record(6, ok, f"exhaustive: {ex.pairs} pairs, {ex.unit_shared} share a unit, {ex.interchange} interchange, "
                  f"{ex.counterexamples} counterexamples; random: {rnd.pairs} samples, {rnd.interchange} interchange, "
                  f"{rnd.counterexamples} counterexamples; {tm.seconds:.1f}s")


def test_criterion_07_centers(rng):
    with Timer() as tm:
        s3 = center(symmetric_group(3))
        ok = [a for a in s3.elems] == [(0, 1, 2)]
        agree = 0
        for _ in range(10):
            m = random_monoid(rng, 5)
            zc = {e[0] for e in center(one_object_category(m)).elems}
            agree += zc == set(center(m).elems)
        two = len(center(["a", "b"]))
    ok &= agree == 10 and two == 4 and tm.seconds < 5
    record(7, ok, f"|Z(S3)| = {len(s3)}, one-object centers agree {agree}/10, |Z(2-set)| = {two}, {tm.seconds:.2f}s")


def test_criterion_08_pentagon():
    with Timer() as tm:
        trivial = check_pentagon(constant_associator(cyclic_monoid(2))).valid
        nontrivial = check_pentagon(z2_cocycle()).valid
        mutations = caught = 0
        for base in (constant_associator(cyclic_monoid(2)), z2_cocycle()):
            m = base.objects
            for key in base.assoc:
                for factor in (Fraction(-1), Fraction(2)):
                    if single_entry_is_cocycle(m.elems, m.mul, key, factor):
                        continue
                    mutations += 1
                    caught += not check_pentagon(base.with_entry(key, base.assoc[key] * factor)).valid
    ok = trivial and nontrivial and mutations > 0 and caught == mutations and tm.seconds < 5
    record(8, ok, f"trivial {trivial}, Z/2 cocycle {nontrivial}, non-cocycle mutations caught {caught}/{mutations}, "
                  f"{tm.seconds:.2f}s")


def test_criterion_09_star_products(rng):
    with Timer() as tm:
        sd = truncated_moyal()
        rep = star_check(sd)
        wanted = ["order h associativity", "bracket Leibniz rule", "bracket Jacobi identity", "bracket antisymmetry"]
        status = {name: rep[name].ok for name in wanted}
        caught = 0
        for _ in range(50):
            bad, _ = perturb_m1(sd, rng)
            caught += not star_check(bad).valid
    ok = all(status.values()) and caught == 50 and tm.seconds < 30
    failing = ", ".join(f"{n} at {rep[n].witness}" for n, good in status.items() if not good)
    record(9, ok, f"truncated Moyal fails: {failing or 'none'}; perturbations caught {caught}/50; {tm.seconds:.1f}s")


def test_criterion_10_unitarity():
    with Timer() as tm:
        ed = standard_datum(2, 3, Rig.COMPLEX)
        terms = enumerate_terms(5, 3)
        states = collections.defaultdict(list)
        for t in terms:
            d, c = dom_cod(t)
            if d == EMPTY:
                states[c].append(t)
        failures = pairs = 0
        for t in terms:
            d, c = dom_cod(t)
            partners = states[c] if d == EMPTY else []
            pairs += len(partners)
            failures += not check_dagger_compat(t, ed, partners).valid
    ok = failures == 0 and tm.seconds < 60
    record(10, ok, f"{len(terms)} terms, {pairs} inner-product pairs, {failures} failures, {tm.seconds:.1f}s")


def test_criterion_11_determinism():
    differing = []
    for name, argv, _ in CASES:
        runs = [subprocess.run([sys.executable, "-m", "dualcat", *argv], cwd=FIX, capture_output=True, check=False)
                for _ in range(2)]
        if (runs[0].returncode, runs[0].stdout, runs[0].stderr) != (runs[1].returncode, runs[1].stdout, runs[1].stderr):
            differing.append(name)
    record(11, not differing, f"{len(CASES)} fixture runs, {len(differing)} differ {differing or ''}".strip())

