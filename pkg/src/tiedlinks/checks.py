"""Randomised verification suites driven by ``tiedlinks selfcheck`` and the test-suite."""

from __future__ import annotations

import random

from .btalgebra import (
    CheckReport,
    check_isomorphism,
    check_one_parameter,
    check_relations,
)
from .coeff import A, B, ONE
from .invariants import TraceEngine, upsilon
from .omega import RULES, omega_exponents, omega_fast, omega_trace, skein_check, sqrt_u
from .tiedbraid import (
    TiedBraidWord,
    class_partition,
    random_move,
    random_word,
    relation_moves,
    apply_relation,
    tie_all,
)


def embed(x: dict) -> dict:
    """Image of an element of ``E_n`` in ``E_{n+1}``."""
    out = {}
    for (labels, perm), c in x.items():
        n = len(perm)
        out[(labels + (n,), perm + (n,))] = c
    return out


def trace_rules(seed: int = 42, trials: int = 200, max_strands: int = 4) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("trace rules")
    eng = TraceEngine()
    for n in range(1, max_strands + 1):
        report.record("rho(1)=1", eng.trace(eng.algebra(n).unit()) == ONE, n)
    per = max(1, trials // 4)
    for _ in range(per):
        n = rng.randint(1, max_strands - 1)
        alg, big = eng.algebra(n), eng.algebra(n + 1)
        x = alg.random_element(rng)
        rx = eng.trace(x)
        xe = embed(x)
        report.record("rule2: XR_n", eng.trace(big.mul_R(xe, n)) == A * rx, x)
        report.record("rule2: XR_nE_n", eng.trace(big.mul_E(big.mul_R(xe, n), n)) == A * rx, x)
        report.record("rule3: XE_n", eng.trace(big.mul_E(xe, n)) == B * rx, x)
        m = rng.randint(2, max_strands)
        alg = eng.algebra(m)
        x, y = alg.random_element(rng, 2), alg.random_element(rng, 2)
        report.record("rule1: XY=YX", eng.trace(alg.mul(x, y)) == eng.trace(alg.mul(y, x)), (x, y))
    # the trace must not depend on which tie partner the recursion uses
    alt = TraceEngine(tie_partner="min")
    for _ in range(max(1, trials // 10)):
        n = rng.randint(min(3, max_strands), max_strands)
        x = eng.algebra(n).random_element(rng)
        report.record("tie-partner choice", eng.trace(x) == alt.trace(x), x)
    return report


def markov_fuzz(seed: int = 42, trials: int = 200, max_strands: int = 4, max_length: int = 10) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("Markov invariance")
    eng = TraceEngine()
    kinds = set()
    for _ in range(trials):
        w = random_word(rng, max_strands, max_length)
        base = upsilon(w, eng).value
        moved, moves = w, []
        for _ in range(rng.randint(1, 6)):
            move, moved = random_move(moved, rng, max_strands + 1)
            moves.append(move)
            kinds.add(move[1] if move[0] == "relation" else move[0])
        ok = upsilon(moved, eng).value == base
        ok_classes = len(class_partition(moved)) == len(class_partition(w))
        report.record("upsilon", ok, None if ok else (str(w), moves))
        report.record("classes", ok_classes, None if ok_classes else (str(w), moves))
    report.notes.append("moves exercised: " + ", ".join(sorted(kinds)))
    return report


def relation_class_invariance(seed: int = 42, trials: int = 100) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("class partition under monoid relations")
    for _ in range(trials):
        w = random_word(rng, 4, 10, tie_prob=0.4)
        for rid, pos, _, _ in relation_moves(w):
            w2 = apply_relation(w, rid, pos, rng.randrange(3))
            report.record(rid, class_partition(w2) == class_partition(w), (str(w), rid, pos))
    return report


def skein_suite(seed: int = 42, words: int = 100, max_strands: int = 4, max_length: int = 8) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("skein rules")
    eng = TraceEngine()
    done = 0
    while done < words:
        w = random_word(rng, max_strands, max_length, min_strands=2)
        if not w.crossing_positions:
            continue
        done += 1
        for pos in w.crossing_positions:
            for rule in RULES:
                ok = skein_check(w, pos, rule, eng)
                report.record(rule, ok, None if ok else (str(w), pos))
    return report


def engine_agreement(seed: int = 42, words: int = 100, max_strands: int = 4) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("omega engines agree")
    eng = TraceEngine()
    for _ in range(words):
        w = random_word(rng, max_strands, 10)
        ok = omega_fast(w).value == omega_trace(w, eng)
        report.record("omega_fast == trace(v=1)", ok, None if ok else str(w))
    return report


def omega_structure(seed: int = 42, words: int = 100, max_strands: int = 4) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport("omega structure")
    eng = TraceEngine()
    knots = 0
    while knots < 20:
        w = random_word(rng, max_strands, 10, tie_prob=0.3)
        s = omega_fast(w)
        if s.m != 1:
            continue
        knots += 1
        report.record("knot = 1", omega_trace(w, eng) == 1, str(w))
    for m in range(1, 6):
        w = tie_all(TiedBraidWord(m, ()))
        expected = (sqrt_u() * B / A) ** (m - 1)
        report.record("all tied m-unlink", omega_trace(w, eng) == expected, m)
    for _ in range(words):
        w = random_word(rng, max_strands, 10, tie_prob=0.3)
        s = omega_fast(w)
        r, s_b, m_inf, k_inf = omega_exponents(s, classical=not w.has_ties())
        ok = (m_inf, k_inf) == (s.m, s.k)
        report.record("m = 1-r, k = 1-r-s", ok, None if ok else (str(w), r, s_b, s.m, s.k))
    return report


def run_all(seed: int = 42, strands: int = 4, trials: int = 200) -> list[CheckReport]:
    strands = max(2, strands)
    reports = []
    for n in range(2, strands + 1):
        reports.append(check_relations(n, seed, trials))
    for n in range(2, min(strands, 3) + 1):
        reports.append(check_isomorphism(n, seed))
        reports.append(check_one_parameter(n, seed, trials=5))
    reports.append(trace_rules(seed, trials, strands))
    reports.append(markov_fuzz(seed, trials, strands))
    reports.append(relation_class_invariance(seed, max(10, trials // 2)))
    reports.append(skein_suite(seed, max(10, trials // 2), strands))
    reports.append(engine_agreement(seed, max(10, trials // 2), strands))
    reports.append(omega_structure(seed, max(10, trials // 2), strands))
    return reports
