import itertools
import random

import pytest

from conftest import load
from tiedlinks.coeff import A, B, U, CoeffError, Scalar
from tiedlinks.invariants import TraceEngine
from tiedlinks.omega import (
    C_OMEGA,
    RULES,
    omega_exponents,
    omega_fast,
    omega_from_graph,
    omega_recursive,
    omega_trace,
    skein_check,
    skein_diagrams,
    skein_residual,
    sqrt_u,
)
from tiedlinks.tiedbraid import TiedBraidWord, clinking_graph, closure_components, parse, random_word, tie_all

TRIANGLE = A ** -2 * U ** -2 * (1 + 3 * B * U - 3 * B - 3 * B**2 * U + 2 * B**2 + B**2 * U**3)


def even(x):
    return Scalar(x, 0, C_OMEGA)


def test_sqrt_u_squares_to_u():
    assert sqrt_u() * sqrt_u() == even(U)


def test_knots_are_one():
    for name in ("unknot", "trefoil", "figure_eight", "trefoil_mirror"):
        assert omega_fast(load(name)).value == 1
        assert omega_trace(load(name)) == 1


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_all_tied_unlinks(m):
    w = tie_all(TiedBraidWord(m))
    expected = (sqrt_u() * B / A) ** (m - 1)
    assert omega_fast(w).value == expected
    assert omega_trace(w) == expected


def test_triangle_example():
    w = load("full_twist3")
    summary = omega_fast(w)
    assert (summary.m, summary.k, summary.p) == (3, 3, 3)
    assert all(weight == 1 for _, _, weight in summary.edges)
    assert summary.value == even(TRIANGLE)
    assert omega_trace(w) == even(TRIANGLE)


def test_tied_chain_configuration():
    expected = even(U / A**2 * (U**-2 * B + (1 - U**-2) * B**2))
    summary = omega_fast(load("tied_chain3"))
    assert (summary.m, summary.k, summary.edges) == (3, 2, [(0, 1, 2)])
    assert summary.value == expected
    assert omega_trace(load("tied_chain3")) == expected


def test_exponent_examples():
    assert omega_exponents(omega_fast(load("unknot")), classical=True) == (0, 0, 1, 1)
    assert omega_exponents(omega_fast(load("full_twist3")), classical=True) == (-2, 0, 3, 3)
    tied3 = omega_fast(tie_all(TiedBraidWord(3)))
    assert omega_exponents(tied3) == (-2, 2, 3, 1)


def test_exponents_reject_mixed_parity():
    with pytest.raises(CoeffError):
        omega_exponents(Scalar(1, 1, C_OMEGA))


def test_exponent_laws_random():
    rng = random.Random(42)
    for _ in range(100):
        w = random_word(rng, 4, 10, tie_prob=0.3)
        s = omega_fast(w)
        _, _, m, k = omega_exponents(s, classical=not w.has_ties())
        assert (m, k) == (s.m, s.k), str(w)


def test_engine_agreement_corpus(corpus):
    eng = TraceEngine()
    for name, w in corpus.items():
        assert omega_fast(w).value == omega_trace(w, eng), name


def test_engine_agreement_random():
    rng = random.Random(11)
    eng = TraceEngine()
    for _ in range(40):
        w = random_word(rng, 4, 10)
        assert omega_fast(w).value == omega_trace(w, eng), str(w)


def test_order_independence():
    rng = random.Random(3)
    graphs = [(3, 3, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]), (4, 3, [(0, 1, 2), (1, 2, -1), (0, 2, 3)]), (4, 4, [(0, 1, 1), (1, 2, 2), (2, 3, -1), (0, 3, 1)])]
    for m, k, edges in graphs:
        direct = omega_from_graph(m, k, edges)
        for order in itertools.permutations(range(len(edges))):
            assert omega_recursive(m, k, edges, list(order)) == direct
    m, k = 5, 5
    edges = [(x, y, rng.choice((-2, -1, 1, 2))) for x in range(k) for y in range(x + 1, k) if rng.random() < 0.6]
    orders = [rng.sample(range(len(edges)), len(edges)) for _ in range(5)]
    assert all(omega_recursive(m, k, edges, o) == omega_from_graph(m, k, edges) for o in orders)


def canonical_graph(w):
    g = clinking_graph(w)
    best = None
    for perm in itertools.permutations(range(g.k)):
        key = tuple(sorted((min(perm[x], perm[y]), max(perm[x], perm[y]), wt) for x, y, wt in g.edges))
        best = key if best is None or key < best else best
    return closure_components(w)[0], g.k, best


def test_graph_invariance(corpus):
    groups = {}
    for name, w in corpus.items():
        groups.setdefault(canonical_graph(w), []).append(name)
    pairs = 0
    for names in groups.values():
        values = [omega_fast(corpus[n]).value for n in names]
        assert all(v == values[0] for v in values), names
        pairs += len(names) - 1
    assert pairs >= 2
    assert omega_trace(load("unlink2")) == omega_trace(load("lk0_2comp"))


def test_skein_diagrams():
    d = skein_diagrams(load("hopf"), 0)
    assert d["+"].letters == (("s", 1, 1), ("s", 1, 1))
    assert d["-"].letters == (("s", 1, -1), ("s", 1, 1))
    assert d["~"].letters == (("e", 1), ("s", 1, 1))
    assert d["+~"].letters == (("e", 1), ("s", 1, 1), ("s", 1, 1))
    with pytest.raises(ValueError):
        skein_diagrams(parse("strands: 2\nword: e1 s1\n"), 0)


def test_skein_examples():
    assert skein_check(load("hopf"), 0, "III")
    tied = parse("strands: 3\nword: s1 e1 s2 s1\n")
    assert skein_check(tied, 3, "qp")
    with pytest.raises(ValueError):
        skein_residual(load("hopf"), 0, "VI")


def test_skein_rules_on_corpus(corpus):
    eng = TraceEngine()
    for name, w in corpus.items():
        for pos in w.crossing_positions:
            for rule in RULES:
                assert skein_check(w, pos, rule, eng), (name, pos, rule)


def test_skein_rules_random():
    rng = random.Random(5)
    eng = TraceEngine()
    for _ in range(10):
        w = random_word(rng, 3, 6, min_strands=2)
        for pos in w.crossing_positions:
            for rule in RULES:
                assert skein_check(w, pos, rule, eng), (str(w), pos, rule)


def test_sign_flipped_rule_fails():
    from tiedlinks.coeff import V
    from tiedlinks.invariants import upsilon

    eng = TraceEngine()
    val = {k: upsilon(d, eng).value for k, d in skein_diagrams(load("hopf"), 0).items()}
    sc = Scalar.sqrt_c()
    inv = sc.inverse()
    flipped = inv * val["+"] - sc * val["-"] + (V - 1) / U * val["~"] - inv * (1 - U.inverse()) * val["+~"]
    assert flipped
