import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from tiedlinks.tiedbraid import (
    MoveError,
    ParseError,
    SetPartition,
    TiedBraidWord,
    class_linking,
    class_partition,
    clinking_graph,
    closure_components,
    dump,
    free_reduce,
    linking_matrix,
    markov_move,
    parse,
    random_move,
    random_word,
    sig,
    tie,
    tie_all,
)


def word(n, text, ties=()):
    return parse(f"strands: {n}\nword: {text}\n" + (f"ties: {ties}\n" if ties else ""))


# ---------------------------------------------------------------- parsing


def test_parse_examples():
    assert word(2, "s1 s1").letters == (sig(1), sig(1))
    w = word(3, "s1 s2^-1 e1")
    assert w.strands == 3
    assert w.letters == (sig(1), sig(2, -1), tie(1))


def test_parse_index_out_of_range():
    with pytest.raises(ParseError, match="index out of range") as info:
        parse("strands: 2\nword: s5\n")
    assert info.value.line == 2


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("word: s1\n", "missing strands"),
        ("strands: 2\n", "missing word"),
        ("strands: 2\nword: s1  s1\n", "malformed token"),
        ("strands: 2\nword: x1\n", "malformed token"),
        ("strands: 2\nword: s1^2\n", "malformed token"),
        ("strands: two\nword: s1\n", "bad strand count"),
        ("strands: 2\nword: s1\nties: {1,3}\n", "out of range"),
        ("strands: 2\nword: s1\nties: 1,2\n", "malformed ties"),
        ("strands: 2\nstrands: 2\nword: s1\n", "duplicate"),
        ("strands: 2\nfoo: bar\nword: s1\n", "unrecognised"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse(text)


def test_parse_comments_names_and_ties():
    w = parse("# comment\nname: demo\nstrands: 3\nword: e2 s1\nties: {1,3}{2}\n")
    assert w.name == "demo"
    assert w.top_ties == ((1, 3), (2,))
    assert parse(dump(w)) == w


def test_corpus_parses(corpus):
    assert {"unknot", "hopf", "trefoil", "full_twist3", "tied_chain3"} <= set(corpus)


# ---------------------------------------------------------------- closure data


def test_components_examples():
    assert closure_components(TiedBraidWord(2))[0] == 2
    assert closure_components(word(2, "s1 s1"))[0] == 2
    assert closure_components(word(2, "s1"))[0] == 1
    assert closure_components(load("full_twist3"))[0] == 3


def test_linking_examples():
    assert linking_matrix(word(2, "s1 s1")) == [[0, 1], [1, 0]]
    assert linking_matrix(word(2, "s1 s1 s1 s1")) == [[0, 2], [2, 0]]
    assert linking_matrix(word(2, "s1^-1 s1^-1")) == [[0, -1], [-1, 0]]
    lk = linking_matrix(load("full_twist3"))
    assert all(lk[i][j] == (0 if i == j else 1) for i in range(3) for j in range(3))


def test_class_partition_examples():
    assert len(class_partition(TiedBraidWord(2, (), ((1, 2),)))) == 1
    assert class_partition(word(2, "s1 s1")) == SetPartition.discrete(2)


def test_class_linking_number_example():
    lk = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    g = class_linking(lk, SetPartition.from_blocks(3, [[0, 2]]))
    assert g.vertices == [[1, 3], [2]]
    assert g.edges == [(0, 1, 2)]


def test_clinking_graph_examples():
    g = clinking_graph(load("full_twist3"))
    assert g.k == 3
    assert sorted(g.edges) == [(0, 1, 1), (0, 2, 1), (1, 2, 1)]
    g = clinking_graph(load("unlink2"))
    assert (g.k, g.edges) == (2, [])
    g = clinking_graph(load("tied_chain3"))
    assert linking_matrix(load("tied_chain3")) == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    assert (g.k, g.edges) == (2, [(0, 1, 2)])


def test_tie_letter_ties_occupying_components():
    w = word(3, "s1 s1 e2 s2 s2")
    assert len(class_partition(w)) == 2


def test_self_tie_is_harmless():
    w = word(2, "s1 e1")
    assert closure_components(w)[0] == 1
    assert len(class_partition(w)) == 1


@pytest.mark.parametrize(
    "name, connected",
    [("hopf", True), ("unlink2", False), ("full_twist3", True), ("tied_chain3", True), ("t24", True), ("tied_circles2", True)],
)
def test_graph_connectivity_matches_splitness(name, connected):
    assert clinking_graph(load(name)).is_connected() == connected


# ---------------------------------------------------------------- moves


def test_stabilize_unknot():
    w = markov_move(TiedBraidWord(1), ("stabilize", 1))
    assert (w.strands, w.letters) == (2, (sig(1),))
    assert closure_components(w)[0] == 1


def test_conjugate_example():
    w = markov_move(word(2, "s1 s1"), ("conjugate", 1, 1))
    assert w.letters == (sig(1, -1), sig(1), sig(1), sig(1))
    assert free_reduce(w.letters) == (sig(1), sig(1))


def test_relation_eta2():
    results = {markov_move(word(2, "e1 e1"), ("relation", "eta2", 0, k)).letters for k in range(4)}
    assert (tie(1),) in results


def test_relation_mismatch():
    with pytest.raises(MoveError):
        markov_move(word(2, "s1 s1"), ("relation", "eta2", 0))


def test_tie_all_examples():
    assert tie_all(TiedBraidWord(1)).top_ties == ((1,),)
    assert len(class_partition(tie_all(TiedBraidWord(2)))) == 1
    assert len(class_partition(tie_all(word(2, "s1 s1")))) == 1


def total_abs_linking(w):
    g = clinking_graph(TiedBraidWord(w.strands, tuple(x for x in w.letters if x[0] == "s")))
    return sum(abs(wt) for _, _, wt in g.edges)


def test_moves_preserve_linking_and_partitions():
    rng = random.Random(42)
    for _ in range(300):
        w = random_word(rng, 4, 10, tie_prob=0.3)
        m, _ = closure_components(w)
        parts = len(class_partition(w))
        lk = total_abs_linking(w)
        move, w2 = random_move(w, rng, 5)
        assert closure_components(w2)[0] == m, move
        assert len(class_partition(w2)) == parts, move
        if move[0] != "relation":
            assert total_abs_linking(w2) == lk, move


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_tie_all_single_vertex(seed):
    w = random_word(random.Random(seed), 5, 12)
    assert clinking_graph(tie_all(w)).k == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=6), st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=6), st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=6))
def test_partition_join_laws(x, y, z):
    def build(pairs):
        p = SetPartition.discrete(6)
        for i, j in pairs:
            p = p.join_pair(i, j)
        return p

    p, q, r = build(x), build(y), build(z)
    assert p.join(p) == p
    assert p.join(q) == q.join(p)
    assert p.join(q).join(r) == p.join(q.join(r))
