import io
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dscoh.lexsim import (
    DimensionMismatch,
    EmbeddingTable,
    EmptyTable,
    NonNumericComponent,
    SimPair,
    find_sim_pairs,
    lexical_similarity,
    load_embeddings,
)
from dscoh.treebank import parse_bracketed, prune


def load(text):
    return load_embeddings(io.StringIO(text))


def test_load_normalizes():
    t = load("a 1 0\nb 0 2\n")
    assert len(t) == 2 and t.dimension == 2
    for w in ("a", "b"):
        assert abs(np.linalg.norm(t[w]) - 1) < 1e-6
    np.testing.assert_array_equal(t["b"], [0.0, 1.0])


def test_load_header_and_duplicates():
    t = load("3 2\na 1 0\nb 0 1\na 0 1\n")
    assert len(t) == 2
    np.testing.assert_array_equal(t["a"], [0.0, 1.0])


@pytest.mark.parametrize(
    "text, exc",
    [("a 1 0\nb 1\n", DimensionMismatch), ("", EmptyTable), ("\n\n", EmptyTable), ("a 1 x\n", NonNumericComponent)],
)
def test_load_errors(text, exc):
    with pytest.raises(exc):
        load(text)


def test_similarity_rules():
    t = load("a 1 0\nb 0 1\nc -1 0\n")
    assert lexical_similarity(t, "pizza", "pizza") == 1.0
    assert lexical_similarity(t, "a", "b") == 0.0
    assert lexical_similarity(t, "a", "c") == 0.0
    assert lexical_similarity(t, "a", "zzz") == 0.0
    assert lexical_similarity(EmbeddingTable.empty(), "a", "a") == 1.0


words = st.sampled_from(["a", "b", "c", "d", "oov"])


@given(words, words)
def test_similarity_symmetric_bounded(w1, w2):
    rng = np.random.default_rng(0)
    t = EmbeddingTable({w: rng.normal(size=5) for w in "abcd"})
    s = lexical_similarity(t, w1, w2)
    assert s == lexical_similarity(t, w2, w1)
    assert 0.0 <= s <= 1.0


def _cat_dog_table():
    return EmbeddingTable({"cat": [1.0, 0.0], "dog": [0.7, math.sqrt(1 - 0.49)]})


def test_find_pairs_cat_dog():
    ta = prune(parse_bracketed("(S (NN cat) (VBD sat))"))
    tb = prune(parse_bracketed("(S (NN dog) (VBD sat))"))
    table = _cat_dog_table()
    pairs = find_sim_pairs(ta, tb, table, 0.6)
    # oracle: evaluate every leaf pair directly
    expected = []
    for a in ta.leaves():
        for b in tb.leaves():
            wa, wb = a.token.normalized, b.token.normalized
            if wa == wb:
                expected.append((wa, wb, 1.0))
            elif wa in table and wb in table:
                cos = float(table[wa] @ table[wb])
                if cos >= 0.6:
                    expected.append((wa, wb, cos))
    got = [(ta[p.leaf_a].token.normalized, tb[p.leaf_b].token.normalized, p.weight) for p in pairs]
    assert got == expected
    assert [(x, y) for x, y, _ in got] == [("cat", "dog"), ("sat", "sat")]
    assert got[0][2] == pytest.approx(0.7, abs=1e-12)


def test_find_pairs_identical_sentences():
    t = prune(parse_bracketed("(S (NN cat) (VP (VBD ate) (NN fish)))"))
    pairs = find_sim_pairs(t, t, EmbeddingTable.empty(), 0.5)
    diag = [p for p in pairs if t[p.leaf_a].token.normalized == t[p.leaf_b].token.normalized]
    assert len(diag) >= 3 and all(p.weight == 1.0 for p in diag)


def test_find_pairs_disjoint_and_duplicates():
    ta = prune(parse_bracketed("(S (NN cat) (NN cat))"))
    tb = prune(parse_bracketed("(S (NN cat) (NN dog))"))
    assert find_sim_pairs(ta, prune(parse_bracketed("(S (NN x) (NN y))")), EmbeddingTable.empty(), 0.5) == []
    pairs = find_sim_pairs(ta, tb, EmbeddingTable.empty(), 0.5)
    assert [(p.leaf_a, p.leaf_b) for p in pairs] == [(1, 1), (2, 1)]


def test_find_pairs_monotone_in_threshold():
    rng = np.random.default_rng(1)
    vocab = ["w%d" % i for i in range(8)]
    table = EmbeddingTable({w: rng.normal(size=4) + 1.0 for w in vocab})
    ta = prune(parse_bracketed("(S " + " ".join(f"(NN {w})" for w in vocab[:5]) + ")"))
    tb = prune(parse_bracketed("(S " + " ".join(f"(NN {w})" for w in vocab[3:]) + ")"))
    prev = None
    for theta in (0.1, 0.3, 0.5, 0.7, 0.9, 1.0):
        cur = set(find_sim_pairs(ta, tb, table, theta))
        assert all(p.weight >= theta for p in cur)
        if prev is not None:
            assert cur <= prev
        prev = cur


def test_threshold_validated():
    t = prune(parse_bracketed("(X a)"))
    with pytest.raises(ValueError):
        find_sim_pairs(t, t, EmbeddingTable.empty(), 0.0)


def test_simpair_is_value():
    assert SimPair(1, 2, 0.5) == SimPair(1, 2, 0.5)
