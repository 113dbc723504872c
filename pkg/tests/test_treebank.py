import io
import random

import pytest
from hypothesis import given, settings

from dscoh.treebank import (
    EMPTY_TREE,
    EmptyInput,
    LeafWithChildren,
    NotALeaf,
    NotInTree,
    PruneConfig,
    TreebankError,
    UnbalancedBrackets,
    bfs_distance,
    is_punctuation,
    leaf_path_length,
    parse_bracketed,
    prune,
    read_wordlist,
    serialize_bracketed,
)
from treegen import STOP, STOP_CFG, bracketed_trees, random_bracketed

STOPS = PruneConfig(stopwords={"the", "a", "we", "when"})


def test_parse_three_leaves():
    t = parse_bracketed("(S (NP (DT the) (NN cat)) (VP (VBD sat)))")
    assert t[t.root].label == "S"
    assert t.words() == ["the", "cat", "sat"]
    assert [n.token.leaf_index for n in t.leaves()] == [0, 1, 2]


def test_parse_minimal():
    t = parse_bracketed("(X a)")
    assert t[t.root].label == "X"
    assert [n.token.surface for n in t.leaves()] == ["a"]


def test_normalized_is_lowercase():
    t = parse_bracketed("(NP (NNP Pizza) (NNP NYC))")
    assert [(n.token.surface, n.token.normalized) for n in t.leaves()] == [("Pizza", "pizza"), ("NYC", "nyc")]


@pytest.mark.parametrize(
    "text, exc",
    [
        ("(S (NP", UnbalancedBrackets),
        ("(S (NP a)))", UnbalancedBrackets),
        ("", EmptyInput),
        ("   \n", EmptyInput),
        ("(S a(NP b))", LeafWithChildren),
        ("(S)", TreebankError),
        ("(S a) (T b)", TreebankError),
        ("two words", TreebankError),
    ],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_bracketed(text)


def test_bare_token_is_single_leaf():
    t = parse_bracketed("eat")
    assert len(t) == 1 and t.words() == ["eat"]
    assert serialize_bracketed(t) == "eat"


def test_mixed_children_allowed():
    t = parse_bracketed("(S a (NP b c))")
    assert t.words() == ["a", "b", "c"]


def test_ptb_wrapper_is_unwrapped():
    assert parse_bracketed("( (S (NN a) (NN b)) )") == parse_bracketed("(S (NN a) (NN b))")


def test_serialize_examples():
    assert serialize_bracketed(parse_bracketed("(X a)")) == "(X a)"
    assert serialize_bracketed(EMPTY_TREE) == ""
    text = "(S (NP (DT the) (NN cat)) (VP (VBD sat)))"
    assert serialize_bracketed(parse_bracketed("(S  (NP (DT the)\n (NN cat)) (VP (VBD sat)))")) == text


@given(bracketed_trees())
def test_round_trip(text):
    t = parse_bracketed(text)
    assert parse_bracketed(serialize_bracketed(t)) == t


def test_prune_single_stopword_leaf():
    assert prune(parse_bracketed("(DT the)"), STOPS) is EMPTY_TREE


def test_prune_collapses_unary_chain():
    t = prune(parse_bracketed("(S (VP (VBD eat)))"), STOPS)
    assert len(t) == 1 and t.words() == ["eat"]


def test_prune_hand_trace():
    # NP loses "the" and collapses to "pizza"; "." is punctuation; S is unary
    t = prune(parse_bracketed("(S (NP (DT the) (NN pizza)) (. .))"), STOPS)
    assert t.words() == ["pizza"]
    assert len(t) == 1


def test_prune_keeps_structure_of_survivors():
    t = parse_bracketed("(S (NP (DT the) (NN cat)) (VP (VBD chased) (NP (DT a) (NN dog))))")
    assert serialize_bracketed(prune(t, STOPS)) == "(S cat (VP chased dog))"


def test_entity_whitelist_overrides_stopword():
    cfg = PruneConfig(stopwords={"us", "the"}, entities={"US"})
    t = prune(parse_bracketed("(S (NP (DT the) (NNP US)) (VP (VBD won)))"), cfg)
    assert t.words() == ["us", "won"]


def test_label_whitelist():
    t = parse_bracketed("(S (NP (NN cat)) (PP (IN on) (NN mat)) (VP (VBD sat)))")
    assert prune(t, PruneConfig(pos_whitelist={"S", "NP", "NN", "VP", "VBD"})).words() == ["cat", "sat"]
    assert prune(t, PruneConfig(pos_whitelist={"NP", "NN"})) is EMPTY_TREE


def test_prune_config_normalizes():
    cfg = PruneConfig(stopwords=["The", " the ", "A"], entities=["NYC"])
    assert cfg.stopwords == {"the", "a"}
    assert cfg.entities == {"nyc"}


@pytest.mark.parametrize("word, expected", [(".", True), ("--", True), ("''", True), ("a.", False), ("3", False)])
def test_punctuation(word, expected):
    assert is_punctuation(word) is expected


@settings(max_examples=200)
@given(bracketed_trees())
def test_prune_properties(text):
    t = parse_bracketed(text)
    p = prune(t, STOP_CFG)
    assert prune(p, STOP_CFG) == p
    if p.is_empty:
        return
    original = {(n.token.leaf_index, n.token.surface) for n in t.leaves()}
    for leaf in p.leaves():
        assert (leaf.token.leaf_index, leaf.token.surface) in original
        assert leaf.token.normalized not in STOP
        assert not is_punctuation(leaf.token.surface)
    for node in p.nodes:
        assert node.is_leaf or len(node.children) >= 2
    assert sum(1 for i in range(len(p)) if p.parent(i) is None) == 1


def test_path_length_siblings_and_self():
    t = parse_bracketed("(NP (NN a) (NN b))")
    t = prune(t)
    a, b = (n.id for n in t.leaves())
    assert leaf_path_length(t, a, b) == 2
    assert leaf_path_length(t, a, a) == 1


def test_path_length_sentence():
    raw = parse_bracketed(
        "(S (NP (PRP we)) (VP (VBP eat) (NP (NN pizza)) (SBAR (WHADVP (WRB when))"
        " (S (NP (PRP we)) (VP (VBP watch) (NP (DT a) (NN movie)))))))"
    )
    t = prune(raw, STOPS)
    assert serialize_bracketed(t) == "(VP eat pizza (VP watch movie))"
    ids = {n.token.normalized: n.id for n in t.leaves()}
    expected = bfs_distance(t, ids["eat"], ids["movie"])
    assert expected == 3
    assert leaf_path_length(t, ids["eat"], ids["movie"]) == expected


def test_path_length_errors():
    t = parse_bracketed("(S (NN a) (NN b))")
    with pytest.raises(NotALeaf):
        leaf_path_length(t, t.root, 2)
    with pytest.raises(NotInTree):
        leaf_path_length(t, 2, 99)


def test_path_length_properties_random():
    rng = random.Random(3)
    for _ in range(100):
        t = parse_bracketed(random_bracketed(rng, 4))
        leaves = [n.id for n in t.leaves()]
        for a in leaves:
            for b in leaves:
                d = leaf_path_length(t, a, b)
                assert d == leaf_path_length(t, b, a)
                assert d == (1 if a == b else bfs_distance(t, a, b))
                if a != b:
                    assert d >= 2


def test_read_wordlist():
    fh = io.StringIO("the\n# comment\n\n a \nthe\n")
    assert read_wordlist(fh) == {"the", "a"}


@given(bracketed_trees())
def test_pruned_round_trip(text):
    p = prune(parse_bracketed(text), STOP_CFG)
    if not p.is_empty:
        assert parse_bracketed(serialize_bracketed(p)).shape() == p.shape()
