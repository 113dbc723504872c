"""Random trees, graphs and corpora shared by the tests."""

import math
import random

import numpy as np
from hypothesis import strategies as st

from dscoh.graph import Graph, build_syn_sim_graph
from dscoh.lexsim import EmbeddingTable, SimPair
from dscoh.similarity import Document
from dscoh.treebank import PruneConfig, parse_bracketed, prune

VOCAB = ["cat", "dog", "pizza", "movie", "eat", "watch", "run", "park", "city", "music"]
STOP = ["the", "a", "we", "of", "when"]
PUNCT = [".", ",", "!"]
LABELS = ["S", "NP", "VP", "PP", "SBAR", "ADJP"]
POS = ["NN", "VB", "DT", "IN", "JJ"]


def random_bracketed(rng: random.Random, depth: int = 3, vocab=VOCAB + STOP + PUNCT) -> str:
    if depth == 0 or rng.random() < 0.3:
        return f"({rng.choice(POS)} {rng.choice(vocab)})"
    kids = " ".join(random_bracketed(rng, depth - 1, vocab) for _ in range(rng.randint(1, 3)))
    return f"({rng.choice(LABELS)} {kids})"


STOP_CFG = PruneConfig(stopwords=frozenset(STOP))


def random_pruned(rng: random.Random, min_leaves: int = 1, depth: int = 3):
    while True:
        t = prune(parse_bracketed(random_bracketed(rng, depth)), STOP_CFG)
        if not t.is_empty and len(t.leaves()) >= min_leaves:
            return t


def random_syn_sim(rng: random.Random, max_sim: int = 6, min_sim: int = 0, min_leaves: int = 1):
    """Two random pruned trees and a random set of sim edges between leaves."""
    ta = random_pruned(rng, min_leaves, depth=rng.randint(1, 4))
    tb = random_pruned(rng, min_leaves, depth=rng.randint(1, 4))
    cand = [(a.id, b.id) for a in ta.leaves() for b in tb.leaves()]
    n = rng.randint(min(min_sim, len(cand)), min(max_sim, len(cand)))
    chosen = sorted(rng.sample(cand, n))
    pairs = [SimPair(a, b, round(rng.uniform(0.5, 1.0), 3)) for a, b in chosen]
    return build_syn_sim_graph(ta, tb, pairs)


def random_connected_graph(rng: random.Random, max_vertices: int = 8, max_edges: int = 16, max_weight: int = 10):
    n = rng.randint(2, max_vertices)
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    extra = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    rng.shuffle(extra)
    edges |= set(extra[: rng.randint(0, min(len(extra), max_edges - (n - 1)))])
    return Graph.from_edges([(u, v, rng.randint(1, max_weight)) for u, v in sorted(edges)], n)


@st.composite
def bracketed_trees(draw, max_depth=4):
    """Hypothesis strategy for well-formed bracketed trees."""
    word = st.sampled_from(VOCAB + STOP + PUNCT + ["Pizza", "NYC", "x1"])

    def node(depth):
        if depth == 0 or draw(st.booleans()):
            return f"({draw(st.sampled_from(POS))} {draw(word)})"
        n = draw(st.integers(1, 3))
        return f"({draw(st.sampled_from(LABELS))} " + " ".join(node(depth - 1) for _ in range(n)) + ")"

    return node(draw(st.integers(0, max_depth)))


# --- synthetic corpus with toy embeddings ------------------------------------

TOPICS = {
    "food": ["pizza", "pasta", "bread", "cheese", "soup", "salad", "cook", "bake"],
    "sport": ["soccer", "tennis", "match", "goal", "team", "coach", "score", "play"],
    "tech": ["laptop", "server", "code", "software", "network", "chip", "data", "cloud"],
}


def toy_embeddings(seed: int = 0, dim: int = 16, spread: float = 0.8) -> EmbeddingTable:
    """Topic-centred random vectors: in-topic cosines spread roughly 0.3-0.9."""
    rng = np.random.default_rng(seed)
    vectors = {}
    for center in TOPICS:
        c = rng.normal(size=dim)
        c /= np.linalg.norm(c)
        for w in TOPICS[center]:
            v = c + spread * rng.normal(size=dim) / math.sqrt(dim)
            vectors[w] = v
    return EmbeddingTable(vectors)


def _sentence(rng: random.Random, words) -> str:
    toks = [f"(NN {w})" for w in rng.sample(words, rng.randint(2, 4))]
    toks.insert(rng.randrange(len(toks) + 1), f"(DT {rng.choice(['the', 'a'])})")
    while len(toks) > 2:
        i = rng.randrange(len(toks) - 1)
        toks[i : i + 2] = [f"({rng.choice(['NP', 'VP', 'PP'])} {toks[i]} {toks[i + 1]})"]
    return f"(S {' '.join(toks)} (. .))"


def synthetic_corpus(seed: int = 0, n_docs: int = 10) -> tuple[list[Document], list[str]]:
    rng = random.Random(seed)
    topics = list(TOPICS)
    docs, labels = [], []
    for i in range(n_docs):
        topic = topics[i % len(topics)]
        words = TOPICS[topic]
        if rng.random() < 0.3:
            words = words + TOPICS[rng.choice(topics)][:3]
        sents = [parse_bracketed(_sentence(rng, words)) for _ in range(rng.randint(2, 3))]
        docs.append(Document(f"d{i}", tuple(sents)))
        labels.append(topic)
    return docs, labels
