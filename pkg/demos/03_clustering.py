"""Cluster a synthetic three-topic corpus and check threshold stability.

Each topic has its own block of embedding vectors, so words within a topic
are similar and words across topics are not.

    python demos/03_clustering.py
"""
import math
import random

import numpy as np

from dscoh import (
    Document,
    DscohConfig,
    EmbeddingTable,
    Partition,
    PruneConfig,
    adjusted_rand_index,
    fowlkes_mallows,
    normalized_mutual_info,
    parse_bracketed,
    similarity_matrix,
    spearman,
    spectral_cluster,
)

TOPICS = {
    "food": ["pizza", "pasta", "bread", "cheese", "soup", "salad", "cook", "bake"],
    "sport": ["soccer", "tennis", "match", "goal", "team", "coach", "score", "play"],
    "tech": ["laptop", "server", "code", "software", "network", "chip", "data", "cloud"],
}

rng = np.random.default_rng(0)
vectors = {}
for words in TOPICS.values():
    center = rng.normal(size=16)
    center /= np.linalg.norm(center)
    for w in words:
        vectors[w] = center + 0.8 * rng.normal(size=16) / math.sqrt(16)
table = EmbeddingTable(vectors)


def sentence(r, words):
    toks = [f"(NN {w})" for w in r.sample(words, r.randint(2, 4))]
    toks.insert(r.randrange(len(toks) + 1), "(DT the)")
    while len(toks) > 2:
        i = r.randrange(len(toks) - 1)
        toks[i : i + 2] = [f"({r.choice(['NP', 'VP'])} {toks[i]} {toks[i + 1]})"]
    return parse_bracketed(f"(S {' '.join(toks)} (. .))")


r = random.Random(0)
docs, truth = [], {}
for i in range(12):
    topic = list(TOPICS)[i % 3]
    docs.append(Document(f"d{i}", tuple(sentence(r, TOPICS[topic]) for _ in range(3))))
    truth[f"d{i}"] = topic
truth = Partition(truth)

cfg = DscohConfig(theta_w=0.6, prune=PruneConfig.english())
m = similarity_matrix(docs, table, cfg)
np.set_printoptions(precision=2, suppress=True, linewidth=120)
print(m.values)

found = spectral_cluster(m, 3, seed=0)
print("\nclusters:", found.labels)
print(f"ARI {adjusted_rand_index(found, truth):.3f}  "
      f"NMI {normalized_mutual_info(found, truth):.3f}  "
      f"FMI {fowlkes_mallows(found, truth):.3f}")

# how much does the ranking of document pairs move with theta_w?
iu = np.triu_indices(len(docs), k=1)
base = similarity_matrix(docs, table, DscohConfig(theta_w=0.5, prune=cfg.prune)).values[iu]
for theta in (0.6, 0.7, 0.8):
    other = similarity_matrix(docs, table, DscohConfig(theta_w=theta, prune=cfg.prune)).values[iu]
    print(f"spearman(0.5, {theta}) = {spearman(base, other):.3f}")
