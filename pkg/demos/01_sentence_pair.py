"""Walk one sentence pair through the pipeline and print what each step sees.

    python demos/01_sentence_pair.py
"""
from pathlib import Path

from dscoh import (
    DscohConfig,
    PruneConfig,
    build_syn_sim_graph,
    circuit_rank,
    find_sim_pairs,
    load_embeddings,
    minimum_cycle_basis,
    parse_bracketed,
    prune,
    sentence_pair_similarity,
    serialize_bracketed,
)

DATA = Path(__file__).parent / "data"

with open(DATA / "toy_vectors.txt") as fh:
    table = load_embeddings(fh)
print(f"{len(table.words())} words, dimension {table.dimension}")

a = parse_bracketed("(S (NP (DT The) (NN chef)) (VP (VBD baked) (NP (JJ fresh) (NN bread))) (. .))")
b = parse_bracketed("(S (NP (DT The) (NN cook)) (VP (VBD made) (NP (JJ warm) (NN bread))) (. .))")

# Pruning drops function words and punctuation, then collapses unary nodes.
cfg = DscohConfig(theta_w=0.6, prune=PruneConfig.english())
pa, pb = prune(a, cfg.prune), prune(b, cfg.prune)
print("\npruned A:", serialize_bracketed(pa))
print("pruned B:", serialize_bracketed(pb))

pairs = find_sim_pairs(pa, pb, table, cfg.theta_w)
print(f"\n{len(pairs)} word pairs above theta_w = {cfg.theta_w}:")
for p in pairs:
    print(f"  {pa[p.leaf_a].token.normalized:>8} ~ {pb[p.leaf_b].token.normalized:<8} {p.weight:.3f}")

g = build_syn_sim_graph(pa, pb, pairs)
print(f"\nsyn-sim graph: {g.n_vertices} vertices, {g.n_syn} syn edges, {g.n_sim} sim edges")
print("circuit rank:", circuit_rank(g))

# each basic cycle uses exactly two sim edges, i.e. pairs two 2-word phrases
basis = minimum_cycle_basis(g)
for c in basis:
    wa = [pa[i].token.normalized for i in c.gp_a.leaves]
    wb = [pb[i].token.normalized for i in c.gp_b.leaves]
    print(f"  {wa} (path {c.gp_a.path_length})  <->  {wb} (path {c.gp_b.path_length})")

value, rec = sentence_pair_similarity(a, b, table, cfg)
print(f"\nw_s = {rec.w_s:.4f}")
for c in rec.cycles:
    print(f"  phi_c = {c.w_c:.4f} * {min(c.sim_weights):.3f} = {c.phi_c:.4f}")
print(f"sentence similarity = {value:.6f}")
