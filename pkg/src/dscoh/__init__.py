"""Document semantic similarity from cycle bases of syn-sim graphs."""

from .cycles import (
    BasicCycle,
    CycleBasis,
    LemmaReport,
    brute_force_cycle_basis,
    coboundary_basis,
    cycle_gp_descriptors,
    minimum_cycle_basis,
    verify_cohomology_lemmas,
)
from .graph import Graph, SynSimGraph, build_syn_sim_graph, circuit_rank, contract_sim_edges
from .lexsim import EmbeddingTable, SimPair, find_sim_pairs, lexical_similarity, load_embeddings
from .metrics import (
    Partition,
    adjusted_rand_index,
    fowlkes_mallows,
    normalized_mutual_info,
    spearman,
)
from .similarity import (
    Document,
    DscohConfig,
    SimilarityMatrix,
    cycle_similarity,
    document_similarity,
    sentence_length_weight,
    sentence_pair_similarity,
    significance_weight,
    similarity_matrix,
)
from .spectral import spectral_cluster
from .treebank import (
    EMPTY_TREE,
    ParseTree,
    PruneConfig,
    leaf_path_length,
    parse_bracketed,
    prune,
    serialize_bracketed,
)

__version__ = "0.1.0"
