"""Document similarity from paired two-word generalized phrases.

For every sentence pair the two pruned trees are joined into a syn-sim
graph, a minimum cycle basis is taken, and each basic cycle contributes the
similarity of the phrase pair it encodes, discounted by phrase path length.
Sentence-pair scores are weighted by basis coverage and summed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from .cycles import BasicCycle, minimum_cycle_basis
from .graph import build_syn_sim_graph
from .lexsim import EmbeddingTable, find_sim_pairs
from .treebank import ParseTree, PruneConfig, prune, serialize_bracketed

__all__ = [
    "DuplicateDocumentId",
    "MatrixShapeError",
    "DscohConfig",
    "Document",
    "CycleRecord",
    "SentencePairRecord",
    "PairBreakdown",
    "SimilarityMatrix",
    "significance_weight",
    "sentence_length_weight",
    "cycle_similarity",
    "sentence_pair_similarity",
    "document_similarity",
    "similarity_matrix",
]


class DuplicateDocumentId(ValueError):
    pass


class MatrixShapeError(ValueError):
    """Matrix rows or columns disagree with its id header."""


@dataclass(frozen=True)
class DscohConfig:
    theta_w: float = 0.6
    theta_c1: float = 3.0
    theta_c2: float = 3.0
    prune: PruneConfig = field(default_factory=PruneConfig)

    def __post_init__(self):
        if not 0.0 < self.theta_w <= 1.0:
            raise ValueError(f"theta_w must lie in (0, 1], got {self.theta_w}")
        if self.theta_c1 <= 0 or self.theta_c2 <= 0:
            raise ValueError("theta_c1 and theta_c2 must be positive")


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[ParseTree, ...] = ()

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        object.__setattr__(self, "sentences", tuple(self.sentences))


def significance_weight(p1: int, p2: int, theta_c1: float = 3.0, theta_c2: float = 3.0) -> float:
    """``theta_c1 / (p1**theta_c2 + p2**theta_c2)``; shorter phrases weigh more."""
    if p1 < 1 or p2 < 1:
        raise ValueError("path lengths must be >= 1")
    return theta_c1 / (float(p1) ** theta_c2 + float(p2) ** theta_c2)


def sentence_length_weight(basis_size: int, n_leaves_a: int, n_leaves_b: int) -> float:
    """``2|B| / (C(La, 2) + La + C(Lb, 2) + Lb)``."""
    if n_leaves_a < 1 or n_leaves_b < 1:
        raise ValueError("leaf counts must be >= 1")
    denom = math.comb(n_leaves_a, 2) + n_leaves_a + math.comb(n_leaves_b, 2) + n_leaves_b
    return 2.0 * basis_size / denom


def cycle_similarity(cycle: BasicCycle, cfg: DscohConfig = DscohConfig()) -> float:
    """Significance weight of the phrase pair times its weaker sim edge."""
    if len(cycle.sim_weights) != 2 or cycle.gp_a is None or cycle.gp_b is None:
        raise ValueError("cycle must carry two sim edges and both phrase descriptors")
    w_c = significance_weight(
        cycle.gp_a.path_length, cycle.gp_b.path_length, cfg.theta_c1, cfg.theta_c2
    )
    return w_c * min(cycle.sim_weights)


@dataclass(frozen=True)
class CycleRecord:
    """One basic cycle, i.e. one pair of similar two-word phrases."""

    words_a: tuple[str, str]
    words_b: tuple[str, str]
    leaves_a: tuple[int, int]
    leaves_b: tuple[int, int]
    path_a: int
    path_b: int
    sim_weights: tuple[float, float]
    w_c: float
    phi_c: float

    def swapped(self) -> "CycleRecord":
        return CycleRecord(
            self.words_b, self.words_a, self.leaves_b, self.leaves_a,
            self.path_b, self.path_a, self.sim_weights, self.w_c, self.phi_c,
        )

    def to_dict(self) -> dict:
        return {
            "gp_a": {"words": list(self.words_a), "leaves": list(self.leaves_a), "path_length": self.path_a},
            "gp_b": {"words": list(self.words_b), "leaves": list(self.leaves_b), "path_length": self.path_b},
            "sim_weights": list(self.sim_weights),
            "w_c": self.w_c,
            "phi_c": self.phi_c,
        }


@dataclass(frozen=True)
class SentencePairRecord:
    k: int
    h: int
    n_leaves_a: int
    n_leaves_b: int
    n_sim: int
    basis_size: int
    w_s: float
    cycles: tuple[CycleRecord, ...]
    value: float

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "h": self.h,
            "leaves": [self.n_leaves_a, self.n_leaves_b],
            "sim_edges": self.n_sim,
            "basis_size": self.basis_size,
            "w_s": self.w_s,
            "value": self.value,
            "cycles": [c.to_dict() for c in self.cycles],
        }


@dataclass(frozen=True)
class PairBreakdown:
    doc_a: str
    doc_b: str
    pairs: tuple[SentencePairRecord, ...]
    total: float

    def to_dict(self) -> dict:
        return {
            "doc_a": self.doc_a,
            "doc_b": self.doc_b,
            "total": self.total,
            "sentence_pairs": [p.to_dict() for p in self.pairs if p.basis_size],
        }


def _oriented_pair(pa: ParseTree, pb: ParseTree, table, cfg, k=0, h=0) -> SentencePairRecord:
    """Score two pruned trees.

    Minimum cycle bases are not unique, so the pair is always evaluated in
    one canonical orientation; this makes the score exactly symmetric.
    """
    if serialize_bracketed(pb) < serialize_bracketed(pa):
        rec = _pair_from_pruned(pb, pa, table, cfg)
        return SentencePairRecord(
            k, h, rec.n_leaves_b, rec.n_leaves_a, rec.n_sim, rec.basis_size, rec.w_s,
            tuple(c.swapped() for c in rec.cycles), rec.value,
        )
    rec = _pair_from_pruned(pa, pb, table, cfg)
    return SentencePairRecord(
        k, h, rec.n_leaves_a, rec.n_leaves_b, rec.n_sim, rec.basis_size, rec.w_s, rec.cycles, rec.value
    )


def _pair_from_pruned(pa: ParseTree, pb: ParseTree, table, cfg) -> SentencePairRecord:
    la, lb = len(pa.leaves()), len(pb.leaves())
    if pa.is_empty or pb.is_empty:
        return SentencePairRecord(0, 0, la, lb, 0, 0, 0.0, (), 0.0)
    pairs = find_sim_pairs(pa, pb, table, cfg.theta_w)
    if len(pairs) < 2:
        return SentencePairRecord(0, 0, la, lb, len(pairs), 0, 0.0, (), 0.0)

    g = build_syn_sim_graph(pa, pb, pairs)
    basis = minimum_cycle_basis(g)
    records = []
    for c in basis:
        w_c = significance_weight(c.gp_a.path_length, c.gp_b.path_length, cfg.theta_c1, cfg.theta_c2)
        records.append(
            CycleRecord(
                words_a=tuple(pa[i].token.normalized for i in c.gp_a.leaves),
                words_b=tuple(pb[i].token.normalized for i in c.gp_b.leaves),
                leaves_a=tuple(pa[i].token.leaf_index for i in c.gp_a.leaves),
                leaves_b=tuple(pb[i].token.leaf_index for i in c.gp_b.leaves),
                path_a=c.gp_a.path_length,
                path_b=c.gp_b.path_length,
                sim_weights=c.sim_weights,
                w_c=w_c,
                phi_c=w_c * min(c.sim_weights),
            )
        )
    w_s = sentence_length_weight(len(basis), la, lb)
    value = w_s * math.fsum(r.phi_c for r in records)
    return SentencePairRecord(0, 0, la, lb, len(pairs), len(basis), w_s, tuple(records), value)


def sentence_pair_similarity(
    tree_a: ParseTree, tree_b: ParseTree, table: EmbeddingTable, cfg: DscohConfig = DscohConfig()
) -> tuple[float, SentencePairRecord]:
    """Similarity of two raw (unpruned) constituency trees."""
    rec = _oriented_pair(prune(tree_a, cfg.prune), prune(tree_b, cfg.prune), table, cfg)
    return rec.value, rec


def _pruned(doc: Document, cfg: DscohConfig) -> list[ParseTree]:
    return [prune(t, cfg.prune) for t in doc.sentences]


def _doc_sim(id_a, pruned_a, id_b, pruned_b, table, cfg) -> tuple[float, PairBreakdown]:
    records = [
        _oriented_pair(ta, tb, table, cfg, k, h)
        for k, ta in enumerate(pruned_a)
        for h, tb in enumerate(pruned_b)
    ]
    # fsum is exactly rounded, hence independent of summation order
    total = math.fsum(r.value for r in records)
    return total, PairBreakdown(id_a, id_b, tuple(records), total)


def document_similarity(
    a: Document, b: Document, table: EmbeddingTable, cfg: DscohConfig = DscohConfig()
) -> tuple[float, PairBreakdown]:
    return _doc_sim(a.id, _pruned(a, cfg), b.id, _pruned(b, cfg), table, cfg)


@dataclass(frozen=True)
class SimilarityMatrix:
    ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        vals = np.array(self.values, dtype=np.float64)
        if vals.shape != (len(self.ids), len(self.ids)):
            raise MatrixShapeError(f"matrix shape {vals.shape} does not match {len(self.ids)} ids")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.ids)

    def index(self, doc_id: str) -> int:
        return self.ids.index(doc_id)

    def get(self, id_a: str, id_b: str) -> float:
        return float(self.values[self.index(id_a), self.index(id_b)])

    def normalized(self) -> "SimilarityMatrix":
        """Scale so the largest entry is 1; an all-zero matrix is unchanged."""
        top = self.values.max(initial=0.0)
        return self if top <= 0 else SimilarityMatrix(self.ids, self.values / top)

    def write_tsv(self, fh: TextIO) -> None:
        fh.write("\t".join([""] + list(self.ids)) + "\n")
        for doc_id, row in zip(self.ids, self.values):
            fh.write("\t".join([doc_id] + [repr(float(x)) for x in row]) + "\n")

    @classmethod
    def read_tsv(cls, fh: Iterable[str]) -> "SimilarityMatrix":
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
        if not lines:
            raise ValueError("empty matrix file")
        ids = lines[0].split("\t")[1:]
        rows = []
        for lineno, line in enumerate(lines[1:], 2):
            cells = line.split("\t")
            if len(cells) != len(ids) + 1:
                raise MatrixShapeError(f"line {lineno}: expected {len(ids) + 1} columns, got {len(cells)}")
            if cells[0] != ids[len(rows)]:
                raise MatrixShapeError(f"line {lineno}: row id {cells[0]!r} does not match header")
            try:
                rows.append([float(x) for x in cells[1:]])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        if len(rows) != len(ids):
            raise MatrixShapeError(f"expected {len(ids)} rows, got {len(rows)}")
        return cls(ids, np.array(rows).reshape(len(ids), len(ids)))


_worker_state: Optional[tuple] = None


def _init_worker(ids, pruned, table, cfg):
    global _worker_state
    _worker_state = (ids, pruned, table, cfg)


def _matrix_cell(ij):
    ids, pruned, table, cfg = _worker_state
    i, j = ij
    return _doc_sim(ids[i], pruned[i], ids[j], pruned[j], table, cfg)[0]


def similarity_matrix(
    docs: Sequence[Document],
    table: EmbeddingTable,
    cfg: DscohConfig = DscohConfig(),
    workers: int = 1,
    normalize: bool = False,
) -> SimilarityMatrix:
    """Pairwise document similarities, diagonal included.

    With ``workers > 1`` document pairs are scored in a process pool; the
    result is identical to the serial run.
    """
    if not docs:
        raise ValueError("need at least one document")
    ids = [d.id for d in docs]
    seen = set()
    for doc_id in ids:
        if doc_id in seen:
            raise DuplicateDocumentId(doc_id)
        seen.add(doc_id)

    pruned = [_pruned(d, cfg) for d in docs]
    cells = [(i, j) for i in range(len(docs)) for j in range(i, len(docs))]
    if workers > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(ids, pruned, table, cfg)) as ex:
            values = list(ex.map(_matrix_cell, cells, chunksize=max(1, len(cells) // (4 * workers))))
    else:
        _init_worker(ids, pruned, table, cfg)
        values = [_matrix_cell(c) for c in cells]

    mat = np.zeros((len(docs), len(docs)))
    for (i, j), v in zip(cells, values):
        mat[i, j] = mat[j, i] = v
    out = SimilarityMatrix(ids, mat)
    return out.normalized() if normalize else out
