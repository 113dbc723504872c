"""Word-embedding tables and thresholded cross-sentence word pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .treebank import ParseTree

__all__ = [
    "EmbeddingError",
    "DimensionMismatch",
    "EmptyTable",
    "NonNumericComponent",
    "EmbeddingTable",
    "SimPair",
    "load_embeddings",
    "lexical_similarity",
    "find_sim_pairs",
]


class EmbeddingError(ValueError):
    pass


class DimensionMismatch(EmbeddingError):
    pass


class EmptyTable(EmbeddingError):
    pass


class NonNumericComponent(EmbeddingError):
    pass


class EmbeddingTable:
    """Immutable map from normalized word to a unit-norm vector."""

    def __init__(self, vectors: Mapping[str, Iterable[float]]):
        words = list(vectors)
        if not words:
            raise EmptyTable("embedding table has no entries")
        mat = np.array([np.asarray(vectors[w], dtype=np.float64) for w in words])
        if mat.ndim != 2:
            raise DimensionMismatch("vectors do not share one dimension")
        norms = np.linalg.norm(mat, axis=1, keepdims=True)
        # zero vectors stay zero: they are similar to nothing
        mat = np.divide(mat, norms, out=np.zeros_like(mat), where=norms > 0)
        mat.setflags(write=False)
        self._index = {w.lower(): i for i, w in enumerate(words)}
        self._matrix = mat

    @classmethod
    def empty(cls, dimension: int = 1) -> "EmbeddingTable":
        table = cls.__new__(cls)
        table._index = {}
        table._matrix = np.zeros((0, dimension))
        return table

    @property
    def dimension(self) -> int:
        return self._matrix.shape[1]

    def __len__(self) -> int:
        return len(self._index)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def __getitem__(self, word: str) -> np.ndarray:
        return self._matrix[self._index[word]]

    def words(self) -> list[str]:
        return list(self._index)


@dataclass(frozen=True)
class SimPair:
    leaf_a: int
    leaf_b: int
    weight: float


def load_embeddings(source: Iterable[str]) -> EmbeddingTable:
    """Read the ``word c1 ... cd`` text format.

    An optional leading ``count dim`` header line is skipped. Later
    duplicates overwrite earlier ones.
    """
    vectors: dict[str, list[float]] = {}
    dim = None
    for lineno, line in enumerate(source, 1):
        parts = line.split()
        if not parts:
            continue
        if lineno == 1 and len(parts) == 2 and all(p.isdigit() for p in parts):
            continue
        word, comps = parts[0], parts[1:]
        try:
            vec = [float(c) for c in comps]
        except ValueError as exc:
            raise NonNumericComponent(f"line {lineno}: {exc}") from None
        if dim is None:
            dim = len(vec)
            if dim == 0:
                raise DimensionMismatch(f"line {lineno}: word {word!r} has no components")
        elif len(vec) != dim:
            raise DimensionMismatch(f"line {lineno}: expected {dim} components, got {len(vec)}")
        vectors[word.lower()] = vec
    if not vectors:
        raise EmptyTable("no vectors in input")
    return EmbeddingTable(vectors)


def lexical_similarity(table: EmbeddingTable, w1: str, w2: str) -> float:
    if w1 == w2:
        return 1.0
    if w1 not in table or w2 not in table:
        return 0.0
    cos = float(np.dot(table[w1], table[w2]))
    return min(1.0, max(0.0, cos))


def find_sim_pairs(
    tree_a: ParseTree, tree_b: ParseTree, table: EmbeddingTable, theta_w: float
) -> list[SimPair]:
    """All leaf pairs across the two trees with similarity >= ``theta_w``."""
    if not 0.0 < theta_w <= 1.0:
        raise ValueError(f"theta_w must lie in (0, 1], got {theta_w}")
    leaves_b = tree_b.leaves()
    pairs = []
    for a in tree_a.leaves():
        for b in leaves_b:
            w = lexical_similarity(table, a.token.normalized, b.token.normalized)
            if w >= theta_w:
                pairs.append(SimPair(a.id, b.id, w))
    pairs.sort(key=lambda p: (p.leaf_a, p.leaf_b))
    return pairs
