"""Rank correlation and external clustering indices."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence, TextIO

import numpy as np
from scipy.stats import rankdata

__all__ = [
    "EvalError",
    "LengthMismatch",
    "DegenerateInput",
    "KeyMismatch",
    "LabeledPair",
    "Partition",
    "read_labeled_pairs",
    "spearman",
    "adjusted_rand_index",
    "normalized_mutual_info",
    "fowlkes_mallows",
    "contingency",
]


class EvalError(ValueError):
    pass


class LengthMismatch(EvalError):
    pass


class DegenerateInput(EvalError):
    pass


class KeyMismatch(EvalError):
    pass


@dataclass(frozen=True)
class LabeledPair:
    doc_id_a: str
    doc_id_b: str
    human_score: float


def read_labeled_pairs(fh: Iterable[str]) -> list[LabeledPair]:
    """TSV ``id_a<TAB>id_b<TAB>score``; blank lines and ``#`` comments skipped."""
    out = []
    for lineno, line in enumerate(fh, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        cells = line.split("\t")
        if len(cells) != 3:
            raise EvalError(f"line {lineno}: expected 3 tab-separated fields")
        try:
            score = float(cells[2])
        except ValueError:
            raise EvalError(f"line {lineno}: bad score {cells[2]!r}") from None
        out.append(LabeledPair(cells[0], cells[1], score))
    return out


class Partition:
    """Assignment of items to clusters, relabeled densely from 0.

    Labels are renumbered in order of first appearance, so two partitions
    with the same blocks and item order compare equal.
    """

    def __init__(self, labels: Mapping[Hashable, Hashable]):
        dense: dict[Hashable, int] = {}
        self.labels = {}
        for item, lab in labels.items():
            self.labels[item] = dense.setdefault(lab, len(dense))

    @classmethod
    def from_sequence(cls, items: Sequence[Hashable], labels: Sequence[Hashable]) -> "Partition":
        if len(items) != len(labels):
            raise LengthMismatch("items and labels differ in length")
        return cls(dict(zip(items, labels)))

    @classmethod
    def read_tsv(cls, fh: Iterable[str]) -> "Partition":
        labels = {}
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            cells = line.split("\t")
            if len(cells) != 2:
                raise EvalError(f"line {lineno}: expected 2 tab-separated fields")
            labels[cells[0]] = cells[1]
        return cls(labels)

    def write_tsv(self, fh: TextIO) -> None:
        for item, lab in self.labels.items():
            fh.write(f"{item}\t{lab}\n")

    @property
    def n_clusters(self) -> int:
        return len(set(self.labels.values()))

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.labels == other.labels

    def __repr__(self) -> str:
        return f"Partition({self.labels!r})"


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation of average-tied ranks."""
    if len(x) != len(y):
        raise LengthMismatch(f"lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise DegenerateInput("need at least two observations")
    rx = rankdata(np.asarray(x, dtype=np.float64), method="average")
    ry = rankdata(np.asarray(y, dtype=np.float64), method="average")
    rx -= rx.mean()
    ry -= ry.mean()
    sxx, syy = float(rx @ rx), float(ry @ ry)
    if sxx == 0 or syy == 0:
        raise DegenerateInput("constant input has no rank variance")
    rho = float(rx @ ry) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, rho))


def contingency(p: Partition, truth: Partition) -> np.ndarray:
    if p.labels.keys() != truth.labels.keys():
        raise KeyMismatch("partitions cover different items")
    table = np.zeros((p.n_clusters, truth.n_clusters), dtype=np.int64)
    for item, lab in p.labels.items():
        table[lab, truth.labels[item]] += 1
    return table


def _pairs(counts) -> int:
    counts = np.asarray(counts, dtype=np.int64)
    return int((counts * (counts - 1) // 2).sum())


def adjusted_rand_index(p: Partition, truth: Partition) -> float:
    table = contingency(p, truth)
    n = int(table.sum())
    index = _pairs(table)
    a = _pairs(table.sum(axis=1))
    b = _pairs(table.sum(axis=0))
    total = n * (n - 1) // 2
    if total == 0:
        return 1.0
    expected = a * b / total
    top = (a + b) / 2
    if top == expected:
        # both partitions trivial in the same way (all-one or all-singletons)
        return 1.0
    return (index - expected) / (top - expected)


def _entropy(counts: np.ndarray, n: int) -> float:
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def normalized_mutual_info(p: Partition, truth: Partition) -> float:
    """Mutual information over the arithmetic mean of the two entropies."""
    table = contingency(p, truth)
    n = int(table.sum())
    h_p = _entropy(table.sum(axis=1), n)
    h_t = _entropy(table.sum(axis=0), n)
    if h_p == 0 and h_t == 0:
        return 1.0
    if h_p == 0 or h_t == 0:
        return 0.0
    rows, cols = np.nonzero(table)
    nij = table[rows, cols].astype(np.float64)
    ai = table.sum(axis=1)[rows]
    bj = table.sum(axis=0)[cols]
    mi = float((nij / n * np.log(n * nij / (ai * bj))).sum())
    return min(1.0, max(0.0, mi / ((h_p + h_t) / 2)))


def fowlkes_mallows(p: Partition, truth: Partition) -> float:
    table = contingency(p, truth)
    tp = _pairs(table)
    together_p = _pairs(table.sum(axis=1))
    together_t = _pairs(table.sum(axis=0))
    if together_p == 0 or together_t == 0:
        return 0.0
    return tp / math.sqrt(together_p * together_t)
