"""GF(2) linear algebra on int bitsets (bit i = coordinate i)."""

from __future__ import annotations

from typing import Iterable

import numpy as np


class Eliminator:
    """Incremental row-echelon basis keyed by leading bit."""

    def __init__(self):
        self._rows: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: int) -> int:
        while vec:
            lead = vec.bit_length() - 1
            row = self._rows.get(lead)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        """Insert ``vec``; return False if it was already in the span."""
        vec = self.reduce(vec)
        if not vec:
            return False
        self._rows[vec.bit_length() - 1] = vec
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0


def rank(rows: Iterable[int]) -> int:
    elim = Eliminator()
    for r in rows:
        elim.add(r)
    return len(elim)


def is_independent(rows: Iterable[int]) -> bool:
    rows = list(rows)
    return rank(rows) == len(rows)


def same_span(a: Iterable[int], b: Iterable[int]) -> bool:
    a, b = list(a), list(b)
    ra = rank(a)
    return ra == rank(b) == rank(a + b)


def to_bits(indices: Iterable[int]) -> int:
    out = 0
    for i in indices:
        out ^= 1 << i
    return out


def from_bits(vec: int) -> tuple[int, ...]:
    out = []
    i = 0
    while vec:
        if vec & 1:
            out.append(i)
        vec >>= 1
        i += 1
    return tuple(out)


def to_matrix(rows: Iterable[int], n_cols: int) -> np.ndarray:
    rows = list(rows)
    mat = np.zeros((len(rows), n_cols), dtype=np.uint8)
    for i, r in enumerate(rows):
        mat[i, list(from_bits(r))] = 1
    return mat


def matrix_rank(mat: np.ndarray) -> int:
    """Rank of a 0/1 matrix by dense Gaussian elimination mod 2."""
    m = (np.asarray(mat) % 2).astype(np.uint8)
    n_rows, n_cols = m.shape
    r = 0
    for c in range(n_cols):
        pivots = np.nonzero(m[r:, c])[0]
        if pivots.size == 0:
            continue
        p = r + pivots[0]
        m[[r, p]] = m[[p, r]]
        mask = m[:, c].astype(bool)
        mask[r] = False
        m[mask] ^= m[r]
        r += 1
        if r == n_rows:
            break
    return r
