"""Spectral clustering on a precomputed similarity matrix.

Rows of the k lowest eigenvectors of the symmetric normalized Laplacian
are unit-normalized and clustered with k-means (k-means++ seeding).
"""

from __future__ import annotations

import numpy as np

from .metrics import EvalError, Partition
from .similarity import SimilarityMatrix

__all__ = [
    "NotSymmetric",
    "NegativeEntry",
    "KTooLarge",
    "jacobi_eigh",
    "normalized_laplacian",
    "kmeans",
    "spectral_embedding",
    "spectral_cluster",
]


class NotSymmetric(EvalError):
    pass


class NegativeEntry(EvalError):
    pass


class KTooLarge(EvalError):
    pass


def jacobi_eigh(a, tol: float = 1e-10, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi.

    Sweeps over all ``(p, q)`` pairs until the off-diagonal Frobenius norm
    drops below ``tol``. Returns ascending eigenvalues and the matching
    eigenvectors as columns.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if np.sqrt(np.sum(off * off)) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def normalized_laplacian(w: np.ndarray) -> np.ndarray:
    """``I - D^-1/2 W D^-1/2``; isolated vertices get a zero scaling."""
    deg = w.sum(axis=1)
    inv = np.zeros_like(deg)
    np.divide(1.0, np.sqrt(deg), out=inv, where=deg > 0)
    return np.eye(len(w)) - inv[:, None] * w * inv[None, :]


def _check(w: np.ndarray, k: int) -> None:
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise NotSymmetric("similarity matrix must be square")
    if not np.allclose(w, w.T, rtol=0, atol=1e-12):
        raise NotSymmetric("similarity matrix is not symmetric")
    if (w < 0).any():
        raise NegativeEntry("similarity matrix has negative entries")
    if not 1 <= k <= len(w):
        raise KTooLarge(f"k={k} with {len(w)} items")


def spectral_embedding(w, k: int) -> np.ndarray:
    w = np.asarray(w, dtype=np.float64)
    _check(w, k)
    _, vecs = jacobi_eigh(normalized_laplacian(w))
    u = vecs[:, :k]
    norms = np.linalg.norm(u, axis=1, keepdims=True)
    return np.divide(u, norms, out=np.zeros_like(u), where=norms > 0)


def _kmeanspp(x: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = len(x)
    chosen = [int(rng.integers(n))]
    d2 = np.sum((x - x[chosen[0]]) ** 2, axis=1)
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            nxt = int(rng.choice(n, p=d2 / total))
        else:
            rest = np.setdiff1d(np.arange(n), chosen)
            nxt = int(rng.choice(rest))
        chosen.append(nxt)
        d2 = np.minimum(d2, np.sum((x - x[nxt]) ** 2, axis=1))
    return x[chosen].copy()


def kmeans(x, k: int, seed: int = 0, max_iter: int = 300, tol: float = 1e-9) -> np.ndarray:
    """Lloyd's algorithm from k-means++ seeds; returns a label per row."""
    x = np.asarray(x, dtype=np.float64)
    rng = np.random.default_rng(seed)
    centers = _kmeanspp(x, k, rng)
    labels = np.zeros(len(x), dtype=np.int64)
    for _ in range(max_iter):
        dist = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(dist, axis=1)
        new = centers.copy()
        for j in range(k):
            members = x[labels == j]
            if len(members):
                new[j] = members.mean(axis=0)
            else:
                # refill an empty cluster with the worst-served point
                far = int(np.argmax(dist[np.arange(len(x)), labels]))
                new[j] = x[far]
                labels[far] = j
        shift = np.sqrt(((new - centers) ** 2).sum(axis=1)).max()
        centers = new
        if shift < tol:
            break
    dist = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(dist, axis=1)


def spectral_cluster(matrix: SimilarityMatrix, k: int, seed: int = 0) -> Partition:
    emb = spectral_embedding(matrix.values, k)
    labels = kmeans(emb, k, seed=seed)
    return Partition.from_sequence(matrix.ids, labels.tolist())
