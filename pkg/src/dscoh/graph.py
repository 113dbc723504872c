"""Weighted graphs and syn-sim graphs built from two pruned trees.

A syn-sim graph is the disjoint union of two trees (``syn`` edges, weight
1) joined by cross-tree ``sim`` edges between lexically similar leaves.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence, TextIO

import numpy as np

from .lexsim import SimPair
from .treebank import ParseTree

__all__ = [
    "GraphError",
    "DanglingSimPair",
    "NoSimEdges",
    "Edge",
    "Graph",
    "SynSimGraph",
    "SuperVertexComplex",
    "build_syn_sim_graph",
    "circuit_rank",
    "contract_sim_edges",
    "write_edgelist",
]

SYN = "syn"
SIM = "sim"


class GraphError(ValueError):
    pass


class DanglingSimPair(GraphError):
    pass


class NoSimEdges(GraphError):
    pass


@dataclass(frozen=True)
class Edge:
    u: Hashable
    v: Hashable
    weight: float = 1.0
    kind: str = SYN


class _DisjointSet:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


class Graph:
    """Undirected weighted multigraph with hashable vertex labels.

    Edge ids are positions in ``edges``; vertex indices are positions in
    ``vertices``.
    """

    def __init__(self, vertices: Iterable[Hashable], edges: Iterable[Edge]):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise GraphError("duplicate vertex labels")
        for e in self.edges:
            if e.u not in self.index or e.v not in self.index:
                raise GraphError(f"edge {e} references unknown vertex")
            if e.u == e.v:
                raise GraphError(f"self-loop at {e.u!r}")
            if not e.weight > 0:
                raise GraphError(f"edge weight must be positive: {e}")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], n: int | None = None) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples over integer vertices."""
        es = [Edge(t[0], t[1], float(t[2]) if len(t) > 2 else 1.0) for t in edges]
        if n is None:
            n = 1 + max((max(e.u, e.v) for e in es), default=-1)
        return cls(range(n), es)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        e = self.edges[edge_id]
        return self.index[e.u], self.index[e.v]

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per vertex index, a list of ``(neighbour index, edge id)``."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.vertices]
        for eid in range(len(self.edges)):
            a, b = self.endpoints(eid)
            adj[a].append((b, eid))
            adj[b].append((a, eid))
        return adj

    def n_components(self) -> int:
        ds = _DisjointSet(len(self.vertices))
        for eid in range(len(self.edges)):
            ds.union(*self.endpoints(eid))
        return len({ds.find(i) for i in range(len(self.vertices))})

    def is_connected(self) -> bool:
        return self.n_components() <= 1

    def total_weight(self, edge_ids: Iterable[int]) -> float:
        return sum(self.edges[i].weight for i in edge_ids)


class SynSimGraph(Graph):
    """Syn-sim graph of two pruned trees.

    Vertices are ``("A", node_id)`` and ``("B", node_id)``. Edge ids are
    laid out as: tree-A syn edges, tree-B syn edges, then sim edges in
    pair order.
    """

    def __init__(self, tree_a: ParseTree, tree_b: ParseTree, pairs: Sequence[SimPair]):
        self.tree_a = tree_a
        self.tree_b = tree_b
        self.pairs = tuple(pairs)
        vertices = [("A", n.id) for n in tree_a.nodes] + [("B", n.id) for n in tree_b.nodes]
        edges = [Edge(("A", p), ("A", c)) for p, c in tree_a.edges()]
        edges += [Edge(("B", p), ("B", c)) for p, c in tree_b.edges()]
        self.n_syn = len(edges)
        for pair in self.pairs:
            for side, tree, leaf in (("A", tree_a, pair.leaf_a), ("B", tree_b, pair.leaf_b)):
                if not (0 <= leaf < len(tree) and tree[leaf].is_leaf):
                    raise DanglingSimPair(f"{pair} references missing leaf {leaf} in tree {side}")
            edges.append(Edge(("A", pair.leaf_a), ("B", pair.leaf_b), pair.weight, SIM))
        super().__init__(vertices, edges)

    @property
    def n_sim(self) -> int:
        return len(self.edges) - self.n_syn

    def sim_edge_ids(self) -> range:
        return range(self.n_syn, len(self.edges))

    def is_sim(self, edge_id: int) -> bool:
        return edge_id >= self.n_syn

    def syn_weight_total(self) -> float:
        return sum(e.weight for e in self.edges[: self.n_syn])


def build_syn_sim_graph(tree_a: ParseTree, tree_b: ParseTree, pairs: Sequence[SimPair]) -> SynSimGraph:
    return SynSimGraph(tree_a, tree_b, pairs)


def circuit_rank(g: Graph) -> int:
    """Dimension of the cycle space, ``e - v + c``."""
    return g.n_edges - g.n_vertices + g.n_components()


@dataclass(frozen=True)
class SuperVertexComplex:
    """Sim edges contracted to super-vertices.

    ``distance[i, j]`` is the number of syn edges on a shortest path between
    super-vertices ``i`` and ``j`` once every sim edge is contracted; -1
    marks unreachable pairs.
    """

    super_vertices: tuple[tuple[int, int], ...]
    distance: np.ndarray

    def __len__(self) -> int:
        return len(self.super_vertices)

    def is_connected(self) -> bool:
        return bool((self.distance >= 0).all())


def _contracted(g: SynSimGraph) -> tuple[list[int], int]:
    ds = _DisjointSet(g.n_vertices)
    for eid in g.sim_edge_ids():
        ds.union(*g.endpoints(eid))
    roots = sorted({ds.find(i) for i in range(g.n_vertices)})
    relabel = {r: k for k, r in enumerate(roots)}
    return [relabel[ds.find(i)] for i in range(g.n_vertices)], len(roots)


def contract_sim_edges(g: SynSimGraph) -> SuperVertexComplex:
    if g.n_sim == 0:
        raise NoSimEdges("cannot contract a graph without sim edges")
    label, n = _contracted(g)
    adj: list[set[int]] = [set() for _ in range(n)]
    for eid in range(g.n_syn):
        a, b = (label[x] for x in g.endpoints(eid))
        adj[a].add(b)
        adj[b].add(a)
    supers = [label[g.endpoints(eid)[0]] for eid in g.sim_edge_ids()]

    dist = np.full((len(supers), len(supers)), -1, dtype=np.int64)
    for i, src in enumerate(supers):
        d = {src: 0}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in d:
                    d[y] = d[x] + 1
                    queue.append(y)
        for j, dst in enumerate(supers):
            dist[i, j] = d.get(dst, -1)
    dist.setflags(write=False)
    return SuperVertexComplex(tuple((p.leaf_a, p.leaf_b) for p in g.pairs), dist)


def write_edgelist(g: Graph, fh: TextIO) -> None:
    """Debug dump: one ``u<TAB>v<TAB>kind<TAB>weight`` line per edge."""

    def fmt(v):
        return f"{v[0]}{v[1]}" if isinstance(v, tuple) else str(v)

    fh.write("u\tv\tkind\tweight\n")
    for e in g.edges:
        fh.write(f"{fmt(e.u)}\t{fmt(e.v)}\t{e.kind}\t{e.weight:.17g}\n")
