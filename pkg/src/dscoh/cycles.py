"""Cycle bases of syn-sim graphs.

``minimum_cycle_basis`` is Horton's candidate-set algorithm with greedy
GF(2) selection. ``brute_force_cycle_basis`` is an exhaustive oracle for
small graphs. ``coboundary_basis`` builds the basis that pairs one anchor
sim edge with every other sim edge, and ``verify_cohomology_lemmas``
checks the three connectivity/basis facts that justify using a cycle
basis to pair generalized phrases.

Cycles are stored as edge-id bitsets (bit ``i`` is edge ``i``).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Optional

from . import gf2
from .graph import Graph, SynSimGraph, _contracted, circuit_rank
from .treebank import tree_path

__all__ = [
    "CycleError",
    "NotConnected",
    "CycleWithWrongSimEdgeCount",
    "TooLarge",
    "TooFewSimEdges",
    "WrongSimEdgeCount",
    "GP",
    "BasicCycle",
    "CycleBasis",
    "LemmaReport",
    "minimum_cycle_basis",
    "brute_force_cycle_basis",
    "simple_cycles",
    "stage5_weights",
    "coboundary_basis",
    "cycle_gp_descriptors",
    "verify_cohomology_lemmas",
    "is_simple_cycle",
]

BRUTE_FORCE_MAX_EDGES = 16


class CycleError(ValueError):
    pass


class NotConnected(CycleError):
    pass


class CycleWithWrongSimEdgeCount(CycleError):
    """A minimum basis cycle of a syn-sim graph did not have 2 sim edges."""


class TooLarge(CycleError):
    pass


class TooFewSimEdges(CycleError):
    pass


class WrongSimEdgeCount(CycleError):
    pass


@dataclass(frozen=True)
class GP:
    """Two-word generalized phrase: a leaf pair and its tree path length."""

    leaves: tuple[int, int]
    path_length: int


@dataclass(frozen=True)
class BasicCycle:
    edges: tuple[int, ...]
    total_weight: float
    sim_edges: tuple[int, ...] = ()
    sim_weights: tuple[float, ...] = ()
    gp_a: Optional[GP] = None
    gp_b: Optional[GP] = None

    @property
    def bits(self) -> int:
        return gf2.to_bits(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CycleBasis:
    cycles: tuple[BasicCycle, ...] = ()

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)

    @property
    def incidence(self) -> list[int]:
        return [c.bits for c in self.cycles]

    @property
    def total_weight(self) -> float:
        return math.fsum(c.total_weight for c in self.cycles)

    def incidence_matrix(self, n_edges: int):
        return gf2.to_matrix(self.incidence, n_edges)


def is_simple_cycle(g: Graph, edge_ids) -> bool:
    """True if the edges form one connected 2-regular subgraph."""
    edge_ids = list(edge_ids)
    if not edge_ids:
        return False
    degree: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for eid in edge_ids:
        a, b = g.endpoints(eid)
        for x, y in ((a, b), (b, a)):
            degree[x] = degree.get(x, 0) + 1
            adj.setdefault(x, []).append(y)
    if any(d != 2 for d in degree.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(degree)


def stage5_weights(g: Graph) -> list[float]:
    """Edge weights used for basis selection.

    For syn-sim graphs every sim edge is charged more than all syn edges
    together, so a 4-sim-edge cycle always costs more than any 2-sim-edge
    cycle. The stored similarity weights are left alone.
    """
    if isinstance(g, SynSimGraph):
        big = g.syn_weight_total() + 1.0
        return [e.weight for e in g.edges[: g.n_syn]] + [big] * g.n_sim
    return [e.weight for e in g.edges]


def _shortest_path_tree(adj, weights, root):
    """Dijkstra with ties broken by edge bitset, so paths are unique.

    Comparing ``(length, bitset)`` is the same as perturbing edge ``i`` by
    an infinitesimal ``eps * 2**i``, which keeps all shortest paths
    consistent with each other as Horton's construction requires.
    Returns ``(dist, pathbits)`` per vertex; unreachable vertices map to None.
    """
    n = len(adj)
    best: list[Optional[tuple[float, int]]] = [None] * n
    best[root] = (0.0, 0)
    done = [False] * n
    heap = [(0.0, 0, root)]
    while heap:
        d, bits, x = heapq.heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for y, eid in adj[x]:
            if done[y]:
                continue
            cand = (d + weights[eid], bits | (1 << eid))
            if best[y] is None or cand < best[y]:
                best[y] = cand
                heapq.heappush(heap, (cand[0], cand[1], y))
    return best


def _horton_candidates(g: Graph, weights: list[float]) -> list[tuple[float, tuple[int, ...], int]]:
    adj = g.adjacency()
    seen = set()
    out = []
    for r in range(g.n_vertices):
        spt = _shortest_path_tree(adj, weights, r)
        for eid in range(g.n_edges):
            x, y = g.endpoints(eid)
            px, py = spt[x], spt[y]
            if px is None or py is None:
                continue
            ebit = 1 << eid
            if (px[1] & py[1]) or ((px[1] | py[1]) & ebit):
                continue
            bits = px[1] | py[1] | ebit
            if bits in seen:
                continue
            seen.add(bits)
            edges = gf2.from_bits(bits)
            w = math.fsum(weights[i] for i in edges)
            out.append((w, edges, bits))
    out.sort(key=lambda c: (c[0], c[1]))
    return out


def _make_cycle(g: Graph, edges: tuple[int, ...]) -> BasicCycle:
    weight = math.fsum(g.edges[i].weight for i in edges)
    if isinstance(g, SynSimGraph):
        sims = tuple(i for i in edges if g.is_sim(i))
        sim_w = tuple(g.edges[i].weight for i in sims)
        cycle = BasicCycle(edges, weight, sims, sim_w)
        if len(sims) == 2:
            gp_a, gp_b = cycle_gp_descriptors(cycle, g)
            cycle = BasicCycle(edges, weight, sims, sim_w, gp_a, gp_b)
        return cycle
    return BasicCycle(edges, weight)


def minimum_cycle_basis(g: Graph) -> CycleBasis:
    """Minimum-weight cycle basis.

    Candidates are ``P(r, x) + (x, y) + P(y, r)`` for every vertex ``r`` and
    edge ``(x, y)`` whose two root paths meet only at ``r``; they are sorted
    by ``(weight, edge ids)`` and accepted greedily while GF(2)-independent.
    On a ``SynSimGraph`` the selection uses ``stage5_weights`` and every
    chosen cycle must contain exactly two sim edges.
    """
    rank = circuit_rank(g)
    if rank == 0:
        return CycleBasis()
    if not g.is_connected():
        raise NotConnected(f"graph has {g.n_components()} components")

    weights = stage5_weights(g)
    elim = gf2.Eliminator()
    chosen = []
    for _, edges, bits in _horton_candidates(g, weights):
        if elim.add(bits):
            chosen.append(edges)
            if len(chosen) == rank:
                break
    if len(chosen) != rank:
        raise CycleError(f"found {len(chosen)} independent candidates, need {rank}")

    cycles = tuple(_make_cycle(g, edges) for edges in chosen)
    if isinstance(g, SynSimGraph):
        for c in cycles:
            if len(c.sim_edges) != 2:
                raise CycleWithWrongSimEdgeCount(
                    f"basic cycle {c.edges} has {len(c.sim_edges)} sim edges"
                )
    return CycleBasis(cycles)


def simple_cycles(g: Graph) -> list[int]:
    """Every simple cycle of ``g`` as an edge bitset, by exhaustive DFS.

    Each cycle is grown from its smallest vertex and recorded once.
    """
    adj = g.adjacency()
    found = set()

    def extend(start, x, visited, bits):
        for y, eid in adj[x]:
            if bits >> eid & 1:
                continue
            if y == start:
                found.add(bits | (1 << eid))
            elif y > start and y not in visited:
                visited.add(y)
                extend(start, y, visited, bits | (1 << eid))
                visited.remove(y)

    for s in range(g.n_vertices):
        extend(s, s, {s}, 0)
    return sorted(found)


def brute_force_cycle_basis(g: Graph) -> CycleBasis:
    """Exhaustive minimum cycle basis for graphs with at most 16 edges.

    Enumerates all simple cycles and searches independent subsets of size
    ``circuit_rank(g)`` by branch and bound. Uses the stored edge weights,
    or ``stage5_weights`` for syn-sim graphs.
    """
    if g.n_edges > BRUTE_FORCE_MAX_EDGES:
        raise TooLarge(f"{g.n_edges} edges exceeds the enumeration bound of {BRUTE_FORCE_MAX_EDGES}")
    rank = circuit_rank(g)
    if rank == 0:
        return CycleBasis()

    weights = stage5_weights(g)
    cycles = [(math.fsum(weights[i] for i in gf2.from_bits(b)), b) for b in simple_cycles(g)]
    cycles.sort()
    ws = [w for w, _ in cycles]
    best_weight = math.inf
    best: list[int] = []

    def search(start, picked, total):
        nonlocal best_weight, best
        need = rank - len(picked)
        if need == 0:
            if total < best_weight:
                best_weight, best = total, list(picked)
            return
        if len(cycles) - start < need:
            return
        if total + math.fsum(ws[start : start + need]) >= best_weight:
            return
        for i in range(start, len(cycles) - need + 1):
            if total + math.fsum(ws[i : i + need]) >= best_weight:
                break
            bits = cycles[i][1]
            if gf2.is_independent(picked + [bits]):
                picked.append(bits)
                search(i + 1, picked, total + ws[i])
                picked.pop()

    search(0, [], 0.0)
    return CycleBasis(tuple(_make_cycle(g, gf2.from_bits(b)) for b in best))


# --- syn-sim specifics -------------------------------------------------------


def cycle_gp_descriptors(cycle: BasicCycle, g: SynSimGraph) -> tuple[GP, GP]:
    """The two GPs a 2-sim-edge cycle pairs.

    Path lengths are counted along the cycle inside each tree; a side where
    both sim edges meet the same leaf is a single word expanded to length 1.
    """
    sims = [i for i in cycle.edges if g.is_sim(i)]
    if len(sims) != 2:
        raise WrongSimEdgeCount(f"cycle has {len(sims)} sim edges, expected 2")
    s1, s2 = (g.pairs[i - g.n_syn] for i in sims)
    len_a = sum(1 for i in cycle.edges if not g.is_sim(i) and g.edges[i].u[0] == "A")
    len_b = sum(1 for i in cycle.edges if not g.is_sim(i) and g.edges[i].u[0] == "B")
    return GP((s1.leaf_a, s2.leaf_a), max(len_a, 1)), GP((s1.leaf_b, s2.leaf_b), max(len_b, 1))


def _syn_edge_lookup(g: SynSimGraph) -> dict[tuple, int]:
    out = {}
    for eid in range(g.n_syn):
        e = g.edges[eid]
        out[(e.u, e.v)] = out[(e.v, e.u)] = eid
    return out


def _tree_path_edges(g, lookup, side, u, v) -> list[int]:
    tree = g.tree_a if side == "A" else g.tree_b
    nodes = tree_path(tree, u, v)
    return [lookup[((side, x), (side, y))] for x, y in zip(nodes, nodes[1:])]


def coboundary_basis(g: SynSimGraph, anchor: int) -> CycleBasis:
    """Cycles pairing the anchor sim edge with each other sim edge.

    ``anchor`` is a global edge id of a sim edge. Each cycle is the two sim
    edges plus the tree paths joining their endpoints on either side.
    """
    if g.n_sim < 2:
        raise TooFewSimEdges(f"need at least 2 sim edges, graph has {g.n_sim}")
    if not g.is_sim(anchor) or anchor >= g.n_edges:
        raise CycleError(f"edge {anchor} is not a sim edge")
    lookup = _syn_edge_lookup(g)
    pa = g.pairs[anchor - g.n_syn]
    cycles = []
    for eid in g.sim_edge_ids():
        if eid == anchor:
            continue
        p = g.pairs[eid - g.n_syn]
        edges = [anchor, eid]
        edges += _tree_path_edges(g, lookup, "A", pa.leaf_a, p.leaf_a)
        edges += _tree_path_edges(g, lookup, "B", pa.leaf_b, p.leaf_b)
        cycles.append(_make_cycle(g, tuple(sorted(edges))))
    return CycleBasis(tuple(cycles))


@dataclass
class LemmaReport:
    """Outcome of the three cohomology checks on one syn-sim graph.

    ``h0_dimension`` is the dimension of ker(delta_0) on the graph with
    sim edges contracted, i.e. the number of connected components.
    """

    n_sim: int
    circuit_rank: int
    h0_dimension: int
    l1_pass: bool
    l2_sizes: dict[int, int] = field(default_factory=dict)
    l2_pass: bool = True
    l3_pass: bool = True
    mcb_size: int = 0
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.l1_pass and self.l2_pass and self.l3_pass

    @property
    def vacuous(self) -> bool:
        return self.n_sim <= 1

    def to_dict(self) -> dict:
        return {
            "n_sim": self.n_sim,
            "circuit_rank": self.circuit_rank,
            "h0_dimension": self.h0_dimension,
            "L1": self.l1_pass,
            "L2": self.l2_pass,
            "L2_sizes": {str(k): v for k, v in self.l2_sizes.items()},
            "L3": self.l3_pass,
            "mcb_size": self.mcb_size,
            "messages": list(self.messages),
        }

    def __str__(self) -> str:
        def mark(ok):
            return "pass" if ok else "FAIL"

        lines = [
            f"sim edges: {self.n_sim}  circuit rank: {self.circuit_rank}",
            f"  L1 H^0 generated by the sum cochain (dim {self.h0_dimension}): {mark(self.l1_pass)}",
            f"  L2 coboundary bases, sizes {sorted(set(self.l2_sizes.values())) or [0]}: {mark(self.l2_pass)}",
            f"  L3 coboundary cycles span the minimum basis space (size {self.mcb_size}): {mark(self.l3_pass)}",
        ]
        lines += [f"  ! {m}" for m in self.messages]
        return "\n".join(lines)


def _h0(g: SynSimGraph) -> tuple[int, bool]:
    """dim ker(delta_0) of the contracted graph and whether the all-ones
    0-cochain is a cocycle."""
    label, n = _contracted(g)
    rows = []
    for eid in range(g.n_syn):
        a, b = (label[x] for x in g.endpoints(eid))
        rows.append((1 << a) ^ (1 << b))
    ones = (1 << n) - 1
    # delta_0(f) on edge (a, b) is f(a) + f(b)
    cocycle = all(bin(r & ones).count("1") % 2 == 0 for r in rows)
    return n - gf2.rank(rows), cocycle


def verify_cohomology_lemmas(g: SynSimGraph) -> LemmaReport:
    rank = circuit_rank(g)
    dim, cocycle = _h0(g)
    report = LemmaReport(g.n_sim, rank, dim, l1_pass=cocycle and dim == 1)
    if not report.l1_pass:
        report.messages.append(f"contracted complex has {dim} components")
    if g.n_sim < 2:
        return report

    union: list[int] = []
    for anchor in g.sim_edge_ids():
        basis = coboundary_basis(g, anchor)
        report.l2_sizes[anchor] = len(basis)
        rows = basis.incidence
        ok = (
            len(basis) == g.n_sim - 1 == rank
            and gf2.is_independent(rows)
            and all(is_simple_cycle(g, c.edges) and len(c.sim_edges) == 2 for c in basis)
        )
        if not ok:
            report.l2_pass = False
            report.messages.append(f"coboundary basis at anchor {anchor} is not a cycle basis")
        union += rows

    try:
        mcb = minimum_cycle_basis(g)
    except CycleError as exc:
        report.l3_pass = False
        report.messages.append(f"minimum cycle basis failed: {exc}")
        return report
    report.mcb_size = len(mcb)
    if not (gf2.same_span(union, mcb.incidence) and gf2.rank(union) == rank):
        report.l3_pass = False
        report.messages.append("coboundary cycles and minimum basis span different spaces")
    return report
