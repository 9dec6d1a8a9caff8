"""Minimum cuts, maximum flow, and edge-disjoint path extraction.

Channels are directed but cuts and Bell pairs are not, so every edge is
modeled as traversable in both directions at its full weight. The fast
path is shortest-augmenting-path max-flow (BFS, lexicographic neighbor
order, hence deterministic); the independent oracle enumerates every
bipartition. Integer unit-capacity flow on the Bell multigraph realizes
the edge-disjoint path count, which equals the minimum number of edges
in any Alice/Bob cut.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Sequence

from .capacity import WeightKind, edge_weight
from .netmodel import Bipartition, Network, NodeId, crossing_edges

if TYPE_CHECKING:
    from .aggregator import BellNetwork

BRUTEFORCE_MAX_VERTICES = 20


class CapacityKind(Enum):
    REAL = "real"
    INTEGER = "integer"


@dataclass(frozen=True)
class FlowGraph:
    """Undirected flow instance: each arc row is traversable both ways."""

    vertices: tuple[NodeId, ...]
    source: NodeId
    sink: NodeId
    arcs: tuple[tuple[str, NodeId, NodeId, float], ...]  # (edge id, u, v, capacity)
    capacity_kind: CapacityKind

    def __post_init__(self):
        for eid, u, v, cap in self.arcs:
            if not (math.isfinite(cap) and cap >= 0):
                raise ValueError(f"arc {eid!r}: capacity must be finite and >= 0, got {cap}")
            if u == v:
                raise ValueError(f"arc {eid!r}: self-loop at {u!r}")


def _budget_multiplier(edge, floor_budgets: bool) -> float:
    value = edge.usage.value
    return float(math.floor(value)) if floor_budgets else value


def flow_graph_from_network(
    net: Network, kind: WeightKind, *, floor_budgets: bool = False
) -> FlowGraph:
    """Weighted flow instance: capacity = budget x per-use weight."""
    arcs = tuple(
        (e.id, e.tail, e.head, _budget_multiplier(e, floor_budgets) * edge_weight(e, kind))
        for e in net.edges
    )
    return FlowGraph(net.nodes, net.alice, net.bob, arcs, CapacityKind.REAL)


def flow_graph_from_bell(bell: "BellNetwork") -> FlowGraph:
    """Unit-capacity instance with one arc row per Bell pair."""
    arcs = tuple((b.id, b.u, b.v, 1) for b in bell.bell_edges)
    return FlowGraph(bell.vertices, bell.alice, bell.bob, arcs, CapacityKind.INTEGER)


class _ResidualSolver:
    """Edmonds-Karp on the residual doubling of an undirected multigraph.

    Arc 2k runs u->v and arc 2k+1 runs v->u, both at the full capacity;
    pushing flow on one grows the residual of its partner, which models
    undirected traversal exactly.
    """

    def __init__(self, fg: FlowGraph):
        self.fg = fg
        self.to: list[NodeId] = []
        self.cap: list[float] = []
        self.eid: list[str] = []
        adj: dict[NodeId, list[int]] = {v: [] for v in fg.vertices}
        for eid, u, v, cap in fg.arcs:
            cap = int(cap) if fg.capacity_kind is CapacityKind.INTEGER else float(cap)
            for tail, head in ((u, v), (v, u)):
                adj[tail].append(len(self.to))
                self.to.append(head)
                self.cap.append(cap)
                self.eid.append(eid)
        # lexicographic neighbor order, ties broken by arc insertion order
        self.adj = {
            v: sorted(idxs, key=lambda i: (self.to[i], i)) for v, idxs in adj.items()
        }
        if fg.capacity_kind is CapacityKind.INTEGER:
            self.tol = 0
        else:
            total = sum(c for _, _, _, c in fg.arcs)
            self.tol = 1e-12 * max(1.0, total)
        self.flow_value = 0 if fg.capacity_kind is CapacityKind.INTEGER else 0.0
        self._run()

    def _find_augmenting_path(self) -> Optional[dict[NodeId, int]]:
        parent_arc: dict[NodeId, int] = {}
        seen = {self.fg.source}
        queue = deque([self.fg.source])
        while queue:
            u = queue.popleft()
            for i in self.adj[u]:
                w = self.to[i]
                if w not in seen and self.cap[i] > self.tol:
                    seen.add(w)
                    parent_arc[w] = i
                    if w == self.fg.sink:
                        return parent_arc
                    queue.append(w)
        return None

    def _tail_of(self, arc: int) -> NodeId:
        return self.to[arc ^ 1]

    def _run(self) -> None:
        while True:
            parent_arc = self._find_augmenting_path()
            if parent_arc is None:
                return
            # bottleneck along the path, then push
            bottleneck = None
            v = self.fg.sink
            while v != self.fg.source:
                i = parent_arc[v]
                bottleneck = self.cap[i] if bottleneck is None else min(bottleneck, self.cap[i])
                v = self._tail_of(i)
            v = self.fg.sink
            while v != self.fg.source:
                i = parent_arc[v]
                self.cap[i] -= bottleneck
                self.cap[i ^ 1] += bottleneck
                v = self._tail_of(i)
            self.flow_value += bottleneck

    def reachable_from_source(self) -> frozenset[NodeId]:
        seen = {self.fg.source}
        queue = deque([self.fg.source])
        while queue:
            u = queue.popleft()
            for i in self.adj[u]:
                w = self.to[i]
                if w not in seen and self.cap[i] > self.tol:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def used_directions(self) -> dict[str, tuple[NodeId, NodeId]]:
        """Map of edge id -> (from, to) for arcs carrying net flow."""
        used = {}
        for k in range(0, len(self.to), 2):
            pushed = self.cap[k ^ 1] - self.cap[k]  # 2x net flow u->v
            if pushed > self.tol:
                used[self.eid[k]] = (self._tail_of(k), self.to[k])
            elif pushed < -self.tol:
                used[self.eid[k]] = (self.to[k], self._tail_of(k))
        return used


def max_flow_value(fg: FlowGraph) -> float:
    """Value of a maximum source-sink flow on the undirected instance."""
    return _ResidualSolver(fg).flow_value


@dataclass(frozen=True)
class CutResult:
    """A bipartition together with its crossing edges and their weight sum."""

    value: float
    v_a: Bipartition
    crossing: tuple[str, ...]


def _cut_from_side(
    vertices_in_side: frozenset[NodeId],
    net: Network,
    kind: WeightKind,
    floor_budgets: bool,
) -> CutResult:
    part = Bipartition(vertices_in_side)
    edges = crossing_edges(net, part)
    value = sum(_budget_multiplier(e, floor_budgets) * edge_weight(e, kind) for e in edges)
    return CutResult(float(value), part, tuple(e.id for e in edges))


def _check_budget_kind(net: Network, budget_kind: Optional[type]) -> None:
    if budget_kind is None or net.budget_kind is None:
        return
    if net.budget_kind is not budget_kind:
        raise ValueError(
            f"network uses {net.budget_kind.__name__} budgets, expected {budget_kind.__name__}"
        )


def min_cut(
    net: Network,
    kind: WeightKind,
    budget_kind: Optional[type] = None,
    *,
    floor_budgets: bool = False,
) -> CutResult:
    """Minimum-weight Alice/Bob cut via max-flow duality.

    The witness side is the residual-reachable set from Alice; the value is
    recomputed from the crossing edges rather than taken from the flow, to
    keep floating-point drift out of the reported number.
    """
    _check_budget_kind(net, budget_kind)
    solver = _ResidualSolver(flow_graph_from_network(net, kind, floor_budgets=floor_budgets))
    return _cut_from_side(solver.reachable_from_source(), net, kind, floor_budgets)


def _enumerate_min_cut(
    vertices: Sequence[NodeId],
    alice: NodeId,
    bob: NodeId,
    weighted_edges: Sequence[tuple[str, NodeId, NodeId, float]],
) -> tuple[float, frozenset[NodeId]]:
    """Exact minimum over all 2^(|V|-2) bipartitions.

    Ties go to the lexicographically smallest sorted Alice-side label tuple.
    """
    if len(vertices) > BRUTEFORCE_MAX_VERTICES:
        raise ValueError(
            f"brute-force enumeration capped at {BRUTEFORCE_MAX_VERTICES} vertices, "
            f"got {len(vertices)}"
        )
    intermediates = sorted(v for v in vertices if v not in (alice, bob))
    best_value = None
    best_key = None
    best_side = None
    for mask in range(1 << len(intermediates)):
        side = {alice}
        side.update(
            intermediates[i] for i in range(len(intermediates)) if (mask >> i) & 1
        )
        value = sum(w for _, u, v, w in weighted_edges if (u in side) != (v in side))
        key = tuple(sorted(side))
        if (
            best_value is None
            or value < best_value
            or (value == best_value and key < best_key)
        ):
            best_value, best_key, best_side = value, key, frozenset(side)
    return best_value, best_side


def min_cut_bruteforce(
    net: Network,
    kind: WeightKind,
    budget_kind: Optional[type] = None,
    *,
    floor_budgets: bool = False,
) -> CutResult:
    """Exhaustive-enumeration oracle for min_cut; exact up to 20 vertices."""
    _check_budget_kind(net, budget_kind)
    weighted = [
        (e.id, e.tail, e.head, _budget_multiplier(e, floor_budgets) * edge_weight(e, kind))
        for e in net.edges
    ]
    _, side = _enumerate_min_cut(net.nodes, net.alice, net.bob, weighted)
    return _cut_from_side(side, net, kind, floor_budgets)


def bell_min_cut_bruteforce(bell: "BellNetwork") -> CutResult:
    """Exhaustive minimum edge count over Alice/Bob cuts of the Bell multigraph."""
    weighted = [(b.id, b.u, b.v, 1) for b in bell.bell_edges]
    value, side = _enumerate_min_cut(bell.vertices, bell.alice, bell.bob, weighted)
    part = Bipartition(side)
    crossing = tuple(b.id for b in bell.bell_edges if (b.u in side) != (b.v in side))
    return CutResult(value, part, crossing)


@dataclass(frozen=True)
class DisjointPath:
    """Simple Alice-to-Bob path with the Bell pairs it consumes."""

    nodes: tuple[NodeId, ...]
    bell_edges: tuple[str, ...]


@dataclass(frozen=True)
class PathSet:
    paths: tuple[DisjointPath, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def consumed_edge_ids(self) -> tuple[str, ...]:
        return tuple(eid for p in self.paths for eid in p.bell_edges)


def max_disjoint_paths(bell: "BellNetwork") -> tuple[int, PathSet]:
    """Maximum set of pairwise edge-disjoint Alice-Bob paths in the Bell graph.

    Integer unit-capacity max-flow followed by flow decomposition; cycles in
    the used-arc set are excised since they contribute nothing end to end.
    The count matches the minimum number of Bell pairs crossing any cut.
    """
    solver = _ResidualSolver(flow_graph_from_bell(bell))
    count = int(solver.flow_value)
    used = solver.used_directions()

    out: dict[NodeId, list[tuple[NodeId, str]]] = {v: [] for v in bell.vertices}
    for eid, (u, v) in used.items():
        out[u].append((v, eid))
    for v in out:
        out[v].sort()
    cursor = {v: 0 for v in out}

    def next_arc(v: NodeId) -> tuple[NodeId, str]:
        i = cursor[v]
        cursor[v] = i + 1
        return out[v][i]

    paths = []
    for _ in range(count):
        nodes = [bell.alice]
        edges: list[str] = []
        position = {bell.alice: 0}
        v = bell.alice
        while v != bell.bob:
            w, eid = next_arc(v)
            if w in position:
                # excise the cycle: drop everything after the revisited node
                k = position[w]
                for dropped in nodes[k + 1 :]:
                    del position[dropped]
                nodes = nodes[: k + 1]
                edges = edges[:k]
            else:
                position[w] = len(nodes)
                nodes.append(w)
                edges.append(eid)
            v = w
        paths.append(DisjointPath(tuple(nodes), tuple(edges)))
    return count, PathSet(tuple(paths))


def check_path_set(bell: "BellNetwork", path_set: PathSet) -> None:
    """Machine check of the path-set invariants; raises ValueError on breach."""
    known = {b.id: b for b in bell.bell_edges}
    seen: set[str] = set()
    for p in path_set.paths:
        if len(p.nodes) < 2 or p.nodes[0] != bell.alice or p.nodes[-1] != bell.bob:
            raise ValueError(f"path {p.nodes} does not run alice -> bob")
        if len(set(p.nodes)) != len(p.nodes):
            raise ValueError(f"path {p.nodes} repeats a vertex")
        if len(p.bell_edges) != len(p.nodes) - 1:
            raise ValueError(f"path {p.nodes} edge count mismatch")
        for (u, v), eid in zip(zip(p.nodes, p.nodes[1:]), p.bell_edges):
            if eid in seen:
                raise ValueError(f"bell edge {eid!r} consumed twice")
            seen.add(eid)
            b = known.get(eid)
            if b is None:
                raise ValueError(f"unknown bell edge {eid!r}")
            if {u, v} != {b.u, b.v}:
                raise ValueError(f"bell edge {eid!r} does not join {u!r} and {v!r}")
