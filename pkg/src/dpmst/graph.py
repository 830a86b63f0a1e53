"""Graph and weight containers, exact MST oracle, CSV edge-list I/O.

Edges are stored once under a canonical (min(u,v), max(u,v)) key with a
dense integer edge id; everything downstream speaks edge ids.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import DisconnectedGraph, InvalidParam, UnknownEdge
from .noise import RngStream


@dataclass(frozen=True)
class Graph:
    """Public topology: n vertices, undirected edge list, adjacency index."""

    n: int
    edge_u: np.ndarray  # int64, smaller endpoint per edge id
    edge_v: np.ndarray  # int64, larger endpoint per edge id
    adj: list  # per-vertex numpy array of incident edge ids

    @property
    def m(self) -> int:
        return len(self.edge_u)

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        if n < 2:
            raise InvalidParam(f"need n >= 2 vertices, got {n}")
        us, vs = [], []
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidParam(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParam(f"edge ({u},{v}) outside vertex range")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise InvalidParam(f"duplicate edge ({a},{b})")
            seen.add((a, b))
            us.append(a)
            vs.append(b)
        edge_u = np.asarray(us, dtype=np.int64)
        edge_v = np.asarray(vs, dtype=np.int64)
        return Graph(n=n, edge_u=edge_u, edge_v=edge_v,
                     adj=_build_adjacency(n, edge_u, edge_v))

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        if not 0 <= edge_id < self.m:
            raise UnknownEdge(f"edge id {edge_id}")
        return int(self.edge_u[edge_id]), int(self.edge_v[edge_id])

    def is_connected(self) -> bool:
        seen = np.zeros(self.n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            for eid in self.adj[v]:
                w = int(self.edge_u[eid]) if int(self.edge_v[eid]) == v else int(self.edge_v[eid])
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return bool(seen.all())


def _build_adjacency(n, edge_u, edge_v):
    adj = [[] for _ in range(n)]
    for eid in range(len(edge_u)):
        adj[edge_u[eid]].append(eid)
        adj[edge_v[eid]].append(eid)
    return [np.asarray(a, dtype=np.int64) for a in adj]


@dataclass(frozen=True)
class WeightAssignment:
    """Private per-edge weights plus the per-edge sensitivity bound."""

    weights: np.ndarray  # float64, one weight per edge id
    sensitivity: float

    def __post_init__(self):
        if not self.sensitivity > 0:
            raise InvalidParam(f"sensitivity must be > 0, got {self.sensitivity}")
        if not np.all(np.isfinite(self.weights)):
            raise InvalidParam("all weights must be finite")


@dataclass
class RunCounters:
    samples_drawn: int = 0
    comparisons: int = 0
    bottom_hits: int = 0
    elapsed_ns: int = 0


@dataclass
class TreeResult:
    """A released spanning tree plus its cost relative to the optimum."""

    tree_edges: list
    true_weight: float
    opt_weight: float
    error: float
    counters: RunCounters = field(default_factory=RunCounters)


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def tree_weight(w: WeightAssignment, edge_ids) -> float:
    """Sum of weights over a list of edge ids."""
    total = 0.0
    m = len(w.weights)
    for eid in edge_ids:
        if not 0 <= eid < m:
            raise UnknownEdge(f"edge id {eid}")
        total += float(w.weights[eid])
    return total


def exact_mst(g: Graph, w: WeightAssignment) -> TreeResult:
    """Deterministic Kruskal oracle; ties broken by lowest edge id."""
    if not g.is_connected():
        raise DisconnectedGraph("graph is not connected")
    order = np.lexsort((np.arange(g.m), w.weights))
    uf = _UnionFind(g.n)
    tree = []
    eu, ev = g.edge_u, g.edge_v
    for eid in order:
        eid = int(eid)
        if uf.union(int(eu[eid]), int(ev[eid])):
            tree.append(eid)
            if len(tree) == g.n - 1:
                break
    weight = tree_weight(w, tree)
    return TreeResult(tree_edges=tree, true_weight=weight,
                      opt_weight=weight, error=0.0)


def is_spanning_tree(g: Graph, edge_ids) -> bool:
    """True iff the edge set is acyclic and covers all n vertices."""
    ids = list(edge_ids)
    if len(ids) != g.n - 1 or len(set(ids)) != len(ids):
        return False
    uf = _UnionFind(g.n)
    for eid in ids:
        if not 0 <= eid < g.m:
            return False
        if not uf.union(int(g.edge_u[eid]), int(g.edge_v[eid])):
            return False  # cycle
    return True


def gen_complete_graph(n: int, seed: int, dist: str = "uniform01") -> tuple[Graph, WeightAssignment]:
    """Complete graph with iid edge weights, reproducible per seed."""
    if n < 2:
        raise InvalidParam(f"need n >= 2, got {n}")
    if dist != "uniform01":
        raise InvalidParam(f"unknown weight distribution {dist!r}")
    iu, iv = np.triu_indices(n, k=1)
    edge_u = iu.astype(np.int64)
    edge_v = iv.astype(np.int64)
    g = Graph(n=n, edge_u=edge_u, edge_v=edge_v,
              adj=_build_adjacency(n, edge_u, edge_v))
    rng = RngStream(seed).substream("weights")
    weights = rng.gen.random(g.m)
    return g, WeightAssignment(weights=weights, sensitivity=1.0)


def write_edge_list(path, g: Graph, w: WeightAssignment) -> None:
    """Write the `u,v,w` CSV edge-list format."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["u", "v", "w"])
        for eid in range(g.m):
            writer.writerow([int(g.edge_u[eid]), int(g.edge_v[eid]),
                             repr(float(w.weights[eid]))])


def read_edge_list(path, sensitivity: float = 1.0) -> tuple[Graph, WeightAssignment]:
    """Read the `u,v,w` CSV edge-list format."""
    edges = []
    weights = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["u", "v", "w"]:
            raise InvalidParam(f"{path}: expected header 'u,v,w'")
        for row in reader:
            if not row:
                continue
            u, v, wt = int(row[0]), int(row[1]), float(row[2])
            edges.append((u, v))
            weights.append(wt)
    if not edges:
        raise InvalidParam(f"{path}: no edges")
    n = max(max(u, v) for u, v in edges) + 1
    g = Graph.from_edges(n, edges)
    return g, WeightAssignment(weights=np.asarray(weights), sensitivity=sensitivity)
