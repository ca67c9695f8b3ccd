"""Undirected simple graph: edge-list ingestion, complements, global statistics.

Vertices are dense integers 0..n-1 internally; original file labels are kept
in ``Graph.labels`` for reporting. Graphs are immutable after construction.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

COMMENT_PREFIXES = ("#", "%")


class GraphError(Exception):
    """Raised for unreadable, malformed, or empty graph inputs."""


class Graph:
    """Immutable undirected simple graph with adjacency sets.

    No self-loops, no duplicate edges; adjacency is symmetric and vertex ids
    are contiguous. Do not mutate ``adj`` after construction.
    """

    __slots__ = ("n", "m", "adj", "labels", "_csr", "_edge_set")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 labels: Optional[Sequence[str]] = None):
        if n < 1:
            raise GraphError("graph must have at least one vertex")
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) references unknown vertex id")
            if u == v or v in adj[u]:
                continue
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self.n = n
        self.m = m
        self.adj = adj
        self.labels = list(labels) if labels is not None else None
        self._csr: Optional[tuple[np.ndarray, np.ndarray]] = None
        self._edge_set: Optional[frozenset[tuple[int, int]]] = None

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adj], dtype=np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u in range(self.n):
            for v in sorted(self.adj[u]):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        if self._edge_set is None:
            self._edge_set = frozenset(self.edges())
        return self._edge_set

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices), neighbors sorted."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int32)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self.adj[v])
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            pos = 0
            for v in range(self.n):
                nbrs = sorted(self.adj[v])
                indices[pos:pos + len(nbrs)] = nbrs
                pos += len(nbrs)
            self._csr = (indptr, indices)
        return self._csr

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass
class GraphStats:
    """Whole-graph descriptors used in run reports."""

    n: int
    m: int
    avg_clustering_coefficient: float
    degree_slope_alpha: float
    n_components: int
    lcc_size: int

    def to_json_dict(self) -> dict:
        alpha = self.degree_slope_alpha
        return {
            "n": self.n,
            "m": self.m,
            "cc": self.avg_clustering_coefficient,
            "alpha": alpha if math.isfinite(alpha) else None,
            "n_components": self.n_components,
            "lcc_size": self.lcc_size,
        }


def load_edge_list(path, directed_dupes_ok: bool = True) -> Graph:
    """Load a whitespace-separated edge list.

    Labels are remapped to 0..n-1 in first-seen order; self-loops are dropped
    and duplicate or reversed-duplicate lines collapse to a single edge.
    Comment lines start with '#' or '%'.
    """
    ids: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    labels: list[str] = []

    def intern(tok: str) -> int:
        i = ids.get(tok)
        if i is None:
            i = len(ids)
            ids[tok] = i
            labels.append(tok)
        return i

    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"cannot read {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphError(f"{path}:{lineno}: expected two vertex labels, got {line!r}")
            u, v = intern(parts[0]), intern(parts[1])
            if u != v:
                edges.append((u, v))

    if not edges:
        raise GraphError(f"{path}: empty graph after comment/self-loop removal")
    return Graph(len(ids), edges, labels=labels)


def write_edge_list(g: Graph, path) -> None:
    """Serialize using original labels; round-trips through load_edge_list."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for u, v in g.edges():
            fh.write(f"{g.label_of(u)} {g.label_of(v)}\n")


def complement_size(g: Graph) -> int:
    """Number of vertex pairs not joined by an edge: n(n-1)/2 - m."""
    return g.n * (g.n - 1) // 2 - g.m


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    """Subgraph on ``vs`` (remapped to 0..|vs|-1 in sorted order)."""
    vs = sorted(set(vs))
    for v in vs:
        if not (0 <= v < g.n):
            raise GraphError(f"unknown vertex id {v}")
    remap = {v: i for i, v in enumerate(vs)}
    inside = set(vs)
    edges = [(remap[u], remap[v]) for u in vs for v in g.adj[u] if u < v and v in inside]
    labels = [g.label_of(v) for v in vs] if g.labels is not None else None
    return Graph(len(vs), edges, labels=labels)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as vertex lists, largest first (ties by smallest member)."""
    seen = [False] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    q.append(w)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def largest_component(g: Graph) -> Graph:
    comps = connected_components(g)
    return induced_subgraph(g, comps[0])


def local_clustering(g: Graph, v: int) -> float:
    """Fraction of closed wedges at v; 0 when deg(v) < 2."""
    d = len(g.adj[v])
    if d < 2:
        return 0.0
    adj_v = g.adj[v]
    links = sum(len(adj_v & g.adj[u]) for u in adj_v) // 2
    return links / (d * (d - 1) / 2)


def degree_slope_mle(degrees: Sequence[int]) -> float:
    """Continuous power-law exponent MLE over positive degrees.

    alpha = 1 + n_d / sum(ln(d_i / d_min)), with d_min the smallest positive
    degree. Infinite when all positive degrees are equal; NaN with none.
    """
    pos = [d for d in degrees if d > 0]
    if not pos:
        return math.nan
    d_min = min(pos)
    denom = sum(math.log(d / d_min) for d in pos)
    if denom == 0.0:
        return math.inf
    return 1.0 + len(pos) / denom


def graph_stats(g: Graph) -> GraphStats:
    cc = sum(local_clustering(g, v) for v in range(g.n)) / g.n
    comps = connected_components(g)
    return GraphStats(
        n=g.n,
        m=g.m,
        avg_clustering_coefficient=cc,
        degree_slope_alpha=degree_slope_mle([len(a) for a in g.adj]),
        n_components=len(comps),
        lcc_size=len(comps[0]),
    )
