"""Perturbation-free structural diagnostics of the high-centrality region.

Three views of the top of a ranking: gap-separated clusters of near-equal
scores, the density of the subgraph induced by the top-k set, and how much
the top-k vertices share neighbors among the high-ranked vertex pools.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from rankstab.centrality import CentralityVector, Metric, Ranking, rank, top_k
from rankstab.graph import Graph, induced_subgraph
from rankstab.stability import jaccard

DEFAULT_THETA = 0.1
DEFAULT_POOLS = (100, 50, 25, 10)
BAND_HIGH_MIN = 0.5
BAND_LOW_MAX = 0.2


@dataclass
class StableClustering:
    """Partition of ranks 1..m into runs separated by relative gaps >= theta.

    ``intervals`` holds 1-based inclusive (first_rank, last_rank) pairs.
    ``degenerate`` flags a zero score inside the prefix, where the relative
    difference is undefined and the zero tail is kept as one final cluster.
    """

    metric: Metric
    m: int
    theta: float
    intervals: list[tuple[int, int]]
    degenerate: bool = False

    @property
    def sizes(self) -> list[int]:
        return [b - a + 1 for a, b in self.intervals]

    def cluster_of_rank(self, r: int) -> int:
        """0-based cluster index containing 1-based rank r."""
        for i, (a, b) in enumerate(self.intervals):
            if a <= r <= b:
                return i
        raise ValueError(f"rank {r} outside clustered prefix 1..{self.m}")


@dataclass
class RichClubStats:
    """Top-k induced density plus the shared-high-neighbor curve and its band."""

    metric: Metric
    k: int
    density: float
    common_neighbor_curve: dict[int, float] = field(default_factory=dict)
    band: str = ""


def stable_clusters(cv: CentralityVector, m: int, theta: float = DEFAULT_THETA) -> StableClustering:
    """Greedy left-to-right scan over ranks 1..m.

    A new cluster starts after rank r whenever (X(r) - X(r+1)) / X(r) >= theta.
    """
    if not 1 <= m <= cv.n:
        raise ValueError(f"m={m} out of range [1, {cv.n}]")
    if theta <= 0:
        raise ValueError("theta must be positive")
    order = rank(cv).order
    xs = [float(cv.scores[order[i]]) for i in range(m)]

    intervals: list[tuple[int, int]] = []
    degenerate = False
    start = 1
    for r in range(1, m):  # boundary test between rank r and r+1
        if xs[r - 1] == 0.0:
            # zero scores are all equal from here on; keep them together
            degenerate = True
            break
        rel = (xs[r - 1] - xs[r]) / xs[r - 1]
        if rel >= theta:
            intervals.append((start, r))
            start = r + 1
    intervals.append((start, m))
    return StableClustering(metric=cv.metric, m=m, theta=theta,
                            intervals=intervals, degenerate=degenerate)


def cluster_boundary_ks(sc: StableClustering) -> list[int]:
    """k values at cluster ends (cumulative sizes); the predicted stable ks."""
    out = []
    total = 0
    for size in sc.sizes:
        total += size
        out.append(total)
    return out


def subgraph_density(g: Graph, r: Ranking, k: int) -> float:
    """Edge density of the subgraph induced by the top-k set."""
    if k < 2:
        raise ValueError("density needs k >= 2")
    sub = induced_subgraph(g, top_k(r, k))
    return sub.m / (k * (k - 1) / 2)


def common_top_neighbors(g: Graph, r: Ranking, k: int,
                         pools: Sequence[int] = DEFAULT_POOLS) -> dict[int, float]:
    """Average pairwise neighborhood overlap of the top-k inside each pool.

    For pool size N, each top-k pair (u, v) contributes the Jaccard index of
    their neighborhoods restricted to the top-N vertices, with u and v
    themselves excluded from both sides. Pools larger than n are truncated.
    Pairs whose restricted neighborhoods are both empty contribute 0.
    """
    if k < 2:
        raise ValueError("need k >= 2 for pairwise overlap")
    top = [int(v) for v in r.order[:k]]
    curve: dict[int, float] = {}
    for pool in pools:
        eff = min(pool, g.n)
        pool_set = set(int(v) for v in r.order[:eff])
        total = 0.0
        pairs = 0
        for i in range(k):
            u = top[i]
            nu = g.adj[u] & pool_set
            for j in range(i + 1, k):
                v = top[j]
                a = nu - {u, v}
                b = (g.adj[v] & pool_set) - {u, v}
                pairs += 1
                if a or b:
                    total += jaccard(a, b)
        curve[pool] = total / pairs
    return curve


def band_classify(curve: dict[int, float],
                  high_min: float = BAND_HIGH_MIN,
                  low_max: float = BAND_LOW_MAX) -> str:
    """Band the curve by its innermost (N=10) point."""
    if 10 not in curve:
        raise ValueError("curve must contain the N=10 pool")
    at10 = curve[10]
    if at10 >= high_min:
        return "High"
    if at10 >= low_max:
        return "Medium"
    return "Low"


def rich_club_stats(g: Graph, r: Ranking, metric: Metric, k: int,
                    pools: Sequence[int] = DEFAULT_POOLS,
                    high_min: float = BAND_HIGH_MIN,
                    low_max: float = BAND_LOW_MAX) -> RichClubStats:
    curve = common_top_neighbors(g, r, k, pools)
    return RichClubStats(
        metric=metric,
        k=k,
        density=subgraph_density(g, r, k),
        common_neighbor_curve=curve,
        band=band_classify(curve, high_min, low_max),
    )
