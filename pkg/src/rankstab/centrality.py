"""Degree, closeness, and betweenness centrality with deterministic ranking.

Conventions:
- closeness(v) = 1 / sum(dist(v, s) over vertices reachable from v), 0 for an
  isolated vertex; on connected graphs this is the textbook definition.
- betweenness counts each unordered pair {s, t} once, no normalization.
- rankings order by score descending, then vertex id ascending, so every
  downstream top-k set is reproducible.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rankstab import kernels
from rankstab.graph import Graph


class Metric(enum.Enum):
    DEGREE = "degree"
    CLOSENESS = "closeness"
    BETWEENNESS = "betweenness"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Metric":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown metric {name!r}; expected one of "
                             f"{[m.value for m in cls]}") from None


@dataclass
class CentralityVector:
    """Per-vertex scores for one metric.

    ``inv_closeness_sum`` carries the raw distance sums for closeness (the
    inverted scale used by the rank-preservation bounds); None otherwise.
    """

    metric: Metric
    scores: np.ndarray
    inv_closeness_sum: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return len(self.scores)


@dataclass
class Ranking:
    """Deterministic total order: score descending, vertex id ascending."""

    order: np.ndarray    # order[i] = vertex at rank i+1
    rank_of: np.ndarray  # rank_of[v] = 0-based position of v in order

    @property
    def n(self) -> int:
        return len(self.order)


def degree_centrality(g: Graph) -> CentralityVector:
    return CentralityVector(Metric.DEGREE, g.degrees().astype(np.float64))


def closeness_centrality(g: Graph) -> CentralityVector:
    indptr, indices = g.csr()
    sums, _reach = kernels.get_kernels().closeness_sums(indptr, indices)
    sums = sums.astype(np.float64)
    scores = np.divide(1.0, sums, out=np.zeros_like(sums), where=sums > 0)
    return CentralityVector(Metric.CLOSENESS, scores, inv_closeness_sum=sums)


def betweenness_centrality(g: Graph) -> CentralityVector:
    indptr, indices = g.csr()
    return CentralityVector(Metric.BETWEENNESS,
                            kernels.get_kernels().betweenness(indptr, indices))


_DISPATCH = {
    Metric.DEGREE: degree_centrality,
    Metric.CLOSENESS: closeness_centrality,
    Metric.BETWEENNESS: betweenness_centrality,
}


def centrality(g: Graph, metric: Metric) -> CentralityVector:
    return _DISPATCH[metric](g)


def rank(cv: CentralityVector) -> Ranking:
    n = cv.n
    # lexsort: last key is primary, so -scores first, vertex id breaks ties
    order = np.lexsort((np.arange(n), -cv.scores)).astype(np.int64)
    rank_of = np.empty(n, dtype=np.int64)
    rank_of[order] = np.arange(n)
    return Ranking(order=order, rank_of=rank_of)


def top_k(r: Ranking, k: int) -> frozenset[int]:
    if not 1 <= k <= r.n:
        raise ValueError(f"k={k} out of range [1, {r.n}]")
    return frozenset(int(v) for v in r.order[:k])
