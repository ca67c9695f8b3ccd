"""Perturbation-free stability prediction from three structural conditions.

1. The centrality gaps across the top-k boundary beat the expected worst-case
   movement for the noise level.
2. k falls at a stable-cluster boundary.
3. The top-k subgraph is dense and the top-k share high-ranked neighbors.

All three true predicts high stability, all three false predicts low, and
anything in between abstains. This module never draws a perturbation trial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from rankstab.bounds import GapCertificate, all_pairs_dists, expectation_certificate
from rankstab.centrality import Metric, centrality, rank
from rankstab.graph import Graph
from rankstab.stability import StabilityClass, StabilityReport
from rankstab.structure import (
    DEFAULT_POOLS,
    DEFAULT_THETA,
    BAND_HIGH_MIN,
    BAND_LOW_MAX,
    RichClubStats,
    StableClustering,
    cluster_boundary_ks,
    rich_club_stats,
    stable_clusters,
)

DEFAULT_DENSITY_MIN = 0.6


@dataclass
class TemplateParams:
    theta: float = DEFAULT_THETA
    pools: Sequence[int] = DEFAULT_POOLS
    density_min: float = DEFAULT_DENSITY_MIN
    band_high_min: float = BAND_HIGH_MIN
    band_low_max: float = BAND_LOW_MAX
    cluster_prefix: Optional[int] = None  # default: min(n, max(2k, 10))


@dataclass
class TemplateVerdict:
    metric: Metric
    k: int
    epsilon: float
    cond1_gap: bool
    cond2_cluster: bool
    cond3_structure: bool
    prediction: str  # HighStable | LowStable | Indeterminate
    certificates: list[GapCertificate] = field(default_factory=list)
    clustering: Optional[StableClustering] = None
    rich_club: Optional[RichClubStats] = None
    notes: list[str] = field(default_factory=list)


def _prediction(c1: bool, c2: bool, c3: bool) -> str:
    if c1 and c2 and c3:
        return "HighStable"
    if not (c1 or c2 or c3):
        return "LowStable"
    return "Indeterminate"


def _boundary_pairs(clustering: StableClustering, order, k: int) -> list[tuple[int, int]]:
    """Vertex pairs spanning the top-k boundary: the cluster holding rank k
    against the cluster holding rank k+1, restricted to ranks <= k vs > k."""
    ci = clustering.cluster_of_rank(k)
    cj = clustering.cluster_of_rank(k + 1)
    a_lo, a_hi = clustering.intervals[ci]
    b_lo, b_hi = clustering.intervals[cj]
    upper = [int(order[r - 1]) for r in range(a_lo, min(a_hi, k) + 1)]
    lower = [int(order[r - 1]) for r in range(max(b_lo, k + 1), b_hi + 1)]
    return [(u, w) for u in upper for w in lower]


def evaluate_template(g: Graph, metric: Metric, k: int, epsilon: float,
                      params: Optional[TemplateParams] = None) -> TemplateVerdict:
    params = params or TemplateParams()
    if not 1 <= k <= g.n:
        raise ValueError(f"k={k} out of range [1, {g.n}]")
    if not 0 <= epsilon <= g.n:
        raise ValueError(f"epsilon={epsilon} outside [0, {g.n}]")
    cv = centrality(g, metric)
    ranking = rank(cv)
    m = params.cluster_prefix or min(g.n, max(2 * k, 10))
    m = max(m, min(g.n, k + 1))
    clustering = stable_clusters(cv, m, params.theta)

    cond2 = k in cluster_boundary_ks(clustering)

    # cond1 is vacuously true at k == n: there is no rank k+1 to swap with
    certs: list[GapCertificate] = []
    cond1 = True
    if k < g.n:
        dist_matrix = all_pairs_dists(g) if metric is not Metric.DEGREE else None
        for v1, v2 in _boundary_pairs(clustering, ranking.order, k):
            cert = expectation_certificate(g, cv, v1, v2, epsilon, dist_matrix)
            certs.append(cert)
            cond1 = cond1 and cert.safe

    club = rich_club_stats(g, ranking, metric, k, params.pools,
                           params.band_high_min, params.band_low_max)
    cond3 = club.density >= params.density_min and club.band == "High"

    notes = []
    if club.density < params.density_min:
        # outlier pattern: a dense core among a subset of the top-k can still
        # stabilize the ranking even when the full top-k subgraph is sparse
        sub_density = _densest_prefix_density(g, ranking, k)
        if sub_density >= params.density_min:
            notes.append(f"dense core among a top-k subset (density {sub_density:.2f}); "
                         "known outlier pattern for sparse-but-stable networks")

    return TemplateVerdict(
        metric=metric, k=k, epsilon=epsilon,
        cond1_gap=cond1, cond2_cluster=cond2, cond3_structure=cond3,
        prediction=_prediction(cond1, cond2, cond3),
        certificates=certs, clustering=clustering, rich_club=club, notes=notes,
    )


def _densest_prefix_density(g: Graph, ranking, k: int) -> float:
    """Best density over top-j prefixes, 3 <= j <= k (outlier diagnostic)."""
    from rankstab.structure import subgraph_density

    best = 0.0
    for j in range(3, k + 1):
        best = max(best, subgraph_density(g, ranking, j))
    return best


@dataclass
class ValidationRecord:
    metric: Metric
    k: int
    epsilon: float
    prediction: str
    observed_class: StabilityClass
    hit: Optional[bool]  # None when the template abstained


def validate_prediction(verdict: TemplateVerdict, report: StabilityReport) -> ValidationRecord:
    """Join a verdict with the simulated class at the same (metric, eps, k)."""
    if report.metric is not verdict.metric:
        raise ValueError("report metric does not match verdict")
    key = (verdict.epsilon, verdict.k)
    if key not in report.stability_class:
        raise ValueError(f"report does not cover epsilon={verdict.epsilon}, k={verdict.k}")
    observed = report.stability_class[key]
    if verdict.prediction == "HighStable":
        hit = observed is StabilityClass.HIGH
    elif verdict.prediction == "LowStable":
        hit = observed is StabilityClass.LOW
    else:
        hit = None
    return ValidationRecord(metric=verdict.metric, k=verdict.k, epsilon=verdict.epsilon,
                            prediction=verdict.prediction, observed_class=observed, hit=hit)
