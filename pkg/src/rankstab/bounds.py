"""Analytic rank-preservation machinery.

Certificates answer: is the centrality gap between a higher-ranked vertex v1
and a lower-ranked v2 large enough that a perturbation cannot swap them?
Two evaluation modes exist side by side:

- per-trial: the realized added edges of one trial are known, so the bound is
  the concrete worst case for that trial;
- expectation: no trial is drawn; bounds are instantiated with the expected
  additions per vertex (eps/n per absent pair), so prediction stays free of
  any sampling.

For betweenness, the change at a vertex decomposes exactly into lost pairs
(P), diluted pairs (Q), gained pairs (R), and a residual for mixed cases
(e.g. the pair distance shrinks while v stays on some shortest path); the
signed category sums always reproduce the exact delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from rankstab import kernels
from rankstab.centrality import Metric
from rankstab.graph import Graph
from rankstab.perturb import PerturbedTrial

DEFAULT_PAIR_CAP = 2000


class PairCapExceeded(Exception):
    """All-pairs analysis refused: graph larger than the configured cap."""


@dataclass
class GapCertificate:
    """gap > bound guarantees (or, in expectation mode, predicts) rank safety.

    For closeness the inverted scale (distance sums) is used, with the gap
    taken as inv_sum(v2) - inv_sum(v1) so that larger still means safer.
    """

    metric: Metric
    v1: Optional[int]
    v2: Optional[int]
    gap: float
    bound: float
    safe: bool
    mode: str = "per-trial"
    details: dict = field(default_factory=dict)


@dataclass
class ClosenessImpact:
    """Worst-case decrease of v's distance sum from a set of new link targets.

    Each target t at original distance d_t pulls t itself and every vertex
    whose shortest path from v runs through t (R_t vertices in total) closer
    by d_t - 1 hops, so the sum can drop by at most sum((d_t - 1) * R_t).
    """

    v: int
    added_targets: list[tuple[int, float, int]]  # (t, d_t, R_t); d_t is inf if unreachable
    worst_case_decrease: float
    unreachable_flagged: bool = False


@dataclass
class BcDecomposition:
    v: int
    loss_P: float
    loss_Q: float
    gain_R: float
    residual: float
    total_change: float
    n_P: int = 0
    n_Q: int = 0
    n_R: int = 0
    n_residual: int = 0


def degree_gap_bound(gap: float, epsilon: float) -> GapCertificate:
    """Expectation mode for degree: safe when the gap exceeds eps."""
    if gap < 0:
        raise ValueError("gap must be non-negative (v1 ranked above v2)")
    return GapCertificate(metric=Metric.DEGREE, v1=None, v2=None, gap=gap,
                          bound=epsilon, safe=gap > epsilon, mode="expectation")


def degree_gap_check(trial: PerturbedTrial, v1: int, v2: int) -> bool:
    """Per-trial degree check: original gap > realized additions to v2.

    Degrees never decrease under edge addition, so a true check implies the
    perturbed order deg(v1) >= deg(v2) is kept.
    """
    d1 = trial.graph.degree(v1) - trial.additions_to(v1)
    d2 = trial.graph.degree(v2) - trial.additions_to(v2)
    if d1 < d2:
        raise ValueError("v1 must not rank below v2 by degree")
    return d1 - d2 > trial.additions_to(v2)


def _reach_counts(g: Graph, v: int, targets: Sequence[int]) -> ClosenessImpact:
    indptr, indices = g.csr()
    kern = kernels.get_kernels()
    dist_v, _ = kern.bfs_dist_sigma(indptr, indices, v)
    entries: list[tuple[int, float, int]] = []
    total = 0.0
    flagged = False
    for t in targets:
        t = int(t)
        if t == v:
            raise ValueError("target equals the vertex itself")
        d_t = int(dist_v[t])
        if d_t < 0:
            entries.append((t, math.inf, 0))
            flagged = True
            continue
        dist_t, _ = kern.bfs_dist_sigma(indptr, indices, t)
        # w joins R_t when some shortest path from v to w passes through t
        r_t = int(np.count_nonzero((dist_v >= 0) & (dist_t >= 0)
                                   & (dist_v[t] + dist_t == dist_v)))
        entries.append((t, float(d_t), r_t))
        total += (d_t - 1) * r_t
    return ClosenessImpact(v=v, added_targets=entries, worst_case_decrease=total,
                           unreachable_flagged=flagged)


def closeness_worst_case_decrease(g: Graph, v: int, targets: Sequence[int]) -> ClosenessImpact:
    """Sum of (d_t - 1) * R_t over the given new-link targets of v.

    Unreachable targets have no defined d_t: they are flagged, reported with
    d_t = inf, and excluded from the sum.
    """
    return _reach_counts(g, v, targets)


def closeness_single_edge_property(g: Graph, v: int, x: int) -> bool:
    """Check that adding (v, x) shrinks v's distance sum by >= (d_x - 1) * R_x.

    This inequality is a theorem; a False return indicates a bug.
    """
    if g.has_edge(v, x) or v == x:
        raise ValueError("(v, x) must be an absent edge")
    impact = _reach_counts(g, v, [x])
    _, d_x, _ = impact.added_targets[0]
    if not math.isfinite(d_x) or d_x < 2:
        raise ValueError("x must be reachable from v at distance >= 2")
    kern = kernels.get_kernels()
    sums_before, _ = kern.closeness_sums(*g.csr())
    g2 = Graph(g.n, list(g.edges()) + [(v, x)], labels=g.labels)
    sums_after, _ = kern.closeness_sums(*g2.csr())
    decrease = int(sums_before[v]) - int(sums_after[v])
    return decrease >= impact.worst_case_decrease


def expected_closeness_decrease(g: Graph, v: int, epsilon: float,
                                dist_matrix: Optional[np.ndarray] = None) -> float:
    """Expectation-mode decrease estimate: (eps/n) * sum over all candidate
    targets of (d_t - 1) * R_t, each absent pair weighted by its probability.

    ``dist_matrix`` (all-pairs hop distances, -1 unreachable) avoids repeated
    BFS sweeps when certifying many vertices of the same graph.
    """
    p = epsilon / g.n
    if p == 0.0:
        return 0.0
    D = dist_matrix if dist_matrix is not None else all_pairs_dists(g)
    dv = D[v]
    total = 0.0
    for t in range(g.n):
        d_t = int(dv[t])
        if t == v or d_t < 2:  # self, neighbors, unreachable contribute nothing
            continue
        r_t = int(np.count_nonzero((dv >= 0) & (D[t] >= 0) & (d_t + D[t] == dv)))
        total += (d_t - 1) * r_t
    return p * total


def all_pairs_dists(g: Graph) -> np.ndarray:
    """n x n hop-distance matrix (-1 unreachable); symmetric for undirected g."""
    indptr, indices = g.csr()
    kern = kernels.get_kernels()
    out = np.empty((g.n, g.n), dtype=np.int32)
    for s in range(g.n):
        out[s], _ = kern.bfs_dist_sigma(indptr, indices, s)
    return out


def _all_pairs_dist_sigma(g: Graph, cap: int) -> tuple[np.ndarray, np.ndarray]:
    if g.n > cap:
        raise PairCapExceeded(f"graph has {g.n} vertices, cap is {cap}")
    indptr, indices = g.csr()
    kern = kernels.get_kernels()
    dist = np.empty((g.n, g.n), dtype=np.int32)
    sigma = np.empty((g.n, g.n), dtype=np.float64)
    for s in range(g.n):
        dist[s], sigma[s] = kern.bfs_dist_sigma(indptr, indices, s)
    return dist, sigma


def _through_contribution(D, S, s, t, v) -> float:
    """sigma_st(v) / sigma_st, or 0 when v is on no shortest s-t path."""
    if D[s, t] < 0 or D[s, v] < 0 or D[v, t] < 0:
        return 0.0
    if D[s, v] + D[v, t] != D[s, t]:
        return 0.0
    return S[s, v] * S[v, t] / S[s, t]


def bc_decompose(g: Graph, trial: PerturbedTrial, v: int,
                 cap: int = DEFAULT_PAIR_CAP) -> BcDecomposition:
    """Classify every vertex pair by how the trial moved v's contribution.

    P: v's contribution dropped to zero. Q: pair distance unchanged but new
    shortest paths appeared, diluting v. R: v went from zero to positive.
    Residual: remaining changed pairs (distance shrank with v still on a
    shortest path). gain_R - loss_P - loss_Q + residual equals the exact
    betweenness change at v.
    """
    D1, S1 = _all_pairs_dist_sigma(g, cap)
    D2, S2 = _all_pairs_dist_sigma(trial.graph, cap)
    loss_p = loss_q = gain_r = residual = 0.0
    n_p = n_q = n_r = n_res = 0
    n = g.n
    for s in range(n):
        if s == v:
            continue
        for t in range(s + 1, n):
            if t == v:
                continue
            c1 = _through_contribution(D1, S1, s, t, v)
            c2 = _through_contribution(D2, S2, s, t, v)
            if c1 == 0.0 and c2 == 0.0:
                continue
            if c1 > 0.0 and c2 == 0.0:
                loss_p += c1
                n_p += 1
            elif c1 == 0.0 and c2 > 0.0:
                gain_r += c2
                n_r += 1
            elif D2[s, t] == D1[s, t]:
                if S2[s, t] != S1[s, t]:
                    loss_q += c1 - c2
                    n_q += 1
                # same distance and path count: contribution is unchanged
            else:
                residual += c2 - c1
                n_res += 1
    return BcDecomposition(v=v, loss_P=loss_p, loss_Q=loss_q, gain_R=gain_r,
                           residual=residual,
                           total_change=gain_r - loss_p - loss_q + residual,
                           n_P=n_p, n_Q=n_q, n_R=n_r, n_residual=n_res)


def betweenness_gap_bound(g: Graph, trial: PerturbedTrial, v1: int, v2: int,
                          cap: int = DEFAULT_PAIR_CAP) -> GapCertificate:
    """Per-trial certificate: gap must exceed v1's worst losses plus v2's gain.

    The residuals of both decompositions ride along in ``details``; when both
    are zero and the certificate is safe, the perturbed order is guaranteed.
    """
    indptr, indices = g.csr()
    bc = kernels.get_kernels().betweenness(indptr, indices)
    gap = float(bc[v1] - bc[v2])
    if gap < 0:
        raise ValueError("v1 must not rank below v2 by betweenness")
    d1 = bc_decompose(g, trial, v1, cap)
    d2 = bc_decompose(g, trial, v2, cap)
    bound = d1.loss_P + d1.loss_Q + d2.gain_R
    return GapCertificate(
        metric=Metric.BETWEENNESS, v1=v1, v2=v2, gap=gap, bound=bound,
        safe=gap > bound, mode="per-trial",
        details={"residual_v1": d1.residual, "residual_v2": d2.residual},
    )


def closeness_gap_certificate(g: Graph, trial: PerturbedTrial,
                              inv_sums: np.ndarray, v1: int, v2: int) -> GapCertificate:
    """Per-trial closeness certificate on the inverted (distance-sum) scale."""
    gap = float(inv_sums[v2] - inv_sums[v1])
    if gap < 0:
        raise ValueError("v1 must not rank below v2 by closeness")
    targets = [b if a == v2 else a for (a, b) in trial.added_edges if v2 in (a, b)]
    impact = closeness_worst_case_decrease(g, v2, targets)
    return GapCertificate(
        metric=Metric.CLOSENESS, v1=v1, v2=v2, gap=gap,
        bound=impact.worst_case_decrease, safe=gap > impact.worst_case_decrease,
        mode="per-trial",
        details={"targets": len(targets),
                 "unreachable_flagged": impact.unreachable_flagged},
    )


def expectation_certificate(g: Graph, cv, v1: int, v2: int, epsilon: float,
                            dist_matrix: Optional[np.ndarray] = None) -> GapCertificate:
    """Simulation-free certificate for any metric (cv: CentralityVector).

    degree: bound = eps. closeness: expected displacement mass of v2 on the
    inverted scale. betweenness: displacement-mass surrogate covering both
    v1's expected erosion and v2's expected gain (a heuristic estimate, since
    the exact loss and gain terms are only defined against a realized trial).
    """
    metric = cv.metric
    if metric is Metric.DEGREE:
        gap = float(cv.scores[v1] - cv.scores[v2])
        cert = degree_gap_bound(gap, epsilon)
        cert.v1, cert.v2 = v1, v2
        return cert
    if metric is Metric.CLOSENESS:
        inv = cv.inv_closeness_sum
        gap = float(inv[v2] - inv[v1])
        bound = expected_closeness_decrease(g, v2, epsilon, dist_matrix)
        return GapCertificate(metric=metric, v1=v1, v2=v2, gap=gap, bound=bound,
                              safe=gap > bound, mode="expectation")
    gap = float(cv.scores[v1] - cv.scores[v2])
    bound = (expected_closeness_decrease(g, v1, epsilon, dist_matrix)
             + expected_closeness_decrease(g, v2, epsilon, dist_matrix))
    return GapCertificate(metric=metric, v1=v1, v2=v2, gap=gap, bound=bound,
                          safe=gap > bound, mode="expectation",
                          details={"estimator": "displacement-mass"})
