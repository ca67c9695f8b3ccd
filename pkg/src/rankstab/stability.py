"""Jaccard stability of top-k sets under noise, with High/Medium/Low classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from rankstab.centrality import Metric, centrality, rank, top_k
from rankstab.graph import Graph
from rankstab.perturb import NoiseSpec, sweep


class StabilityClass(enum.Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"

    def __str__(self) -> str:
        return self.value

    @property
    def initial(self) -> str:
        return self.value[0]


_CLASS_RANK = {StabilityClass.HIGH: 3, StabilityClass.MEDIUM: 2, StabilityClass.LOW: 1}


def classify(mean_ji: float) -> StabilityClass:
    """High iff JI >= 0.7, Medium iff 0.4 <= JI < 0.7, else Low."""
    if mean_ji >= 0.7:
        return StabilityClass.HIGH
    if mean_ji >= 0.4:
        return StabilityClass.MEDIUM
    return StabilityClass.LOW


def jaccard(a: frozenset | set, b: frozenset | set) -> float:
    if not a and not b:
        raise ValueError("jaccard undefined for two empty sets")
    return len(a & b) / len(a | b)


def dominant_stability(classes: Sequence[StabilityClass]) -> tuple[int, StabilityClass]:
    """Longest run of one class; ties go to the higher class, then earliest."""
    if not classes:
        raise ValueError("empty class list")
    runs: list[tuple[int, StabilityClass, int]] = []  # (length, class, start)
    start = 0
    for i in range(1, len(classes) + 1):
        if i == len(classes) or classes[i] != classes[start]:
            runs.append((i - start, classes[start], start))
            start = i
    best = min(runs, key=lambda r: (-r[0], -_CLASS_RANK[r[1]], r[2]))
    return best[0], best[1]


@dataclass
class StabilityReport:
    """Per (eps, k) trial JIs, their means and classes, dominant runs per eps."""

    metric: Metric
    epsilons: list[float]
    ks: list[int]
    trials: int
    trial_ji: dict[tuple[float, int], list[float]] = field(default_factory=dict)
    mean_ji: dict[tuple[float, int], float] = field(default_factory=dict)
    stability_class: dict[tuple[float, int], StabilityClass] = field(default_factory=dict)
    dominant: dict[float, tuple[int, StabilityClass]] = field(default_factory=dict)

    def mean_across_eps(self, k: int) -> float:
        """Mean of the per-eps mean JIs at one k (the summary-table statistic)."""
        vals = [self.mean_ji[(eps, k)] for eps in self.epsilons]
        return sum(vals) / len(vals)

    def summary_class(self, k: int) -> StabilityClass:
        return classify(self.mean_across_eps(k))

    def to_json_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "epsilons": self.epsilons,
            "ks": self.ks,
            "trials": self.trials,
            "cells": [
                {
                    "epsilon": eps,
                    "k": k,
                    "mean_ji": self.mean_ji[(eps, k)],
                    "class": self.stability_class[(eps, k)].value,
                    "trial_ji": self.trial_ji[(eps, k)],
                }
                for eps in self.epsilons
                for k in self.ks
            ],
            "dominant": [
                {
                    "epsilon": eps,
                    "run_length": self.dominant[eps][0],
                    "class": self.dominant[eps][1].value,
                    "label": f"{self.dominant[eps][0]}{self.dominant[eps][1].initial}",
                }
                for eps in self.epsilons
            ],
            "summary_across_eps": [
                {
                    "k": k,
                    "mean_ji": self.mean_across_eps(k),
                    "class": self.summary_class(k).value,
                }
                for k in self.ks
            ],
        }


def topk_stability(g: Graph, metric: Metric, spec: NoiseSpec,
                   epsilons: Sequence[float], ks: Sequence[int]) -> StabilityReport:
    """Simulate the grid and measure top-k overlap against the original ranking.

    For every trial the metric is recomputed on the perturbed graph once and
    all k values are read off the same ranking.
    """
    ks = list(ks)
    epsilons = list(epsilons)
    for k in ks:
        if not 1 <= k <= g.n:
            raise ValueError(f"k={k} out of range [1, {g.n}]")
    base_rank = rank(centrality(g, metric))
    base_sets = {k: top_k(base_rank, k) for k in ks}

    report = StabilityReport(metric=metric, epsilons=epsilons, ks=ks, trials=spec.trials)
    for (eps, k) in ((e, k) for e in epsilons for k in ks):
        report.trial_ji[(eps, k)] = []

    for trial in sweep(g, epsilons, spec):
        pert_rank = rank(centrality(trial.graph, metric))
        for k in ks:
            ji = jaccard(base_sets[k], top_k(pert_rank, k))
            report.trial_ji[(trial.epsilon, k)].append(ji)

    for key, vals in report.trial_ji.items():
        mean = sum(vals) / len(vals)
        report.mean_ji[key] = mean
        report.stability_class[key] = classify(mean)
    for eps in epsilons:
        classes = [report.stability_class[(eps, k)] for k in sorted(ks)]
        report.dominant[eps] = dominant_stability(classes)
    return report
