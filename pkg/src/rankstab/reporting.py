"""Plot-ready CSV emission and the consolidated JSON run report.

Column orders are part of the contract; downstream plotting relies on them.
Timestamps appear only inside the provenance block so that reruns with the
same config and seed are otherwise byte-identical.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from rankstab import __version__
from rankstab.centrality import Metric
from rankstab.graph import GraphStats
from rankstab.stability import StabilityReport
from rankstab.structure import RichClubStats, StableClustering
from rankstab.template import TemplateVerdict, ValidationRecord

SCHEMA_VERSION = 1


def _writer(path: Path):
    fh = open(path, "w", encoding="utf-8", newline="")
    return fh, csv.writer(fh, lineterminator="\n")


def write_trials_csv(path: Path, network: str, reports: list[StabilityReport]) -> None:
    fh, w = _writer(path)
    with fh:
        w.writerow(["network", "metric", "epsilon", "k", "trial", "ji"])
        for rep in reports:
            for eps in rep.epsilons:
                for k in rep.ks:
                    for t, ji in enumerate(rep.trial_ji[(eps, k)]):
                        w.writerow([network, rep.metric.value, eps, k, t, ji])


def write_dominant_csv(path: Path, network: str, reports: list[StabilityReport]) -> None:
    fh, w = _writer(path)
    with fh:
        w.writerow(["network", "metric", "epsilon", "run_length", "class", "label"])
        for rep in reports:
            for eps in rep.epsilons:
                length, cls = rep.dominant[eps]
                w.writerow([network, rep.metric.value, eps, length, cls.value,
                            f"{length}{cls.initial}"])


def write_ji_vs_k_csv(path: Path, network: str, reports: list[StabilityReport]) -> None:
    fh, w = _writer(path)
    with fh:
        w.writerow(["network", "metric", "epsilon", "k", "mean_ji", "class"])
        for rep in reports:
            for eps in rep.epsilons:
                for k in rep.ks:
                    w.writerow([network, rep.metric.value, eps, k,
                                rep.mean_ji[(eps, k)],
                                rep.stability_class[(eps, k)].value])


def write_clusters_csv(path: Path, network: str,
                       rows: list[tuple[Metric, StableClustering, list, list]]) -> None:
    """rows: (metric, clustering, order, scores); emits rank/vertex/score/cluster."""
    fh, w = _writer(path)
    with fh:
        w.writerow(["network", "metric", "rank", "vertex", "score", "cluster_id"])
        for metric, sc, order, scores in rows:
            for r in range(1, sc.m + 1):
                v = int(order[r - 1])
                w.writerow([network, metric.value, r, v, float(scores[v]),
                            sc.cluster_of_rank(r)])


def write_neighbor_curve_csv(path: Path, network: str,
                             stats: list[RichClubStats]) -> None:
    fh, w = _writer(path)
    with fh:
        w.writerow(["network", "metric", "k", "pool_n", "avg_ji"])
        for rc in stats:
            for pool, avg in rc.common_neighbor_curve.items():
                w.writerow([network, rc.metric.value, rc.k, pool, avg])


def write_summary_csv(path: Path, network: str,
                      rows: list[tuple[Metric, int, float, str, float, str]]) -> None:
    """rows: (metric, k, mean_ji_across_eps, class, density, band)."""
    fh, w = _writer(path)
    with fh:
        w.writerow(["network", "metric", "k", "mean_ji_across_eps", "class",
                    "density", "neighbor_band"])
        for metric, k, mean, cls, density, band in rows:
            w.writerow([network, metric.value, k, mean, cls, density, band])


def write_confusion_csv(path: Path, network: str,
                        records: list[ValidationRecord]) -> None:
    fh, w = _writer(path)
    with fh:
        w.writerow(["network", "metric", "k", "epsilon", "prediction", "observed_class"])
        for rec in records:
            w.writerow([network, rec.metric.value, rec.k, rec.epsilon,
                        rec.prediction, rec.observed_class.value])


def clustering_json(sc: StableClustering) -> dict:
    return {
        "metric": sc.metric.value,
        "m": sc.m,
        "theta": sc.theta,
        "intervals": [list(iv) for iv in sc.intervals],
        "sizes": sc.sizes,
        "boundary_ks": _cumsum(sc.sizes),
        "degenerate": sc.degenerate,
    }


def _cumsum(sizes: list[int]) -> list[int]:
    out, total = [], 0
    for s in sizes:
        total += s
        out.append(total)
    return out


def rich_club_json(rc: RichClubStats) -> dict:
    return {
        "metric": rc.metric.value,
        "k": rc.k,
        "density": rc.density,
        "common_neighbor_curve": {str(n): v for n, v in rc.common_neighbor_curve.items()},
        "band": rc.band,
    }


def certificate_json(cert) -> dict:
    return {
        "metric": cert.metric.value,
        "v1": cert.v1,
        "v2": cert.v2,
        "gap": cert.gap,
        "bound": cert.bound,
        "safe": cert.safe,
        "mode": cert.mode,
        "details": cert.details,
    }


def verdict_json(v: TemplateVerdict) -> dict:
    return {
        "metric": v.metric.value,
        "k": v.k,
        "epsilon": v.epsilon,
        "cond1_gap": v.cond1_gap,
        "cond2_cluster": v.cond2_cluster,
        "cond3_structure": v.cond3_structure,
        "prediction": v.prediction,
        "certificates": [certificate_json(c) for c in v.certificates],
        "notes": v.notes,
    }


def validation_json(rec: ValidationRecord) -> dict:
    return {
        "metric": rec.metric.value,
        "k": rec.k,
        "epsilon": rec.epsilon,
        "prediction": rec.prediction,
        "observed_class": rec.observed_class.value,
        "hit": rec.hit,
    }


@dataclass
class RunReport:
    """Everything one command produced for one network, JSON-serializable."""

    network: str
    config: dict
    graph_stats: Optional[GraphStats] = None
    stability: list[StabilityReport] = field(default_factory=list)
    clusterings: list[dict] = field(default_factory=list)
    rich_clubs: list[dict] = field(default_factory=list)
    verdicts: list[dict] = field(default_factory=list)
    validations: list[dict] = field(default_factory=list)
    band_thresholds: Optional[dict] = None

    def to_json_dict(self, master_seed: int) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "network": self.network,
            "config": self.config,
            "provenance": {
                "tool_version": __version__,
                "master_seed": master_seed,
                "created_utc": datetime.now(timezone.utc).isoformat(),
            },
        }
        if self.graph_stats is not None:
            doc["graph_stats"] = self.graph_stats.to_json_dict()
        if self.stability:
            doc["stability"] = [rep.to_json_dict() for rep in self.stability]
        if self.clusterings:
            doc["stable_clusters"] = self.clusterings
        if self.rich_clubs:
            doc["rich_clubs"] = self.rich_clubs
        if self.band_thresholds:
            doc["band_thresholds"] = self.band_thresholds
        if self.verdicts:
            doc["template_verdicts"] = self.verdicts
        if self.validations:
            doc["validation"] = self.validations
        return doc

    def write_json(self, path: Path, master_seed: int) -> None:
        path.write_text(json.dumps(self.to_json_dict(master_seed), indent=2) + "\n",
                        encoding="utf-8")
