"""Command-line front end: stats, stability, predict, validate, decompose.

Configuration is a flat key-value JSON file; every key can be overridden by
the CLI flag of the same name. Outputs are one JSON report per network plus
flat plot-ready CSVs. Exit codes: 0 success, 1 runtime or data error,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from rankstab import bounds as bounds_mod
from rankstab import perturb as perturb_mod
from rankstab import reporting
from rankstab.centrality import Metric, centrality, rank
from rankstab.graph import Graph, GraphError, graph_stats, largest_component, load_edge_list
from rankstab.perturb import NoiseSpec, perturb
from rankstab.stability import StabilityReport, topk_stability
from rankstab.structure import rich_club_stats, stable_clusters
from rankstab.template import TemplateParams, TemplateVerdict, evaluate_template, validate_prediction

DEFAULT_EPSILONS = [0.5, 1.0, 1.5, 2.0, 2.5]
DEFAULT_KS = [2, 4, 6, 8, 10]
DEFAULT_TRIALS = 10
DEFAULT_POOLS = [100, 50, 25, 10]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """Flat experiment configuration; defaults follow the standard grid."""

    input: Optional[str] = None
    name: Optional[str] = None
    metrics: list[str] = field(default_factory=lambda: ["degree", "closeness", "betweenness"])
    epsilons: list[float] = field(default_factory=lambda: list(DEFAULT_EPSILONS))
    ks: list[int] = field(default_factory=lambda: list(DEFAULT_KS))
    trials: int = DEFAULT_TRIALS
    master_seed: int = 12345
    theta: float = 0.1
    pools: list[int] = field(default_factory=lambda: list(DEFAULT_POOLS))
    density_min: float = 0.6
    band_high: float = 0.5
    band_low: float = 0.2
    outdir: str = "out"
    lcc: bool = False
    dump_trials: bool = False
    pair_cap: int = 2000

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def validate(self) -> None:
        if not self.metrics:
            raise UsageError("metrics list must not be empty")
        for m in self.metrics:
            Metric.parse(m)
        if not self.epsilons:
            raise UsageError("epsilons list must not be empty")
        if not self.ks:
            raise UsageError("ks list must not be empty")
        if self.trials < 1:
            raise UsageError("trials must be >= 1")


def _load_graph(cfg: RunConfig) -> tuple[Graph, str]:
    if not cfg.input:
        raise UsageError("an input edge list is required")
    g = load_edge_list(cfg.input)
    if cfg.lcc:
        g = largest_component(g)
    name = cfg.name or Path(cfg.input).stem
    return g, name


def _metric_list(cfg: RunConfig) -> list[Metric]:
    return [Metric.parse(m) for m in cfg.metrics]


def _outdir(cfg: RunConfig) -> Path:
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def run_stats(cfg: RunConfig) -> dict:
    g, name = _load_graph(cfg)
    stats = graph_stats(g)
    out = _outdir(cfg)
    doc = {"network": name, **stats.to_json_dict()}
    (out / f"{name}_stats.json").write_text(json.dumps(doc, indent=2) + "\n",
                                            encoding="utf-8")
    return doc


def run_stability(cfg: RunConfig, g: Optional[Graph] = None,
                  name: Optional[str] = None) -> tuple[list[StabilityReport], str]:
    if g is None:
        g, name = _load_graph(cfg)
    out = _outdir(cfg)
    spec = NoiseSpec(epsilon=0.0, trials=cfg.trials, master_seed=cfg.master_seed)
    reports = []
    for metric in _metric_list(cfg):
        reports.append(topk_stability(g, metric, spec, cfg.epsilons, cfg.ks))
    reporting.write_trials_csv(out / f"{name}_trials.csv", name, reports)
    reporting.write_dominant_csv(out / f"{name}_fig1_dominant.csv", name, reports)
    reporting.write_ji_vs_k_csv(out / f"{name}_fig2_ji_vs_k.csv", name, reports)
    if cfg.dump_trials:
        _dump_added_edges(cfg, g, name, out)
    return reports, name


def _dump_added_edges(cfg: RunConfig, g: Graph, name: str, out: Path) -> None:
    for eps in cfg.epsilons:
        spec = NoiseSpec(epsilon=eps, trials=cfg.trials, master_seed=cfg.master_seed)
        for t in range(cfg.trials):
            trial = perturb(g, spec, t)
            path = out / f"{name}_eps{eps:g}_t{t}.added"
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                for u, v in trial.added_edges:
                    fh.write(f"{g.label_of(u)} {g.label_of(v)}\n")


def run_predict(cfg: RunConfig, g: Optional[Graph] = None,
                name: Optional[str] = None) -> tuple[list[TemplateVerdict], reporting.RunReport, str]:
    if g is None:
        g, name = _load_graph(cfg)
    out = _outdir(cfg)
    trials_before = perturb_mod.TRIALS_GENERATED
    params = TemplateParams(theta=cfg.theta, pools=cfg.pools,
                            density_min=cfg.density_min,
                            band_high_min=cfg.band_high, band_low_max=cfg.band_low)
    report = reporting.RunReport(network=name, config=cfg.to_dict(),
                                 graph_stats=graph_stats(g))
    report.band_thresholds = {"density_min": cfg.density_min,
                              "band_high_min": cfg.band_high,
                              "band_low_max": cfg.band_low}

    cluster_rows = []
    verdicts: list[TemplateVerdict] = []
    club_stats = []
    max_k = max(cfg.ks)
    for metric in _metric_list(cfg):
        cv = centrality(g, metric)
        ranking = rank(cv)
        m = min(g.n, max(2 * max_k, 10))
        sc = stable_clusters(cv, m, cfg.theta)
        cluster_rows.append((metric, sc, ranking.order, cv.scores))
        report.clusterings.append(reporting.clustering_json(sc))
        dist_matrix = None
        if metric is not Metric.DEGREE and any(eps > 0 for eps in cfg.epsilons):
            dist_matrix = bounds_mod.all_pairs_dists(g)
        for k in cfg.ks:
            if k < 2 or k > g.n:
                continue
            club = rich_club_stats(g, ranking, metric, k, cfg.pools,
                                   cfg.band_high, cfg.band_low)
            club_stats.append(club)
            report.rich_clubs.append(reporting.rich_club_json(club))
            for eps in cfg.epsilons:
                verdict = _verdict_for(g, metric, cv, ranking, sc, club, k, eps,
                                       params, dist_matrix)
                verdicts.append(verdict)
                report.verdicts.append(reporting.verdict_json(verdict))

    reporting.write_clusters_csv(out / f"{name}_fig3_clusters.csv", name, cluster_rows)
    reporting.write_neighbor_curve_csv(out / f"{name}_fig4_neighbors.csv", name, club_stats)
    if perturb_mod.TRIALS_GENERATED != trials_before:
        raise RuntimeError("prediction consumed perturbation trials; this is a bug")
    return verdicts, report, name


def _verdict_for(g, metric, cv, ranking, sc, club, k, eps, params, dist_matrix):
    """Assemble one verdict reusing the per-metric artifacts computed once."""
    from rankstab.structure import cluster_boundary_ks
    from rankstab.template import _boundary_pairs, _prediction

    cond2 = k in cluster_boundary_ks(sc)
    certs = []
    cond1 = True
    if k < g.n and k < sc.m:
        for v1, v2 in _boundary_pairs(sc, ranking.order, k):
            cert = bounds_mod.expectation_certificate(g, cv, v1, v2, eps, dist_matrix)
            certs.append(cert)
            cond1 = cond1 and cert.safe
    cond3 = club.density >= params.density_min and club.band == "High"
    return TemplateVerdict(metric=metric, k=k, epsilon=eps,
                           cond1_gap=cond1, cond2_cluster=cond2, cond3_structure=cond3,
                           prediction=_prediction(cond1, cond2, cond3),
                           certificates=certs, clustering=sc, rich_club=club)


def run_validate(cfg: RunConfig, g: Optional[Graph] = None,
                 name: Optional[str] = None) -> reporting.RunReport:
    if g is None:
        g, name = _load_graph(cfg)
    out = _outdir(cfg)
    verdicts, report, _ = run_predict(cfg, g, name)
    stability_reports, _ = run_stability(cfg, g, name)
    by_metric = {rep.metric: rep for rep in stability_reports}
    report.stability = stability_reports

    records = []
    for verdict in verdicts:
        rep = by_metric[verdict.metric]
        records.append(validate_prediction(verdict, rep))
    report.validations = [reporting.validation_json(r) for r in records]
    reporting.write_confusion_csv(out / f"{name}_confusion.csv", name, records)

    summary_rows = []
    club_by = {(rc["metric"], rc["k"]): rc for rc in report.rich_clubs}
    for rep in stability_reports:
        for k in rep.ks:
            rc = club_by.get((rep.metric.value, k))
            if rc is None:
                continue
            summary_rows.append((rep.metric, k, rep.mean_across_eps(k),
                                 rep.summary_class(k).value, rc["density"], rc["band"]))
    reporting.write_summary_csv(out / f"{name}_table2_summary.csv", name, summary_rows)
    report.write_json(out / f"{name}_report.json", cfg.master_seed)
    return report


def run_decompose(cfg: RunConfig, epsilon: float, trial_index: int,
                  vertices: Sequence[int]) -> dict:
    g, name = _load_graph(cfg)
    out = _outdir(cfg)
    spec = NoiseSpec(epsilon=epsilon, trials=max(cfg.trials, trial_index + 1),
                     master_seed=cfg.master_seed)
    trial = perturb(g, spec, trial_index)
    doc = {"network": name, "epsilon": epsilon, "trial": trial_index,
           "added_edges": len(trial.added_edges), "decompositions": [],
           "certificates": []}
    for v in vertices:
        dec = bounds_mod.bc_decompose(g, trial, int(v), cap=cfg.pair_cap)
        doc["decompositions"].append({
            "v": dec.v, "loss_P": dec.loss_P, "loss_Q": dec.loss_Q,
            "gain_R": dec.gain_R, "residual": dec.residual,
            "total_change": dec.total_change,
            "pairs": {"P": dec.n_P, "Q": dec.n_Q, "R": dec.n_R,
                      "residual": dec.n_residual},
        })
    for metric in _metric_list(cfg):
        cv = centrality(g, metric)
        ranking = rank(cv)
        for k in cfg.ks:
            if k >= g.n:
                continue
            v1, v2 = int(ranking.order[k - 1]), int(ranking.order[k])
            if metric is Metric.DEGREE:
                gap = float(cv.scores[v1] - cv.scores[v2])
                added = trial.additions_to(v2)
                cert = bounds_mod.GapCertificate(metric=metric, v1=v1, v2=v2,
                                                 gap=gap, bound=float(added),
                                                 safe=gap > added, mode="per-trial")
            elif metric is Metric.CLOSENESS:
                cert = bounds_mod.closeness_gap_certificate(
                    g, trial, cv.inv_closeness_sum, v1, v2)
            else:
                try:
                    cert = bounds_mod.betweenness_gap_bound(g, trial, v1, v2,
                                                            cap=cfg.pair_cap)
                except bounds_mod.PairCapExceeded:
                    continue
            doc["certificates"].append({"k": k, **reporting.certificate_json(cert)})
    (out / f"{name}_decompose.json").write_text(json.dumps(doc, indent=2) + "\n",
                                                encoding="utf-8")
    return doc


def read_manifest(path: Path) -> list[tuple[str, Path, int, int]]:
    """Lines of: name path expected_n expected_m ('#' starts a comment)."""
    entries = []
    base = path.parent
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise UsageError(f"{path}:{lineno}: expected 'name path n m'")
        name, rel, n_s, m_s = parts
        entries.append((name, (base / rel).resolve(), int(n_s), int(m_s)))
    return entries


def _check_expected_counts(g: Graph, name: str, exp_n: int, exp_m: int) -> None:
    if g.n != exp_n or g.m != exp_m:
        print(f"warning: {name}: loaded n={g.n}, m={g.m} but manifest expects "
              f"n={exp_n}, m={exp_m}; results may not match published values",
              file=sys.stderr)


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="edge list file")
    p.add_argument("--name", help="network name (default: input file stem)")
    p.add_argument("--config", help="flat JSON config file")
    p.add_argument("--outdir", help="output directory (default: out)")
    p.add_argument("--metrics", help="comma list: degree,closeness,betweenness")
    p.add_argument("--epsilons", help="comma list of noise levels")
    p.add_argument("--ks", help="comma list of top-k sizes")
    p.add_argument("--trials", type=int, help="trials per noise level")
    p.add_argument("--master-seed", dest="master_seed", type=int, help="RNG master seed")
    p.add_argument("--theta", type=float, help="stable-cluster relative gap threshold")
    p.add_argument("--pools", help="comma list of neighbor pool sizes")
    p.add_argument("--density-min", dest="density_min", type=float,
                   help="dense-subgraph threshold")
    p.add_argument("--band-high", dest="band_high", type=float,
                   help="neighbor-band High cutoff at N=10")
    p.add_argument("--band-low", dest="band_low", type=float,
                   help="neighbor-band Medium/Low cutoff at N=10")
    p.add_argument("--lcc", action="store_true", default=None,
                   help="restrict to the largest connected component")
    p.add_argument("--dump-trials", dest="dump_trials", action="store_true", default=None,
                   help="write one .added edge list per trial")
    p.add_argument("--pair-cap", dest="pair_cap", type=int,
                   help="vertex cap for all-pairs decomposition")


def _parse_list(text: str, conv) -> list:
    return [conv(tok) for tok in text.split(",") if tok.strip()]


def build_config(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if getattr(args, "config", None):
        try:
            data.update(json.loads(Path(args.config).read_text(encoding="utf-8")))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}") from exc
    overrides = {
        "input": args.input,
        "name": args.name,
        "outdir": args.outdir,
        "metrics": _parse_list(args.metrics, str) if args.metrics else None,
        "epsilons": _parse_list(args.epsilons, float) if args.epsilons else None,
        "ks": _parse_list(args.ks, int) if args.ks else None,
        "trials": args.trials,
        "master_seed": args.master_seed,
        "theta": args.theta,
        "pools": _parse_list(args.pools, int) if args.pools else None,
        "density_min": args.density_min,
        "band_high": args.band_high,
        "band_low": args.band_low,
        "lcc": args.lcc,
        "dump_trials": args.dump_trials,
        "pair_cap": args.pair_cap,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    cfg = RunConfig.from_dict(data)
    cfg.validate()
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankstab",
        description="Stability of top-k centrality rankings under edge-addition noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="global graph statistics")
    _add_common_flags(p)

    p = sub.add_parser("stability", help="simulate noise and measure top-k overlap")
    _add_common_flags(p)

    p = sub.add_parser("predict", help="structure-only stability prediction (no trials)")
    _add_common_flags(p)

    p = sub.add_parser("validate", help="predict, simulate, and cross-check")
    _add_common_flags(p)
    p.add_argument("--manifest", help="corpus manifest: name path expected_n expected_m")

    p = sub.add_parser("decompose", help="per-trial betweenness change decomposition")
    _add_common_flags(p)
    p.add_argument("--epsilon", type=float, default=1.0, help="noise level for the trial")
    p.add_argument("--trial", type=int, default=0, help="trial index")
    p.add_argument("--vertex", type=int, action="append", default=[],
                   help="vertex id to decompose (repeatable)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if args.command == "stats":
            doc = run_stats(cfg)
            print(json.dumps(doc, indent=2))
        elif args.command == "stability":
            reports, name = run_stability(cfg)
            report = reporting.RunReport(network=name, config=cfg.to_dict(),
                                         stability=reports)
            report.write_json(_outdir(cfg) / f"{name}_report.json", cfg.master_seed)
            print(f"wrote stability results for {name} to {cfg.outdir}")
        elif args.command == "predict":
            _, report, name = run_predict(cfg)
            report.write_json(_outdir(cfg) / f"{name}_report.json", cfg.master_seed)
            print(f"wrote prediction for {name} to {cfg.outdir} (no trials drawn)")
        elif args.command == "validate":
            if getattr(args, "manifest", None):
                for name, path, exp_n, exp_m in read_manifest(Path(args.manifest)):
                    g = load_edge_list(path)
                    _check_expected_counts(g, name, exp_n, exp_m)
                    if cfg.lcc:
                        g = largest_component(g)
                    run_validate(cfg, g, name)
                    print(f"validated {name}")
            else:
                report = run_validate(cfg)
                hits = [r for r in report.validations if r["hit"] is not None]
                good = sum(1 for r in hits if r["hit"])
                print(f"validated {report.network}: {good}/{len(hits)} "
                      f"non-abstaining predictions correct")
        elif args.command == "decompose":
            doc = run_decompose(cfg, args.epsilon, args.trial, args.vertex)
            print(json.dumps({k: doc[k] for k in ("network", "epsilon", "trial",
                                                  "added_edges")}, indent=2))
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, OSError, ValueError, bounds_mod.PairCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
