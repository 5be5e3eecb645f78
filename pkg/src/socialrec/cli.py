"""Command-line interface: ingest, split, recommend, evaluate, analyze, sweep, synth.

Every command writes its artifacts plus ``manifest.json`` into ``--out``.
Exit status is 0 on success, 1 on a domain error (JSON on stderr) and 2
on a usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .binning import DEFAULT_BIN_SCALE, LOG10_BIN_SCALE
from .dataio import (dataset_edge_labels, degree_histogram, file_sha256, load_dataset,
                     parse_edge_file, write_csv, write_edge_file)
from .evaluation import SplitPair, cumulative_rs_curve, evaluate, split, sweep
from .influence import InfluenceDiagnostics, influence_curve
from .recommenders import ALGORITHMS, get_scorer, recommend_top
from .similarity import degree_correlation, similarity_correlation_sample
from .synth import SynthConfig, synth_generate

PARAM_NAMES = {"lambda": "lam", "beta": "beta"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(json.dumps({"error": "usage", "message": message}) + "\n")
        raise SystemExit(2)


def _add_dataset(p):
    p.add_argument("--objects", required=True, help="user<TAB>object edge file")
    p.add_argument("--groups", required=True, help="user<TAB>group edge file")
    p.add_argument("--delimiter", default="\t")


def _add_algo(p, choices=ALGORITHMS):
    p.add_argument("--algo", required=True, choices=choices)
    p.add_argument("--lambda", dest="lam", type=float, default=0.5, help="HDH lambda (also used inside blend)")
    p.add_argument("--beta", type=float, default=0.0, help="blend exponent")
    p.add_argument("--raw-blend", action="store_true", help="combine unnormalized HDH and SD scores")


def _algo_params(args) -> dict:
    if args.algo == "hdh":
        return {"lam": args.lam}
    if args.algo == "blend":
        return {"beta": args.beta, "lam": args.lam, "normalize": not args.raw_blend}
    if args.algo == "random":
        return {"seed": args.seed}
    return {}


def _load(args):
    ds, report = load_dataset(args.objects, args.groups, args.delimiter)
    inputs = {"objects": file_sha256(args.objects), "groups": file_sha256(args.groups)}
    return ds, report, inputs


def _manifest(out: Path, command: str, **fields) -> None:
    doc = {"command": command, "version": __version__, **fields}
    with open(out / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _stats_row(ds):
    s = ds.stats()
    return [s["users"], s["objects"], s["groups"], s["user_object_pairs"], s["user_group_pairs"]]


STATS_HEADER = ["users", "objects", "groups", "user_object_pairs", "user_group_pairs"]


def cmd_ingest(args, out: Path):
    ds, report, inputs = _load(args)
    write_csv(out / "stats.csv", STATS_HEADER, [_stats_row(ds)])
    write_csv(out / "degree_histogram.csv", ["kind", "degree", "count"], degree_histogram(ds))
    _manifest(out, "ingest", inputs=inputs, filter_counts=report.as_dict())
    print(",".join(STATS_HEADER))
    print(",".join(map(str, _stats_row(ds))))


def cmd_split(args, out: Path):
    ds, report, inputs = _load(args)
    sp_ = split(ds, args.fraction, args.seed)
    ul, ol = ds.user_labels, ds.object_labels
    train_uo, ug = dataset_edge_labels(sp_.train)
    write_edge_file(out / "train_objects.tsv", train_uo)
    write_edge_file(out / "probe.tsv", [(ul[u], ol[o]) for u, o in sp_.probe.tolist()])
    write_edge_file(out / "groups.tsv", ug)
    _manifest(out, "split", inputs=inputs, seeds={"split": args.seed}, fraction=args.fraction,
              filter_counts={**report.as_dict(), "unscorable_probe_links": sp_.n_unscorable,
                             "train_links": sp_.train.user_object.n_edges,
                             "probe_links": int(len(sp_.probe))})


def cmd_recommend(args, out: Path):
    ds, report, inputs = _load(args)
    params = _algo_params(args)
    scorer = get_scorer(args.algo, **params)
    index = {lab: i for i, lab in enumerate(ds.user_labels)}
    rows = []
    for label in args.user:
        if label not in index:
            raise KeyError(f"unknown user {label!r}")
        sv = scorer(ds, index[label])
        for rank, (o, score) in enumerate(recommend_top(sv, args.top), 1):
            rows.append((label, rank, ds.object_labels[o], score))
    write_csv(out / "recommendations.csv", ["user", "rank", "object", "score"], rows)
    _manifest(out, "recommend", inputs=inputs, algorithm=args.algo, parameters=params,
              seeds={"random": args.seed}, filter_counts=report.as_dict(), top=args.top,
              normalization=_norm_mode(args))
    for row in rows:
        print("\t".join(map(str, row)))


def _norm_mode(args) -> str:
    if args.algo != "blend":
        return "n/a"
    return "raw" if args.raw_blend else "unit-sum"


def _probe_split(ds, path, delimiter) -> tuple[SplitPair, int]:
    """Wrap an already-split training dataset and a probe file as a SplitPair."""
    users = {lab: i for i, lab in enumerate(ds.user_labels)}
    objects = {lab: i for i, lab in enumerate(ds.object_labels)}
    links, unknown = [], 0
    for u, o in parse_edge_file(path, delimiter):
        if u in users and o in objects:
            links.append((users[u], objects[o]))
        else:
            unknown += 1
    probe = np.asarray(sorted(set(links)), dtype=np.int64).reshape(-1, 2)
    unscorable = ds.user_object.right_degrees[probe[:, 1]] == 0
    return SplitPair(ds, probe, math.nan, -1, unscorable), unknown


def cmd_evaluate(args, out: Path):
    ds, report, inputs = _load(args)
    params = _algo_params(args)
    extra = {}
    if args.probe:
        sp_, unknown = _probe_split(ds, args.probe, args.delimiter)
        inputs["probe"] = file_sha256(args.probe)
        extra["unknown_probe_links"] = unknown
    else:
        sp_ = split(ds, args.fraction, args.seed)
    res = evaluate(args.algo, sp_, params)
    ul, ol = ds.user_labels, ds.object_labels
    write_csv(out / "rs_links.csv", ["user", "object", "ranking_score"],
              ((ul[u], ol[o], v) for u, o, v in zip(res.users.tolist(), res.objects.tolist(),
                                                     res.values.tolist())))
    curve = cumulative_rs_curve(res, sp_.train, args.weighting) if len(res) else []
    write_csv(out / "rs_curve.csv", ["degree", "cumulative_rs", "n"],
              ((p.degree, p.mean_rs, p.n) for p in curve))
    mean = res.mean(args.weighting)
    _manifest(out, "evaluate", inputs=inputs, algorithm=args.algo, parameters=params,
              seeds={"split": args.seed}, fraction=args.fraction, weighting=args.weighting,
              normalization=_norm_mode(args), mean_rs=mean,
              filter_counts={**report.as_dict(), "unscorable_probe_links": res.n_unscorable,
                             "scored_probe_links": len(res), **extra})
    print(f"mean_rs\t{mean!r}")


def _bin_scale(text: str) -> float:
    if text == "ln":
        return DEFAULT_BIN_SCALE
    if text == "log10":
        return LOG10_BIN_SCALE
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bin scale must be 'ln', 'log10' or a number, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("bin scale must be positive")
    return value


def cmd_analyze(args, out: Path):
    ds, report, inputs = _load(args)
    diag = InfluenceDiagnostics()
    curve = influence_curve(ds, args.bin_scale, diag)
    write_csv(out / "influence_curve.csv",
              ["bin_index", "x_low", "x_high", "mean_influence", "user_count"],
              ((p.bin_index, p.x_low, p.x_high, p.mean, p.count) for p in curve))
    sample_size = min(args.sample_size, ds.n_users)
    pairs = similarity_correlation_sample(ds, sample_size, args.seed)
    ul = ds.user_labels
    write_csv(out / "similarity_pairs.csv", ["user_i", "user_j", "s_object", "s_group"],
              ((ul[p.user_i], ul[p.user_j], p.s_object, p.s_group) for p in pairs))
    write_csv(out / "degree_histogram.csv", ["kind", "degree", "count"], degree_histogram(ds))
    corr = degree_correlation(ds, args.correlation_binning)
    write_csv(out / "degree_correlation.csv",
              ["bin_index", "x_low", "x_high", "mean_group_degree", "user_count"],
              ((p.bin_index, p.x_low, p.x_high, p.mean, p.count) for p in corr))
    _manifest(out, "analyze", inputs=inputs, seeds={"similarity_sample": args.seed},
              parameters={"bin_scale": args.bin_scale, "sample_size": sample_size,
                          "correlation_binning": args.correlation_binning},
              filter_counts={**report.as_dict(), "influence_excluded_users": diag.excluded_users,
                             "empty_group_memberships": diag.empty_group_memberships})


def cmd_sweep(args, out: Path):
    ds, report, inputs = _load(args)
    try:
        grid = [float(v) for v in args.grid.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"grid must be comma-separated numbers, got {args.grid!r}")
    param = PARAM_NAMES[args.param]
    fixed = _algo_params(args)
    fixed.pop(param, None)
    res = sweep(args.algo, ds, param, grid, args.splits, args.seed, args.fraction, fixed, args.weighting)
    write_csv(out / "sweep.csv", ["parameter", "mean_rs", "stddev", "n_splits"],
              ((r.parameter, r.mean_rs, r.stddev_rs, r.n_splits) for r in res.rows))
    _manifest(out, "sweep", inputs=inputs, algorithm=args.algo, parameter=args.param, grid=grid,
              fixed_parameters=fixed, seeds={"splits": res.seeds}, fraction=args.fraction,
              weighting=args.weighting, normalization=_norm_mode(args), argmin=res.argmin,
              filter_counts={**report.as_dict(), "unscorable_probe_links": res.n_unscorable})
    print(f"argmin\t{res.argmin!r}")


def cmd_synth(args, out: Path):
    cfg = SynthConfig(
        n_users=args.users, n_objects=args.n_objects, n_groups=args.n_groups,
        object_degree_exponent=args.object_exponent, group_degree_exponent=args.group_exponent,
        n_taste_clusters=args.clusters, group_taste_alignment=args.alignment, seed=args.seed,
        object_taste_strength=args.taste_strength,
    )
    ds = synth_generate(cfg)
    uo, ug = dataset_edge_labels(ds)
    write_edge_file(out / "objects.tsv", uo)
    write_edge_file(out / "groups.tsv", ug)
    write_csv(out / "stats.csv", STATS_HEADER, [_stats_row(ds)])
    _manifest(out, "synth", config=cfg.__dict__, seeds={"synth": args.seed})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="socialrec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help, dataset=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=42)
        if dataset:
            _add_dataset(p)
        p.set_defaults(func=func)
        return p

    command("ingest", cmd_ingest, "parse, filter and summarize a coupled dataset")

    p = command("split", cmd_split, "write a random train/probe split")
    p.add_argument("--fraction", type=float, default=0.8)

    p = command("recommend", cmd_recommend, "top-L lists for chosen users")
    _add_algo(p)
    p.add_argument("--user", action="append", required=True)
    p.add_argument("--top", type=int, default=10)

    p = command("evaluate", cmd_evaluate, "ranking scores on a train/probe split")
    _add_algo(p)
    p.add_argument("--fraction", type=float, default=0.8)
    p.add_argument("--probe", help="probe file; --objects is then taken as the training set")
    p.add_argument("--weighting", choices=("link", "user"), default="link")

    p = command("analyze", cmd_analyze, "influence curve, similarity sample, degree dumps")
    p.add_argument("--sample-size", type=int, default=50)
    p.add_argument("--bin-scale", type=_bin_scale, default=DEFAULT_BIN_SCALE,
                   help="'ln' (default), 'log10' or a positive number")
    p.add_argument("--correlation-binning", choices=("integer", "sqrt-log"), default="integer")

    p = command("sweep", cmd_sweep, "parameter sweep over repeated splits")
    _add_algo(p, ("hdh", "blend"))
    p.add_argument("--param", choices=tuple(PARAM_NAMES), required=True)
    p.add_argument("--grid", required=True, help="comma-separated values")
    p.add_argument("--splits", type=int, default=5)
    p.add_argument("--fraction", type=float, default=0.8)
    p.add_argument("--weighting", choices=("link", "user"), default="link")

    p = command("synth", cmd_synth, "generate a synthetic coupled dataset", dataset=False)
    p.add_argument("--users", type=int, default=2000)
    p.add_argument("--n-objects", type=int, default=1000)
    p.add_argument("--n-groups", type=int, default=100)
    p.add_argument("--clusters", type=int, default=10)
    p.add_argument("--alignment", type=float, default=0.8)
    p.add_argument("--taste-strength", type=float, default=0.8)
    p.add_argument("--object-exponent", type=float, default=2.5)
    p.add_argument("--group-exponent", type=float, default=2.5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(json.dumps({"error": "usage", "message": str(exc)}) + "\n")
        return 2
    except (ValueError, KeyError, IndexError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
