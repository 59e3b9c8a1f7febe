"""Command line interface.

Warnings and progress go to stderr (level set by the COCLUSTER_LOG
environment variable); results are written to files only.  Exit code is 0
iff the command completed without error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys

from . import bench as bench_mod
from . import io as io_mod
from .inclose import enumerate_concepts
from .metrics import report
from .pipeline import PipelineParams, run_pipeline
from .recommender import evaluate_accuracy, run_recommender

log = logging.getLogger(__name__)

# Published per-dataset parameter sets, shipped as presets.
PIPELINE_PRESETS: dict[str, PipelineParams] = {
    "zoo": PipelineParams(4, 6, 1000, 2, 0.0, 1.0),
    "soybean-small": PipelineParams(4, 8, 1000, 2, 0.1, 0.8),
    "soybean-large": PipelineParams(4, 10, 1000, 2, 0.0, 0.8),
    "house-votes": PipelineParams(10, 10, 1000, 3, 0.4, 0.8),
    "classic3": PipelineParams(50, 4, 2000, 3, 0.2, 0.5),
    "multi5": PipelineParams(5, 5, 1000, 3, 0.95, 0.5),
    "multi10": PipelineParams(5, 5, 2000, 3, 0.95, 0.5),
    "movielens": PipelineParams(2, 2, 5000, 4, 0.0, 0.8),
}


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=sorted(PIPELINE_PRESETS), default=None,
                   help="start from a shipped parameter set; explicit flags override")
    p.add_argument("--min-objects", type=int, default=None)
    p.add_argument("--min-features", type=int, default=None)
    p.add_argument("--num-hashes", type=int, default=None)
    p.add_argument("--num-keys", type=int, default=None)
    p.add_argument("--thr", type=float, default=None)
    p.add_argument("--spthr", type=float, default=None)
    p.add_argument("--seed", type=int, default=None,
                   help="RNG seed; the only source of randomness")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads for per-seed expansion")


def _resolve_params(args) -> PipelineParams:
    base = PIPELINE_PRESETS[args.preset] if args.preset else PipelineParams()
    overrides = {
        "min_objects": args.min_objects,
        "min_features": args.min_features,
        "num_hashes": args.num_hashes,
        "num_keys": args.num_keys,
        "thr": args.thr,
        "spthr": args.spthr,
        "rng_seed": args.seed,
    }
    return dataclasses.replace(
        base, **{k: v for k, v in overrides.items() if v is not None}
    )


def _write_metrics(path, rep) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(dataclasses.asdict(rep), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_run(args) -> None:
    params = _resolve_params(args)
    dataset = io_mod.load_dataset(args.input, args.labels)
    cs = run_pipeline(dataset.relation, params, threads=args.threads)
    io_mod.save_coclusters(args.output, cs, dataset.relation)
    rep = report(cs, dataset.relation, dataset.labels or None)
    _write_metrics(f"{args.output}.metrics.json", rep)
    log.info("wrote %d co-cluster(s) to %s", len(cs), args.output)


def _cmd_inclose(args) -> None:
    dataset = io_mod.load_dataset(args.input, args.labels)
    cs = enumerate_concepts(
        dataset.relation, args.min_objects or 1, args.min_features or 1
    )
    io_mod.save_coclusters(args.output, cs, dataset.relation)
    rep = report(cs, dataset.relation, dataset.labels or None)
    _write_metrics(f"{args.output}.metrics.json", rep)
    log.info("wrote %d concept(s) to %s", len(cs), args.output)


def _cmd_metrics(args) -> None:
    dataset = io_mod.load_dataset(args.input, args.labels)
    cs = io_mod.load_coclusters(args.coclusters, dataset.relation)
    rep = report(cs, dataset.relation, dataset.labels or None)
    _write_metrics(args.output, rep)


def _cmd_recommend(args) -> None:
    params = _resolve_params(args)
    train = io_mod.load_ratings(args.train)
    test = io_mod.load_ratings(args.test)
    attributes = io_mod.load_attributes(args.attributes) if args.attributes else None
    predictions, _ = run_recommender(
        train, test, params, attributes, threads=args.threads
    )
    accuracy, covered = evaluate_accuracy(test, predictions)
    payload = {
        "accuracy": accuracy,
        "covered": covered,
        "total": len(test),
        "predictions": [
            {"user": t.user, "item": t.item, "prediction": p.value}
            for t, p in zip(test, predictions)
        ],
    }
    with open(args.output, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    log.info("accuracy %.4f over %d covered of %d", accuracy, covered, len(test))


def _cmd_bench(args) -> None:
    params = _resolve_params(args)
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows, diagnostics = bench_mod.run_scaling_benchmark(
        sizes,
        params,
        rng_seed=params.rng_seed,
        threads=args.threads,
        repeats=args.repeats,
    )
    bench_mod.write_benchmark_csv(args.output, rows)
    with open(f"{args.output}.diag.json", "w", encoding="utf-8") as fh:
        json.dump(diagnostics, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_convert_uci(args) -> None:
    if args.schema_preset:
        schema = io_mod.UCI_SCHEMAS[args.schema_preset]
    else:
        if not args.columns:
            raise ValueError("either --preset or --columns is required")
        schema = io_mod.UciSchema(
            columns=tuple(args.columns.split(",")),
            name_column=args.name_column,
            class_column=args.class_column,
            nonzero_binary=frozenset(
                c for c in (args.nonzero_binary or "").split(",") if c
            ),
        )
    tuples, labels = io_mod.convert_uci(args.input, schema)
    io_mod.write_tuples(args.output, tuples)
    if args.labels_output:
        io_mod.write_tuples(args.labels_output, labels)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cocluster",
        description="Hash-seeded co-clustering of sparse categorical data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="full pipeline plus metrics")
    p.add_argument("--input", required=True, help="object<TAB>feature tuple file")
    p.add_argument("--labels", default=None, help="object<TAB>label file")
    p.add_argument("--output", required=True, help="co-cluster JSONL path")
    _add_param_flags(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("inclose", help="exact dense-block enumeration")
    p.add_argument("--input", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--output", required=True)
    p.add_argument("--min-objects", type=int, default=1)
    p.add_argument("--min-features", type=int, default=1)
    p.set_defaults(func=_cmd_inclose)

    p = sub.add_parser("metrics", help="score an existing result file")
    p.add_argument("--input", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--coclusters", required=True, help="JSONL result to score")
    p.add_argument("--output", required=True, help="metrics JSON path")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("recommend", help="like/dislike profile demo")
    p.add_argument("--train", required=True, help="user<TAB>item<TAB>rating file")
    p.add_argument("--test", required=True)
    p.add_argument("--attributes", default=None, help="item<TAB>attribute file")
    p.add_argument("--output", required=True)
    _add_param_flags(p)
    p.set_defaults(func=_cmd_recommend)

    p = sub.add_parser("bench", help="linear-scaling benchmark")
    p.add_argument("--sizes", default="10000,20000,40000,80000",
                   help="comma-separated pair counts")
    p.add_argument("--output", required=True, help="CSV path (pairs,seconds)")
    p.add_argument("--repeats", type=int, default=1)
    _add_param_flags(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("convert-uci", help="turn a raw categorical file into tuples")
    p.add_argument("--input", required=True)
    p.add_argument("--preset", dest="schema_preset",
                   choices=sorted(io_mod.UCI_SCHEMAS), default=None)
    p.add_argument("--columns", default=None, help="comma-separated column names")
    p.add_argument("--name-column", default=None)
    p.add_argument("--class-column", default=None)
    p.add_argument("--nonzero-binary", default=None,
                   help="columns treated as presence-when-nonzero")
    p.add_argument("--output", required=True)
    p.add_argument("--labels-output", default=None)
    p.set_defaults(func=_cmd_convert_uci)

    return parser


def main(argv=None) -> int:
    level = os.environ.get("COCLUSTER_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except Exception as exc:  # surfaced as exit code, not a traceback
        log.error("%s", exc)
        return 1
    return 0


def entrypoint() -> None:
    sys.exit(main())
