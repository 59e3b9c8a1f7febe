#!/usr/bin/env python3
"""Time the pipeline over growing synthetic relations and report whether the
wall clock grows linearly with the pair count."""

import argparse
import sys

from cocluster.bench import run_scaling_benchmark, write_benchmark_csv
from cocluster.pipeline import PipelineParams


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="10000,20000,40000,80000")
    ap.add_argument("--repeats", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--output", default=None, help="optional CSV path")
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",") if s]
    params = PipelineParams(4, 4, 1000, 3, 0.0, 1.0, args.seed)
    rows, diagnostics = run_scaling_benchmark(
        sizes, params, rng_seed=args.seed, repeats=args.repeats
    )
    print("pairs      seconds")
    for pairs, seconds in rows:
        print(f"{pairs:<10d} {seconds:.3f}")
    ratios = ", ".join(f"{x:.2f}" for x in diagnostics["ratios"])
    print(f"consecutive ratios: {ratios}")
    print(f"log-log slope:      {diagnostics['loglog_slope']:.3f}")
    if args.output:
        write_benchmark_csv(args.output, rows)
        print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
