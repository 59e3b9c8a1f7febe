"""Synthetic planted-block relations and the wall-clock scaling harness."""

from __future__ import annotations

import logging
import math
import random
import statistics
import time
from typing import Sequence

from .pipeline import PipelineParams, run_pipeline
from .relation import Relation

log = logging.getLogger(__name__)

# Block structure is fixed while the noise mass scales with the requested
# size, so seed discovery has comparable work to do at every scale and the
# average object degree stays constant.
BLOCK_COUNT = 8
BLOCK_OBJECTS = 30
BLOCK_FEATURES = 12
OBJECT_DEGREE = 8
FEATURE_LOAD = 16


def synthetic_relation(num_pairs: int, rng_seed: int) -> Relation:
    """Sparse relation with dense planted blocks plus uniform noise pairs."""
    block_pairs = BLOCK_COUNT * BLOCK_OBJECTS * BLOCK_FEATURES
    if num_pairs < 2 * block_pairs:
        raise ValueError(f"num_pairs must be >= {2 * block_pairs}")
    m = max(num_pairs // OBJECT_DEGREE, BLOCK_COUNT * BLOCK_OBJECTS + 1)
    n = max(num_pairs // FEATURE_LOAD, BLOCK_COUNT * BLOCK_FEATURES + 1)
    pairs: set[tuple[int, int]] = set()
    for b in range(BLOCK_COUNT):
        for o in range(b * BLOCK_OBJECTS, (b + 1) * BLOCK_OBJECTS):
            for f in range(b * BLOCK_FEATURES, (b + 1) * BLOCK_FEATURES):
                pairs.add((o, f))
    rng = random.Random(rng_seed)
    while len(pairs) < num_pairs:
        pairs.add((rng.randrange(m), rng.randrange(n)))
    return Relation(
        tuple(f"o{i}" for i in range(m)),
        tuple(f"f{j}" for j in range(n)),
        sorted(pairs),
    )


def run_scaling_benchmark(
    sizes: Sequence[int],
    params: PipelineParams,
    *,
    rng_seed: int = 0,
    threads: int = 1,
    repeats: int = 1,
    warmup: bool = True,
) -> tuple[list[tuple[int, float]], dict]:
    """Time full pipeline runs over synthetic relations of growing size.

    Returns (rows, diagnostics): rows are (pair count, median seconds) and
    diagnostics hold consecutive time ratios plus the least-squares slope of
    log(time) against log(pairs).
    """
    if not sizes:
        raise ValueError("no sizes to benchmark")
    if warmup:
        small = synthetic_relation(min(sizes), rng_seed)
        run_pipeline(small, params, threads=threads)
    rows: list[tuple[int, float]] = []
    for size in sizes:
        rel = synthetic_relation(size, rng_seed + size)
        times = []
        for _ in range(max(repeats, 1)):
            t0 = time.perf_counter()
            run_pipeline(rel, params, threads=threads)
            times.append(time.perf_counter() - t0)
        rows.append((rel.num_pairs, statistics.median(times)))
    diagnostics = {
        "ratios": [
            rows[i][1] / rows[i - 1][1] if rows[i - 1][1] > 0 else math.inf
            for i in range(1, len(rows))
        ],
        "loglog_slope": _loglog_slope(rows),
    }
    log.info("scaling diagnostics: %s", diagnostics)
    return rows, diagnostics


def _loglog_slope(rows: Sequence[tuple[int, float]]) -> float:
    points = [(math.log(p), math.log(t)) for p, t in rows if t > 0]
    if len(points) < 2:
        return 0.0
    mean_x = sum(x for x, _ in points) / len(points)
    mean_y = sum(y for _, y in points) / len(points)
    sxx = sum((x - mean_x) ** 2 for x, _ in points)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    return sxy / sxx if sxx else 0.0


def write_benchmark_csv(path, rows: Sequence[tuple[int, float]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("pairs,seconds\n")
        for pairs, seconds in rows:
            fh.write(f"{pairs},{seconds:.6f}\n")
