"""Six-stage co-clustering pipeline: filter, hash-seed, enumerate, grow, merge.

The same five stages run over the relation and its transpose; the transposed
results are flipped back and the concatenation is merged by feature set once
at the end.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .hashing import SeedCluster, lsh_buckets, make_hash_family, minhash_signatures
from .inclose import _scan_concepts, feature_masks, object_masks
from .relation import CoCluster, Relation, block_fill, transpose

log = logging.getLogger(__name__)

# The enumeration step is exponential in the worst case; seeds inducing a
# sub-relation beyond these bounds are skipped with a warning.
DEFAULT_MAX_SEED_OBJECTS = 20_000
DEFAULT_MAX_SEED_FEATURES = 5_000


@dataclass(frozen=True)
class PipelineParams:
    """Knobs for one pipeline run.

    ``thr`` removes features whose document frequency reaches it (0 disables);
    ``spthr`` is the minimum block density admitted during growth and kept in
    the final result.  All randomness flows from ``rng_seed``.
    """

    min_objects: int = 1
    min_features: int = 1
    num_hashes: int = 1000
    num_keys: int = 2
    thr: float = 0.0
    spthr: float = 1.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.min_objects < 1 or self.min_features < 1:
            raise ValueError("size minima must be >= 1")
        if self.num_hashes < 1 or self.num_keys < 1:
            raise ValueError("hash counts must be >= 1")
        if self.num_keys > self.num_hashes:
            raise ValueError("num_keys must not exceed num_hashes")
        if not 0.0 <= self.thr <= 1.0:
            raise ValueError("thr must lie in [0, 1]")
        if not 0.0 <= self.spthr <= 1.0:
            raise ValueError("spthr must lie in [0, 1]")


def _mask_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def filter_frequent_features(r: Relation, thr: float) -> Relation:
    """Drop features whose document frequency reaches ``thr``.

    thr == 0 is the disabled sentinel (identity).  Objects left without
    features stay in the relation but will not hash.
    """
    if not 0.0 <= thr <= 1.0:
        raise ValueError("thr must lie in [0, 1]")
    if thr == 0.0 or r.num_objects == 0:
        return r
    m = r.num_objects
    kept = [f for f in range(r.num_features) if len(r.feat_adj[f]) / m < thr]
    if len(kept) == r.num_features:
        return r
    pos = {f: i for i, f in enumerate(kept)}
    pairs = [
        (o, pos[f])
        for o in range(m)
        for f in r.obj_adj[o]
        if f in pos
    ]
    return Relation(r.object_names, tuple(r.feature_names[f] for f in kept), pairs)


def generate_seeds(r: Relation, params: PipelineParams) -> list[SeedCluster]:
    """Hash the relation and bucket signature bands into seed clusters.

    Seeds sharing both the key feature set and the bucket (across bands) are
    reported once.  Fully deterministic in (relation, params).
    """
    fam = make_hash_family(params.num_hashes, r.num_features, params.rng_seed)
    sig = minhash_signatures(r, fam)
    unique: list[SeedCluster] = []
    seen: set[tuple[frozenset[int], frozenset[int]]] = set()
    for seed in lsh_buckets(sig, params.num_keys):
        ident = (frozenset(seed.key), seed.bucket)
        if ident in seen:
            continue
        seen.add(ident)
        unique.append(seed)
    return unique


def grow_cocluster(r: Relation, c: CoCluster, spthr: float) -> CoCluster:
    """Greedily absorb objects then features while density stays >= ``spthr``.

    Candidates are scanned in ascending id, objects before features, and the
    two passes repeat until a fixed point; the order is part of the
    determinism contract.
    """
    objects = set(c.objects)
    features = set(c.features)
    if not objects or not features:
        raise ValueError("degenerate co-cluster")
    filled = block_fill(r, objects, features)
    changed = True
    while changed:
        changed = False
        for o in range(r.num_objects):
            if o in objects:
                continue
            gain = len(r.obj_sets[o] & features)
            if (filled + gain) / ((len(objects) + 1) * len(features)) >= spthr:
                objects.add(o)
                filled += gain
                changed = True
        for f in range(r.num_features):
            if f in features:
                continue
            gain = len(r.feat_sets[f] & objects)
            if (filled + gain) / (len(objects) * (len(features) + 1)) >= spthr:
                features.add(f)
                filled += gain
                changed = True
    return CoCluster(
        frozenset(objects),
        frozenset(features),
        filled / (len(objects) * len(features)),
    )


def merge_by_feature_set(cs: list[CoCluster], r: Relation) -> list[CoCluster]:
    """Union the object sets of co-clusters sharing an identical feature set.

    Densities are recomputed from ``r``; exact duplicates collapse; the output
    is canonically sorted.
    """
    groups: dict[frozenset[int], set[int]] = {}
    for c in cs:
        groups.setdefault(c.features, set()).update(c.objects)
    merged = []
    for features, objects in groups.items():
        filled = block_fill(r, objects, features)
        merged.append(
            CoCluster(
                frozenset(objects),
                features,
                filled / (len(objects) * len(features)),
            )
        )
    return sorted(merged, key=lambda c: c.sort_key())


def run_pipeline(
    r: Relation,
    params: PipelineParams,
    *,
    threads: int = 1,
    max_seed_objects: int = DEFAULT_MAX_SEED_OBJECTS,
    max_seed_features: int = DEFAULT_MAX_SEED_FEATURES,
) -> list[CoCluster]:
    """Run the full pipeline over ``r`` and its transpose.

    Every emitted co-cluster satisfies the size minima and density >= spthr;
    output is canonically sorted and byte-stable for a fixed
    (relation, params), regardless of ``threads``.
    """
    forward = _hash_seeded_pass(r, params, threads, max_seed_objects, max_seed_features)
    backward = _hash_seeded_pass(
        transpose(r), params, threads, max_seed_objects, max_seed_features
    )
    flipped = [CoCluster(c.features, c.objects, c.density) for c in backward]
    merged = merge_by_feature_set(forward + flipped, r)
    return [
        c
        for c in merged
        if len(c.objects) >= params.min_objects
        and len(c.features) >= params.min_features
        and c.density >= params.spthr
    ]


def _hash_seeded_pass(
    rel: Relation,
    params: PipelineParams,
    threads: int,
    max_seed_objects: int,
    max_seed_features: int,
) -> list[CoCluster]:
    """Stages 1-5 over one orientation; co-clusters come back in rel's ids."""
    filtered = filter_frequent_features(rel, params.thr)
    if filtered.num_objects == 0 or filtered.num_features == 0:
        log.warning("nothing to hash after frequency filtering")
        return []
    seeds = generate_seeds(filtered, params)
    if not seeds:
        log.warning("LSH produced no seed clusters; empty result for this pass")
        return []
    # Seed expansion works on bitmask restrictions of the filtered relation:
    # the induced object set is everything adjacent to a key feature, the
    # induced feature set everything adjacent to a bucket object.
    supp = feature_masks(filtered)
    omasks = object_masks(filtered)
    tasks = []
    seen: set[tuple[int, int]] = set()
    for seed in seeds:
        ocmask = 0
        for f in set(seed.key):
            ocmask |= supp[f]
        fcmask = 0
        for o in seed.bucket:
            fcmask |= omasks[o]
        if (ocmask, fcmask) in seen:
            continue
        seen.add((ocmask, fcmask))
        n_obj, n_feat = ocmask.bit_count(), fcmask.bit_count()
        if n_obj > max_seed_objects or n_feat > max_seed_features:
            log.warning(
                "skipping oversized seed sub-relation (%d x %d)", n_obj, n_feat
            )
            continue
        tasks.append((ocmask, fcmask))

    def enumerate_seed(task):
        ocmask, fcmask = task
        return _scan_concepts(
            supp, _mask_bits(fcmask), ocmask, params.min_objects, params.min_features
        )

    def grow(c):
        return grow_cocluster(filtered, c, params.spthr)

    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            groups = list(pool.map(enumerate_seed, tasks))
    else:
        groups = [enumerate_seed(task) for task in tasks]
    # Different seeds rediscover the same concepts; growth is a pure function
    # of (relation, concept, spthr), so grow each distinct concept once.
    raw = sorted(
        {item for group in groups for item in group},
        key=lambda item: (item[0], tuple(sorted(item[1]))),
    )
    lifted = [
        CoCluster(frozenset(_mask_bits(ocmask)), fcset, 1.0) for ocmask, fcset in raw
    ]
    if threads > 1 and len(lifted) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            result = list(pool.map(grow, lifted))
    else:
        result = [grow(c) for c in lifted]
    if filtered is not rel:
        # The frequency filter renumbered features; lift back through names.
        fmap = [rel.feature_index[name] for name in filtered.feature_names]
        result = [
            CoCluster(c.objects, frozenset(fmap[f] for f in c.features), c.density)
            for c in result
        ]
    return result
