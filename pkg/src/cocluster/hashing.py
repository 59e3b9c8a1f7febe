"""Universal hashing, MinHash signatures and banded LSH bucketing."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

import numpy as np

from .relation import Relation

log = logging.getLogger(__name__)

# Hash rows are evaluated in chunks so large families stay memory-bounded.
_HASH_CHUNK = 1024


def _is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k % 2 == 0:
        return k == 2
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def _next_prime(k: int) -> int:
    candidate = max(k, 2)
    while not _is_prime(candidate):
        candidate += 1
    return candidate


@dataclass(frozen=True)
class HashFamily:
    """Affine hashes h_i(x) = (a_i * x + b_i) mod prime, one row per hash.

    Each hash approximates a random permutation of the feature universe;
    ``a`` is drawn from [1, prime) because a zero slope would collapse the
    permutation to a constant.
    """

    a: np.ndarray
    b: np.ndarray
    prime: int

    @property
    def count(self) -> int:
        return int(self.a.shape[0])


def make_hash_family(nhashes: int, num_features: int, rng_seed: int) -> HashFamily:
    """Draw a reproducible family of ``nhashes`` affine hashes.

    The modulus is the smallest prime >= max(num_features, 2) so every
    feature id maps into [0, prime).
    """
    if nhashes < 1:
        raise ValueError("nhashes must be >= 1")
    if num_features < 0:
        raise ValueError("num_features must be >= 0")
    prime = _next_prime(max(num_features, 2))
    rng = random.Random(rng_seed)
    a = np.array([rng.randrange(1, prime) for _ in range(nhashes)], dtype=np.int64)
    b = np.array([rng.randrange(0, prime) for _ in range(nhashes)], dtype=np.int64)
    return HashFamily(a, b, prime)


@dataclass(frozen=True)
class SignatureMatrix:
    """Per-object MinHash rows; each stored value is the feature id whose
    hash is minimal for that object (ties broken toward the smallest id)."""

    object_ids: np.ndarray  # (k,) ascending object ids that had >= 1 feature
    values: np.ndarray      # (k, nhashes) int32 feature ids

    @property
    def num_hashes(self) -> int:
        return int(self.values.shape[1])


def minhash_signatures(r: Relation, fam: HashFamily) -> SignatureMatrix:
    """Compute the argmin-feature signature of every object.

    Objects without features cannot be hashed and are dropped with a warning.
    Adjacency lists are ascending, so numpy's first-minimum argmin realizes
    the smallest-feature-id tie break.
    """
    kept = [o for o in range(r.num_objects) if r.obj_adj[o]]
    dropped = r.num_objects - len(kept)
    if dropped:
        log.warning("dropping %d featureless object(s) before hashing", dropped)
    nh = fam.count
    values = np.empty((len(kept), nh), dtype=np.int32)
    if kept:
        feats = np.arange(r.num_features, dtype=np.int64)
        adjacency = [np.array(r.obj_adj[o], dtype=np.intp) for o in kept]
        for start in range(0, nh, _HASH_CHUNK):
            stop = min(start + _HASH_CHUNK, nh)
            table = (
                (fam.a[start:stop, None] * feats[None, :] + fam.b[start:stop, None])
                % fam.prime
            ).astype(np.int32)
            for row, xs in enumerate(adjacency):
                values[row, start:stop] = xs[table[:, xs].argmin(axis=1)]
    return SignatureMatrix(np.array(kept, dtype=np.int32), values)


@dataclass(frozen=True)
class SeedCluster:
    """An LSH bucket: the band it came from, its key features, its objects."""

    band: int
    key: tuple[int, ...]
    bucket: frozenset[int]


def lsh_buckets(sig: SignatureMatrix, nkeys: int) -> list[SeedCluster]:
    """Group objects whose signatures agree on a whole band of ``nkeys`` hashes.

    Bands tile the signature left to right; leftover hash positions beyond
    the last full band are unused.  Buckets with fewer than two objects carry
    no similarity evidence and are discarded.  Output is ordered by
    (band, key) so downstream steps are deterministic.
    """
    if nkeys < 1:
        raise ValueError("nkeys must be >= 1")
    k = sig.values.shape[0]
    nbands = sig.num_hashes // nkeys
    seeds: list[SeedCluster] = []
    if k < 2 or nbands == 0:
        return seeds
    oid = sig.object_ids
    for band in range(nbands):
        cols = sig.values[:, band * nkeys : (band + 1) * nkeys]
        uniq, inv, counts = np.unique(
            cols, axis=0, return_inverse=True, return_counts=True
        )
        if uniq.shape[0] == k:
            continue
        order = np.argsort(inv.ravel(), kind="stable")
        start = 0
        for u, count in enumerate(counts):
            end = start + int(count)
            if count >= 2:
                members = oid[order[start:end]]
                seeds.append(
                    SeedCluster(
                        band,
                        tuple(int(x) for x in uniq[u]),
                        frozenset(int(x) for x in members),
                    )
                )
            start = end
    return seeds


def collision_probability(jaccard_value: float, nkeys: int, nbands: int) -> float:
    """Chance two objects with the given similarity share at least one bucket."""
    if not 0.0 <= jaccard_value <= 1.0:
        raise ValueError("similarity must lie in [0, 1]")
    if nkeys < 1 or nbands < 0:
        raise ValueError("nkeys must be >= 1 and nbands >= 0")
    return 1.0 - (1.0 - jaccard_value**nkeys) ** nbands
