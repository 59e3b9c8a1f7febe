"""Exact enumeration of maximal all-ones blocks (closed concepts)."""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .relation import CoCluster, Relation


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def feature_masks(r: Relation) -> list[int]:
    """Per feature, the bitmask of object ids containing it."""
    supp = [0] * r.num_features
    for f in range(r.num_features):
        mask = 0
        for o in r.feat_adj[f]:
            mask |= 1 << o
        supp[f] = mask
    return supp


def object_masks(r: Relation) -> list[int]:
    """Per object, the bitmask of feature ids it contains."""
    out = [0] * r.num_objects
    for o in range(r.num_objects):
        mask = 0
        for f in r.obj_adj[o]:
            mask |= 1 << f
        out[o] = mask
    return out


def _scan_concepts(
    supp: Sequence[int],
    features: Sequence[int],
    start_mask: int,
    min_objects: int,
    min_features: int,
) -> list[tuple[int, frozenset[int]]]:
    """Core stack scan over the block ``start_mask`` x ``features``.

    Each popped candidate carries (object mask, accumulated feature set,
    resume position).  Features that keep the object set intact join the
    feature set in place, completing its closure; shrinking features spawn
    new candidates guarded by the canonicity test (no earlier, not yet
    implied feature may contain the shrunken object set), so every concept
    is generated exactly once.
    """
    nf = len(features)
    found: dict[tuple[int, frozenset[int]], None] = {}
    stack: list[tuple[int, tuple[int, ...], int]] = [(start_mask, (), 0)]
    while stack:
        oc, fc_init, y = stack.pop()
        fc = set(fc_init)
        for pos in range(y, nf):
            j = features[pos]
            ocp = oc & supp[j]
            if ocp == oc:
                fc.add(j)
            elif ocp.bit_count() >= min_objects:
                for back in range(pos - 1, -1, -1):
                    h = features[back]
                    if h not in fc and ocp & supp[h] == ocp:
                        break
                else:
                    stack.append((ocp, tuple(fc | {j}), pos + 1))
        if len(fc) >= min_features and oc.bit_count() >= min_objects:
            found[(oc, frozenset(fc))] = None
    return list(found)


def enumerate_concepts(r: Relation, min_objects: int, min_features: int) -> list[CoCluster]:
    """Enumerate every maximal fully-dense co-cluster meeting the size minima.

    Features are scanned in ascending id order.  Every returned co-cluster
    has density exactly 1.0 and the result is sorted by
    (feature set, object set).
    """
    if min_objects < 1 or min_features < 1:
        raise ValueError("size minima must be >= 1")
    m, n = r.num_objects, r.num_features
    if m == 0 or n == 0:
        return []
    supp = feature_masks(r)
    raw = _scan_concepts(supp, range(n), (1 << m) - 1, min_objects, min_features)
    concepts = [
        CoCluster(frozenset(_bits(oc)), fc, 1.0) for oc, fc in raw
    ]
    return sorted(concepts, key=lambda c: c.sort_key())


def enumerate_concepts_within(
    r: Relation,
    objects: Iterable[int],
    features: Iterable[int],
    min_objects: int,
    min_features: int,
    *,
    supp: Sequence[int] | None = None,
) -> list[CoCluster]:
    """Concepts of the sub-relation r restricted to objects x features,
    reported directly in r's ids.

    Equivalent to inducing the sub-relation and enumerating it, without
    materializing the copy; ``supp`` may pass precomputed feature masks when
    calling repeatedly on one relation.
    """
    if min_objects < 1 or min_features < 1:
        raise ValueError("size minima must be >= 1")
    if supp is None:
        supp = feature_masks(r)
    start = 0
    for o in objects:
        start |= 1 << o
    order = sorted(set(features))
    raw = _scan_concepts(supp, order, start, min_objects, min_features)
    concepts = [CoCluster(frozenset(_bits(oc)), fc, 1.0) for oc, fc in raw]
    return sorted(concepts, key=lambda c: c.sort_key())


def is_canonical(
    r: Relation, objects: Iterable[int], j: int, implied: Iterable[int] = frozenset()
) -> bool:
    """True when no feature before index ``j`` contains every given object.

    Features in ``implied`` (already part of the candidate's feature set, so
    necessarily containing the objects) are exempt.  Candidates failing this
    test are reachable through an earlier feature and would duplicate a
    concept.
    """
    if not 0 <= j <= r.num_features:
        raise ValueError(f"feature index {j} out of range")
    objs = frozenset(objects)
    implied = set(implied)
    for h in range(j):
        if h in implied:
            continue
        if objs <= r.feat_sets[h]:
            return False
    return True
