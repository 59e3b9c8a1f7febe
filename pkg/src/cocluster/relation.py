"""Sparse binary relation model shared by every stage of the pipeline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class CoCluster:
    """A block (object subset x feature subset) with its cached fill density."""

    objects: frozenset[int]
    features: frozenset[int]
    density: float

    def sort_key(self) -> tuple:
        return (tuple(sorted(self.features)), tuple(sorted(self.objects)))

    def size(self) -> int:
        return len(self.objects) * len(self.features)


class Relation:
    """Immutable binary relation between named objects and named features.

    Ids are dense integers fixed by the constructor's name order; adjacency is
    stored in both directions (object -> sorted feature ids, feature -> sorted
    object ids) so sub-relation induction and density counts are cheap.
    """

    __slots__ = (
        "object_names",
        "feature_names",
        "obj_adj",
        "feat_adj",
        "obj_sets",
        "feat_sets",
        "object_index",
        "feature_index",
        "num_pairs",
    )

    def __init__(
        self,
        object_names: Iterable[str],
        feature_names: Iterable[str],
        pairs: Iterable[tuple[int, int]],
    ):
        object_names = tuple(object_names)
        feature_names = tuple(feature_names)
        if len(set(object_names)) != len(object_names):
            raise ValueError("duplicate object names")
        if len(set(feature_names)) != len(feature_names):
            raise ValueError("duplicate feature names")
        m, n = len(object_names), len(feature_names)
        obj_adj: list[list[int]] = [[] for _ in range(m)]
        feat_adj: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for o, f in pairs:
            if not (0 <= o < m and 0 <= f < n):
                raise ValueError(f"pair ({o}, {f}) out of range for {m}x{n} relation")
            if (o, f) in seen:
                continue
            seen.add((o, f))
            obj_adj[o].append(f)
            feat_adj[f].append(o)
        self.object_names = object_names
        self.feature_names = feature_names
        self.obj_adj = tuple(tuple(sorted(fs)) for fs in obj_adj)
        self.feat_adj = tuple(tuple(sorted(os)) for os in feat_adj)
        self.obj_sets = tuple(frozenset(fs) for fs in self.obj_adj)
        self.feat_sets = tuple(frozenset(os) for os in self.feat_adj)
        self.object_index = {name: i for i, name in enumerate(object_names)}
        self.feature_index = {name: j for j, name in enumerate(feature_names)}
        self.num_pairs = len(seen)

    @property
    def num_objects(self) -> int:
        return len(self.object_names)

    @property
    def num_features(self) -> int:
        return len(self.feature_names)

    def pairs(self) -> set[tuple[int, int]]:
        return {(o, f) for o, fs in enumerate(self.obj_adj) for f in fs}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return (
            self.object_names == other.object_names
            and self.feature_names == other.feature_names
            and self.obj_adj == other.obj_adj
        )

    def __hash__(self):
        return hash((self.object_names, self.feature_names, self.obj_adj))

    def __repr__(self) -> str:
        return f"Relation({self.num_objects} objects, {self.num_features} features, {self.num_pairs} pairs)"


@dataclass(frozen=True)
class LabeledDataset:
    """A relation plus optional per-object labels used only for evaluation."""

    relation: Relation
    labels: Mapping[int, str]

    def __post_init__(self):
        m = self.relation.num_objects
        for o in self.labels:
            if not 0 <= o < m:
                raise ValueError(f"label refers to unknown object id {o}")


def build_relation(tuples: Iterable[tuple[str, str]]) -> Relation:
    """Build a relation from (object name, feature name) tuples.

    Ids follow first appearance order and duplicate tuples collapse, so the
    result is deterministic in the input order.
    """
    obj_ids: dict[str, int] = {}
    feat_ids: dict[str, int] = {}
    pairs = []
    for oname, fname in tuples:
        o = obj_ids.setdefault(oname, len(obj_ids))
        f = feat_ids.setdefault(fname, len(feat_ids))
        pairs.append((o, f))
    return Relation(tuple(obj_ids), tuple(feat_ids), pairs)


def transpose(r: Relation) -> Relation:
    """Swap object and feature roles; pair (o, f) becomes (f, o)."""
    return Relation(
        r.feature_names,
        r.object_names,
        ((f, o) for o, fs in enumerate(r.obj_adj) for f in fs),
    )


def induce_subrelation(
    r: Relation, seed_objects: Iterable[int], seed_features: Iterable[int]
) -> tuple[tuple[int, ...], tuple[int, ...], Relation]:
    """Expand a seed into its covering sub-relation.

    The induced object set holds every object related to any seed feature and
    the induced feature set every feature related to any seed object.  Returns
    sorted original-id tuples (oc, fc) plus the sub-relation; local id ``i`` in
    the sub-relation corresponds to original id ``oc[i]`` / ``fc[i]``.
    """
    seed_objects = set(seed_objects)
    seed_features = set(seed_features)
    for o in seed_objects:
        if not 0 <= o < r.num_objects:
            raise ValueError(f"seed object id {o} out of range")
    for f in seed_features:
        if not 0 <= f < r.num_features:
            raise ValueError(f"seed feature id {f} out of range")
    oc = sorted({o for f in seed_features for o in r.feat_adj[f]})
    fc = sorted({f for o in seed_objects for f in r.obj_adj[o]})
    fpos = {f: j for j, f in enumerate(fc)}
    pairs = [
        (i, fpos[f])
        for i, o in enumerate(oc)
        for f in r.obj_adj[o]
        if f in fpos
    ]
    sub = Relation(
        tuple(r.object_names[o] for o in oc),
        tuple(r.feature_names[f] for f in fc),
        pairs,
    )
    return tuple(oc), tuple(fc), sub


def block_fill(r: Relation, objects: Iterable[int], features: Iterable[int]) -> int:
    """Number of relation pairs inside the block objects x features."""
    objects = set(objects)
    features = features if isinstance(features, (set, frozenset)) else set(features)
    if len(objects) <= len(features):
        return sum(len(r.obj_sets[o] & features) for o in objects)
    return sum(len(r.feat_sets[f] & objects) for f in features)


def density(r: Relation, objects: Iterable[int], features: Iterable[int]) -> float:
    """Fill ratio of the block objects x features, in [0, 1]."""
    objects = set(objects)
    features = set(features)
    if not objects or not features:
        raise ValueError("degenerate block: empty object or feature set")
    if any(not 0 <= o < r.num_objects for o in objects):
        raise ValueError("object id out of range")
    if any(not 0 <= f < r.num_features for f in features):
        raise ValueError("feature id out of range")
    return block_fill(r, objects, features) / (len(objects) * len(features))


def make_cocluster(r: Relation, objects: Iterable[int], features: Iterable[int]) -> CoCluster:
    """Construct a co-cluster with its density computed from ``r``."""
    objects = frozenset(objects)
    features = frozenset(features)
    return CoCluster(objects, features, density(r, objects, features))
