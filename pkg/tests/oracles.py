"""Independent brute-force references the implementation is checked against."""

from itertools import combinations

from cocluster.relation import Relation


def closed_concepts(r: Relation, min_objects: int = 1, min_features: int = 1):
    """Enumerate concepts the slow way: close every feature subset.

    For each subset S of features take ext(S) = objects containing all of S,
    then int(ext(S)) = features contained by every such object; the distinct
    (extent, intent) pairs are exactly the formal concepts.
    """
    n, m = r.num_features, r.num_objects
    all_objects = frozenset(range(m))
    found = set()
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            ext = all_objects
            for f in subset:
                ext = ext & r.feat_sets[f]
            if ext:
                intent = frozenset(f for f in range(n) if ext <= r.feat_sets[f])
            else:
                intent = frozenset(range(n))
            found.add((ext, intent))
    return {
        (ext, intent)
        for ext, intent in found
        if len(ext) >= min_objects and len(intent) >= min_features
    }


def exact_jaccard(a, b) -> float:
    a, b = set(a), set(b)
    return len(a & b) / len(a | b)


def is_maximal_dense_block(r: Relation, objects, features) -> bool:
    """True iff the block is all-ones and no row or column can be added."""
    objects, features = set(objects), set(features)
    if any(not features <= r.obj_sets[o] for o in objects):
        return False
    for o in range(r.num_objects):
        if o not in objects and features <= r.obj_sets[o]:
            return False
    for f in range(r.num_features):
        if f not in features and objects <= r.feat_sets[f]:
            return False
    return True
