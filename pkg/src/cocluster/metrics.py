"""Quality measures for co-cluster sets: purity, NMI, feature coherence, stats."""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .relation import CoCluster, Relation

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricsReport:
    n_coclusters: int
    object_coverage: float
    feature_coverage: float
    avg_size: float
    purity: float | None = None
    nmi: float | None = None
    pmi: float | None = None


def jaccard(a: Iterable, b: Iterable) -> float:
    """|a ∩ b| / |a ∪ b|; undefined (error) when both sets are empty."""
    a = a if isinstance(a, (set, frozenset)) else set(a)
    b = b if isinstance(b, (set, frozenset)) else set(b)
    if not a and not b:
        raise ValueError("undefined similarity: both sets are empty")
    return len(a & b) / len(a | b)


def _label(labels: Mapping[int, str], o: int) -> str:
    try:
        return labels[o]
    except KeyError:
        raise ValueError(f"object {o} has no label") from None


def purity(cs: Sequence[CoCluster], labels: Mapping[int, str]) -> float:
    """Unweighted mean over co-clusters of the majority-label fraction."""
    if not cs:
        raise ValueError("purity of an empty co-cluster set")
    total = 0.0
    for c in cs:
        counts: dict[str, int] = {}
        for o in sorted(c.objects):
            lab = _label(labels, o)
            counts[lab] = counts.get(lab, 0) + 1
        total += max(counts.values()) / len(c.objects)
    return total / len(cs)


def nmi(cs: Sequence[CoCluster], labels: Mapping[int, str]) -> float:
    """Mutual information between cluster membership and labels, normalized
    by sqrt(H_clusters * H_labels).

    An object appearing in t co-clusters contributes weight 1/t to each, so
    overlapping results still define a joint distribution.  Degenerate cases
    (a single effective cluster or label) return 0 with a warning.
    """
    if not cs:
        raise ValueError("nmi of an empty co-cluster set")
    multiplicity: dict[int, int] = {}
    for c in cs:
        for o in c.objects:
            multiplicity[o] = multiplicity.get(o, 0) + 1
    total = len(multiplicity)
    joint: dict[tuple[int, str], float] = {}
    for ci, c in enumerate(cs):
        for o in sorted(c.objects):
            key = (ci, _label(labels, o))
            joint[key] = joint.get(key, 0.0) + 1.0 / multiplicity[o]
    p_cluster: dict[int, float] = {}
    p_label: dict[str, float] = {}
    for (ci, lab), w in joint.items():
        p = w / total
        p_cluster[ci] = p_cluster.get(ci, 0.0) + p
        p_label[lab] = p_label.get(lab, 0.0) + p
    h_cluster = -sum(p * math.log(p) for p in p_cluster.values() if p > 0.0)
    h_label = -sum(p * math.log(p) for p in p_label.values() if p > 0.0)
    if h_cluster <= 0.0 or h_label <= 0.0:
        log.warning("degenerate cluster or label distribution; NMI set to 0")
        return 0.0
    mi = 0.0
    for (ci, lab), w in joint.items():
        p = w / total
        if p > 0.0:
            mi += p * math.log(p / (p_cluster[ci] * p_label[lab]))
    # Clamp float drift; the quantity lies in [0, 1] analytically.
    return min(1.0, max(0.0, mi / math.sqrt(h_cluster * h_label)))


def _pair_coherence(r: Relation, f1: int, f2: int, m: int) -> float:
    joint = len(r.feat_sets[f1] & r.feat_sets[f2]) / m
    if joint == 0.0:
        return -1.0
    if joint == 1.0:
        # Both features cover every object; the normalized value's limit is 1.
        return 1.0
    p1 = len(r.feat_adj[f1]) / m
    p2 = len(r.feat_adj[f2]) / m
    value = -math.log(joint / (p1 * p2)) / math.log(joint)
    return min(1.0, max(-1.0, value))


def pmi(cs: Sequence[CoCluster], r: Relation) -> float:
    """Mean normalized pointwise mutual information of feature pairs.

    Each co-cluster's feature set scores the average over its unordered
    pairs; cluster scores are then averaged.  Probabilities are object
    fractions in ``r``.  Pairs that never co-occur score -1; feature sets
    smaller than two contribute nothing.
    """
    if not cs:
        raise ValueError("pmi of an empty co-cluster set")
    m = r.num_objects
    scores = []
    for c in cs:
        feats = sorted(c.features)
        if len(feats) < 2:
            continue
        values = [_pair_coherence(r, f1, f2, m) for f1, f2 in combinations(feats, 2)]
        scores.append(sum(values) / len(values))
    if not scores:
        raise ValueError("no feature pair in any co-cluster")
    return sum(scores) / len(scores)


def cocluster_stats(cs: Sequence[CoCluster], r: Relation) -> MetricsReport:
    """Counts, coverage ratios and mean block size of a co-cluster set."""
    if not cs:
        return MetricsReport(0, 0.0, 0.0, 0.0)
    covered_objects = set().union(*(c.objects for c in cs))
    covered_features = set().union(*(c.features for c in cs))
    avg_size = sum(c.size() for c in cs) / len(cs)
    return MetricsReport(
        n_coclusters=len(cs),
        object_coverage=len(covered_objects) / r.num_objects,
        feature_coverage=len(covered_features) / r.num_features,
        avg_size=avg_size,
    )


def report(
    cs: Sequence[CoCluster], r: Relation, labels: Mapping[int, str] | None = None
) -> MetricsReport:
    """Full report: stats plus purity/NMI when labels exist and PMI when
    any feature pair exists."""
    base = cocluster_stats(cs, r)
    if not cs:
        return base
    extra: dict[str, float] = {}
    if labels:
        extra["purity"] = purity(cs, labels)
        extra["nmi"] = nmi(cs, labels)
    if any(len(c.features) >= 2 for c in cs):
        extra["pmi"] = pmi(cs, r)
    return dataclasses.replace(base, **extra)
