import pytest
from hypothesis import given
from hypothesis import strategies as st

from cocluster.inclose import enumerate_concepts
from cocluster.metrics import (
    MetricsReport,
    cocluster_stats,
    jaccard,
    nmi,
    pmi,
    purity,
    report,
)
from cocluster.relation import CoCluster, build_relation

from .strategies import relations

APPROX = dict(abs=1e-12)


def cluster(objs, feats=frozenset({0})):
    return CoCluster(frozenset(objs), frozenset(feats), 1.0)


def test_jaccard_cases():
    assert jaccard({"a", "b"}, {"a", "b"}) == 1.0
    assert jaccard({"a"}, {"b"}) == 0.0
    assert jaccard({"a", "b", "c"}, {"b", "c", "d"}) == 0.5
    with pytest.raises(ValueError, match="undefined"):
        jaccard(set(), set())


def test_purity_single_label_clusters():
    labels = {0: "A", 1: "A", 2: "B"}
    cs = [cluster({0, 1}), cluster({2})]
    assert purity(cs, labels) == 1.0


def test_purity_mixed_cluster():
    labels = {0: "A", 1: "A", 2: "B"}
    assert purity([cluster({0, 1, 2})], labels) == 2 / 3


def test_purity_requires_labels():
    with pytest.raises(ValueError):
        purity([], {})
    with pytest.raises(ValueError, match="no label"):
        purity([cluster({0})], {})


@given(st.permutations(["A", "B", "C"]))
def test_purity_relabeling_invariant(perm):
    mapping = dict(zip(["A", "B", "C"], perm))
    labels = {0: "A", 1: "A", 2: "B", 3: "C", 4: "B"}
    cs = [cluster({0, 1, 2}), cluster({3, 4}), cluster({0, 3})]
    renamed = {o: mapping[l] for o, l in labels.items()}
    assert purity(cs, labels) == purity(cs, renamed)


def test_nmi_perfect_agreement():
    labels = {0: "A", 1: "A", 2: "B", 3: "B"}
    cs = [cluster({0, 1}), cluster({2, 3})]
    assert nmi(cs, labels) == pytest.approx(1.0, **APPROX)


def test_nmi_opposite_partition():
    labels = {0: "A", 1: "A", 2: "B", 3: "B"}
    cs = [cluster({0, 2}), cluster({1, 3})]
    assert nmi(cs, labels) == 0.0


def test_nmi_degenerate_single_cluster():
    labels = {0: "A", 1: "B"}
    assert nmi([cluster({0, 1})], labels) == 0.0


@given(st.permutations(["A", "B", "C"]))
def test_nmi_relabeling_invariant(perm):
    mapping = dict(zip(["A", "B", "C"], perm))
    labels = {0: "A", 1: "B", 2: "B", 3: "C", 4: "A"}
    cs = [cluster({0, 1}), cluster({2, 3, 4}), cluster({1, 4})]
    renamed = {o: mapping[l] for o, l in labels.items()}
    assert nmi(cs, labels) == nmi(cs, renamed)


def test_nmi_symmetric_for_disjoint_exhaustive_partitions():
    # swap the roles of the two partitions; NMI must match
    part_a = [{0, 1, 2}, {3, 4}, {5}]
    part_b = [{0, 3}, {1, 4, 5}, {2}]
    labels_b = {o: f"L{i}" for i, group in enumerate(part_b) for o in group}
    labels_a = {o: f"L{i}" for i, group in enumerate(part_a) for o in group}
    cs_a = [cluster(group) for group in part_a]
    cs_b = [cluster(group) for group in part_b]
    assert nmi(cs_a, labels_b) == pytest.approx(nmi(cs_b, labels_a), **APPROX)


def pmi_relation():
    # features over 4 objects: "both" pair always co-occurs, "ind1"/"ind2"
    # are independent with P = 0.5 each and joint 0.25, "never1"/"never2"
    # are disjoint.
    tuples = []
    for o in range(4):
        tuples.append((f"o{o}", "both_a"))
        tuples.append((f"o{o}", "both_b"))
    tuples += [("o0", "ind1"), ("o1", "ind1"), ("o0", "ind2"), ("o2", "ind2")]
    tuples += [("o0", "never1"), ("o1", "never2")]
    tuples += [("o0", "same_a"), ("o1", "same_a"), ("o0", "same_b"), ("o1", "same_b")]
    return build_relation(tuples)


def test_pmi_perfectly_correlated_pair():
    r = pmi_relation()
    c = CoCluster(
        frozenset(range(4)),
        frozenset({r.feature_index["both_a"], r.feature_index["both_b"]}),
        1.0,
    )
    assert pmi([c], r) == pytest.approx(1.0, **APPROX)


def test_pmi_same_support_pair_scores_one():
    # identical supports with P < 1: log(joint) = log(p1) = log(p2)
    r = pmi_relation()
    c = CoCluster(
        frozenset({0, 1}),
        frozenset({r.feature_index["same_a"], r.feature_index["same_b"]}),
        1.0,
    )
    assert pmi([c], r) == pytest.approx(1.0, **APPROX)


def test_pmi_independent_pair_scores_zero():
    r = pmi_relation()
    c = CoCluster(
        frozenset({0}),
        frozenset({r.feature_index["ind1"], r.feature_index["ind2"]}),
        1.0,
    )
    assert pmi([c], r) == pytest.approx(0.0, **APPROX)


def test_pmi_never_cooccurring_pair():
    r = pmi_relation()
    c = CoCluster(
        frozenset({0, 1}),
        frozenset({r.feature_index["never1"], r.feature_index["never2"]}),
        1.0,
    )
    assert pmi([c], r) == -1.0


def test_pmi_small_feature_sets_contribute_nothing():
    r = pmi_relation()
    pair = CoCluster(
        frozenset(range(4)),
        frozenset({r.feature_index["both_a"], r.feature_index["both_b"]}),
        1.0,
    )
    singleton = CoCluster(frozenset({0}), frozenset({0}), 1.0)
    assert pmi([pair, singleton], r) == pmi([pair], r)
    with pytest.raises(ValueError, match="no feature pair"):
        pmi([singleton], r)


def test_pmi_duplication_invariant():
    r = pmi_relation()
    c = CoCluster(
        frozenset(range(4)),
        frozenset({r.feature_index["both_a"], r.feature_index["ind1"]}),
        1.0,
    )
    assert pmi([c, c], r) == pmi([c], r)


@given(relations(max_objects=8, max_features=6))
def test_pmi_bounds(r):
    concepts = [c for c in enumerate_concepts(r, 1, 1) if len(c.features) >= 2]
    if not concepts:
        return
    value = pmi(concepts, r)
    assert -1.0 <= value <= 1.0


def test_stats_empty():
    r = build_relation([("a", "x")])
    rep = cocluster_stats([], r)
    assert rep == MetricsReport(0, 0.0, 0.0, 0.0)


def test_stats_full_cover():
    r = build_relation([("a", "x"), ("b", "y")])
    c = CoCluster(frozenset({0, 1}), frozenset({0, 1}), 0.5)
    rep = cocluster_stats([c], r)
    assert rep.n_coclusters == 1
    assert rep.object_coverage == 1.0
    assert rep.feature_coverage == 1.0
    assert rep.avg_size == 4.0


def test_report_composes(zoo):
    from cocluster.pipeline import PipelineParams, run_pipeline

    cs = run_pipeline(zoo.relation, PipelineParams(4, 6, 200, 2, 0.0, 1.0, 1))
    rep = report(cs, zoo.relation, zoo.labels)
    assert 0.0 <= rep.purity <= 1.0
    assert 0.0 <= rep.nmi <= 1.0
    assert -1.0 <= rep.pmi <= 1.0
    assert rep.n_coclusters == len(cs)


def test_metrics_are_pure():
    labels = {0: "A", 1: "A", 2: "B", 3: "B"}
    cs = [cluster({0, 1, 2}), cluster({2, 3})]
    r = pmi_relation()
    assert purity(cs, labels) == purity(cs, labels)
    assert nmi(cs, labels) == nmi(cs, labels)
    assert pmi([cluster({0, 1}, {0, 1})], r) == pmi([cluster({0, 1}, {0, 1})], r)
