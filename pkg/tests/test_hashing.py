import numpy as np
import pytest

from cocluster.hashing import (
    HashFamily,
    collision_probability,
    lsh_buckets,
    make_hash_family,
    minhash_signatures,
)
from cocluster.relation import Relation, build_relation

from .oracles import exact_jaccard


def identity_family(nhashes: int, num_features: int) -> HashFamily:
    # a=1, b=0 makes h(x) = x mod P the identity permutation on [0, P).
    prime = make_hash_family(1, num_features, 0).prime
    return HashFamily(
        np.ones(nhashes, dtype=np.int64), np.zeros(nhashes, dtype=np.int64), prime
    )


def two_set_relation(a, b):
    universe = sorted(set(a) | set(b))
    names = tuple(f"f{x}" for x in universe)
    pos = {x: i for i, x in enumerate(universe)}
    pairs = [(0, pos[x]) for x in a] + [(1, pos[x]) for x in b]
    return Relation(("A", "B"), names, pairs)


def test_family_deterministic():
    f1 = make_hash_family(16, 10, 42)
    f2 = make_hash_family(16, 10, 42)
    assert f1.prime == f2.prime
    assert (f1.a == f2.a).all() and (f1.b == f2.b).all()
    f3 = make_hash_family(16, 10, 43)
    assert not ((f1.a == f3.a).all() and (f1.b == f3.b).all())


def test_prime_selection():
    assert make_hash_family(1, 10, 0).prime == 11
    assert make_hash_family(1, 11, 0).prime == 11
    assert make_hash_family(1, 1, 0).prime == 2


def test_coefficient_ranges():
    fam = make_hash_family(500, 30, 7)
    assert (fam.a >= 1).all() and (fam.a < fam.prime).all()
    assert (fam.b >= 0).all() and (fam.b < fam.prime).all()


def test_identity_hash_gives_min_feature():
    r = build_relation([("a", "f3"), ("a", "f1"), ("b", "f2")])
    fam = identity_family(4, r.num_features)
    sig = minhash_signatures(r, fam)
    # object a has feature ids {0, 1}, object b has {2}
    assert (sig.values[0] == 0).all()
    assert (sig.values[1] == 2).all()


def test_identical_objects_identical_rows():
    r = build_relation(
        [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y"), ("c", "y")]
    )
    sig = minhash_signatures(r, make_hash_family(64, r.num_features, 3))
    assert (sig.values[0] == sig.values[1]).all()


def test_featureless_objects_dropped():
    r = Relation(("a", "b"), ("x",), [(0, 0)])
    sig = minhash_signatures(r, make_hash_family(8, 1, 0))
    assert list(sig.object_ids) == [0]


def test_signature_values_come_from_adjacency():
    r = build_relation([("a", "x"), ("a", "y"), ("b", "y"), ("b", "z")])
    sig = minhash_signatures(r, make_hash_family(128, r.num_features, 5))
    for row, o in enumerate(sig.object_ids):
        assert set(sig.values[row]) <= r.obj_sets[o]


def test_agreement_estimates_jaccard():
    # true J = 20 / 60 = 1/3 over a 200-feature universe
    a = set(range(0, 40))
    b = set(range(20, 60))
    r = two_set_relation(a, b)
    sig = minhash_signatures(r, make_hash_family(10_000, r.num_features, 11))
    agree = float((sig.values[0] == sig.values[1]).mean())
    assert abs(agree - exact_jaccard(a, b)) <= 0.02


def test_band_count_floor_rule():
    r = build_relation([("a", "x"), ("b", "x")])
    sig = minhash_signatures(r, make_hash_family(7, r.num_features, 0))
    seeds = lsh_buckets(sig, 3)
    # identical signatures co-bucket in every band: 7 // 3 = 2 bands, 1 unused
    assert {s.band for s in seeds} == {0, 1}
    assert all(s.bucket == frozenset({0, 1}) for s in seeds)
    assert all(len(s.key) == 3 for s in seeds)


def test_disjoint_objects_never_share_keys():
    a = set(range(4))
    b = set(range(4, 8))
    r = two_set_relation(a, b)
    fam = identity_family(6, r.num_features)
    sig = minhash_signatures(r, fam)
    for band in range(3):
        row_a = tuple(sig.values[0, band * 2 : (band + 1) * 2])
        row_b = tuple(sig.values[1, band * 2 : (band + 1) * 2])
        assert row_a != row_b
    assert lsh_buckets(sig, 2) == []


def test_singleton_buckets_discarded():
    r = build_relation([("a", "x"), ("b", "y")])
    sig = minhash_signatures(r, identity_family(4, r.num_features))
    assert lsh_buckets(sig, 2) == []


def test_bucket_members_produced_key():
    r = build_relation(
        [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y"), ("c", "x"), ("c", "z")]
    )
    sig = minhash_signatures(r, make_hash_family(40, r.num_features, 9))
    rows = {int(o): sig.values[i] for i, o in enumerate(sig.object_ids)}
    for seed in lsh_buckets(sig, 2):
        lo = seed.band * 2
        for o in seed.bucket:
            assert tuple(rows[o][lo : lo + 2]) == seed.key


def test_collision_probability_cases():
    assert collision_probability(1.0, 3, 5) == 1.0
    assert collision_probability(0.0, 3, 5) == 0.0
    assert collision_probability(0.5, 2, 3) == 0.578125


def test_collision_probability_validates():
    with pytest.raises(ValueError):
        collision_probability(1.5, 2, 3)
    with pytest.raises(ValueError):
        collision_probability(0.5, 0, 3)
