"""Like/dislike profile recommender driven by polarity-split co-clustering.

Ratings are binarized into a positive and a negative relation over users;
each polarity is co-clustered separately; the feature sets of a user's
co-clusters become like/dislike profiles, and items are scored by Jaccard
similarity of their features against the two profiles.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .metrics import jaccard
from .pipeline import PipelineParams, run_pipeline
from .relation import CoCluster, Relation, build_relation

log = logging.getLogger(__name__)

# Ratings strictly above this are positive; feature names carry the polarity
# as a trailing letter ("itemY" / "itemN").
LIKE_THRESHOLD = 2
POSITIVE_SUFFIX = "Y"
NEGATIVE_SUFFIX = "N"


class Prediction(Enum):
    LIKE = "LIKE"
    DISLIKE = "DISLIKE"
    ABSTAIN = "ABSTAIN"


@dataclass(frozen=True)
class RatingTuple:
    user: str
    item: str
    rating: int


@dataclass(frozen=True)
class UserProfile:
    user: str
    like: frozenset[str]
    dislike: frozenset[str]


def binarize_ratings(
    ratings: Sequence[RatingTuple],
    attributes: Mapping[str, Iterable[str]] | None = None,
) -> tuple[Relation, Relation]:
    """Split ratings into a positive and a negative user/feature relation.

    An item rated above LIKE_THRESHOLD emits (user, itemY) into the positive
    relation, otherwise (user, itemN) into the negative one.  When an
    item -> attribute map is given, each user's mean rating over the items
    carrying an attribute decides the polarity of that attribute feature.
    """
    if not ratings:
        raise ValueError("no ratings to binarize")
    positive: list[tuple[str, str]] = []
    negative: list[tuple[str, str]] = []
    for t in ratings:
        if t.rating > LIKE_THRESHOLD:
            positive.append((t.user, t.item + POSITIVE_SUFFIX))
        else:
            negative.append((t.user, t.item + NEGATIVE_SUFFIX))
    if attributes:
        rated_items = {t.item for t in ratings}
        unknown = sum(1 for item in attributes if item not in rated_items)
        if unknown:
            log.warning("%d attribute item(s) never rated; skipped", unknown)
        sums: dict[tuple[str, str], list[int]] = {}
        order: list[tuple[str, str]] = []
        for t in ratings:
            for attr in sorted(attributes.get(t.item, ())):
                key = (t.user, attr)
                if key not in sums:
                    sums[key] = []
                    order.append(key)
                sums[key].append(t.rating)
        for user, attr in order:
            values = sums[(user, attr)]
            if sum(values) / len(values) > LIKE_THRESHOLD:
                positive.append((user, attr + POSITIVE_SUFFIX))
            else:
                negative.append((user, attr + NEGATIVE_SUFFIX))
    return build_relation(positive), build_relation(negative)


def _collect_profile_features(
    cs: Sequence[CoCluster], rel: Relation
) -> dict[str, set[str]]:
    out: dict[str, set[str]] = {}
    for c in cs:
        feats = {rel.feature_names[f][:-1] for f in c.features}  # strip polarity
        for o in c.objects:
            out.setdefault(rel.object_names[o], set()).update(feats)
    return out


def build_profiles(
    pos_cs: Sequence[CoCluster],
    neg_cs: Sequence[CoCluster],
    pos_rel: Relation,
    neg_rel: Relation,
) -> list[UserProfile]:
    """Union co-cluster feature sets per user and drop the common part.

    A user appearing in no co-cluster gets an empty profile (predictions
    will abstain).  like ∩ dislike = ∅ holds by construction.
    """
    like = _collect_profile_features(pos_cs, pos_rel)
    dislike = _collect_profile_features(neg_cs, neg_rel)
    users = sorted(set(pos_rel.object_names) | set(neg_rel.object_names))
    profiles = []
    for user in users:
        l = like.get(user, set())
        d = dislike.get(user, set())
        common = l & d
        profiles.append(UserProfile(user, frozenset(l - common), frozenset(d - common)))
    return profiles


def predict_rating(profile: UserProfile, item_features: Iterable[str]) -> Prediction:
    """Side with the more similar profile; abstain on ties or no evidence.

    Similarity against an empty profile counts as 0.
    """
    item_features = frozenset(item_features)
    if not item_features:
        return Prediction.ABSTAIN
    sim_like = jaccard(item_features, profile.like) if profile.like else 0.0
    sim_dislike = jaccard(item_features, profile.dislike) if profile.dislike else 0.0
    if sim_like > sim_dislike:
        return Prediction.LIKE
    if sim_like < sim_dislike:
        return Prediction.DISLIKE
    return Prediction.ABSTAIN


def evaluate_accuracy(
    test: Sequence[RatingTuple], predictions: Sequence[Prediction]
) -> tuple[float, int]:
    """Accuracy over the covered (non-abstaining) predictions.

    Returns (accuracy, covered count); raises if nothing was covered.
    """
    if len(test) != len(predictions):
        raise ValueError("predictions must align with the test tuples")
    covered = correct = 0
    for t, p in zip(test, predictions):
        if p is Prediction.ABSTAIN:
            continue
        covered += 1
        truth = Prediction.LIKE if t.rating > LIKE_THRESHOLD else Prediction.DISLIKE
        if p is truth:
            correct += 1
    if covered == 0:
        raise ValueError("no covered predictions to score")
    return correct / covered, covered


def run_recommender(
    train: Sequence[RatingTuple],
    test: Sequence[RatingTuple],
    params: PipelineParams,
    attributes: Mapping[str, Iterable[str]] | None = None,
    threads: int = 1,
) -> tuple[list[Prediction], dict[str, UserProfile]]:
    """End-to-end demo: binarize, co-cluster both polarities, profile, predict."""
    pos_rel, neg_rel = binarize_ratings(train, attributes)
    pos_cs = run_pipeline(pos_rel, params, threads=threads) if pos_rel.num_pairs else []
    neg_cs = run_pipeline(neg_rel, params, threads=threads) if neg_rel.num_pairs else []
    profiles = {
        p.user: p for p in build_profiles(pos_cs, neg_cs, pos_rel, neg_rel)
    }
    predictions = []
    for t in test:
        profile = profiles.get(t.user)
        if profile is None:
            predictions.append(Prediction.ABSTAIN)
            continue
        features = {t.item}
        if attributes:
            features |= set(attributes.get(t.item, ()))
        predictions.append(predict_rating(profile, features))
    return predictions, profiles
