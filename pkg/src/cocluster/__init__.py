"""Hash-seeded co-clustering of sparse categorical data.

LSH over MinHash signatures proposes seed clusters, exact enumeration finds
every maximal dense block inside each seed's sub-relation, and a
density-bounded growth plus feature-set merging produce the final co-cluster
set.  Evaluation metrics, a profile-based recommender demo and a scaling
benchmark are included.
"""

from .hashing import (
    HashFamily,
    SeedCluster,
    SignatureMatrix,
    collision_probability,
    lsh_buckets,
    make_hash_family,
    minhash_signatures,
)
from .inclose import enumerate_concepts, is_canonical
from .metrics import (
    MetricsReport,
    cocluster_stats,
    jaccard,
    nmi,
    pmi,
    purity,
    report,
)
from .pipeline import (
    PipelineParams,
    filter_frequent_features,
    generate_seeds,
    grow_cocluster,
    merge_by_feature_set,
    run_pipeline,
)
from .recommender import (
    Prediction,
    RatingTuple,
    UserProfile,
    binarize_ratings,
    build_profiles,
    evaluate_accuracy,
    predict_rating,
    run_recommender,
)
from .relation import (
    CoCluster,
    LabeledDataset,
    Relation,
    block_fill,
    build_relation,
    density,
    induce_subrelation,
    make_cocluster,
    transpose,
)

__version__ = "0.1.0"

__all__ = [
    "CoCluster",
    "HashFamily",
    "LabeledDataset",
    "MetricsReport",
    "PipelineParams",
    "Prediction",
    "RatingTuple",
    "Relation",
    "SeedCluster",
    "SignatureMatrix",
    "UserProfile",
    "binarize_ratings",
    "block_fill",
    "build_profiles",
    "build_relation",
    "cocluster_stats",
    "collision_probability",
    "density",
    "enumerate_concepts",
    "evaluate_accuracy",
    "filter_frequent_features",
    "generate_seeds",
    "grow_cocluster",
    "induce_subrelation",
    "is_canonical",
    "jaccard",
    "lsh_buckets",
    "make_cocluster",
    "make_hash_family",
    "merge_by_feature_set",
    "minhash_signatures",
    "nmi",
    "pmi",
    "predict_rating",
    "purity",
    "report",
    "run_pipeline",
    "run_recommender",
    "transpose",
]
