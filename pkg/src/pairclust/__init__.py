"""Pairwise clustering from noisy similarity data.

Two clusterers (a Jaccard-robustified greedy extractor and a union-find
merger of positively labeled pairs), the distances that judge them
(Jaccard, Hamming over ordered pairs, misclassification error), side-
information graph quantities (effective resistance, cut-sizes, random
spanning trees), adversarial instance generators, and a seeded experiment
harness.
"""

from .core import (
    Clustering,
    SideInfoGraph,
    SimilarityGraph,
    TrainingSet,
    clustering_to_similarity,
    similarity_is_clustering,
)
from .experiment import (
    ExperimentRecord,
    adversarial_error_floor,
    pipeline_error_shape,
    rgca_error_bound,
    run_rgca_robustness,
    run_saca_scaling,
    saca_error_shape,
)
from .gen import (
    AdversarialInstanceT4,
    adversarial_t2,
    adversarial_t4,
    erdos_renyi,
    isolated_count,
    perturb_similarity,
    planted_clustering,
    sample_training_set,
)
from .graph import (
    ResistanceTable,
    cut_size,
    effective_resistance,
    resistance_sum_check,
    resistance_weighted_cut_size,
    sample_spanning_tree,
)
from .metrics import (
    AnomalyReport,
    count_anomalies,
    hamming_distance,
    jaccard_distance,
    misclassification_error,
)
from .rgca import RobustGraph, build_robust_graph, greedy_extract, rgca
from .rng import make_rng, trial_rng
from .saca import UnionFind, positive_component_oracle, saca

__version__ = "0.1.0"

__all__ = [
    "Clustering", "SimilarityGraph", "SideInfoGraph", "TrainingSet",
    "clustering_to_similarity", "similarity_is_clustering",
    "jaccard_distance", "hamming_distance", "misclassification_error",
    "count_anomalies", "AnomalyReport",
    "effective_resistance", "resistance_sum_check", "cut_size",
    "resistance_weighted_cut_size", "sample_spanning_tree", "ResistanceTable",
    "RobustGraph", "build_robust_graph", "greedy_extract", "rgca",
    "UnionFind", "saca", "positive_component_oracle",
    "planted_clustering", "sample_training_set", "perturb_similarity",
    "adversarial_t2", "adversarial_t4", "AdversarialInstanceT4",
    "erdos_renyi", "isolated_count",
    "ExperimentRecord", "rgca_error_bound", "adversarial_error_floor",
    "saca_error_shape", "pipeline_error_shape",
    "run_saca_scaling", "run_rgca_robustness",
    "make_rng", "trial_rng",
    "__version__",
]
