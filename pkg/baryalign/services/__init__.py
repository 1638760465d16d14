"""
Servicios especializados
"""

from .pool_service import build_pool, pad_pool, center_pool
from .procrustes_service import solve_orthogonal_procrustes, procrustes_objective
from .barycenter_service import train_barycenter, total_objective
from .scoring_service import project, consistency_scores, pair_similarity, subset_projected
from .metrics_service import (
    DEFAULT_KS,
    correlation_score,
    correlation_details,
    rms_score,
    retrieval_accuracy,
    cross_group_retrieval,
    chance_level,
    score_correlation,
    evaluate,
)
from .synth_service import (
    random_orthogonal,
    make_synthetic_pool,
    brute_force_best_orthogonal,
    angle_sweep_best_orthogonal,
)
from . import storage_service

__all__ = [
    'build_pool', 'pad_pool', 'center_pool',
    'solve_orthogonal_procrustes', 'procrustes_objective',
    'train_barycenter', 'total_objective',
    'project', 'consistency_scores', 'pair_similarity', 'subset_projected',
    'DEFAULT_KS', 'correlation_score', 'correlation_details', 'rms_score', 'retrieval_accuracy',
    'cross_group_retrieval', 'chance_level', 'score_correlation', 'evaluate',
    'random_orthogonal', 'make_synthetic_pool', 'brute_force_best_orthogonal',
    'angle_sweep_best_orthogonal', 'storage_service',
]
