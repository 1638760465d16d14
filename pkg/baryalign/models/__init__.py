"""
Modelos de datos - Archivo de inicialización
"""

from .repr_matrix import ReprMatrix, ModelPool
from .alignment import (
    AlignmentModel,
    ProcrustesSolution,
    TrainConfig,
    TrainTrace,
    TrainingMeta,
    orthogonality_error,
)
from .reports import ProjectedPool, ConsistencyReport, EvalReport
from .synth_spec import SynthSpec, SyntheticGroundTruth, GENERATOR_NAME
from .global_config import GlobalConfig

__all__ = [
    'ReprMatrix', 'ModelPool', 'AlignmentModel', 'ProcrustesSolution', 'TrainConfig',
    'TrainTrace', 'TrainingMeta', 'orthogonality_error', 'ProjectedPool',
    'ConsistencyReport', 'EvalReport', 'SynthSpec', 'SyntheticGroundTruth', 'GENERATOR_NAME',
    'GlobalConfig',
]
