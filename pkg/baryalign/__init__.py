"""
BaryAlign - Alineamiento de representaciones por baricentro de Procrustes
Espacio universal compartido por muchos modelos y puntuación de consistencia por estímulo
"""

__version__ = "1.0.0"
__description__ = "Alineamiento de representaciones por baricentro de Procrustes con puntuación de consistencia"
__author__ = "BaryAlign Team"

from .core.aligner import BarycenterAligner
from .models import AlignmentModel, ModelPool, ReprMatrix
from .services import (
    build_pool,
    consistency_scores,
    evaluate,
    project,
    train_barycenter,
)

__all__ = [
    'BarycenterAligner', 'AlignmentModel', 'ModelPool', 'ReprMatrix',
    'build_pool', 'consistency_scores', 'evaluate', 'project', 'train_barycenter',
]
