"""
Modelos de datos de inferencia y evaluación
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.exceptions import (
    DuplicateModelId,
    ShapeMismatch,
    TooFewModels,
    UnknownModelId,
    ValidationError,
)


@dataclass(frozen=True)
class ProjectedPool:
    """Representaciones de prueba proyectadas al espacio universal: Y'_i = Y_i T_i"""
    members: Tuple[np.ndarray, ...]
    stimulus_ids: Tuple[str, ...]
    model_ids: Tuple[str, ...]

    def __post_init__(self):
        members = []
        for matrix in self.members:
            matrix = np.array(matrix, dtype=np.float64, copy=True)
            if matrix.ndim != 2:
                raise ShapeMismatch("Cada miembro proyectado debe ser una matriz 2D")
            matrix.setflags(write=False)
            members.append(matrix)

        model_ids = tuple(self.model_ids)
        stimulus_ids = tuple(self.stimulus_ids)
        if len(members) != len(model_ids):
            raise ShapeMismatch(f"{len(members)} matrices para {len(model_ids)} model_ids")
        if len(set(model_ids)) != len(model_ids):
            raise DuplicateModelId("model_ids duplicados en el pool proyectado")
        if not members:
            raise TooFewModels("Pool proyectado vacío")

        shape = members[0].shape
        for model_id, matrix in zip(model_ids, members):
            if matrix.shape != shape:
                raise ShapeMismatch(f"{model_id}: forma {matrix.shape}, esperado {shape}")
            if not np.all(np.isfinite(matrix)):
                raise ValidationError(f"{model_id}: entradas no finitas")
        if len(stimulus_ids) != shape[0]:
            raise ShapeMismatch(f"{len(stimulus_ids)} stimulus_ids para {shape[0]} filas")

        object.__setattr__(self, "members", tuple(members))
        object.__setattr__(self, "stimulus_ids", stimulus_ids)
        object.__setattr__(self, "model_ids", model_ids)

    @property
    def n_models(self) -> int:
        return len(self.members)

    @property
    def n_stimuli(self) -> int:
        return self.members[0].shape[0]

    @property
    def width(self) -> int:
        return self.members[0].shape[1]

    def member(self, model_id: str) -> np.ndarray:
        if model_id not in self.model_ids:
            raise UnknownModelId(f"Modelo {model_id} no está en el pool proyectado")
        return self.members[self.model_ids.index(model_id)]

    def subset(self, model_ids: Sequence[str]) -> "ProjectedPool":
        """Sub-pool con los modelos indicados, en ese orden"""
        return ProjectedPool(
            members=tuple(self.member(i) for i in model_ids),
            stimulus_ids=self.stimulus_ids,
            model_ids=tuple(model_ids),
        )

    def reordered(self, model_order: Sequence[int] = None, row_order: Sequence[int] = None) -> "ProjectedPool":
        """Permutar el orden de los modelos y/o de los estímulos"""
        model_order = list(range(self.n_models)) if model_order is None else list(model_order)
        row_order = list(range(self.n_stimuli)) if row_order is None else list(row_order)
        return ProjectedPool(
            members=tuple(self.members[i][row_order] for i in model_order),
            stimulus_ids=tuple(self.stimulus_ids[j] for j in row_order),
            model_ids=tuple(self.model_ids[i] for i in model_order),
        )


@dataclass(frozen=True)
class ConsistencyReport:
    """Puntuaciones de consistencia representacional por estímulo"""
    stimulus_ids: Tuple[str, ...]
    scores: Tuple[float, ...]
    pool_model_ids: Tuple[str, ...]
    similarity_kind: str = "cosine"
    zero_norm_rows: int = 0

    def __post_init__(self):
        stimulus_ids = tuple(self.stimulus_ids)
        scores = tuple(float(s) for s in self.scores)
        if len(stimulus_ids) != len(scores):
            raise ShapeMismatch(f"{len(scores)} puntuaciones para {len(stimulus_ids)} estímulos")
        if self.similarity_kind == "cosine":
            outside = [s for s in scores if not -1.0 <= s <= 1.0]
            if outside:
                raise ValidationError(f"Puntuación coseno fuera de [-1, 1]: {outside[0]}")
        object.__setattr__(self, "stimulus_ids", stimulus_ids)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "pool_model_ids", tuple(self.pool_model_ids))

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.scores, dtype=np.float64)

    @property
    def mean_score(self) -> float:
        return float(np.mean(self.values))

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.stimulus_ids, self.scores))


@dataclass(frozen=True)
class EvalReport:
    """Métricas de calidad del alineamiento por modelo"""
    per_model_correlation: Dict[str, float]
    per_model_rms: Dict[str, float]
    per_model_retrieval: Dict[str, Dict[int, float]]
    ks: Tuple[int, ...]
    chance_levels: Dict[int, float]
    skipped_constant_dimensions: int = 0
    n_stimuli: int = 0
    cross_group_retrieval: Optional[Dict[str, Dict[int, float]]] = field(default=None)

    @property
    def model_ids(self) -> List[str]:
        return list(self.per_model_correlation)

    def pool_means(self) -> Dict[str, float]:
        """Promedios del pool para cada métrica (filas 'average' de las tablas)"""
        means = {
            "correlation": float(np.nanmean(list(self.per_model_correlation.values()))),
            "rms": float(np.mean(list(self.per_model_rms.values()))),
        }
        for k in self.ks:
            means[f"top{k}"] = float(np.mean([acc[k] for acc in self.per_model_retrieval.values()]))
        return means
