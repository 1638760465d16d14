"""
Modelos de datos del entrenamiento: configuración, traza y modelo de alineamiento
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..utils.exceptions import InvalidConfig, ModelPoolMismatch, ShapeMismatch, ValidationError

ORTHOGONALITY_TOLERANCE = 1e-8


def orthogonality_error(matrix: np.ndarray) -> float:
    """||RᵀR − I||_F"""
    return float(np.linalg.norm(matrix.T @ matrix - np.eye(matrix.shape[1])))


@dataclass(frozen=True)
class ProcrustesSolution:
    """Solución del problema de Procrustes ortogonal"""
    rotation: np.ndarray
    objective: float


@dataclass
class TrainConfig:
    """Configuración del entrenamiento del baricentro"""
    epsilon: float = 1e-6
    max_iterations: int = 100
    record_trace: bool = False
    threads: int = 1

    def __post_init__(self):
        if not (isinstance(self.epsilon, (int, float)) and self.epsilon > 0):
            raise InvalidConfig(f"epsilon debe ser positivo: {self.epsilon}")
        if not isinstance(self.max_iterations, int) or self.max_iterations < 1:
            raise InvalidConfig(f"max_iterations debe ser >= 1: {self.max_iterations}")
        if not isinstance(self.threads, int) or self.threads < 0:
            raise InvalidConfig(f"threads debe ser >= 0: {self.threads}")


@dataclass
class TrainTrace:
    """Objetivos y cambios relativos por iteración"""
    objectives: List[float] = field(default_factory=list)
    relative_changes: List[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "objectives": list(self.objectives),
            "relative_changes": list(self.relative_changes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TrainTrace":
        return cls(
            objectives=[float(v) for v in data.get("objectives", [])],
            relative_changes=[float(v) for v in data.get("relative_changes", [])],
        )


@dataclass(frozen=True)
class TrainingMeta:
    """Metadatos del entrenamiento"""
    iterations_run: int
    final_relative_change: float
    final_objective: float
    epsilon: float
    max_iterations: int
    converged: bool
    centered: bool = False

    def to_dict(self) -> dict:
        """Convertir a diccionario para serialización"""
        return {
            "iterations_run": self.iterations_run,
            "final_relative_change": self.final_relative_change,
            "final_objective": self.final_objective,
            "epsilon": self.epsilon,
            "max_iterations": self.max_iterations,
            "converged": self.converged,
            "centered": self.centered,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TrainingMeta":
        """Crear instancia desde diccionario"""
        if not data or not isinstance(data, dict):
            raise ValueError("Datos inválidos: se esperaba un diccionario no vacío")

        required_fields = [
            "iterations_run", "final_relative_change", "final_objective",
            "epsilon", "max_iterations", "converged",
        ]
        missing_fields = [f for f in required_fields if data.get(f) is None]
        if missing_fields:
            raise ValueError(f"Campo requerido faltante: {', '.join(missing_fields)}")

        return cls(
            iterations_run=int(data["iterations_run"]),
            final_relative_change=float(data["final_relative_change"]),
            final_objective=float(data["final_objective"]),
            epsilon=float(data["epsilon"]),
            max_iterations=int(data["max_iterations"]),
            converged=bool(data["converged"]),
            centered=bool(data.get("centered", False)),
        )


@dataclass(frozen=True)
class AlignmentModel:
    """Artefacto entrenado: plantilla baricéntrica y transformaciones ortogonales por modelo"""
    barycenter: np.ndarray
    transforms: Dict[str, np.ndarray]
    original_widths: Dict[str, int]
    training_meta: TrainingMeta
    offsets: Optional[Dict[str, np.ndarray]] = None
    trace: Optional[TrainTrace] = None

    def __post_init__(self):
        barycenter = np.array(self.barycenter, dtype=np.float64, copy=True)
        if barycenter.ndim != 2:
            raise ShapeMismatch(f"El baricentro debe ser 2D, dimensión {barycenter.ndim}")
        d = barycenter.shape[1]

        if list(self.transforms) != list(self.original_widths):
            raise ModelPoolMismatch(
                "transforms y original_widths no cubren los mismos modelos en el mismo orden"
            )
        if len(self.transforms) < 2:
            raise ModelPoolMismatch("Un modelo de alineamiento necesita al menos 2 transformaciones")

        transforms = {}
        for model_id, matrix in self.transforms.items():
            matrix = np.array(matrix, dtype=np.float64, copy=True)
            if matrix.shape != (d, d):
                raise ShapeMismatch(f"{model_id}: transformación {matrix.shape}, esperado {(d, d)}")
            if orthogonality_error(matrix) > ORTHOGONALITY_TOLERANCE:
                raise ValidationError(f"{model_id}: la transformación no es ortogonal")
            matrix.setflags(write=False)
            transforms[model_id] = matrix

        widths = {}
        for model_id, width in self.original_widths.items():
            if not 1 <= int(width) <= d:
                raise ValidationError(f"{model_id}: original_width {width} fuera de rango")
            widths[model_id] = int(width)

        offsets = None
        if self.offsets is not None:
            if set(self.offsets) != set(transforms):
                raise ModelPoolMismatch("offsets no cubren los modelos entrenados")
            offsets = {}
            for model_id in transforms:
                vector = np.array(self.offsets[model_id], dtype=np.float64, copy=True).reshape(-1)
                if vector.shape != (d,):
                    raise ShapeMismatch(f"{model_id}: offset {vector.shape}, esperado {(d,)}")
                vector.setflags(write=False)
                offsets[model_id] = vector

        barycenter.setflags(write=False)
        object.__setattr__(self, "barycenter", barycenter)
        object.__setattr__(self, "transforms", transforms)
        object.__setattr__(self, "original_widths", widths)
        object.__setattr__(self, "offsets", offsets)

    @property
    def model_ids(self) -> List[str]:
        return list(self.transforms)

    @property
    def common_width(self) -> int:
        return self.barycenter.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.barycenter.shape
