"""
Modelos de datos: matrices de representación y pools de modelos
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.exceptions import (
    DuplicateModelId,
    MismatchedStimuli,
    NonFiniteData,
    ShapeMismatch,
    TooFewModels,
    UnknownModelId,
    ValidationError,
)
from ..utils.validators import Validators


@dataclass(frozen=True)
class ReprMatrix:
    """Representación de un modelo sobre un conjunto de estímulos (fila = estímulo)"""
    model_id: str
    stimulus_ids: Tuple[str, ...]
    data: np.ndarray
    original_width: Optional[int] = None

    def __post_init__(self):
        """Validar y congelar la matriz"""
        if not Validators.validate_model_id(self.model_id):
            raise ValidationError(f"model_id inválido: {self.model_id!r}")

        data = np.array(self.data, dtype=np.float64, copy=True)
        if data.ndim != 2:
            raise ShapeMismatch(f"{self.model_id}: se esperaba una matriz 2D, dimensión {data.ndim}")
        n, d = data.shape
        if n < 1 or d < 1:
            raise ShapeMismatch(f"{self.model_id}: matriz vacía {data.shape}")

        ids = tuple(str(s) for s in self.stimulus_ids)
        if len(ids) != n:
            raise ShapeMismatch(
                f"{self.model_id}: {len(ids)} stimulus_ids para {n} filas"
            )
        if len(set(ids)) != n:
            raise ValidationError(f"{self.model_id}: stimulus_ids duplicados")
        invalid = [s for s in ids if not Validators.validate_stimulus_id(s)]
        if invalid:
            raise ValidationError(f"{self.model_id}: stimulus_id inválido {invalid[0]!r}")

        if not np.all(np.isfinite(data)):
            bad = int(np.count_nonzero(~np.isfinite(data)))
            raise NonFiniteData(f"{self.model_id}: {bad} entradas no finitas (NaN/inf)")

        width = d if self.original_width is None else int(self.original_width)
        if not 1 <= width <= d:
            raise ValidationError(
                f"{self.model_id}: original_width {width} fuera de rango para ancho {d}"
            )

        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "stimulus_ids", ids)
        object.__setattr__(self, "original_width", width)

    @property
    def n_stimuli(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def raw(self) -> np.ndarray:
        """Columnas originales, sin el relleno de ceros"""
        return self.data[:, :self.original_width]

    def with_data(self, data: np.ndarray, original_width: Optional[int] = None) -> "ReprMatrix":
        """Crear copia con otra matriz y los mismos estímulos"""
        return ReprMatrix(
            model_id=self.model_id,
            stimulus_ids=self.stimulus_ids,
            data=data,
            original_width=original_width if original_width is not None else self.original_width,
        )


@dataclass(frozen=True)
class ModelPool:
    """Colección ordenada de representaciones sobre los mismos estímulos, con ancho común"""
    members: Tuple[ReprMatrix, ...]
    common_width: int
    name: str = "pool"
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        """Validar invariantes del pool"""
        members = tuple(self.members)
        if len(members) < 2:
            raise TooFewModels(f"Un pool necesita al menos 2 modelos, recibidos {len(members)}")

        seen = set()
        for member in members:
            if member.model_id in seen:
                raise DuplicateModelId(f"model_id duplicado: {member.model_id}")
            seen.add(member.model_id)

        reference = members[0].stimulus_ids
        for member in members[1:]:
            if member.stimulus_ids != reference:
                raise MismatchedStimuli(
                    f"{member.model_id} no comparte los stimulus_ids de {members[0].model_id}"
                )

        for member in members:
            if member.width != self.common_width:
                raise ShapeMismatch(
                    f"{member.model_id}: ancho {member.width} distinto de common_width {self.common_width}"
                )

        object.__setattr__(self, "members", members)
        object.__setattr__(self, "_index", {m.model_id: i for i, m in enumerate(members)})

    @property
    def model_ids(self) -> List[str]:
        return [m.model_id for m in self.members]

    @property
    def stimulus_ids(self) -> Tuple[str, ...]:
        return self.members[0].stimulus_ids

    @property
    def n_models(self) -> int:
        return len(self.members)

    @property
    def n_stimuli(self) -> int:
        return self.members[0].n_stimuli

    @property
    def original_widths(self) -> Dict[str, int]:
        return {m.model_id: m.original_width for m in self.members}

    @property
    def matrices(self) -> List[np.ndarray]:
        return [m.data for m in self.members]

    def member(self, model_id: str) -> ReprMatrix:
        """Obtener miembro por model_id"""
        if model_id not in self._index:
            raise UnknownModelId(f"Modelo {model_id} no está en el pool {self.name}")
        return self.members[self._index[model_id]]

    def __contains__(self, model_id: str) -> bool:
        return model_id in self._index

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterable[ReprMatrix]:
        return iter(self.members)

    def reordered_rows(self, order: Sequence[int]) -> "ModelPool":
        """Aplicar la misma permutación de filas a todos los miembros"""
        order = list(order)
        members = tuple(
            ReprMatrix(
                model_id=m.model_id,
                stimulus_ids=tuple(m.stimulus_ids[i] for i in order),
                data=m.data[order],
                original_width=m.original_width,
            )
            for m in self.members
        )
        return ModelPool(members=members, common_width=self.common_width, name=self.name)
