"""
Servicio de construcción y validación de pools de modelos
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..models import ModelPool, ReprMatrix
from ..utils.exceptions import (
    DuplicateModelId,
    MismatchedStimuli,
    TargetTooSmall,
    TooFewModels,
    ValidationError,
)

logger = logging.getLogger(__name__)


def pad_pool(members: Sequence[ReprMatrix], target_width: int) -> List[ReprMatrix]:
    """
    Rellenar con columnas de ceros a la derecha hasta target_width

    Las columnas originales no cambian y las distancias entre filas se conservan.
    """
    if target_width < 1:
        raise ValidationError(f"target_width debe ser positivo: {target_width}")

    padded = []
    for member in members:
        if member.width > target_width:
            raise TargetTooSmall(
                f"{member.model_id}: ancho {member.width} mayor que el objetivo {target_width}"
            )
        if member.width == target_width:
            padded.append(member)
            continue

        zeros = np.zeros((member.n_stimuli, target_width - member.width), dtype=np.float64)
        padded.append(member.with_data(np.hstack([member.data, zeros])))
        logger.debug(f"{member.model_id}: relleno {member.width} -> {target_width}")

    return padded


def build_pool(members: Sequence[ReprMatrix], name: str = "pool") -> ModelPool:
    """Validar miembros y construir un pool con ancho común d = max(d_i)"""
    members = list(members)
    if len(members) < 2:
        raise TooFewModels(f"Un pool necesita al menos 2 modelos, recibidos {len(members)}")

    seen = set()
    for member in members:
        if member.model_id in seen:
            raise DuplicateModelId(f"model_id duplicado: {member.model_id}")
        seen.add(member.model_id)

    reference = members[0]
    for member in members[1:]:
        if member.stimulus_ids != reference.stimulus_ids:
            if set(member.stimulus_ids) == set(reference.stimulus_ids):
                detail = "mismos estímulos en distinto orden"
            else:
                detail = "estímulos distintos"
            raise MismatchedStimuli(
                f"{member.model_id} vs {reference.model_id}: {detail}"
            )

    common_width = max(m.width for m in members)
    padded = pad_pool(members, common_width)
    logger.info(
        f"Pool '{name}': {len(padded)} modelos, {reference.n_stimuli} estímulos, ancho común {common_width}"
    )
    return ModelPool(members=tuple(padded), common_width=common_width, name=name)


def center_pool(pool: ModelPool) -> Tuple[ModelPool, Dict[str, np.ndarray]]:
    """
    Restar la media por columna de cada miembro (preprocesado opcional)

    Devuelve el pool centrado y los offsets por modelo, que se aplican
    también a los datos de prueba al proyectar.
    """
    offsets = {}
    members = []
    for member in pool.members:
        offset = member.data.mean(axis=0)
        offset[member.original_width:] = 0.0
        offsets[member.model_id] = offset
        members.append(member.with_data(member.data - offset))
    return ModelPool(members=tuple(members), common_width=pool.common_width, name=pool.name), offsets
