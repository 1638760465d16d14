"""
Inferencia: proyección al espacio universal y puntuaciones de consistencia por estímulo
"""

import logging
from itertools import combinations, permutations
from typing import List, Optional

import numpy as np

from ..models import AlignmentModel, ConsistencyReport, ModelPool, ProjectedPool
from ..similarity import SimilarityFactory
from ..utils.exceptions import ModelPoolMismatch, TooFewModels, UnknownModelId, WidthMismatch
from ..utils.parallel import ordered_map

logger = logging.getLogger(__name__)


def project(test: ModelPool, model: AlignmentModel, allow_subset: bool = False) -> ProjectedPool:
    """
    Proyectar un pool de prueba con las transformaciones aprendidas: Y'_i = Y_i T_i

    Args:
        test: Pool de estímulos de prueba
        model: Modelo de alineamiento entrenado
        allow_subset: Permitir que el pool contenga solo parte de los modelos entrenados (>= 2)
    """
    unknown = [i for i in test.model_ids if i not in model.transforms]
    if unknown:
        raise UnknownModelId(f"Modelos sin transformación entrenada: {', '.join(unknown)}")

    missing = [i for i in model.model_ids if i not in test]
    if missing and not allow_subset:
        raise ModelPoolMismatch(
            f"Faltan modelos entrenados en el pool de prueba: {', '.join(missing)} "
            "(usa el modo sub-pool para puntuar un subconjunto)"
        )

    d = model.common_width
    projected = []
    for member in test.members:
        expected = model.original_widths[member.model_id]
        if member.original_width != expected:
            raise WidthMismatch(
                f"{member.model_id}: ancho {member.original_width}, entrenado con {expected}"
            )

        Y = np.zeros((member.n_stimuli, d), dtype=np.float64)
        Y[:, :expected] = member.raw
        if model.offsets is not None:
            Y = Y - model.offsets[member.model_id]
        projected.append(Y @ model.transforms[member.model_id])

    logger.info(f"Proyectados {test.n_models} modelos x {test.n_stimuli} estímulos al espacio universal")
    return ProjectedPool(
        members=tuple(projected),
        stimulus_ids=test.stimulus_ids,
        model_ids=tuple(test.model_ids),
    )


def consistency_scores(
    projected: ProjectedPool,
    sim: str = "cosine",
    ordered: bool = False,
    threads: int = 1,
) -> ConsistencyReport:
    """
    S_j = media de SIM(Y'_pj, Y'_qj) sobre los pares p ≠ q

    Con una similitud simétrica los pares ordenados y no ordenados dan el
    mismo resultado; ordered=True recorre los N(N−1) pares ordenados.
    """
    n_models = projected.n_models
    if n_models < 2:
        raise TooFewModels(f"Se necesitan al menos 2 modelos para puntuar, hay {n_models}")

    similarity = SimilarityFactory.create(sim)
    members = projected.members

    zero_rows = sum(similarity.zero_norm_rows(m) for m in members)
    if zero_rows:
        logger.warning(f"{zero_rows} filas con norma nula; su similitud se toma como 0")

    pairs = list(permutations(range(n_models), 2) if ordered else combinations(range(n_models), 2))
    values: List[np.ndarray] = ordered_map(
        lambda pair: similarity.rowwise(members[pair[0]], members[pair[1]]), pairs, threads
    )
    total = np.zeros(projected.n_stimuli, dtype=np.float64)
    for value in values:
        total += value
    scores = total / len(pairs)

    bounds = similarity.bounds()
    if bounds is not None:
        scores = np.clip(scores, *bounds)

    return ConsistencyReport(
        stimulus_ids=projected.stimulus_ids,
        scores=tuple(scores.tolist()),
        pool_model_ids=projected.model_ids,
        similarity_kind=similarity.kind,
        zero_norm_rows=zero_rows,
    )


def pair_similarity(
    projected: ProjectedPool,
    model_a: str,
    model_b: str,
    sim: str = "cosine",
) -> ConsistencyReport:
    """
    Similitud por estímulo entre dos modelos concretos del espacio universal

    Sirve, p. ej., como puntuación de compatibilidad imagen-texto cuando un
    modelo de visión y uno de lenguaje comparten el espacio.
    """
    if model_a == model_b:
        raise TooFewModels("pair_similarity necesita dos modelos distintos")
    similarity = SimilarityFactory.create(sim)
    a = projected.member(model_a)
    b = projected.member(model_b)
    zero_rows = similarity.zero_norm_rows(a) + similarity.zero_norm_rows(b)
    return ConsistencyReport(
        stimulus_ids=projected.stimulus_ids,
        scores=tuple(similarity.rowwise(a, b).tolist()),
        pool_model_ids=(model_a, model_b),
        similarity_kind=similarity.kind,
        zero_norm_rows=zero_rows,
    )


def subset_projected(projected: ProjectedPool, model_ids: Optional[List[str]]) -> ProjectedPool:
    """Restringir un pool proyectado a un sub-pool (>= 2 modelos)"""
    if not model_ids:
        return projected
    if len(model_ids) < 2:
        raise TooFewModels("Un sub-pool necesita al menos 2 modelos")
    return projected.subset(model_ids)
