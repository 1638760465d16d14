"""
Métricas de calidad del espacio universal: correlación, RMS y recuperación top-K

Notación: N modelos, m estímulos, d dimensiones universales.
"""

import logging
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import distance

from ..models import ConsistencyReport, EvalReport, ProjectedPool
from ..utils.exceptions import KTooLarge, StimulusMismatch, TooFewModels, TooFewStimuli
from ..utils.parallel import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_KS = (1, 5, 10)

# Máximo de distancias por bloque en la recuperación
_BLOCK_ELEMENTS = 1 << 22


def _require_models(projected: ProjectedPool) -> None:
    if projected.n_models < 2:
        raise TooFewModels(f"Se necesitan al menos 2 modelos, hay {projected.n_models}")


def _pearson_columns(a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Correlación de Pearson por columna y máscara de columnas válidas (no constantes)"""
    valid = (np.ptp(a, axis=0) > 0) & (np.ptp(b, axis=0) > 0)
    ca = a - a.mean(axis=0)
    cb = b - b.mean(axis=0)
    rho = np.zeros(a.shape[1], dtype=np.float64)
    num = np.sum(ca[:, valid] * cb[:, valid], axis=0)
    den = np.sqrt(np.sum(ca[:, valid] ** 2, axis=0)) * np.sqrt(np.sum(cb[:, valid] ** 2, axis=0))
    rho[valid] = np.clip(num / den, -1.0, 1.0)
    return rho, valid


def correlation_details(projected: ProjectedPool) -> Tuple[Dict[str, float], int]:
    """
    Corr(i) y número de pares (ordenados) x dimensión omitidos por columnas constantes

    Las columnas de relleno con ceros son constantes: Pearson no está
    definido ahí y se omiten en lugar de imputar un valor.
    """
    _require_models(projected)
    if projected.n_stimuli < 3:
        raise TooFewStimuli(f"La correlación necesita m >= 3 estímulos, hay {projected.n_stimuli}")

    members = projected.members
    scores = {}
    skipped = 0
    for i, model_id in enumerate(projected.model_ids):
        collected = []
        for j in range(projected.n_models):
            if j == i:
                continue
            rho, valid = _pearson_columns(members[i], members[j])
            collected.append(rho[valid])
            skipped += int(np.count_nonzero(~valid))
        values = np.concatenate(collected)
        if values.size == 0:
            logger.warning(f"{model_id}: todas las dimensiones son constantes; Corr indefinida")
            scores[model_id] = float("nan")
        else:
            scores[model_id] = float(np.mean(values))

    if skipped:
        logger.warning(f"{skipped} combinaciones (par, dimensión) omitidas por columnas constantes")
    return scores, skipped


def correlation_score(projected: ProjectedPool) -> Dict[str, float]:
    """Corr(i): media de ρ_d^(i,j) sobre j ≠ i y dimensiones no constantes"""
    return correlation_details(projected)[0]


def rms_score(projected: ProjectedPool) -> Dict[str, float]:
    """RMS(i): media de RMS_d^(i,j) sobre j ≠ i y todas las dimensiones"""
    _require_models(projected)
    members = projected.members
    scores = {}
    for i, model_id in enumerate(projected.model_ids):
        per_pair = [
            np.sqrt(np.mean((members[i] - members[j]) ** 2, axis=0))
            for j in range(projected.n_models) if j != i
        ]
        scores[model_id] = float(np.mean(np.concatenate(per_pair)))
    return scores


def _validate_ks(ks: Sequence[int], n_stimuli: int) -> Tuple[int, ...]:
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise KTooLarge("Lista de K vacía")
    for k in ks:
        if not 1 <= k <= n_stimuli:
            raise KTooLarge(f"K={k} fuera de rango 1..{n_stimuli}")
    return ks


def match_ranks(query: np.ndarray, gallery: np.ndarray) -> np.ndarray:
    """
    Posición (0 = más cercano) del estímulo correcto entre todas las filas de la galería

    Orden por (distancia euclídea, índice de fila) ascendente, así que los
    empates se resuelven de forma determinista.
    """
    m = gallery.shape[0]
    ranks = np.empty(query.shape[0], dtype=np.int64)
    block = max(1, _BLOCK_ELEMENTS // m)
    for start in range(0, query.shape[0], block):
        stop = min(start + block, query.shape[0])
        distances = distance.cdist(query[start:stop], gallery, metric="euclidean")
        rows = np.arange(stop - start)
        own = distances[rows, np.arange(start, stop)][:, None]
        closer = np.sum(distances < own, axis=1)
        tied_before = np.sum((distances == own) & (np.arange(m)[None, :] < np.arange(start, stop)[:, None]), axis=1)
        ranks[start:stop] = closer + tied_before
    return ranks


def retrieval_accuracy(
    projected: ProjectedPool,
    ks: Sequence[int] = DEFAULT_KS,
    threads: int = 1,
) -> Dict[str, Dict[int, float]]:
    """
    Acc_K(i): fracción de estímulos x cuyo par en el modelo j está entre los K más cercanos

    Dirección: consulta en el modelo i, galería en el modelo j, promedio sobre j ≠ i.
    """
    _require_models(projected)
    ks = _validate_ks(ks, projected.n_stimuli)
    members = projected.members
    pairs = list(permutations(range(projected.n_models), 2))
    ranks = ordered_map(lambda pair: match_ranks(members[pair[0]], members[pair[1]]), pairs, threads)

    result = {}
    for i, model_id in enumerate(projected.model_ids):
        own = np.concatenate([r for (q, _), r in zip(pairs, ranks) if q == i])
        result[model_id] = {k: float(np.mean(own < k)) for k in ks}
    return result


def cross_group_retrieval(
    projected: ProjectedPool,
    query_models: Sequence[str],
    gallery_models: Sequence[str],
    ks: Sequence[int] = DEFAULT_KS,
    threads: int = 1,
) -> Dict[int, float]:
    """
    Recuperación dirigida de un sub-pool a otro (p. ej. texto -> imagen)

    Promedia sobre todos los pares (consulta, galería) con modelos distintos y
    sobre todos los estímulos.
    """
    ks = _validate_ks(ks, projected.n_stimuli)
    pairs = [(q, g) for q in query_models for g in gallery_models if q != g]
    if not pairs:
        raise TooFewModels("No hay pares (consulta, galería) con modelos distintos")
    ranks = ordered_map(
        lambda pair: match_ranks(projected.member(pair[0]), projected.member(pair[1])), pairs, threads
    )
    all_ranks = np.concatenate(ranks)
    return {k: float(np.mean(all_ranks < k)) for k in ks}


def chance_level(m: int, k: int) -> float:
    """Precisión top-K esperada con un orden aleatorio de m estímulos: K/m"""
    if m < 1 or not 1 <= k <= m:
        raise KTooLarge(f"K={k} fuera de rango 1..{m}")
    return k / m


def score_correlation(a: ConsistencyReport, b: ConsistencyReport) -> float:
    """Correlación de Pearson entre dos vectores de puntuaciones de consistencia"""
    if a.stimulus_ids != b.stimulus_ids:
        raise StimulusMismatch("Los reportes no comparten estímulos en el mismo orden")
    if len(a.scores) < 3:
        raise TooFewStimuli(f"Se necesitan m >= 3 estímulos, hay {len(a.scores)}")

    if np.ptp(a.values) == 0 or np.ptp(b.values) == 0:
        logger.warning("Puntuaciones constantes; la correlación no está definida")
        return float("nan")
    x = a.values - a.values.mean()
    y = b.values - b.values.mean()
    den = np.sqrt(np.sum(x * x)) * np.sqrt(np.sum(y * y))
    return float(np.clip(np.sum(x * y) / den, -1.0, 1.0))


def evaluate(
    projected: ProjectedPool,
    ks: Sequence[int] = DEFAULT_KS,
    threads: int = 1,
    query_models: Optional[List[str]] = None,
    gallery_models: Optional[List[str]] = None,
) -> EvalReport:
    """Calcular todas las métricas de un pool proyectado"""
    ks = _validate_ks(ks, projected.n_stimuli)
    correlation, skipped = correlation_details(projected)
    cross = None
    if query_models and gallery_models:
        cross = {
            "forward": cross_group_retrieval(projected, query_models, gallery_models, ks, threads),
            "backward": cross_group_retrieval(projected, gallery_models, query_models, ks, threads),
        }
    return EvalReport(
        per_model_correlation=correlation,
        per_model_rms=rms_score(projected),
        per_model_retrieval=retrieval_accuracy(projected, ks, threads),
        ks=ks,
        chance_levels={k: chance_level(projected.n_stimuli, k) for k in ks},
        skipped_constant_dimensions=skipped,
        n_stimuli=projected.n_stimuli,
        cross_group_retrieval=cross,
    )
