"""
Generación de pools sintéticos (copias rotadas de un latente común) y oráculos de fuerza bruta
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ..models import ModelPool, ReprMatrix, SynthSpec, SyntheticGroundTruth
from ..utils.exceptions import ShapeMismatch, ValidationError
from .pool_service import build_pool
from .procrustes_service import procrustes_objective

logger = logging.getLogger(__name__)


def make_rng(seed: int) -> np.random.Generator:
    """Generador portable y con nombre (PCG64) para que los oráculos se reproduzcan"""
    return np.random.Generator(np.random.PCG64(seed))


def _haar_correct(Q: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Absorber los signos de la diagonal de R en Q (admite lotes)"""
    signs = np.sign(np.diagonal(R, axis1=-2, axis2=-1)).copy()
    signs[signs == 0] = 1.0
    return Q * signs[..., None, :]


def random_orthogonal(d: int, seed: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Matriz ortogonal d×d con distribución de Haar (QR de una gaussiana con corrección de signos)"""
    if d < 1:
        raise ValidationError(f"d debe ser >= 1: {d}")
    rng = rng if rng is not None else make_rng(0 if seed is None else seed)
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    return _haar_correct(Q, R)


def _ids(prefix: str, count: int) -> Tuple[str, ...]:
    digits = max(4, len(str(count - 1)))
    return tuple(f"{prefix}-{i:0{digits}d}" for i in range(count))


def make_synthetic_pool(spec: SynthSpec) -> Tuple[ModelPool, ModelPool, SyntheticGroundTruth]:
    """
    Construir pools de entrenamiento y prueba X_i = Z·Q_i + ruido, Y_i = W·Q_i + ruido

    El ruido se sortea siempre y se escala por noise_sigma, así que para una
    semilla fija los pools con distinto ruido comparten latentes y rotaciones.
    Con width_schedule cada modelo conserva solo sus primeras d_i columnas.
    """
    if spec.n_train < spec.d:
        logger.warning(
            f"n_train={spec.n_train} < d={spec.d}: los latentes no tienen rango de columna completo"
        )

    rng = make_rng(spec.seed)
    Z = rng.standard_normal((spec.n_train, spec.d))
    W = rng.standard_normal((spec.m_test, spec.d))

    train_ids = _ids("train", spec.n_train)
    test_ids = _ids("test", spec.m_test)
    model_ids = _ids("model", spec.n_models)

    rotations = {}
    train_members = []
    test_members = []
    for index, model_id in enumerate(model_ids):
        Q = random_orthogonal(spec.d, rng=rng)
        train_noise = rng.standard_normal((spec.n_train, spec.d))
        test_noise = rng.standard_normal((spec.m_test, spec.d))
        X = Z @ Q + spec.noise_sigma * train_noise
        Y = W @ Q + spec.noise_sigma * test_noise

        width = spec.width_for(index)
        rotations[model_id] = Q
        train_members.append(ReprMatrix(model_id, train_ids, X[:, :width]))
        test_members.append(ReprMatrix(model_id, test_ids, Y[:, :width]))

    truth = SyntheticGroundTruth(train_latent=Z, test_latent=W, rotations=rotations)
    return build_pool(train_members, name="train"), build_pool(test_members, name="test"), truth


def _best_of(X: np.ndarray, M: np.ndarray, candidates: np.ndarray) -> float:
    """Mínimo de ||XR − M||_F² sobre un lote de matrices candidatas"""
    A = X.T @ M
    cross = np.einsum("bij,ij->b", candidates, A)
    best = int(np.argmax(cross))
    # ||XR−M||² = ||X||² + ||M||² − 2·tr(RᵀXᵀM); se recalcula el mejor de forma directa
    return procrustes_objective(X, candidates[best], M)


def brute_force_best_orthogonal(
    X: np.ndarray,
    M: np.ndarray,
    samples: int = 10_000,
    seed: int = 0,
    batch: int = 4096,
) -> float:
    """Cota superior: mínimo del objetivo sobre `samples` matrices ortogonales aleatorias (Haar)"""
    X = np.asarray(X, dtype=np.float64)
    M = np.asarray(M, dtype=np.float64)
    if X.shape != M.shape:
        raise ShapeMismatch(f"Las formas de X y M difieren ({X.shape} vs {M.shape})")
    d = X.shape[1]
    if d > 6:
        logger.warning(f"Oráculo de muestreo con d={d}: la cota será poco ajustada")

    rng = make_rng(seed)
    best = float("inf")
    remaining = samples
    while remaining > 0:
        size = min(batch, remaining)
        Q, R = np.linalg.qr(rng.standard_normal((size, d, d)))
        best = min(best, _best_of(X, M, _haar_correct(Q, R)))
        remaining -= size
    return best


def angle_sweep_best_orthogonal(X: np.ndarray, M: np.ndarray, steps: int = 10_000) -> float:
    """Barrido exhaustivo de O(2): `steps` ángulos en cada rama (rotación y reflexión)"""
    X = np.asarray(X, dtype=np.float64)
    M = np.asarray(M, dtype=np.float64)
    if X.shape != M.shape or X.shape[1] != 2:
        raise ShapeMismatch(f"El barrido angular requiere X y M de ancho 2, recibido {X.shape}, {M.shape}")

    theta = np.linspace(0.0, 2.0 * np.pi, steps, endpoint=False)
    c, s = np.cos(theta), np.sin(theta)
    rotations = np.stack([np.stack([c, -s], axis=1), np.stack([s, c], axis=1)], axis=1)
    reflections = np.stack([np.stack([c, s], axis=1), np.stack([s, -c], axis=1)], axis=1)
    return _best_of(X, M, np.concatenate([rotations, reflections]))
