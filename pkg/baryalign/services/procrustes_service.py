"""
Solver de Procrustes ortogonal en forma cerrada

Dado X y M de igual forma, encuentra R ortogonal que minimiza ||XR − M||_F.
Se permiten reflexiones (grupo O(d) completo): R = UVᵀ sin corrección de
determinante, con A = XᵀM = UΣVᵀ.
"""

import numpy as np

from ..models import ProcrustesSolution
from ..utils.exceptions import NonFiniteInput, ShapeMismatch, SvdFailure


def _as_matrix(values, name: str) -> np.ndarray:
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2:
        raise ShapeMismatch(f"{name}: se esperaba ndim 2, observado {matrix.ndim}")
    return matrix


def procrustes_objective(X: np.ndarray, R: np.ndarray, M: np.ndarray) -> float:
    """||XR − M||_F²"""
    X = _as_matrix(X, "X")
    R = _as_matrix(R, "R")
    M = _as_matrix(M, "M")
    if R.shape != (X.shape[1], X.shape[1]) or M.shape != X.shape:
        raise ShapeMismatch(
            f"Formas incompatibles: X {X.shape}, R {R.shape}, M {M.shape}"
        )
    residual = X @ R - M
    return float(np.sum(residual * residual))


def solve_orthogonal_procrustes(X: np.ndarray, M: np.ndarray) -> ProcrustesSolution:
    """
    Resolver argmin_{R ∈ O(d)} ||XR − M||_F

    Args:
        X: Matriz a alinear (n×d)
        M: Matriz objetivo (n×d)

    Returns:
        ProcrustesSolution con la matriz ortogonal y el valor del objetivo

    Si XᵀM es de rango deficiente el minimizador no es único; se devuelve
    el que da la SVD.
    """
    X = _as_matrix(X, "X")
    M = _as_matrix(M, "M")
    if X.shape != M.shape:
        raise ShapeMismatch(f"Las formas de X y M difieren ({X.shape} vs {M.shape})")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(M))):
        raise NonFiniteInput("X o M contienen NaN o infinitos")

    A = X.T @ M
    try:
        U, _, Vt = np.linalg.svd(A)
    except np.linalg.LinAlgError as e:
        raise SvdFailure(f"La SVD de XᵀM no convergió: {e}") from e

    R = U @ Vt
    return ProcrustesSolution(rotation=R, objective=procrustes_objective(X, R, M))
