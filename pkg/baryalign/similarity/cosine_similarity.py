"""
Similitud coseno
"""

import numpy as np

from .base_similarity import BaseSimilarity


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """u·v / (||u|| ||v||); 0 si alguna norma es menor que 1e-12"""
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    v = np.asarray(v, dtype=np.float64).reshape(-1)
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu < BaseSimilarity.ZERO_NORM_THRESHOLD or nv < BaseSimilarity.ZERO_NORM_THRESHOLD:
        return 0.0
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


class CosineSimilarity(BaseSimilarity):
    """Similitud coseno entre filas (invariante a la escala de cada fila)"""

    def get_kind(self) -> str:
        return "cosine"

    def bounds(self):
        return (-1.0, 1.0)

    def rowwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        norms_a = np.linalg.norm(a, axis=1)
        norms_b = np.linalg.norm(b, axis=1)
        dots = np.einsum("ij,ij->i", a, b)

        valid = (norms_a >= self.ZERO_NORM_THRESHOLD) & (norms_b >= self.ZERO_NORM_THRESHOLD)
        result = np.zeros(a.shape[0], dtype=np.float64)
        result[valid] = dots[valid] / (norms_a[valid] * norms_b[valid])
        return np.clip(result, -1.0, 1.0)
