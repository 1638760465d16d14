"""
Módulo base para funciones de similitud entre representaciones alineadas
"""

from abc import ABC, abstractmethod
from typing import Optional, Tuple

import numpy as np


class BaseSimilarity(ABC):
    """Clase base para todas las similitudes"""

    # Filas con norma por debajo de este umbral se consideran nulas
    ZERO_NORM_THRESHOLD = 1e-12

    def __init__(self):
        self.kind = self.get_kind()

    @abstractmethod
    def get_kind(self) -> str:
        """Retorna el identificador de la similitud"""
        pass

    @abstractmethod
    def rowwise(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Similitud entre filas correspondientes de a y b (vector de longitud m)"""
        pass

    def bounds(self) -> Optional[Tuple[float, float]]:
        """Rango de valores posible, si es acotado"""
        return None

    def zero_norm_rows(self, matrix: np.ndarray) -> int:
        """Número de filas con norma despreciable"""
        return int(np.count_nonzero(np.linalg.norm(matrix, axis=1) < self.ZERO_NORM_THRESHOLD))
