"""
Factory para crear similitudes según su tipo
"""

from typing import List

from ..utils.exceptions import ValidationError
from .base_similarity import BaseSimilarity
from .cosine_similarity import CosineSimilarity


class SimilarityFactory:
    """Factory para crear similitudes específicas"""

    _similarities = {
        "cosine": CosineSimilarity,
    }

    @classmethod
    def create(cls, kind: str) -> BaseSimilarity:
        """Crear similitud para el tipo indicado"""
        if kind not in cls._similarities:
            raise ValidationError(
                f"Similitud no soportada: {kind} (disponibles: {', '.join(cls.get_supported_kinds())})"
            )
        return cls._similarities[kind]()

    @classmethod
    def get_supported_kinds(cls) -> List[str]:
        """Obtener tipos de similitud soportados"""
        return list(cls._similarities.keys())

    @classmethod
    def get_similarity_info(cls, kind: str) -> dict:
        """Obtener información sobre una similitud"""
        if kind not in cls._similarities:
            return {}
        similarity_class = cls._similarities[kind]
        instance = similarity_class()
        return {
            "kind": kind,
            "name": similarity_class.__name__,
            "description": similarity_class.__doc__ or f"Similitud {kind}",
            "bounds": instance.bounds(),
        }
