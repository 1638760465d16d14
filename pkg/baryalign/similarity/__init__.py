"""
Similitudes entre representaciones en el espacio universal
"""

from .base_similarity import BaseSimilarity
from .cosine_similarity import CosineSimilarity, cosine
from .similarity_factory import SimilarityFactory

__all__ = ["BaseSimilarity", "CosineSimilarity", "cosine", "SimilarityFactory"]
