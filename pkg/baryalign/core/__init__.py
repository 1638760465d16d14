"""
Módulo principal del sistema
"""

from .aligner import BarycenterAligner

__all__ = ['BarycenterAligner']
