"""
Utilidades varias
"""

from .validators import Validators
from .progress_manager import ProgressManager
from .logger import Logger, LogLevel, setup_logging
from .parallel import ordered_map, resolve_threads

__all__ = ['Validators', 'ProgressManager', 'Logger', 'LogLevel', 'setup_logging', 'ordered_map', 'resolve_threads']
