"""
Paralelismo determinista para secciones "parallel-for"
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int) -> int:
    """0 = automático (número de CPUs)"""
    if threads < 0:
        raise ValueError(f"threads debe ser >= 0: {threads}")
    if threads == 0:
        return os.cpu_count() or 1
    return threads


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """
    Aplicar fn a cada elemento y devolver los resultados en el orden de entrada

    Las reducciones se hacen fuera, en orden fijo, así el resultado no depende
    del número de hilos.
    """
    items = list(items)
    workers = min(resolve_threads(threads), max(len(items), 1))
    if workers <= 1:
        return [fn(item) for item in items]

    logger.debug(f"ordered_map: {len(items)} tareas en {workers} hilos")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, items))
