"""
Valores por defecto de los comandos, sobrescribibles desde archivo y CLI
"""

from dataclasses import dataclass, fields
from typing import Tuple

from ..utils.exceptions import InvalidConfig
from ..utils.logger import LOG_LEVELS

REPORT_FORMATS = ("tsv", "table")


@dataclass(frozen=True)
class GlobalConfig:
    """Configuración global del sistema"""
    epsilon: float = 1e-6
    max_iterations: int = 100
    ks: Tuple[int, ...] = (1, 5, 10)
    threads: int = 0
    similarity: str = "cosine"
    center: bool = False
    log_level: str = "WARNING"
    report_format: str = "tsv"
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "epsilon", float(self.epsilon))
            object.__setattr__(self, "max_iterations", int(self.max_iterations))
            object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
            object.__setattr__(self, "threads", int(self.threads))
            object.__setattr__(self, "seed", int(self.seed))
        except (TypeError, ValueError) as e:
            raise InvalidConfig(f"Valor de configuración inválido: {e}") from e
        object.__setattr__(self, "log_level", str(self.log_level).upper())

        if not self.epsilon > 0:
            raise InvalidConfig(f"epsilon debe ser positivo: {self.epsilon}")
        if self.max_iterations < 1:
            raise InvalidConfig(f"max_iterations debe ser >= 1: {self.max_iterations}")
        if not self.ks or any(k < 1 for k in self.ks):
            raise InvalidConfig(f"ks debe contener enteros >= 1: {list(self.ks)}")
        if self.threads < 0:
            raise InvalidConfig(f"threads debe ser >= 0: {self.threads}")
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidConfig(f"seed fuera de rango: {self.seed}")
        if not isinstance(self.center, bool):
            raise InvalidConfig(f"center debe ser booleano: {self.center!r}")
        if self.log_level not in LOG_LEVELS:
            raise InvalidConfig(f"log_level inválido: {self.log_level}")
        if self.report_format not in REPORT_FORMATS:
            raise InvalidConfig(f"report_format debe ser uno de {', '.join(REPORT_FORMATS)}")

        from ..similarity import SimilarityFactory
        if self.similarity not in SimilarityFactory.get_supported_kinds():
            raise InvalidConfig(f"Similitud no soportada: {self.similarity}")

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def to_dict(self) -> dict:
        """Convertir a diccionario"""
        return {
            "epsilon": self.epsilon,
            "max_iterations": self.max_iterations,
            "ks": list(self.ks),
            "threads": self.threads,
            "similarity": self.similarity,
            "center": self.center,
            "log_level": self.log_level,
            "report_format": self.report_format,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GlobalConfig":
        """Crear instancia desde diccionario (solo claves conocidas)"""
        return cls(**{k: v for k, v in data.items() if k in cls.field_names()})
