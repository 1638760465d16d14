"""
Gestión de configuración del sistema
"""

import json
import logging
import os
from dataclasses import replace
from pathlib import Path
from typing import Optional

from ..models import GlobalConfig
from ..utils.exceptions import InvalidConfig, IoFailure, ManifestParse, MissingFile

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "BARYALIGN_CONFIG"
DEFAULT_CONFIG_FILE = Path("~/.config/baryalign/config.json")


class ConfigManager:
    """Gestor del archivo de valores por defecto"""

    def __init__(self, config_file: Optional[Path] = None):
        """
        Args:
            config_file: Ruta explícita (--config); si falta se usa $BARYALIGN_CONFIG
                o ~/.config/baryalign/config.json
        """
        self.explicit = config_file is not None or bool(os.environ.get(CONFIG_ENV_VAR))
        self.config_file = self.resolve_path(config_file)

    @staticmethod
    def resolve_path(config_file: Optional[Path] = None) -> Path:
        """Ruta efectiva del archivo de configuración"""
        if config_file is not None:
            return Path(config_file).expanduser()
        env_value = os.environ.get(CONFIG_ENV_VAR)
        if env_value:
            return Path(env_value).expanduser()
        return DEFAULT_CONFIG_FILE.expanduser()

    def load_config(self) -> GlobalConfig:
        """
        Cargar configuración desde archivo JSON

        Un archivo ausente en la ubicación por defecto devuelve los valores por
        defecto; una ruta explícita inexistente es un error.
        """
        if not self.config_file.exists():
            if self.explicit:
                raise MissingFile(f"Archivo de configuración no encontrado: {self.config_file}")
            logger.debug(f"Sin archivo de configuración en {self.config_file}, usando valores por defecto")
            return GlobalConfig()

        try:
            with open(self.config_file, "r", encoding="utf-8") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ManifestParse(f"Configuración inválida en {self.config_file}: {e}") from e
        except OSError as e:
            raise IoFailure(f"No se pudo leer {self.config_file}: {e}") from e

        if not isinstance(data, dict):
            raise InvalidConfig(f"{self.config_file}: se esperaba un objeto JSON")

        unknown = sorted(set(data) - set(GlobalConfig.field_names()))
        for key in unknown:
            logger.warning(f"Clave de configuración desconocida ignorada: {key}")

        config = GlobalConfig.from_dict(data)
        logger.info(f"Configuración cargada desde {self.config_file}")
        return config

    def save_config(self, config: GlobalConfig):
        """Guardar configuración en archivo JSON"""
        try:
            self.config_file.parent.mkdir(parents=True, exist_ok=True)
            tmp = self.config_file.with_name(f".{self.config_file.name}.tmp")
            with open(tmp, "w", encoding="utf-8") as f:
                json.dump(config.to_dict(), f, indent=2, ensure_ascii=False)
                f.write("\n")
            os.replace(tmp, self.config_file)
        except OSError as e:
            raise IoFailure(f"Error guardando configuración: {e}") from e

    @staticmethod
    def merge_overrides(config: GlobalConfig, **overrides) -> GlobalConfig:
        """Aplicar valores del CLI; los None no sobrescriben"""
        values = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(values) - set(GlobalConfig.field_names())
        if unknown:
            raise InvalidConfig(f"Claves desconocidas: {', '.join(sorted(unknown))}")
        return replace(config, **values)
