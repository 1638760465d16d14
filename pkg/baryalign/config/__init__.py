"""
Configuración del sistema
"""

from .config_manager import ConfigManager, CONFIG_ENV_VAR

__all__ = ['ConfigManager', 'CONFIG_ENV_VAR']
