"""
Salida de consola estructurada para BaryAlign

Los módulos de librería usan logging.getLogger(__name__); esta clase solo
formatea lo que el CLI muestra al usuario.
"""

import logging
from datetime import datetime
from enum import Enum
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class LogLevel(Enum):
    """Niveles de log"""
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"


def setup_logging(level: str = "WARNING", console: Optional[Console] = None) -> None:
    """
    Instalar un RichHandler en el logger raíz

    Args:
        level: Nombre del nivel (DEBUG..CRITICAL)
        console: Consola de destino (stderr por defecto)
    """
    level = level.upper()
    if level not in LOG_LEVELS:
        raise ValueError(f"Nivel de log inválido: {level}")

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
        markup=False,
    )
    root = logging.getLogger()
    for existing in list(root.handlers):
        if isinstance(existing, RichHandler):
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(getattr(logging, level))


class Logger:
    """Logger de consola con niveles y pasos"""

    LEVEL_CONFIG = {
        LogLevel.DEBUG: {"icon": "🔍", "style": "dim cyan", "prefix": "DEBUG"},
        LogLevel.INFO: {"icon": "ℹ️", "style": "blue", "prefix": "INFO"},
        LogLevel.WARNING: {"icon": "⚠️", "style": "yellow", "prefix": "WARN"},
        LogLevel.ERROR: {"icon": "❌", "style": "bold red", "prefix": "ERROR"},
    }

    def __init__(self, verbose: bool = False, quiet: bool = False, console: Optional[Console] = None):
        """
        Inicializar logger

        Args:
            verbose: Mostrar mensajes DEBUG con timestamp
            quiet: Mostrar solo errores
            console: Consola rich (stderr por defecto)
        """
        self.console = console or Console(stderr=True)
        self.verbose = verbose
        self.quiet = quiet

    def _should_log(self, level: LogLevel) -> bool:
        if self.quiet:
            return level == LogLevel.ERROR
        if not self.verbose and level == LogLevel.DEBUG:
            return False
        return True

    def _format_message(self, message: str, level: LogLevel) -> str:
        if self.verbose:
            timestamp = datetime.now().strftime("%H:%M:%S")
            return f"[{timestamp}] [{self.LEVEL_CONFIG[level]['prefix']:8}] {message}"
        return message

    def log(self, message: str, level: LogLevel = LogLevel.INFO):
        """Log genérico"""
        if not self._should_log(level):
            return
        config = self.LEVEL_CONFIG[level]
        formatted = self._format_message(message, level)
        if self.verbose:
            self.console.print(formatted, style=config["style"], markup=False)
        else:
            self.console.print(f"{config['icon']} {formatted}", style=config["style"], markup=False)

    def debug(self, message: str):
        self.log(message, LogLevel.DEBUG)

    def info(self, message: str):
        self.log(message, LogLevel.INFO)

    def warning(self, message: str):
        self.log(message, LogLevel.WARNING)

    def error(self, message: str):
        self.log(message, LogLevel.ERROR)

    def step(self, message: str, current: Optional[int] = None, total: Optional[int] = None):
        """Paso de un comando, con contador opcional"""
        if not self._should_log(LogLevel.INFO):
            return
        prefix = f"[{current}/{total}] " if current is not None and total is not None else ""
        self.console.print(f"[bold cyan]▶ {prefix}[/bold cyan]{message}")
