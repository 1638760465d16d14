"""
Barra de progreso del entrenamiento del baricentro
"""

from contextlib import contextmanager
from typing import Callable, Iterator, Optional

from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskID,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
)


class ProgressManager:
    """Gestor de progreso con Rich; en modo verbose imprime una línea por iteración"""

    def __init__(self, console: Optional[Console] = None, verbose: bool = False, enabled: bool = True):
        self.console = console or Console(stderr=True)
        self.verbose = verbose
        self.enabled = enabled
        self.progress: Optional[Progress] = None

    def start(self):
        """Iniciar la barra si no está activa"""
        if self.verbose or not self.enabled or self.progress is not None:
            return
        self.progress = Progress(
            SpinnerColumn(),
            TextColumn("[bold blue]{task.description}"),
            BarColumn(bar_width=None),
            TaskProgressColumn(),
            TimeElapsedColumn(),
            console=self.console,
            transient=True,
        )
        self.progress.start()

    def stop(self):
        """Detener la barra"""
        if self.progress is not None:
            try:
                self.progress.stop()
            finally:
                self.progress = None

    @contextmanager
    def task(self, description: str, total: int) -> Iterator[Optional[TaskID]]:
        """Context manager para una tarea con total conocido"""
        if self.verbose:
            self.console.print(f"[cyan]▶ {description}[/cyan]")
        self.start()
        task_id = self.progress.add_task(description, total=total) if self.progress else None
        try:
            yield task_id
        except KeyboardInterrupt:
            self.console.print("\n[bold red]⚠️  Operación cancelada por el usuario[/bold red]")
            raise
        finally:
            self.stop()

    def update(self, task_id: Optional[TaskID], advance: int = 1, description: Optional[str] = None):
        """Avanzar una tarea; en verbose solo imprime la descripción"""
        if self.verbose:
            if description:
                self.console.print(f"  [dim]→ {description}[/dim]")
            return
        if task_id is not None and self.progress is not None:
            kwargs = {"advance": advance}
            if description:
                kwargs["description"] = description
            self.progress.update(task_id, **kwargs)

    def iteration_callback(self, task_id: Optional[TaskID]) -> Callable[[int, float, float], None]:
        """Callback para train_barycenter: (iteración, objetivo, cambio relativo)"""

        def _on_iteration(iteration: int, objective: float, relative_change: float) -> None:
            self.update(
                task_id,
                description=f"iteración {iteration}: objetivo={objective:.6g} Δ={relative_change:.3g}",
            )

        return _on_iteration
