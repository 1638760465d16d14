"""
Interfaz de línea de comandos de BaryAlign

Los reportes van a stdout (o a --out); los mensajes, logs y progreso a stderr.
"""

import argparse
import logging
import platform
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO

import numpy as np
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from ..config import ConfigManager
from ..core import BarycenterAligner
from ..models import ConsistencyReport, EvalReport, GlobalConfig, SynthSpec
from ..services import storage_service as storage
from ..similarity import SimilarityFactory
from ..utils import Logger, ProgressManager, Validators, setup_logging
from ..utils.exceptions import BaryAlignError, InvalidConfig, NotConverged, ValidationError
from ..utils.logger import LOG_LEVELS

logger = logging.getLogger(__name__)

COMMANDS = ["train", "project", "score", "eval", "synth", "version"]


class CLI:
    """Interfaz de línea de comandos con Rich"""

    def __init__(self, stdout: Optional[TextIO] = None, console: Optional[Console] = None):
        self.stdout = stdout or sys.stdout
        self.console = console or Console(stderr=True)
        self.verbose = False
        self.config = GlobalConfig()
        self.logger: Optional[Logger] = None
        self.progress_manager: Optional[ProgressManager] = None

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Ejecutar un comando y devolver el código de salida

        0 éxito, 2-9 errores conocidos (ver utils.exceptions), 1 errores inesperados.
        """
        parser = self._create_parser()
        args = parser.parse_args(argv)

        if args.version:
            self._cmd_version()
            return 0
        if args.command is None:
            parser.print_usage(sys.stderr)
            self._show_error("Falta el comando")
            return 2

        self.verbose = args.verbose
        setup_logging("DEBUG" if self.verbose else (args.log_level or "WARNING"), self.console)

        try:
            self.config = self._load_config(args)
            setup_logging("DEBUG" if self.verbose else self.config.log_level, self.console)
            self.logger = Logger(verbose=self.verbose, console=self.console)
            self.progress_manager = ProgressManager(self.console, verbose=self.verbose)

            success = self._execute_command(args)
            return 0 if success else 1
        except BaryAlignError as e:
            self._show_error(f"{type(e).__name__}: {e}")
            if e.detail:
                self._show_info(e.detail)
            return e.exit_code
        except KeyboardInterrupt:
            self._show_warning("Operación cancelada por el usuario")
            return 1
        except Exception as e:
            self._show_error(f"Error inesperado: {e}")
            if self.verbose:
                import traceback
                self.console.print(f"[dim]Detalles del error:\n{traceback.format_exc()}[/dim]")
            return 1
        finally:
            if self.progress_manager:
                self.progress_manager.stop()

    def _show_success(self, message: str):
        self.console.print(f"[bold green]✅ {message}[/bold green]")

    def _show_error(self, message: str):
        self.console.print(f"❌ {message}", style="bold red", markup=False)

    def _show_warning(self, message: str):
        self.console.print(f"⚠️  {message}", style="bold yellow", markup=False)

    def _show_info(self, message: str):
        if self.verbose:
            self.console.print(f"ℹ️  {message}", style="bold blue", markup=False)

    def _create_parser(self) -> argparse.ArgumentParser:
        """Crear parser de argumentos"""
        parser = argparse.ArgumentParser(
            prog="baryalign",
            description="Alineamiento de representaciones por baricentro de Procrustes",
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog=self._get_examples(),
        )

        parser.add_argument("command", nargs="?", choices=COMMANDS, help="Comando a ejecutar")

        # Entradas y salidas
        parser.add_argument("--pool", help="Manifiesto del pool (train, project)")
        parser.add_argument("--model", help="Directorio del bundle entrenado (project)")
        parser.add_argument("--projected", help="Manifiesto del pool proyectado (score, eval)")
        parser.add_argument("--out", help="Directorio o archivo de salida")

        # Entrenamiento
        parser.add_argument("--eps", type=float, help="Umbral de convergencia relativo (default: 1e-6)")
        parser.add_argument("--max-iters", type=int, help="Iteraciones máximas (default: 100)")
        parser.add_argument("--center", action="store_const", const=True, default=None,
                            help="Centrar cada modelo por columna antes de alinear")
        parser.add_argument("--trace", action="store_true", help="Guardar la traza del objetivo en el bundle")
        parser.add_argument("--strict", action="store_true", help="Fallar (código 9) si no hay convergencia")

        # Puntuación y evaluación
        parser.add_argument("--sim", choices=SimilarityFactory.get_supported_kinds(), help="Similitud (default: cosine)")
        parser.add_argument("--topk", help="Lista de K para recuperación (default: 1,5,10)")
        parser.add_argument("--subset", nargs="?", const="",
                            help="project: permitir un sub-pool; score/eval: restringir a estos modelos (a,b,...)")
        parser.add_argument("--pair", help="score: similitud entre dos modelos concretos (a,b)")
        parser.add_argument("--query-models", help="eval: modelos de consulta para recuperación cruzada")
        parser.add_argument("--gallery-models", help="eval: modelos de galería para recuperación cruzada")
        parser.add_argument("--format", choices=["table", "tsv"], help="Formato de los reportes en pantalla")

        # Datos sintéticos
        parser.add_argument("--n-train", type=int, help="Estímulos de entrenamiento")
        parser.add_argument("--m-test", type=int, help="Estímulos de prueba")
        parser.add_argument("--d", type=int, help="Dimensión latente")
        parser.add_argument("--models", type=int, help="Número de modelos")
        parser.add_argument("--noise", type=float, default=0.0, help="Desviación del ruido gaussiano (default: 0)")
        parser.add_argument("--widths", help="Anchos por modelo (a,b,...) para truncar")

        # Globales
        parser.add_argument("--seed", type=int, help="Semilla (default: 0)")
        parser.add_argument("--threads", type=int, help="Hilos, 0 = automático (default: 0)")
        parser.add_argument("--log-level", choices=LOG_LEVELS, help="Nivel de log (default: WARNING)")
        parser.add_argument("--config", help="Archivo JSON de valores por defecto")
        parser.add_argument("--verbose", "-v", action="store_true", help="Mostrar logs detallados del proceso")
        parser.add_argument("--version", action="store_true", help="Mostrar versión y formatos de archivo")

        return parser

    def _get_examples(self) -> str:
        return """
Ejemplos de uso:
  baryalign synth --n-train 500 --m-test 100 --d 16 --models 4 --out data
  baryalign train --pool data/train/manifest.json --out bundle
  baryalign project --model bundle --pool data/test/manifest.json --out projected
  baryalign score --projected projected/manifest.json --out scores.tsv
  baryalign eval --projected projected/manifest.json --topk 1,5,10 --format table
"""

    def _load_config(self, args) -> GlobalConfig:
        """Archivo de configuración + flags del CLI (los flags tienen prioridad)"""
        manager = ConfigManager(Path(args.config) if args.config else None)
        config = manager.load_config()

        ks = None
        if args.topk is not None:
            valid, ks = Validators.parse_int_list(args.topk)
            if not valid:
                raise InvalidConfig(f"--topk inválido: {args.topk}")

        return manager.merge_overrides(
            config,
            epsilon=args.eps,
            max_iterations=args.max_iters,
            ks=ks,
            threads=args.threads,
            similarity=args.sim,
            center=args.center,
            log_level=args.log_level,
            report_format=args.format,
            seed=args.seed,
        )

    def _require(self, args, *names: str):
        missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
        if missing:
            raise ValidationError(
                f"El comando {args.command} requiere: {', '.join('--' + n for n in missing)}"
            )

    def _id_list(self, text: Optional[str], flag: str) -> Optional[List[str]]:
        if not text:
            return None
        valid, ids = Validators.parse_id_list(text)
        if not valid:
            raise ValidationError(f"{flag} inválido: {text}")
        return ids

    def _aligner(self) -> BarycenterAligner:
        return BarycenterAligner(
            config=self.config,
            verbose=self.verbose,
            progress_manager=self.progress_manager,
            console_logger=self.logger,
        )

    def _execute_command(self, args) -> bool:
        """Ejecutar comando específico"""
        command = args.command

        if self.verbose:
            self.console.print(Panel(f"[bold cyan]baryalign {command}[/bold cyan]", style="blue"))

        if command == "train":
            return self._cmd_train(args)
        elif command == "project":
            return self._cmd_project(args)
        elif command == "score":
            return self._cmd_score(args)
        elif command == "eval":
            return self._cmd_eval(args)
        elif command == "synth":
            return self._cmd_synth(args)
        elif command == "version":
            self._cmd_version()
            return True
        else:
            self._show_error(f"Comando no implementado: {command}")
            return False

    def _cmd_train(self, args) -> bool:
        """Entrenar baricentro y escribir el bundle"""
        self._require(args, "pool", "out")
        model = self._aligner().train(args.pool, args.out, record_trace=args.trace)
        meta = model.training_meta

        self._print_key_values({
            "iterations_run": str(meta.iterations_run),
            "final_objective": repr(meta.final_objective),
            "final_relative_change": repr(meta.final_relative_change),
            "converged": "true" if meta.converged else "false",
        }, title="Entrenamiento")

        if not meta.converged:
            message = (
                f"Sin convergencia en {meta.max_iterations} iteraciones "
                f"(cambio relativo {meta.final_relative_change:.3e})"
            )
            if args.strict:
                raise NotConverged(message, detail=f"Bundle escrito en {args.out}")
            self._show_warning(message)
        else:
            self._show_success(f"Bundle guardado en {args.out}")
        return True

    def _cmd_project(self, args) -> bool:
        """Proyectar pool de prueba"""
        self._require(args, "model", "pool", "out")
        projected = self._aligner().project(args.model, args.pool, args.out, allow_subset=args.subset is not None)
        self._show_success(
            f"{projected.n_models} modelos x {projected.n_stimuli} estímulos proyectados en {args.out}"
        )
        return True

    def _cmd_score(self, args) -> bool:
        """Puntuaciones de consistencia por estímulo"""
        self._require(args, "projected")
        pair = self._id_list(args.pair, "--pair")
        if pair is not None and len(pair) != 2:
            raise ValidationError(f"--pair necesita exactamente dos modelos: {args.pair}")
        report = self._aligner().score(
            args.projected,
            out=args.out,
            subset=self._id_list(args.subset, "--subset"),
            pair=pair,
        )
        if args.out:
            self._show_success(f"Reporte de consistencia guardado en {args.out} (media {report.mean_score:.6f})")
        else:
            self._print_consistency(report)
        return True

    def _cmd_eval(self, args) -> bool:
        """Métricas de alineamiento"""
        self._require(args, "projected")
        query = self._id_list(args.query_models, "--query-models")
        gallery = self._id_list(args.gallery_models, "--gallery-models")
        if (query is None) != (gallery is None):
            raise ValidationError("--query-models y --gallery-models van juntos")

        report = self._aligner().evaluate(
            args.projected,
            out=args.out,
            subset=self._id_list(args.subset, "--subset"),
            query_models=query,
            gallery_models=gallery,
        )
        if args.out:
            self._show_success(f"Reporte de evaluación guardado en {args.out}")
        else:
            self._print_eval(report)
        return True

    def _cmd_synth(self, args) -> bool:
        """Generar pools sintéticos"""
        self._require(args, "n-train", "m-test", "d", "models", "out")
        widths = None
        if args.widths:
            valid, widths = Validators.parse_int_list(args.widths)
            if not valid:
                raise ValidationError(f"--widths inválido: {args.widths}")

        spec = SynthSpec(
            n_train=args.n_train,
            m_test=args.m_test,
            d=args.d,
            n_models=args.models,
            noise_sigma=args.noise,
            width_schedule=tuple(widths) if widths else None,
            seed=self.config.seed,
        )
        out = self._aligner().synth(spec, args.out)
        self._show_success(f"Pools sintéticos en {out} (train/, test/, truth/)")
        return True

    def _cmd_version(self):
        """Mostrar versión del paquete y de los formatos de archivo"""
        from .. import __version__

        items = {"baryalign": __version__}
        items.update(storage.FORMAT_VERSIONS)
        items["generator"] = storage.GENERATOR_NAME
        items["numpy"] = np.__version__
        items["python"] = platform.python_version()
        for key, value in items.items():
            self.stdout.write(f"{key}\t{value}\n")

    # Salida de reportes

    def _print_key_values(self, items: Dict[str, str], title: str):
        if self.config.report_format == "table":
            table = Table(title=title, show_header=False)
            table.add_column("clave", style="cyan")
            table.add_column("valor")
            for key, value in items.items():
                table.add_row(key, value)
            Console(file=self.stdout).print(table)
        else:
            for key, value in items.items():
                self.stdout.write(f"{key}\t{value}\n")

    def _print_consistency(self, report: ConsistencyReport):
        if self.config.report_format == "table":
            table = Table(title=f"Consistencia ({report.similarity_kind})", header_style="bold cyan")
            table.add_column("stimulus_id")
            table.add_column("score", justify="right")
            for stimulus_id, score in zip(report.stimulus_ids, report.scores):
                table.add_row(stimulus_id, f"{score:.6f}")
            table.caption = f"media {report.mean_score:.6f}"
            Console(file=self.stdout).print(table)
        else:
            self.stdout.write(storage.format_consistency_report(report))

    def _print_eval(self, report: EvalReport):
        if self.config.report_format != "table":
            self.stdout.write(storage.format_eval_report(report))
            return

        table = Table(title=f"Evaluación (m={report.n_stimuli})", header_style="bold cyan")
        table.add_column("modelo")
        table.add_column("Corr", justify="right")
        table.add_column("RMS", justify="right")
        for k in report.ks:
            table.add_column(f"Top-{k}", justify="right")

        for model_id in report.model_ids:
            table.add_row(
                model_id,
                f"{report.per_model_correlation[model_id]:.4f}",
                f"{report.per_model_rms[model_id]:.4f}",
                *[f"{report.per_model_retrieval[model_id][k]:.4f}" for k in report.ks],
            )
        means = report.pool_means()
        table.add_row(
            "[bold]media[/bold]",
            f"{means['correlation']:.4f}",
            f"{means['rms']:.4f}",
            *[f"{means[f'top{k}']:.4f}" for k in report.ks],
        )
        table.add_row("azar", "", "", *[f"{report.chance_levels[k]:.4g}" for k in report.ks])
        if report.cross_group_retrieval:
            for direction, values in report.cross_group_retrieval.items():
                table.add_row(f"cruzado ({direction})", "", "", *[f"{values[k]:.4f}" for k in report.ks])
        Console(file=self.stdout).print(table)


def main():
    """Función de entrada principal para el comando baryalign"""
    sys.exit(CLI().run())


if __name__ == "__main__":
    main()
