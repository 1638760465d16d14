"""
Clase principal de BaryAlign: orquesta train, project, score, eval y synth sobre archivos
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

from ..models import (
    AlignmentModel,
    ConsistencyReport,
    EvalReport,
    GlobalConfig,
    ProjectedPool,
    SynthSpec,
    TrainConfig,
)
from ..services import (
    center_pool,
    consistency_scores,
    evaluate,
    make_synthetic_pool,
    pair_similarity,
    project,
    subset_projected,
    train_barycenter,
)
from ..services import storage_service as storage
from ..utils import Logger, ProgressManager, resolve_threads
from ..utils.exceptions import TooFewModels

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class BarycenterAligner:
    """Gestor de alto nivel del pipeline de alineamiento"""

    def __init__(
        self,
        config: Optional[GlobalConfig] = None,
        verbose: bool = False,
        progress_manager: Optional[ProgressManager] = None,
        console_logger: Optional[Logger] = None,
    ):
        self.config = config or GlobalConfig()
        self.verbose = verbose
        self.progress = progress_manager
        self.logger = console_logger or Logger(verbose=verbose, quiet=True)
        self.threads = resolve_threads(self.config.threads)

    def train(
        self,
        pool_manifest: PathLike,
        out: PathLike,
        record_trace: bool = False,
    ) -> AlignmentModel:
        """
        Entrenar el baricentro sobre un pool y guardar el bundle en `out`

        El pool se valida por completo antes de escribir nada.
        """
        pool = storage.load_pool(pool_manifest)
        self.logger.step(f"Pool '{pool.name}': {pool.n_models} modelos, {pool.n_stimuli} estímulos, d={pool.common_width}")

        offsets = None
        if self.config.center:
            pool, offsets = center_pool(pool)
            self.logger.info("Representaciones centradas por columna")

        train_config = TrainConfig(
            epsilon=self.config.epsilon,
            max_iterations=self.config.max_iterations,
            record_trace=record_trace,
            threads=self.threads,
        )

        if self.progress:
            with self.progress.task("Entrenando baricentro", total=train_config.max_iterations) as task_id:
                model = train_barycenter(
                    pool,
                    train_config,
                    on_iteration=self.progress.iteration_callback(task_id),
                    offsets=offsets,
                )
        else:
            model = train_barycenter(pool, train_config, offsets=offsets)

        storage.save_bundle(model, out)
        return model

    def project(self, model_dir: PathLike, pool_manifest: PathLike, out: PathLike, allow_subset: bool = False) -> ProjectedPool:
        """Proyectar un pool de prueba al espacio universal y guardarlo en `out`"""
        model = storage.load_bundle(model_dir)
        test = storage.load_pool(pool_manifest)
        projected = project(test, model, allow_subset=allow_subset)
        storage.save_projected(projected, out)
        return projected

    def _load_projected(self, projected_manifest: PathLike, subset: Optional[Sequence[str]]) -> ProjectedPool:
        projected = storage.load_projected(projected_manifest)
        return subset_projected(projected, list(subset) if subset else None)

    def score(
        self,
        projected_manifest: PathLike,
        out: Optional[PathLike] = None,
        subset: Optional[Sequence[str]] = None,
        pair: Optional[Sequence[str]] = None,
    ) -> ConsistencyReport:
        """
        Puntuaciones de consistencia por estímulo

        Args:
            projected_manifest: Manifiesto del pool proyectado
            out: Archivo de reporte (opcional)
            subset: Restringir a un sub-pool
            pair: Dos model_id; puntúa solo ese par
        """
        projected = self._load_projected(projected_manifest, subset)
        if pair:
            if len(pair) != 2:
                raise TooFewModels(f"Se esperaban exactamente 2 modelos, recibidos {len(pair)}")
            report = pair_similarity(projected, pair[0], pair[1], sim=self.config.similarity)
        else:
            report = consistency_scores(projected, sim=self.config.similarity, threads=self.threads)

        if out is not None:
            storage.save_consistency_report(report, out)
        return report

    def evaluate(
        self,
        projected_manifest: PathLike,
        out: Optional[PathLike] = None,
        subset: Optional[Sequence[str]] = None,
        query_models: Optional[List[str]] = None,
        gallery_models: Optional[List[str]] = None,
    ) -> EvalReport:
        """Métricas de calidad del alineamiento sobre un pool proyectado"""
        projected = self._load_projected(projected_manifest, subset)
        report = evaluate(
            projected,
            ks=self.config.ks,
            threads=self.threads,
            query_models=query_models,
            gallery_models=gallery_models,
        )
        if report.skipped_constant_dimensions:
            logger.warning(
                f"{report.skipped_constant_dimensions} dimensiones constantes omitidas en la correlación"
            )
        if out is not None:
            storage.save_eval_report(report, out)
        return report

    def synth(self, spec: SynthSpec, out: PathLike) -> Path:
        """
        Generar pools sintéticos de entrenamiento y prueba con su ground truth

        Estructura de `out`: train/, test/ y truth/ (latentes y rotaciones).
        """
        train_pool, test_pool, truth = make_synthetic_pool(spec)
        out = Path(out)
        with storage.atomic_directory(out) as staging:
            storage.save_pool(train_pool, staging / "train")
            storage.save_pool(test_pool, staging / "test")
            storage.save_ground_truth(truth, spec, staging / "truth")
        logger.info(f"Pools sintéticos escritos en {out}")
        return out
