"""
Entrenamiento del baricentro de Procrustes (fase de entrenamiento)

Alternancia paralela (estilo Jacobi): en cada iteración todos los modelos se
alinean contra la misma plantilla M⁽ᵗ⁾ y después se recalcula la plantilla
como la media de las representaciones alineadas.
"""

import logging
from functools import partial, reduce
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from ..models import AlignmentModel, ModelPool, TrainConfig, TrainTrace, TrainingMeta
from ..utils.exceptions import (
    DegenerateTemplate,
    ModelPoolMismatch,
    NumericalInstability,
    ShapeMismatch,
)
from ..utils.parallel import ordered_map
from .procrustes_service import procrustes_objective, solve_orthogonal_procrustes

logger = logging.getLogger(__name__)

# Holgura del descenso: 1e-9 absoluta más el redondeo de sumar objetivos grandes
DESCENT_SLACK = 1e-9
DESCENT_ROUNDING = 1e-13

IterationCallback = Callable[[int, float, float], None]


def _mean(matrices: Sequence[np.ndarray]) -> np.ndarray:
    """Media en orden fijo de miembros"""
    return reduce(np.add, matrices) / len(matrices)


def _objective(aligned: Sequence[np.ndarray], template: np.ndarray) -> float:
    total = 0.0
    for matrix in aligned:
        residual = matrix - template
        total += float(np.sum(residual * residual))
    return total


def _solve_against(X: np.ndarray, template: np.ndarray) -> np.ndarray:
    return solve_orthogonal_procrustes(X, template).rotation


def train_barycenter(
    pool: ModelPool,
    config: Optional[TrainConfig] = None,
    initial_template: Optional[np.ndarray] = None,
    on_iteration: Optional[IterationCallback] = None,
    offsets: Optional[Dict[str, np.ndarray]] = None,
) -> AlignmentModel:
    """
    Calcular la plantilla baricéntrica y las transformaciones ortogonales

    Args:
        pool: Pool validado y rellenado al ancho común
        config: Épsilon, iteraciones máximas, traza e hilos
        initial_template: Plantilla inicial (por defecto la media aritmética)
        on_iteration: Callback (iteración, objetivo, cambio relativo)
        offsets: Offsets de centrado a guardar en el modelo, si el pool se centró

    Returns:
        AlignmentModel con la plantilla final y las transformaciones de la última iteración
    """
    config = config or TrainConfig()
    matrices = pool.matrices
    n_models = len(matrices)

    if initial_template is None:
        template = _mean(matrices)
    else:
        template = np.array(initial_template, dtype=np.float64, copy=True)
        if template.shape != matrices[0].shape:
            raise ShapeMismatch(
                f"Plantilla inicial {template.shape}, esperado {matrices[0].shape}"
            )

    template_norm = float(np.linalg.norm(template))
    if template_norm == 0.0:
        raise DegenerateTemplate(
            "La plantilla inicial tiene norma cero; el criterio de parada relativo no está definido"
        )

    trace = TrainTrace() if config.record_trace else None
    rotations: List[np.ndarray] = []
    previous_objective = None
    objective = 0.0
    relative_change = float("inf")
    converged = False
    iterations_run = 0

    logger.info(
        f"Entrenando baricentro: N={n_models}, n={pool.n_stimuli}, d={pool.common_width}, "
        f"eps={config.epsilon}, T={config.max_iterations}"
    )

    for iteration in range(1, config.max_iterations + 1):
        rotations = ordered_map(partial(_solve_against, template=template), matrices, config.threads)
        aligned = [X @ R for X, R in zip(matrices, rotations)]
        next_template = _mean(aligned)

        relative_change = float(np.linalg.norm(next_template - template)) / template_norm
        objective = _objective(aligned, next_template)

        if previous_objective is not None:
            slack = DESCENT_SLACK + DESCENT_ROUNDING * abs(previous_objective)
            if objective > previous_objective + slack:
                raise NumericalInstability(
                    f"El objetivo aumentó en la iteración {iteration}: "
                    f"{previous_objective:.17g} -> {objective:.17g}"
                )
        previous_objective = objective

        if trace is not None:
            trace.objectives.append(objective)
            trace.relative_changes.append(relative_change)
        if on_iteration is not None:
            on_iteration(iteration, objective, relative_change)
        logger.debug(f"iter {iteration}: objetivo={objective:.6e} cambio={relative_change:.3e}")

        template = next_template
        iterations_run = iteration
        if relative_change < config.epsilon:
            converged = True
            break

        template_norm = float(np.linalg.norm(template))
        if template_norm == 0.0:
            raise DegenerateTemplate(f"La plantilla se anuló en la iteración {iteration}")

    if converged:
        logger.info(f"Convergencia en {iterations_run} iteraciones (objetivo {objective:.6e})")
    else:
        logger.warning(
            f"Sin convergencia tras {iterations_run} iteraciones "
            f"(cambio relativo {relative_change:.3e} >= {config.epsilon})"
        )

    meta = TrainingMeta(
        iterations_run=iterations_run,
        final_relative_change=relative_change,
        final_objective=objective,
        epsilon=config.epsilon,
        max_iterations=config.max_iterations,
        converged=converged,
        centered=offsets is not None,
    )
    return AlignmentModel(
        barycenter=template,
        transforms=dict(zip(pool.model_ids, rotations)),
        original_widths=pool.original_widths,
        training_meta=meta,
        offsets=offsets,
        trace=trace,
    )


def total_objective(pool: ModelPool, model: AlignmentModel) -> float:
    """Σ_i ||X_i T_i − M||_F² sobre el pool dado"""
    if set(pool.model_ids) != set(model.model_ids):
        raise ModelPoolMismatch(
            f"El pool ({', '.join(pool.model_ids)}) no coincide con el modelo ({', '.join(model.model_ids)})"
        )
    if (pool.n_stimuli, pool.common_width) != model.shape:
        raise ModelPoolMismatch(
            f"Pool {(pool.n_stimuli, pool.common_width)} incompatible con baricentro {model.shape}"
        )
    return float(sum(
        procrustes_objective(member.data, model.transforms[member.model_id], model.barycenter)
        for member in pool.members
    ))
