"""
Fixtures compartidas: generadores con semilla, pools pequeños y aislamiento de configuración
"""

from typing import Callable, List, Optional, Sequence

import numpy as np
import pytest

from baryalign.models import ModelPool, ProjectedPool, ReprMatrix
from baryalign.services import build_pool, random_orthogonal
from baryalign.services.synth_service import make_rng


@pytest.fixture(autouse=True)
def isolated_config(tmp_path_factory, monkeypatch):
    """Ningún test lee ~/.config/baryalign ni $BARYALIGN_CONFIG del entorno"""
    home = tmp_path_factory.mktemp("home")
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.delenv("BARYALIGN_CONFIG", raising=False)
    return home


@pytest.fixture
def rng() -> np.random.Generator:
    return make_rng(1234)


def stimulus_ids(n: int, prefix: str = "s") -> List[str]:
    return [f"{prefix}{j}" for j in range(n)]


def make_pool(matrices: Sequence[np.ndarray], prefix: str = "m") -> ModelPool:
    n = np.asarray(matrices[0]).shape[0]
    ids = stimulus_ids(n)
    return build_pool([ReprMatrix(f"{prefix}{i}", ids, m) for i, m in enumerate(matrices)])


def make_projected(matrices: Sequence[np.ndarray], model_ids: Optional[Sequence[str]] = None) -> ProjectedPool:
    n = np.asarray(matrices[0]).shape[0]
    ids = tuple(model_ids) if model_ids else tuple(f"m{i}" for i in range(len(matrices)))
    return ProjectedPool(members=tuple(matrices), stimulus_ids=tuple(stimulus_ids(n)), model_ids=ids)


@pytest.fixture
def rotated_copies(rng) -> Callable:
    """Factory: (Z, [Q_i], pool) con X_i = Z·Q_i"""

    def factory(n: int = 50, d: int = 8, n_models: int = 5):
        Z = rng.standard_normal((n, d))
        rotations = [random_orthogonal(d, rng=rng) for _ in range(n_models)]
        return Z, rotations, make_pool([Z @ Q for Q in rotations])

    return factory
