"""
Solver de Procrustes ortogonal contra oráculos de muestreo y barrido angular
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from baryalign.models import orthogonality_error
from baryalign.services import (
    angle_sweep_best_orthogonal,
    brute_force_best_orthogonal,
    procrustes_objective,
    solve_orthogonal_procrustes,
)
from baryalign.services.synth_service import make_rng
from baryalign.utils.exceptions import NonFiniteInput, ShapeMismatch, SvdFailure


def test_identity_at_full_rank():
    X = np.array([[2.0, 1.0, 0.0], [0.0, 1.0, 3.0], [1.0, 0.0, 1.0]])
    solution = solve_orthogonal_procrustes(X, X)
    np.testing.assert_allclose(solution.rotation, np.eye(3), atol=1e-10)
    assert solution.objective == pytest.approx(0.0, abs=1e-20)


def test_exact_rotation_recovery():
    R0 = np.array([[0.0, -1.0], [1.0, 0.0]])
    X = np.eye(2)
    solution = solve_orthogonal_procrustes(X, X @ R0)
    np.testing.assert_allclose(solution.rotation, R0, atol=1e-12)
    assert solution.objective == pytest.approx(0.0, abs=1e-20)


def test_reflection_is_allowed():
    F = np.diag([1.0, -1.0])
    X = make_rng(5).standard_normal((10, 2))
    solution = solve_orthogonal_procrustes(X, X @ F)
    np.testing.assert_allclose(solution.rotation, F, atol=1e-10)
    assert np.linalg.det(solution.rotation) == pytest.approx(-1.0)


def test_objective_hand_examples():
    X = make_rng(0).standard_normal((4, 3))
    assert procrustes_objective(X, np.eye(3), X) == 0.0
    assert procrustes_objective([[1.0, 0.0]], np.eye(2), [[0.0, 1.0]]) == 2.0


def test_objective_matches_naive_loop():
    rng = make_rng(11)
    X, M = rng.standard_normal((7, 3)), rng.standard_normal((7, 3))
    R = rng.standard_normal((3, 3))
    expected = 0.0
    for i in range(7):
        for j in range(3):
            value = sum(X[i, k] * R[k, j] for k in range(3)) - M[i, j]
            expected += value * value
    assert procrustes_objective(X, R, M) == pytest.approx(expected, rel=1e-12)


def test_shape_and_finiteness_errors():
    with pytest.raises(ShapeMismatch):
        solve_orthogonal_procrustes(np.ones((3, 2)), np.ones((3, 3)))
    with pytest.raises(ShapeMismatch):
        procrustes_objective(np.ones((3, 2)), np.eye(3), np.ones((3, 2)))
    with pytest.raises(NonFiniteInput):
        solve_orthogonal_procrustes(np.array([[np.nan, 0.0]]), np.ones((1, 2)))


def test_svd_failure_is_reported(monkeypatch):
    def broken_svd(*args, **kwargs):
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setattr(np.linalg, "svd", broken_svd)
    with pytest.raises(SvdFailure):
        solve_orthogonal_procrustes(np.eye(2), np.eye(2))


def test_rank_deficient_input_still_orthogonal():
    X = np.zeros((5, 3))
    X[:, 0] = np.arange(5.0)
    M = make_rng(2).standard_normal((5, 3))
    solution = solve_orthogonal_procrustes(X, M)
    assert orthogonality_error(solution.rotation) <= 1e-8


def test_oracle_lower_bound_when_x_equals_m():
    X = make_rng(4).standard_normal((6, 3))
    assert brute_force_best_orthogonal(X, X, samples=500) >= 0.0
    assert solve_orthogonal_procrustes(X, X).objective <= 1e-20


@pytest.mark.parametrize("d", [2, 3, 4])
def test_solver_beats_sampling_oracle(d):
    for seed in range(200 // 3 + 1):
        rng = make_rng(1000 * d + seed)
        X, M = rng.standard_normal((30, d)), rng.standard_normal((30, d))
        solver = solve_orthogonal_procrustes(X, M).objective
        oracle = brute_force_best_orthogonal(X, M, samples=10_000, seed=seed)
        assert solver <= oracle + 1e-9


def test_solver_beats_angle_sweep_in_two_dimensions():
    for seed in range(20):
        rng = make_rng(seed)
        X, M = rng.standard_normal((30, 2)), rng.standard_normal((30, 2))
        solver = solve_orthogonal_procrustes(X, M).objective
        sweep = angle_sweep_best_orthogonal(X, M, steps=10_000)
        assert sweep - solver >= -1e-6


@settings(max_examples=40, deadline=None)
@given(
    seed=st.integers(min_value=0, max_value=2 ** 32 - 1),
    n=st.integers(min_value=1, max_value=20),
    d=st.integers(min_value=1, max_value=8),
)
def test_rotation_is_orthogonal_and_isometric(seed, n, d):
    rng = make_rng(seed)
    X, M = rng.standard_normal((n, d)), rng.standard_normal((n, d))
    R = solve_orthogonal_procrustes(X, M).rotation

    assert orthogonality_error(R) <= 1e-8
    before = np.linalg.norm(X[:, None, :] - X[None, :, :], axis=2)
    after = np.linalg.norm((X @ R)[:, None, :] - (X @ R)[None, :, :], axis=2)
    np.testing.assert_allclose(after, before, rtol=1e-9, atol=1e-12)
