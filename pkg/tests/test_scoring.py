"""
Proyección al espacio universal, similitud coseno y puntuaciones de consistencia
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_pool, make_projected, stimulus_ids
from baryalign.models import AlignmentModel, ReprMatrix, TrainConfig, TrainingMeta
from baryalign.services import (
    build_pool,
    consistency_scores,
    pair_similarity,
    project,
    random_orthogonal,
    subset_projected,
    train_barycenter,
)
from baryalign.services.synth_service import make_rng
from baryalign.similarity import SimilarityFactory, cosine
from baryalign.utils.exceptions import (
    ModelPoolMismatch,
    TooFewModels,
    UnknownModelId,
    ValidationError,
    WidthMismatch,
)


def _meta() -> TrainingMeta:
    return TrainingMeta(
        iterations_run=1, final_relative_change=0.0, final_objective=0.0,
        epsilon=1e-6, max_iterations=100, converged=True,
    )


def _model(d: int, widths: dict, transforms: dict = None, offsets: dict = None) -> AlignmentModel:
    transforms = transforms or {model_id: np.eye(d) for model_id in widths}
    return AlignmentModel(
        barycenter=np.zeros((3, d)),
        transforms=transforms,
        original_widths=widths,
        training_meta=_meta(),
        offsets=offsets,
    )


# --- similitud ---

def test_cosine_known_value():
    assert cosine([1, 2, 3], [4, 5, 6]) == pytest.approx(32 / (np.sqrt(14) * np.sqrt(77)))
    assert cosine([1, 2, 3], [4, 5, 6]) == pytest.approx(0.974631846, abs=1e-9)


def test_cosine_zero_vector_is_zero():
    assert cosine([0, 0, 0], [1, 2, 3]) == 0.0
    assert cosine([1e-13, 0], [1, 0]) == 0.0


def test_rowwise_matches_scalar_cosine(rng):
    a = rng.standard_normal((7, 4))
    b = rng.standard_normal((7, 4))
    rowwise = SimilarityFactory.create("cosine").rowwise(a, b)
    for j in range(7):
        assert rowwise[j] == pytest.approx(cosine(a[j], b[j]), abs=1e-12)


def test_factory_rejects_unknown_kind():
    with pytest.raises(ValidationError):
        SimilarityFactory.create("euclidean")
    assert SimilarityFactory.get_supported_kinds() == ["cosine"]
    assert SimilarityFactory.get_similarity_info("cosine")["bounds"] == (-1.0, 1.0)
    assert SimilarityFactory.get_similarity_info("nope") == {}


# --- consistencia ---

def test_identical_members_score_one(rng):
    Y = rng.standard_normal((6, 3))
    report = consistency_scores(make_projected([Y, Y, Y]))
    np.testing.assert_allclose(report.values, 1.0, atol=1e-12)
    assert report.stimulus_ids == tuple(stimulus_ids(6))
    assert report.similarity_kind == "cosine"


def test_orthogonal_rows_score_zero():
    a = np.array([[1.0, 0.0], [0.0, 2.0]])
    b = np.array([[0.0, 3.0], [1.0, 0.0]])
    report = consistency_scores(make_projected([a, b]))
    assert report.scores == (0.0, 0.0)


def test_mean_over_pairs():
    a = np.array([[1.0, 0.0]])
    b = np.array([[2.0, 0.0]])
    c = np.array([[0.0, 1.0]])
    report = consistency_scores(make_projected([a, b, c]))
    assert report.scores[0] == pytest.approx(1 / 3)


def test_ordered_and_unordered_pairs_agree(rng):
    projected = make_projected([rng.standard_normal((9, 4)) for _ in range(4)])
    unordered = consistency_scores(projected)
    ordered = consistency_scores(projected, ordered=True)
    np.testing.assert_allclose(ordered.values, unordered.values, atol=1e-12)


def test_model_order_does_not_matter(rng):
    projected = make_projected([rng.standard_normal((9, 4)) for _ in range(4)])
    shuffled = projected.reordered(model_order=[2, 0, 3, 1])
    np.testing.assert_allclose(
        consistency_scores(shuffled).values, consistency_scores(projected).values, atol=1e-12
    )


@settings(deadline=None, max_examples=30)
@given(seed=st.integers(0, 2 ** 32 - 1), scale=st.floats(1e-3, 1e3))
def test_row_scaling_does_not_change_scores(seed, scale):
    rng = make_rng(seed)
    members = [rng.standard_normal((5, 3)) for _ in range(3)]
    factors = scale * (1.0 + rng.random((5, 1)))
    base = consistency_scores(make_projected(members))
    scaled = consistency_scores(make_projected([members[0] * factors] + members[1:]))
    np.testing.assert_allclose(scaled.values, base.values, atol=1e-9)


def test_zero_norm_rows_are_counted(rng):
    a = rng.standard_normal((4, 3))
    b = rng.standard_normal((4, 3))
    a[2] = 0.0
    report = consistency_scores(make_projected([a, b]))
    assert report.zero_norm_rows == 1
    assert report.scores[2] == 0.0


def test_single_model_cannot_be_scored(rng):
    with pytest.raises(TooFewModels):
        consistency_scores(make_projected([rng.standard_normal((4, 2))]))


def test_thread_count_does_not_change_scores(rng):
    projected = make_projected([rng.standard_normal((30, 5)) for _ in range(5)])
    single = consistency_scores(projected, threads=1)
    multi = consistency_scores(projected, threads=4)
    assert single.scores == multi.scores


def test_pair_similarity_scores_one_pair(rng):
    a, b, c = (rng.standard_normal((5, 3)) for _ in range(3))
    projected = make_projected([a, b, c])
    report = pair_similarity(projected, "m0", "m2")
    assert report.pool_model_ids == ("m0", "m2")
    for j in range(5):
        assert report.scores[j] == pytest.approx(cosine(a[j], c[j]), abs=1e-12)

    with pytest.raises(TooFewModels):
        pair_similarity(projected, "m1", "m1")
    with pytest.raises(UnknownModelId):
        pair_similarity(projected, "m0", "zz")


def test_subset_projected(rng):
    projected = make_projected([rng.standard_normal((4, 2)) for _ in range(3)])
    assert subset_projected(projected, None) is projected
    assert subset_projected(projected, ["m2", "m0"]).model_ids == ("m2", "m0")
    with pytest.raises(TooFewModels):
        subset_projected(projected, ["m0"])
    with pytest.raises(UnknownModelId):
        subset_projected(projected, ["m0", "x"])


# --- proyección ---

def test_identity_projection_returns_raw(rng):
    Y = [rng.standard_normal((5, 3)) for _ in range(2)]
    projected = project(make_pool(Y), _model(3, {"m0": 3, "m1": 3}))
    for original, result in zip(Y, projected.members):
        np.testing.assert_array_equal(result, original)


def test_projection_pads_narrow_members(rng):
    narrow = rng.standard_normal((5, 2))
    wide = rng.standard_normal((5, 4))
    model = _model(4, {"m0": 2, "m1": 4})
    projected = project(make_pool([narrow, wide]), model)
    assert projected.width == 4
    np.testing.assert_array_equal(projected.member("m0")[:, :2], narrow)
    np.testing.assert_array_equal(projected.member("m0")[:, 2:], 0.0)


def test_projection_subtracts_offsets(rng):
    Y = [rng.standard_normal((5, 3)) for _ in range(2)]
    T = {"m0": random_orthogonal(3, seed=1), "m1": random_orthogonal(3, seed=2)}
    offsets = {"m0": np.array([1.0, 2.0, 3.0]), "m1": np.array([-1.0, 0.0, 0.5])}
    model = _model(3, {"m0": 3, "m1": 3}, transforms=T, offsets=offsets)
    projected = project(make_pool(Y), model)
    for i, model_id in enumerate(["m0", "m1"]):
        np.testing.assert_allclose(projected.member(model_id), (Y[i] - offsets[model_id]) @ T[model_id], atol=1e-12)


def test_rotated_test_pool_becomes_consistent(rotated_copies, rng):
    Z, rotations, pool = rotated_copies(n=50, d=6, n_models=4)
    model = train_barycenter(pool, TrainConfig(epsilon=1e-10))
    W = rng.standard_normal((20, 6))
    projected = project(make_pool([W @ Q for Q in rotations]), model)

    for other in projected.members[1:]:
        np.testing.assert_allclose(other, projected.members[0], atol=1e-6)
    np.testing.assert_allclose(consistency_scores(projected).values, 1.0, atol=1e-9)


def test_unknown_model_is_rejected(rng):
    ids = stimulus_ids(4)
    test = build_pool([
        ReprMatrix("m0", ids, rng.standard_normal((4, 3))),
        ReprMatrix("zz", ids, rng.standard_normal((4, 3))),
    ])
    with pytest.raises(UnknownModelId):
        project(test, _model(3, {"m0": 3, "m1": 3}))


def test_width_change_is_rejected(rng):
    test = make_pool([rng.standard_normal((4, 3)), rng.standard_normal((4, 3))])
    with pytest.raises(WidthMismatch):
        project(test, _model(3, {"m0": 3, "m1": 2}))


def test_missing_model_requires_subset_mode(rng):
    test = make_pool([rng.standard_normal((4, 3)), rng.standard_normal((4, 3))])
    model = _model(3, {"m0": 3, "m1": 3, "m2": 3})
    with pytest.raises(ModelPoolMismatch):
        project(test, model)

    projected = project(test, model, allow_subset=True)
    assert projected.model_ids == ("m0", "m1")
