"""
Métricas de evaluación: correlación, RMS, recuperación top-K y niveles de azar
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_pool, make_projected, stimulus_ids
from baryalign.models import ConsistencyReport
from baryalign.services import (
    chance_level,
    correlation_details,
    correlation_score,
    cross_group_retrieval,
    evaluate,
    retrieval_accuracy,
    rms_score,
    score_correlation,
)
from baryalign.services import metrics_service
from baryalign.services.metrics_service import match_ranks
from baryalign.services.synth_service import make_rng
from baryalign.utils.exceptions import KTooLarge, StimulusMismatch, TooFewModels, TooFewStimuli


def _naive_correlation(members, i):
    values = []
    for j, other in enumerate(members):
        if j == i:
            continue
        for col in range(other.shape[1]):
            a, b = members[i][:, col], other[:, col]
            if np.ptp(a) == 0 or np.ptp(b) == 0:
                continue
            values.append(np.corrcoef(a, b)[0, 1])
    return float(np.mean(values))


def _naive_rms(members, i):
    values = []
    for j, other in enumerate(members):
        if j == i:
            continue
        for col in range(other.shape[1]):
            values.append(math.sqrt(float(np.mean((members[i][:, col] - other[:, col]) ** 2))))
    return float(np.mean(values))


def _sorted_rank(query_row, gallery, own):
    order = sorted(range(len(gallery)), key=lambda g: (float(np.linalg.norm(query_row - gallery[g])), g))
    return order.index(own)


def _report(scores, ids=None):
    ids = ids or stimulus_ids(len(scores))
    return ConsistencyReport(stimulus_ids=ids, scores=scores, pool_model_ids=("m0", "m1"))


# --- correlación ---

def test_identical_members_correlate_perfectly(rng):
    Y = rng.standard_normal((20, 4))
    assert correlation_score(make_projected([Y, Y, Y])) == pytest.approx(
        {"m0": 1.0, "m1": 1.0, "m2": 1.0}, abs=1e-12
    )


def test_negated_member_anticorrelates(rng):
    Y = rng.standard_normal((20, 4))
    scores = correlation_score(make_projected([Y, -Y]))
    assert scores["m0"] == pytest.approx(-1.0, abs=1e-12)
    assert scores["m1"] == pytest.approx(-1.0, abs=1e-12)


def test_correlation_matches_naive_loop(rng):
    members = [rng.standard_normal((15, 3)) for _ in range(4)]
    scores = correlation_score(make_projected(members))
    for i in range(4):
        assert scores[f"m{i}"] == pytest.approx(_naive_correlation(members, i), abs=1e-12)


def test_zero_columns_are_skipped_over_ordered_pairs(rng):
    pool = make_pool([rng.standard_normal((30, w)) for w in (4, 8, 16)])
    scores, skipped = correlation_details(make_projected(pool.matrices))
    assert skipped == 64
    assert all(-1.0 <= value <= 1.0 for value in scores.values())


def test_all_constant_columns_give_nan():
    constant = np.ones((5, 2))
    scores, skipped = correlation_details(make_projected([constant, constant]))
    assert math.isnan(scores["m0"])
    assert skipped == 4


def test_correlation_needs_three_stimuli(rng):
    with pytest.raises(TooFewStimuli):
        correlation_score(make_projected([rng.standard_normal((2, 3)) for _ in range(2)]))
    with pytest.raises(TooFewModels):
        correlation_score(make_projected([rng.standard_normal((5, 3))]))


# --- RMS ---

def test_identical_members_have_zero_rms(rng):
    Y = rng.standard_normal((10, 3))
    assert rms_score(make_projected([Y, Y])) == {"m0": 0.0, "m1": 0.0}


@pytest.mark.parametrize("offset", [0.5, -2.0, 3.25])
def test_constant_offset_rms(rng, offset):
    Y = rng.standard_normal((10, 3))
    scores = rms_score(make_projected([Y, Y + offset]))
    assert scores["m0"] == pytest.approx(abs(offset), abs=1e-12)
    assert scores["m1"] == pytest.approx(abs(offset), abs=1e-12)


def test_rms_matches_naive_loop(rng):
    members = [rng.standard_normal((12, 4)) for _ in range(3)]
    scores = rms_score(make_projected(members))
    for i in range(3):
        assert scores[f"m{i}"] == pytest.approx(_naive_rms(members, i), abs=1e-12)


# --- recuperación ---

def test_identical_members_retrieve_everything(rng):
    Y = rng.standard_normal((25, 4))
    accuracy = retrieval_accuracy(make_projected([Y, Y, Y]), ks=(1, 5))
    for per_k in accuracy.values():
        assert per_k == {1: 1.0, 5: 1.0}


def test_cyclic_shift_misses_top1(rng):
    Y = rng.standard_normal((10, 3))
    accuracy = retrieval_accuracy(make_projected([Y, np.roll(Y, 1, axis=0)]), ks=(1,))
    assert accuracy["m0"][1] == 0.0
    assert accuracy["m1"][1] == 0.0


def test_ties_are_broken_by_row_index():
    gallery = np.array([[0.0, 0.0], [0.0, 0.0], [5.0, 5.0]])
    np.testing.assert_array_equal(match_ranks(gallery, gallery), [0, 1, 0])


@settings(deadline=None, max_examples=25)
@given(seed=st.integers(0, 2 ** 32 - 1), m=st.integers(3, 20), d=st.integers(1, 4))
def test_ranks_match_sorting_oracle(seed, m, d):
    rng = make_rng(seed)
    query = rng.standard_normal((m, d))
    gallery = query + 0.5 * rng.standard_normal((m, d))
    ranks = match_ranks(query, gallery)
    for x in range(m):
        assert ranks[x] == _sorted_rank(query[x], gallery, x)


def test_ranks_do_not_depend_on_block_size(monkeypatch, rng):
    query = rng.standard_normal((23, 3))
    gallery = np.vstack([query[:10], query[:10], rng.standard_normal((3, 3))])
    whole = match_ranks(query, gallery)

    monkeypatch.setattr(metrics_service, "_BLOCK_ELEMENTS", 2 * gallery.shape[0])
    np.testing.assert_array_equal(match_ranks(query, gallery), whole)
    for x in range(23):
        assert whole[x] == _sorted_rank(query[x], gallery, x)


def test_accuracy_is_monotone_in_k(rng):
    members = [rng.standard_normal((30, 4)) for _ in range(3)]
    accuracy = retrieval_accuracy(make_projected(members), ks=(1, 2, 5, 10, 30))
    for per_k in accuracy.values():
        values = [per_k[k] for k in (1, 2, 5, 10, 30)]
        assert values == sorted(values)
        assert per_k[30] == 1.0


def test_k_larger_than_pool_is_rejected(rng):
    projected = make_projected([rng.standard_normal((5, 2)) for _ in range(2)])
    with pytest.raises(KTooLarge):
        retrieval_accuracy(projected, ks=(6,))
    with pytest.raises(KTooLarge):
        retrieval_accuracy(projected, ks=(0,))


def test_retrieval_is_thread_independent(rng):
    projected = make_projected([rng.standard_normal((40, 5)) for _ in range(4)])
    assert retrieval_accuracy(projected, threads=1) == retrieval_accuracy(projected, threads=4)


def test_cross_group_retrieval(rng):
    Y = rng.standard_normal((12, 3))
    noise = rng.standard_normal((12, 3))
    projected = make_projected([Y, Y, noise], model_ids=["img", "txt", "other"])
    result = cross_group_retrieval(projected, ["img"], ["txt"], ks=(1,))
    assert result == {1: 1.0}
    with pytest.raises(TooFewModels):
        cross_group_retrieval(projected, ["img"], ["img"], ks=(1,))


# --- azar ---

@pytest.mark.parametrize("m, k, expected", [
    (5000, 1, 0.0002),
    (5000, 10, 0.002),
    (300, 1, 1 / 300),
    (20, 1, 0.05),
    (100, 1, 0.01),
    (100, 5, 0.05),
    (100, 10, 0.1),
])
def test_chance_levels(m, k, expected):
    assert chance_level(m, k) == expected


def test_chance_level_rejects_large_k():
    with pytest.raises(KTooLarge):
        chance_level(10, 11)


# --- correlación entre puntuaciones ---

def test_score_correlation():
    a = _report((0.1, 0.5, 0.3, 0.9))
    assert score_correlation(a, a) == pytest.approx(1.0)
    assert score_correlation(a, _report((-0.1, -0.5, -0.3, -0.9))) == pytest.approx(-1.0)


def test_score_correlation_requires_same_stimuli():
    a = _report((0.1, 0.5, 0.3))
    b = _report((0.1, 0.5, 0.3), ids=["a", "b", "c"])
    with pytest.raises(StimulusMismatch):
        score_correlation(a, b)


def test_score_correlation_of_constant_scores_is_nan():
    a = _report((0.2, 0.2, 0.2))
    b = _report((0.1, 0.5, 0.3))
    assert math.isnan(score_correlation(a, b))


# --- evaluate ---

def test_evaluate_collects_every_metric(rng):
    Y = rng.standard_normal((20, 4))
    projected = make_projected([Y, Y, Y], model_ids=["a", "b", "c"])
    report = evaluate(projected, ks=(1, 5), query_models=["a"], gallery_models=["b", "c"])

    assert report.model_ids == ["a", "b", "c"]
    assert report.n_stimuli == 20
    assert report.chance_levels == {1: 0.05, 5: 0.25}
    assert report.skipped_constant_dimensions == 0
    assert report.cross_group_retrieval == {"forward": {1: 1.0, 5: 1.0}, "backward": {1: 1.0, 5: 1.0}}
    means = report.pool_means()
    assert means["correlation"] == pytest.approx(1.0)
    assert means["rms"] == 0.0
    assert means["top1"] == 1.0


def test_evaluate_is_invariant_to_row_order(rng):
    members = [rng.standard_normal((15, 3)) for _ in range(3)]
    projected = make_projected(members)
    order = make_rng(9).permutation(15)
    base = evaluate(projected, ks=(1, 3))
    shuffled = evaluate(projected.reordered(row_order=order), ks=(1, 3))

    assert shuffled.per_model_retrieval == base.per_model_retrieval
    for model_id in base.model_ids:
        assert shuffled.per_model_correlation[model_id] == pytest.approx(base.per_model_correlation[model_id], abs=1e-12)
        assert shuffled.per_model_rms[model_id] == pytest.approx(base.per_model_rms[model_id], abs=1e-12)
