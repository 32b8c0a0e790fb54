"""
Tests for score ingestion, normalization and synthetic generation
"""

import numpy as np
import pytest

from xspec_eval.errors import ArgumentError, DegenerateInputError, ParseError
from xspec_eval.metrics import eer, roc_curve
from xspec_eval.schema import SynthParams
from xspec_eval.scores import (
    distance_to_similarity,
    load_scores,
    normalize,
    synth_pair,
    synth_scores,
    write_scores,
)

HEADER = "probe_id,probe_subject,gallery_id,gallery_subject,score\n"


def _write(tmp_path, body, header=HEADER):
    path = tmp_path / "scores.csv"
    path.write_text(header + body, encoding="utf-8")
    return path


def test_load_scores_partitions_by_subject(tmp_path):
    path = _write(tmp_path, "a1,alice,b1,alice,0.9\na2,alice,b2,bob,0.2\na3,carol,b3,carol,0.7\n")
    s = load_scores(path)
    assert s.n_genuine == 2
    assert s.n_impostor == 1
    assert list(s.genuine) == [0.9, 0.7]
    assert list(s.impostor) == [0.2]
    assert s.trials[1].key == ("a2", "b2")


def test_load_scores_keeps_ids_as_text(tmp_path):
    s = load_scores(_write(tmp_path, "007,01,08,01,0.5\n"))
    assert s.trials[0].probe_id == "007"
    assert s.trials[0].genuine


def test_load_scores_non_numeric_names_line(tmp_path):
    path = _write(tmp_path, "a1,alice,b1,alice,0.9\na2,alice,b2,bob,abc\n")
    with pytest.raises(ParseError) as e:
        load_scores(path)
    assert e.value.line == 3
    assert "line 3" in str(e.value)


def test_load_scores_rejects_extra_column(tmp_path):
    path = _write(tmp_path, "p1,A,g1,A,0.9,0.1\np2,A,g2,B,0.2,0.8\n")
    with pytest.raises(ParseError) as e:
        load_scores(path)
    assert e.value.line == 2
    assert "expected 5 fields, found 6" in str(e.value)


def test_load_scores_rejects_short_row_after_good_rows(tmp_path):
    with pytest.raises(ParseError) as e:
        load_scores(_write(tmp_path, "a1,alice,b1,alice,0.9\na2,alice,b2,0.4\n"))
    assert e.value.line == 3


def test_load_scores_counts_blank_lines(tmp_path):
    path = _write(tmp_path, "a1,alice,b1,alice,0.9\n\na2,alice,b2,bob,abc\n")
    with pytest.raises(ParseError) as e:
        load_scores(path)
    assert e.value.line == 4
    assert "line 4" in str(e.value)

    s = load_scores(_write(tmp_path, "a1,alice,b1,alice,0.9\n\na2,alice,b2,bob,0.1\n\n"))
    assert list(s.scores) == [0.9, 0.1]


def test_load_scores_rejects_non_finite(tmp_path):
    with pytest.raises(ParseError) as e:
        load_scores(_write(tmp_path, "a1,alice,b1,alice,nan\n"))
    assert e.value.line == 2


def test_load_scores_missing_value(tmp_path):
    with pytest.raises(ParseError) as e:
        load_scores(_write(tmp_path, "a1,,b1,alice,0.5\n"))
    assert e.value.line == 2


def test_load_scores_bad_header(tmp_path):
    with pytest.raises(ParseError) as e:
        load_scores(_write(tmp_path, "a1,alice,b1,alice,0.5\n", header="probe,subject,gallery,gsubject,s\n"))
    assert e.value.line == 1


def test_load_scores_empty_inputs(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(ParseError):
        load_scores(empty)
    with pytest.raises(ParseError):
        load_scores(_write(tmp_path, ""))


def test_write_then_load_preserves_scores(tmp_path, hand_scores):
    path = write_scores(hand_scores, tmp_path / "out.csv")
    text = path.read_text(encoding="utf-8")
    assert text.startswith(HEADER)
    assert "\r" not in text
    back = load_scores(path)
    assert back == hand_scores


def test_normalize_minmax(score_factory):
    s = normalize(score_factory([2.0, 4.0], [0.0, 1.0]), "minmax")
    assert list(s.genuine) == [0.5, 1.0]
    assert list(s.impostor) == [0.0, 0.25]


def test_normalize_zscore(score_factory):
    s = normalize(score_factory([1.0, 3.0], [2.0, 2.0]), "zscore")
    scores = s.scores
    assert scores.mean() == pytest.approx(0.0, abs=1e-12)
    assert scores.std(ddof=1) == pytest.approx(1.0, abs=1e-12)


def test_normalize_none_is_identity(hand_scores):
    assert normalize(hand_scores, "none") is hand_scores


def test_normalize_degenerate(score_factory):
    constant = score_factory([0.5], [0.5])
    with pytest.raises(DegenerateInputError):
        normalize(constant, "minmax")
    with pytest.raises(DegenerateInputError):
        normalize(constant, "zscore")


def test_normalize_preserves_labels(hand_scores):
    s = normalize(hand_scores, "zscore")
    assert [t.genuine for t in s.trials] == [t.genuine for t in hand_scores.trials]
    assert [t.key for t in s.trials] == [t.key for t in hand_scores.trials]


def test_minmax_is_idempotent(score_factory, rng):
    once = normalize(score_factory(rng.normal(0.7, 0.1, 40), rng.normal(0.4, 0.1, 60)), "minmax")
    twice = normalize(once, "minmax")
    assert np.array_equal(twice.scores, once.scores)
    assert once.scores.min() == 0.0
    assert once.scores.max() == 1.0


@pytest.mark.parametrize("method", ["minmax", "zscore"])
def test_normalize_preserves_rank_order(score_factory, rng, method):
    s = score_factory(rng.normal(3.0, 2.0, 50), rng.normal(-1.0, 0.5, 50))
    order = np.argsort(s.scores, kind="stable")
    normalized = normalize(s, method).scores
    assert np.all(np.diff(normalized[order]) >= 0)


def test_distance_to_similarity_reverses_order(score_factory, rng):
    distances = rng.uniform(0.0, 10.0, 80)
    similarities = distance_to_similarity(score_factory(distances[:30], distances[30:])).scores
    order = np.argsort(distances, kind="stable")
    assert np.all(np.diff(similarities[order]) <= 0)
    assert similarities[order[0]] > similarities[order[-1]]


def test_distance_to_similarity(score_factory):
    s = distance_to_similarity(score_factory([0.0, 1.0], [3.0]))
    assert list(s.genuine) == [1.0, 0.5]
    assert list(s.impostor) == [0.25]
    with pytest.raises(ArgumentError):
        distance_to_similarity(score_factory([-0.1], [1.0]))


def test_synth_scores_deterministic_and_clipped():
    a = synth_scores(42, 200, 300, 0.7, 0.3, 0.4, 0.3)
    b = synth_scores(42, 200, 300, 0.7, 0.3, 0.4, 0.3)
    assert a == b
    assert a.n_genuine == 200
    assert a.n_impostor == 300
    assert a.scores.min() >= 0.0
    assert a.scores.max() <= 1.0
    assert synth_scores(43, 200, 300, 0.7, 0.3, 0.4, 0.3) != a


def test_synth_scores_rejects_empty_class():
    with pytest.raises(ArgumentError):
        synth_scores(1, 0, 10, 0.7, 0.1, 0.4, 0.1)
    with pytest.raises(ArgumentError):
        synth_scores(1, 10, 10, 0.7, -0.1, 0.4, 0.1)


def test_synth_pair_shares_keys_not_noise():
    vis, ir = synth_pair(42, 100, 100, SynthParams(), SynthParams())
    assert [t.key for t in vis.trials] == [t.key for t in ir.trials]
    assert [t.genuine for t in vis.trials] == [t.genuine for t in ir.trials]
    # Same distribution parameters, independent streams
    assert not np.array_equal(vis.scores, ir.scores)


def test_synth_scores_seeded_eer():
    s = synth_scores(42, 500, 500, 0.7, 0.1, 0.4, 0.1)
    assert eer(roc_curve(s)) == pytest.approx(0.062, abs=1e-3)
