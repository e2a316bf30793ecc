"""Metrics: confusion matrices, P/R/F1, macro-F1 and the weighted score.

The fixed matrices here are the published results this engine targets;
expected values are derived by direct arithmetic on the counts.
"""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stancecascade.corpus import StanceLabel
from stancecascade.metrics import (
    ConfusionMatrix,
    EvalReport,
    fnc_score,
    load_predictions_csv,
    macro_f1,
    macro_f1_over,
    overall_matrix,
    prf,
    report_from_json,
)

LABELS = ("agree", "disagree", "discuss", "unrelated")

# rows gold, columns predicted, label order as above
PIPELINE_MATRIX = ConfusionMatrix(
    labels=LABELS,
    counts=np.array(
        [
            [1006, 278, 495, 124],
            [237, 160, 171, 129],
            [555, 252, 3381, 276],
            [127, 31, 523, 17668],
        ],
        dtype=np.int64,
    ),
)

STAGE1_MATRIX = ConfusionMatrix(
    labels=("unrelated", "related"),
    counts=np.array([[17668, 681], [529, 6535]], dtype=np.int64),
)
STAGE2_MATRIX = ConfusionMatrix(
    labels=("neutral", "stance"),
    counts=np.array([[3575, 889], [760, 1840]], dtype=np.int64),
)
STAGE3_MATRIX = ConfusionMatrix(
    labels=("agree", "disagree"),
    counts=np.array([[1436, 467], [387, 310]], dtype=np.int64),
)


def pairs_from_matrix(matrix: ConfusionMatrix):
    """Expand a confusion matrix into (golds, predictions) label lists."""
    golds, preds = [], []
    for i, gold in enumerate(matrix.labels):
        for j, pred in enumerate(matrix.labels):
            count = int(matrix.counts[i, j])
            golds += [StanceLabel.parse(gold)] * count
            preds += [StanceLabel.parse(pred)] * count
    return golds, preds


class TestPrf:
    def test_published_pipeline_disagree(self):
        p, r, f1 = prf(PIPELINE_MATRIX, "disagree")
        assert p == pytest.approx(160 / 721, abs=1e-12)
        assert r == pytest.approx(160 / 697, abs=1e-12)
        assert f1 == pytest.approx(0.2257, abs=5e-4)
        assert (round(p, 2), round(r, 2), round(f1, 2)) == (0.22, 0.23, 0.23)

    def test_published_stage3_disagree(self):
        p, r, f1 = prf(STAGE3_MATRIX, "disagree")
        assert p == pytest.approx(310 / 777, abs=1e-12)
        assert r == pytest.approx(310 / 697, abs=1e-12)
        assert round(f1, 2) == 0.42

    def test_diagonal_matrix_is_perfect(self):
        matrix = ConfusionMatrix(labels=LABELS, counts=np.diag([5, 6, 7, 8]).astype(np.int64))
        for label in LABELS:
            assert prf(matrix, label) == (1.0, 1.0, 1.0)

    def test_unknown_class(self):
        with pytest.raises(KeyError):
            prf(PIPELINE_MATRIX, "sarcastic")

    def test_degenerate_class_gives_zero_not_nan(self):
        matrix = ConfusionMatrix(
            labels=("a", "b"), counts=np.array([[3, 0], [0, 0]], dtype=np.int64)
        )
        assert prf(matrix, "b") == (0.0, 0.0, 0.0)


class TestMacro:
    def test_published_pipeline_macro(self):
        assert macro_f1(PIPELINE_MATRIX) == pytest.approx(0.6167, abs=5e-4)
        assert macro_f1_over(PIPELINE_MATRIX, ("agree", "disagree")) == pytest.approx(
            0.3757, abs=5e-4
        )

    def test_single_class_diagonal(self):
        matrix = ConfusionMatrix(labels=("x", "y"), counts=np.diag([4, 4]).astype(np.int64))
        assert macro_f1(matrix) == 1.0

    def test_empty_class_set_rejected(self):
        with pytest.raises(ValueError):
            macro_f1_over(PIPELINE_MATRIX, ())

    @given(
        st.lists(
            st.lists(st.integers(0, 50), min_size=3, max_size=3), min_size=3, max_size=3
        )
    )
    @settings(max_examples=100, deadline=None)
    def test_f1_from_counts_identity(self, rows):
        matrix = ConfusionMatrix(
            labels=("a", "b", "c"), counts=np.asarray(rows, dtype=np.int64)
        )
        for i, label in enumerate(matrix.labels):
            p, r, f1 = prf(matrix, label)
            tp = rows[i][i]
            col = sum(row[i] for row in rows)
            row_total = sum(rows[i])
            direct = 2 * tp / (col + row_total) if (col + row_total) else 0.0
            assert f1 == pytest.approx(direct, abs=1e-12)


class TestFncScore:
    def test_published_pipeline_score(self):
        golds, preds = pairs_from_matrix(PIPELINE_MATRIX)
        score = fnc_score(preds, golds)
        assert score == pytest.approx(9461.0 / 11651.25, abs=1e-12)
        assert round(score, 2) == 0.81

    def test_majority_vote_baseline(self):
        golds = (
            [StanceLabel.AGREE] * 1903
            + [StanceLabel.DISAGREE] * 697
            + [StanceLabel.NEUTRAL] * 4464
            + [StanceLabel.UNRELATED] * 18349
        )
        preds = [StanceLabel.UNRELATED] * len(golds)
        score = fnc_score(preds, golds)
        assert score == pytest.approx(4587.25 / 11651.25, abs=1e-12)
        assert round(score, 2) == 0.39

    def test_perfect_predictions(self):
        golds = [StanceLabel.AGREE, StanceLabel.UNRELATED, StanceLabel.NEUTRAL]
        assert fnc_score(golds, golds) == 1.0

    def test_partial_credit_for_related_split(self):
        golds = [StanceLabel.AGREE]
        assert fnc_score([StanceLabel.NEUTRAL], golds) == pytest.approx(0.25)
        assert fnc_score([StanceLabel.UNRELATED], golds) == 0.0

    def test_errors(self):
        with pytest.raises(ValueError):
            fnc_score([StanceLabel.AGREE], [])
        with pytest.raises(ValueError):
            fnc_score([], [])

    @given(st.permutations(list(range(6))))
    @settings(max_examples=50, deadline=None)
    def test_permutation_invariance(self, order):
        golds = [
            StanceLabel.AGREE, StanceLabel.DISAGREE, StanceLabel.NEUTRAL,
            StanceLabel.UNRELATED, StanceLabel.AGREE, StanceLabel.NEUTRAL,
        ]
        preds = [
            StanceLabel.AGREE, StanceLabel.NEUTRAL, StanceLabel.NEUTRAL,
            StanceLabel.AGREE, StanceLabel.DISAGREE, StanceLabel.UNRELATED,
        ]
        base = fnc_score(preds, golds)
        shuffled = fnc_score([preds[i] for i in order], [golds[i] for i in order])
        assert shuffled == pytest.approx(base, abs=1e-12)


class TestPublishedStageMatrices:
    def test_stage1_related(self):
        p, r, _ = prf(STAGE1_MATRIX, "related")
        assert (round(p, 2), round(r, 2)) == (0.91, 0.93)

    def test_stage2_stance(self):
        p, r, _ = prf(STAGE2_MATRIX, "stance")
        assert (round(p, 2), round(r, 2)) == (0.67, 0.71)


class TestEvalReport:
    def make_report(self) -> EvalReport:
        golds, preds = pairs_from_matrix(PIPELINE_MATRIX)
        return EvalReport.from_predictions(
            golds, preds, stage_matrices={"stage1": STAGE1_MATRIX}, cascade_counts={"stage1_negative": 3}
        )

    def test_reproduces_published_numbers(self):
        report = self.make_report()
        per_class = {label: round(f1, 2) for label, (_, _, f1) in report.per_class.items()}
        assert per_class == {"unrelated": 0.97, "discuss": 0.75, "agree": 0.53, "disagree": 0.23}
        assert round(report.macro_f1, 2) == 0.62
        assert round(report.macro_f1_agr_dis, 2) == 0.38
        assert round(report.fnc_relative_score, 2) == 0.81

    def test_json_round_trip(self):
        report = self.make_report()
        loaded = report_from_json(report.to_json())
        assert np.array_equal(loaded.overall.counts, report.overall.counts)
        assert loaded.macro_f1 == report.macro_f1
        assert loaded.per_class == report.per_class
        assert loaded.cascade_counts == report.cascade_counts
        assert np.array_equal(loaded.stage_matrices["stage1"].counts, STAGE1_MATRIX.counts)

    def test_scores_within_unit_interval(self):
        report = self.make_report()
        for p, r, f1 in report.per_class.values():
            assert 0.0 <= p <= 1.0 and 0.0 <= r <= 1.0 and 0.0 <= f1 <= 1.0
        assert 0.0 <= report.fnc_relative_score <= 1.0


class TestMatrixConstruction:
    def test_from_pairs_row_sums(self):
        golds, preds = pairs_from_matrix(PIPELINE_MATRIX)
        rebuilt = overall_matrix(golds, preds)
        assert np.array_equal(rebuilt.counts, PIPELINE_MATRIX.counts)
        assert rebuilt.counts.sum() == 25413
        assert list(rebuilt.counts.sum(axis=1)) == [1903, 697, 4464, 18349]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            ConfusionMatrix.from_pairs(["a"], ["a", "b"], ("a", "b"))

    def test_negative_counts_rejected(self):
        with pytest.raises(ValueError):
            ConfusionMatrix(labels=("a",), counts=np.array([[-1]]))


def test_predictions_csv(tmp_path):
    path = tmp_path / "preds.csv"
    path.write_text("index,label\n0,agree\n1,discuss\n2,unrelated\n")
    rows = load_predictions_csv(path)
    assert rows == [
        (0, StanceLabel.AGREE), (1, StanceLabel.NEUTRAL), (2, StanceLabel.UNRELATED),
    ]
    bad = tmp_path / "bad.csv"
    bad.write_text("index,label\n0\n")
    with pytest.raises(ValueError):
        load_predictions_csv(bad)
