"""Evaluation metrics: confusion matrices, per-class P/R/F1, macro-F1,
and the weighted two-level relevance/stance benchmark score.

The benchmark score awards 0.25 points for a correct related/unrelated
split and a further 0.75 points for the exact related-class label,
normalized by the maximum achievable total. All 0/0 ratios resolve to 0,
so a class absent from both gold and predictions contributes F1 = 0
rather than NaN.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import LABEL_ORDER, StanceLabel


@dataclass(frozen=True)
class ConfusionMatrix:
    """Square count grid; rows are gold classes, columns predictions."""

    labels: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.labels)
        if self.counts.shape != (n, n):
            raise ValueError(f"counts shape {self.counts.shape} does not match {n} labels")
        if np.any(self.counts < 0):
            raise ValueError("confusion counts must be non-negative")

    @classmethod
    def from_pairs(cls, golds, predictions, labels) -> "ConfusionMatrix":
        labels = tuple(labels)
        index = {label: i for i, label in enumerate(labels)}
        counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
        golds, predictions = list(golds), list(predictions)
        if len(golds) != len(predictions):
            raise ValueError(f"{len(golds)} golds vs {len(predictions)} predictions")
        for gold, pred in zip(golds, predictions):
            counts[index[gold], index[pred]] += 1
        return cls(labels=labels, counts=counts)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"unknown class {label!r}; matrix has {self.labels}") from None


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def prf(matrix: ConfusionMatrix, label: str) -> tuple[float, float, float]:
    """Precision, recall and F1 of one class; 0/0 resolves to 0."""
    i = matrix.index(label)
    tp = float(matrix.counts[i, i])
    precision = _safe_div(tp, float(matrix.counts[:, i].sum()))
    recall = _safe_div(tp, float(matrix.counts[i, :].sum()))
    f1 = _safe_div(2.0 * precision * recall, precision + recall)
    return precision, recall, f1


def macro_f1(matrix: ConfusionMatrix) -> float:
    return macro_f1_over(matrix, matrix.labels)


def macro_f1_over(matrix: ConfusionMatrix, labels) -> float:
    labels = tuple(labels)
    if not labels:
        raise ValueError("macro-F1 needs a non-empty class set")
    return float(np.mean([prf(matrix, label)[2] for label in labels]))


def fnc_score(predictions, golds) -> float:
    """Relative weighted score of a prediction sequence against gold labels."""
    predictions, golds = list(predictions), list(golds)
    if len(predictions) != len(golds):
        raise ValueError(f"{len(predictions)} predictions vs {len(golds)} golds")
    if not golds:
        raise ValueError("cannot score an empty prediction set")
    achieved = 0.0
    maximum = 0.0
    for pred, gold in zip(predictions, golds):
        maximum += 1.0 if gold.is_related else 0.25
        if pred.is_related == gold.is_related:
            achieved += 0.25
            if gold.is_related and pred is gold:
                achieved += 0.75
    return achieved / maximum


STANCE_LABEL_NAMES = tuple(label.value for label in LABEL_ORDER)


def overall_matrix(golds, predictions) -> ConfusionMatrix:
    return ConfusionMatrix.from_pairs(
        [g.value for g in golds], [p.value for p in predictions], STANCE_LABEL_NAMES
    )


@dataclass
class EvalReport:
    """Everything the evaluation emits: the cascade confusion matrix, the
    per-stage matrices computed on gold-filtered inputs, per-class P/R/F1,
    both macro aggregates, the relative weighted score, and the cascade
    halt counters."""

    overall: ConfusionMatrix
    stage_matrices: dict[str, ConfusionMatrix]
    per_class: dict[str, tuple[float, float, float]]
    macro_f1: float
    macro_f1_agr_dis: float
    fnc_relative_score: float
    cascade_counts: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_predictions(
        cls,
        golds,
        predictions,
        stage_matrices: dict[str, ConfusionMatrix] | None = None,
        cascade_counts: dict[str, int] | None = None,
    ) -> "EvalReport":
        matrix = overall_matrix(golds, predictions)
        per_class = {label: prf(matrix, label) for label in matrix.labels}
        return cls(
            overall=matrix,
            stage_matrices=stage_matrices or {},
            per_class=per_class,
            macro_f1=macro_f1(matrix),
            macro_f1_agr_dis=macro_f1_over(
                matrix, (StanceLabel.AGREE.value, StanceLabel.DISAGREE.value)
            ),
            fnc_relative_score=fnc_score(predictions, golds),
            cascade_counts=cascade_counts or {},
        )

    def to_json_dict(self) -> dict:
        return {
            "overall_confusion": {
                "labels": list(self.overall.labels),
                "counts": self.overall.counts.tolist(),
            },
            "stage_confusions": {
                name: {"labels": list(m.labels), "counts": m.counts.tolist()}
                for name, m in self.stage_matrices.items()
            },
            "per_class": {
                label: {"precision": p, "recall": r, "f1": f}
                for label, (p, r, f) in self.per_class.items()
            },
            "macro_f1": self.macro_f1,
            "macro_f1_agree_disagree": self.macro_f1_agr_dis,
            "fnc_relative_score": self.fnc_relative_score,
            "cascade_counts": dict(self.cascade_counts),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


def matrix_from_json(payload: dict) -> ConfusionMatrix:
    return ConfusionMatrix(
        labels=tuple(payload["labels"]),
        counts=np.asarray(payload["counts"], dtype=np.int64),
    )


def report_from_json(text: str) -> EvalReport:
    payload = json.loads(text)
    return EvalReport(
        overall=matrix_from_json(payload["overall_confusion"]),
        stage_matrices={
            name: matrix_from_json(m) for name, m in payload["stage_confusions"].items()
        },
        per_class={
            label: (v["precision"], v["recall"], v["f1"])
            for label, v in payload["per_class"].items()
        },
        macro_f1=payload["macro_f1"],
        macro_f1_agr_dis=payload["macro_f1_agree_disagree"],
        fnc_relative_score=payload["fnc_relative_score"],
        cascade_counts=dict(payload.get("cascade_counts", {})),
    )


def load_predictions_csv(path: str | Path) -> list[tuple[int, StanceLabel]]:
    """Prediction file for scoring external systems: index, predicted label."""
    rows: list[tuple[int, StanceLabel]] = []
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty predictions file")
        for row in reader:
            if not row:
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: line {reader.line_num}: expected 'index,label'")
            rows.append((int(row[0]), StanceLabel.parse(row[1])))
    return rows
