"""Evaluation report rendering: aligned text tables, delimited CSV files,
and matplotlib figures written alongside them.

Text tables round scores to two decimals to mirror the benchmark's table
layout; the JSON and CSV outputs keep full precision.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .metrics import EvalReport  # noqa: E402


def _matrix_table(title: str, matrix) -> list[str]:
    width = max(9, max(len(label) for label in matrix.labels) + 2)
    lines = [title]
    header = " " * width + "".join(f"{label:>{width}}" for label in matrix.labels)
    lines.append(header)
    for i, label in enumerate(matrix.labels):
        row = f"{label:<{width}}" + "".join(
            f"{int(n):>{width},}" for n in matrix.counts[i]
        )
        lines.append(row)
    return lines


def render_text_tables(report: EvalReport) -> str:
    lines: list[str] = []
    lines += _matrix_table("confusion matrix (gold rows, predicted columns)", report.overall)
    lines.append("")
    for name in sorted(report.stage_matrices):
        lines += _matrix_table(f"{name} confusion matrix (gold-filtered)", report.stage_matrices[name])
        lines.append("")
    lines.append("class-wise performance")
    lines.append(f"{'class':<12}{'P':>8}{'R':>8}{'F1':>8}")
    for label, (p, r, f1) in report.per_class.items():
        lines.append(f"{label:<12}{p:>8.2f}{r:>8.2f}{f1:>8.2f}")
    lines.append("")
    lines.append(f"macro-F1:                 {report.macro_f1:.2f}")
    lines.append(f"macro-F1 agree/disagree:  {report.macro_f1_agr_dis:.2f}")
    lines.append(f"FNC relative score:       {report.fnc_relative_score:.2f}")
    if report.cascade_counts:
        lines.append("")
        lines.append("cascade halt counts")
        for key, value in report.cascade_counts.items():
            lines.append(f"  {key}: {value}")
    return "\n".join(lines) + "\n"


def _write_matrix_csv(matrix, path: Path) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["gold\\predicted"] + list(matrix.labels))
        for i, label in enumerate(matrix.labels):
            writer.writerow([label] + [int(n) for n in matrix.counts[i]])


def write_delimited(report: EvalReport, out_dir: Path) -> list[Path]:
    """CSV exports: per-class metrics plus every confusion matrix."""
    written = []
    metrics_path = out_dir / "per_class_metrics.csv"
    with metrics_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["class", "precision", "recall", "f1"])
        for label, (p, r, f1) in report.per_class.items():
            writer.writerow([label, repr(p), repr(r), repr(f1)])
        writer.writerow(["macro", "", "", repr(report.macro_f1)])
        writer.writerow(["macro_agree_disagree", "", "", repr(report.macro_f1_agr_dis)])
        writer.writerow(["fnc_relative_score", "", "", repr(report.fnc_relative_score)])
    written.append(metrics_path)

    overall_path = out_dir / "confusion_overall.csv"
    _write_matrix_csv(report.overall, overall_path)
    written.append(overall_path)
    for name, matrix in report.stage_matrices.items():
        path = out_dir / f"confusion_{name}.csv"
        _write_matrix_csv(matrix, path)
        written.append(path)
    return written


def _heatmap(ax, matrix, title: str) -> None:
    counts = matrix.counts.astype(float)
    ax.imshow(counts, cmap="Blues")
    n = len(matrix.labels)
    ax.set_xticks(range(n), matrix.labels, rotation=30, ha="right")
    ax.set_yticks(range(n), matrix.labels)
    ax.set_xlabel("predicted")
    ax.set_ylabel("gold")
    ax.set_title(title)
    threshold = counts.max() / 2 if counts.max() else 0.5
    for i in range(n):
        for j in range(n):
            color = "white" if counts[i, j] > threshold else "black"
            ax.text(j, i, f"{int(matrix.counts[i, j]):,}", ha="center", va="center", color=color, fontsize=8)


def write_figures(report: EvalReport, out_dir: Path, loss_csv: Path | None = None) -> list[Path]:
    """Render confusion heatmaps, a per-class score chart and, when a
    training-loss CSV is present, the loss curve."""
    written = []

    fig, ax = plt.subplots(figsize=(5.5, 4.8))
    _heatmap(ax, report.overall, "pipeline confusion matrix")
    fig.tight_layout()
    path = out_dir / "confusion_overall.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    if report.stage_matrices:
        names = sorted(report.stage_matrices)
        fig, axes = plt.subplots(1, len(names), figsize=(4.0 * len(names), 3.6))
        if len(names) == 1:
            axes = [axes]
        for ax, name in zip(axes, names):
            _heatmap(ax, report.stage_matrices[name], name)
        fig.tight_layout()
        path = out_dir / "confusion_stages.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    labels = list(report.per_class)
    x = np.arange(len(labels))
    width = 0.27
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for offset, (idx, series) in zip((-width, 0.0, width), enumerate(("precision", "recall", "F1"))):
        values = [report.per_class[label][idx] for label in labels]
        ax.bar(x + offset, values, width, label=series)
    ax.axhline(report.macro_f1, color="gray", linestyle="--", linewidth=1, label="macro-F1")
    ax.set_xticks(x, labels)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("score")
    ax.set_title("per-class performance")
    ax.legend()
    fig.tight_layout()
    path = out_dir / "per_class_scores.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    if loss_csv is not None and Path(loss_csv).exists():
        epochs, losses = [], []
        with Path(loss_csv).open("r", encoding="utf-8", newline="") as handle:
            reader = csv.reader(handle)
            next(reader, None)
            for row in reader:
                if row:
                    epochs.append(int(row[0]))
                    losses.append(float(row[1]))
        if epochs:
            fig, ax = plt.subplots(figsize=(5.6, 3.6))
            ax.plot(epochs, losses, marker="o")
            ax.set_xlabel("epoch")
            ax.set_ylabel("mean training loss")
            ax.set_title("stage-2 training loss")
            fig.tight_layout()
            path = out_dir / "training_loss.png"
            fig.savefig(path, dpi=150)
            plt.close(fig)
            written.append(path)
    return written


def write_report_files(
    report: EvalReport,
    out_dir: str | Path,
    figures: bool = True,
    loss_csv: Path | None = None,
) -> dict[str, list[Path]]:
    """Write report.json, report.txt, the CSV exports and the figures."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "report.json"
    json_path.write_text(report.to_json() + "\n", encoding="utf-8")
    text_path = out_dir / "report.txt"
    text_path.write_text(render_text_tables(report), encoding="utf-8")
    out = {"json": [json_path], "text": [text_path], "csv": write_delimited(report, out_dir)}
    if figures:
        out["figures"] = write_figures(report, out_dir, loss_csv=loss_csv)
    return out
