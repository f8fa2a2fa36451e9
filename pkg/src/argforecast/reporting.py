"""Report rendering: plain-text tables, delimited output and figures."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .coherence import ForecastSummary  # noqa: E402
from .datasets import AccuracyReport  # noqa: E402


def fmt(value: float | None) -> str:
    return "-" if value is None else f"{value:.6g}"


def accuracy_table(report: AccuracyReport) -> str:
    """Plain-text two-row table: raw population vs coherent subset."""
    rows = [
        ("", "Total", "Correct", "Acc."),
        ("raw", str(report.total), str(report.correct), fmt(report.accuracy)),
        ("coherent", str(report.coherent_total), str(report.coherent_correct),
         fmt(report.coherent_accuracy)),
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.append(f"retention: {fmt(report.retention)}")
    return "\n".join(lines)


def forecast_table(summary: ForecastSummary, prior: float | None = None) -> str:
    lines = [
        f"question:      {summary.argument}",
        f"raw mean:      {fmt(summary.raw_mean)} (n={summary.n_raw})",
        f"coherent mean: {fmt(summary.coherent_mean)} (n={summary.n_coherent})",
    ]
    if prior is not None:
        lines.append(f"prior:         {fmt(prior)}")
    return "\n".join(lines)


def write_accuracy_csv(report: AccuracyReport, path: str | Path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["population", "total", "correct", "accuracy"])
        writer.writerow(["raw", report.total, report.correct, fmt(report.accuracy)])
        writer.writerow(
            ["coherent", report.coherent_total, report.coherent_correct,
             fmt(report.coherent_accuracy)]
        )
        writer.writerow(["retention", "", "", fmt(report.retention)])


def write_accuracy_figure(report: AccuracyReport, path: str | Path) -> None:
    """Bar chart of raw vs coherent accuracy with the retention fraction."""
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    labels = ["raw", "coherent"]
    values = [report.accuracy or 0.0, report.coherent_accuracy or 0.0]
    bars = ax.bar(labels, values, color=["#9aa7b1", "#2c7fb8"])
    for bar, value in zip(bars, values):
        ax.text(bar.get_x() + bar.get_width() / 2, value + 0.01, f"{value:.2f}",
                ha="center", va="bottom", fontsize=9)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("accuracy")
    ax.set_title(f"Coherence filter (retention {fmt(report.retention)})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report_bundle(report: AccuracyReport, out_dir: str | Path) -> list[Path]:
    """Write the delimited report and its figure side by side; returns the
    created paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "accuracy.csv"
    fig_path = out_dir / "accuracy.png"
    write_accuracy_csv(report, csv_path)
    write_accuracy_figure(report, fig_path)
    return [csv_path, fig_path]
