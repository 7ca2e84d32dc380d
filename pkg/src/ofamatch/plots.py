"""Figures for benchmark reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import BenchRecord  # noqa: E402


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.yaxis.grid(True, linestyle=":", linewidth=0.6)
    ax.set_axisbelow(True)


def _bar_figure(ids, values, ylabel, title, path, reference=None):
    fig, ax = plt.subplots(figsize=(max(4.0, 0.45 * len(ids) + 1.5), 3.2))
    ax.bar(range(len(ids)), values, color="#4c72b0", width=0.7)
    if reference is not None:
        ax.axhline(reference, color="k", linewidth=0.8, linestyle="--", label="forward-only")
        ax.legend(frameon=False, fontsize=8)
    ax.set_xticks(range(len(ids)))
    ax.set_xticklabels(ids, rotation=60, ha="right", fontsize=8)
    ax.set_ylabel(ylabel, fontsize=9)
    ax.set_title(title, fontsize=10)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_bench_figures(records: Sequence[BenchRecord], out_dir: str | Path) -> list[Path]:
    """Write chars-processed and elapsed-time bar charts; returns the file paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ok = [r for r in records if not r.error]
    ids = [r.pattern_id for r in ok]
    return [
        _bar_figure(ids, [100 * r.ofa_pct_chars_processed for r in ok],
                    "% chars processed", "OFA characters processed vs forward scan",
                    out_dir / "chars_processed.png", reference=100),
        _bar_figure(ids, [100 * r.ofa_pct_time for r in ok],
                    "% elapsed time", "OFA match time vs forward scan",
                    out_dir / "elapsed_time.png", reference=100),
        _bar_figure(ids, [r.max_lookahead for r in ok],
                    "max lookahead", "Largest trie lookahead per pattern",
                    out_dir / "max_lookahead.png"),
    ]
