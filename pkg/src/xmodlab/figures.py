"""Render report tables to files: one CSV and one PNG heatmap per table.

matplotlib is imported lazily so that library use and plain CLI runs never
pay for it; the Agg backend keeps rendering headless.
"""

from __future__ import annotations

import csv
import os


def save_table_csv(path: str, rows, header=None) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        if header is not None:
            writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def save_table_heatmap(path: str, rows, title: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    data = [list(r) for r in rows]
    n_rows = len(data)
    n_cols = len(data[0]) if data else 0
    size = max(2.0, min(8.0, 0.35 * max(n_rows, n_cols) + 1.0))
    fig, ax = plt.subplots(figsize=(size, size))
    ax.imshow(data, cmap="viridis", interpolation="nearest")
    if n_rows <= 16 and n_cols <= 16:
        vmax = max(max(r) for r in data) if data else 0
        for i, row in enumerate(data):
            for j, v in enumerate(row):
                color = "white" if vmax and v < vmax / 2 else "black"
                ax.text(j, i, str(v), ha="center", va="center", fontsize=8, color=color)
    ax.set_title(title)
    ax.set_xticks(range(n_cols))
    ax.set_yticks(range(n_rows))
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def emit_table(directory: str, stem: str, rows, title: str, header=None) -> list[str]:
    """Write <stem>.csv and <stem>.png into the directory; returns paths."""
    os.makedirs(directory, exist_ok=True)
    csv_path = os.path.join(directory, f"{stem}.csv")
    png_path = os.path.join(directory, f"{stem}.png")
    save_table_csv(csv_path, rows, header)
    save_table_heatmap(png_path, rows, title)
    return [csv_path, png_path]
