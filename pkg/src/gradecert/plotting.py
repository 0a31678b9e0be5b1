"""Figures for reports: ext-table heatmaps, Hasse diagrams and KL tables.

Everything is written as SVG with fixed metadata so reruns are byte-identical.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams["svg.hashsalt"] = "gradecert"
plt.rcParams["svg.fonttype"] = "none"


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return path


def ext_heatmaps(tables: Mapping[str, Sequence[Sequence[int]]], title: str, path: str | Path) -> Path:
    """One panel per ``"lambda,mu"`` key; entries are ``[i, j, dim]`` triples.

    Cells on the diagonal i = j are outlined, so any off-diagonal colour is
    a purity violation.
    """
    keys = sorted(tables)
    n = max(len(keys), 1)
    cols = min(n, 4)
    rows = (n + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(2.6 * cols, 2.4 * rows), squeeze=False)
    for ax in axes.flat:
        ax.axis("off")
    for ax, key in zip(axes.flat, keys):
        entries = tables[key]
        imax = max((e[0] for e in entries), default=0)
        jmax = max((e[1] for e in entries), default=0)
        grid = [[0] * (jmax + 1) for _ in range(imax + 1)]
        for i, j, v in entries:
            grid[i][j] = v
        ax.axis("on")
        ax.imshow(grid, cmap="Blues", origin="lower", vmin=0, aspect="auto")
        for i in range(imax + 1):
            for j in range(jmax + 1):
                if grid[i][j]:
                    ax.text(j, i, str(grid[i][j]), ha="center", va="center", fontsize=8)
                if i == j:
                    ax.add_patch(plt.Rectangle((j - 0.5, i - 0.5), 1, 1, fill=False, lw=0.8, ec="black"))
        ax.set_title(key, fontsize=8)
        ax.set_xlabel("internal degree j", fontsize=7)
        ax.set_ylabel("ext degree i", fontsize=7)
        ax.tick_params(labelsize=6)
    fig.suptitle(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def hasse_diagram(nodes: Sequence[str], edges: Sequence[tuple[str, str]], levels: Mapping[str, int],
                  title: str, path: str | Path) -> Path:
    """Nodes placed by level (bottom to top); an edge (a, b) means a is covered by b."""
    by_level: dict[int, list[str]] = {}
    for v in nodes:
        by_level.setdefault(levels[v], []).append(v)
    pos = {}
    for lev, vs in by_level.items():
        for k, v in enumerate(sorted(vs)):
            pos[v] = (k - (len(vs) - 1) / 2, lev)
    width = max((len(vs) for vs in by_level.values()), default=1)
    fig, ax = plt.subplots(figsize=(max(3.0, 1.1 * width), max(2.5, 0.8 * (len(by_level) + 1))))
    for a, b in edges:
        (x0, y0), (x1, y1) = pos[a], pos[b]
        ax.plot([x0, x1], [y0, y1], color="0.5", lw=0.8, zorder=1)
    for v, (x, y) in pos.items():
        ax.text(x, y, v, ha="center", va="center", fontsize=7,
                bbox={"boxstyle": "round,pad=0.2", "fc": "white", "ec": "0.3", "lw": 0.6}, zorder=2)
    xs = [x for x, _ in pos.values()] or [0]
    ys = [y for _, y in pos.values()] or [0]
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(min(ys) - 0.6, max(ys) + 0.6)
    ax.axis("off")
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def kl_heatmap(words: Sequence[str], values: Mapping[tuple[str, str], Sequence[int]], title: str,
               path: str | Path) -> Path:
    """P_{x,w}(1) for x (rows) and w (columns) in the given order."""
    idx = {w: k for k, w in enumerate(words)}
    n = len(words)
    grid = [[0] * n for _ in range(n)]
    for (x, w), p in values.items():
        grid[idx[x]][idx[w]] = sum(p)
    fig, ax = plt.subplots(figsize=(max(3.0, 0.3 * n + 1.5), max(3.0, 0.3 * n + 1.5)))
    ax.imshow(grid, cmap="Purples", origin="upper", vmin=0)
    ax.set_xticks(range(n), words, rotation=90, fontsize=5)
    ax.set_yticks(range(n), words, fontsize=5)
    ax.set_xlabel("w")
    ax.set_ylabel("x")
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)
