"""Matplotlib renderings of heaps, diagrams and verification summaries.

Everything here draws to files; nothing opens an interactive window.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyBboxPatch
from matplotlib.path import Path
import matplotlib.patches as mpatches

from .coxeter import FcElement
from .diagram import AdmissibleDiagram, LOOP_WORD
from .verlinde import family


def save_heap_figure(e: FcElement, path: str) -> None:
    """Draw the canonical lattice representation: one labeled box per entry,
    row 1 at the top, overlapping adjacent columns."""
    rows = e.rows
    n_rows = max(1, len(rows))
    fig, ax = plt.subplots(figsize=(max(3, 0.8 * (e.graph.n + 2)), max(2, 0.6 * n_rows)))
    for r, row in enumerate(rows, start=1):
        for label in row:
            y = n_rows - r
            box = FancyBboxPatch(
                (label - 0.48, y - 0.27),
                0.96,
                0.54,
                boxstyle="round,pad=0.02",
                linewidth=1.0,
                edgecolor="black",
                facecolor="#f0f0f0",
            )
            ax.add_patch(box)
            ax.text(label, y, str(label), ha="center", va="center", fontsize=10)
    gens = list(e.graph.generators)
    ax.set_xlim(min(gens) - 1, max(gens) + 1)
    ax.set_ylim(-0.8, n_rows - 0.2)
    ax.set_xticks(gens)
    ax.set_yticks([])
    ax.set_title(f"heap of [{' '.join(map(str, e.word)) or 'e'}]")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _deco_marker(ax, x: float, y: float, symbol: str) -> None:
    closed = family(symbol) == 0
    kind = "o" if symbol in "bo" else "^"
    ax.plot(
        [x],
        [y],
        marker=kind,
        markersize=8,
        markerfacecolor="black" if closed else "white",
        markeredgecolor="black",
        zorder=5,
    )


def save_diagram_figure(d: AdmissibleDiagram, path: str) -> None:
    """Draw the diagram in its box: nodes on the faces, edges as arcs or
    verticals, decorations as filled (closed) or hollow (open) markers."""
    k = d.k
    fig, ax = plt.subplots(figsize=(max(3, 0.9 * k), 3.2))

    def place_marks(xs: Sequence[float], ys: Sequence[float], deco: str) -> None:
        if not deco:
            return
        m = len(deco)
        for p, symbol in enumerate(deco):
            t = (p + 1) / (m + 1)
            idx = t * (len(xs) - 1)
            lo = int(idx)
            frac = idx - lo
            hi = min(lo + 1, len(xs) - 1)
            _deco_marker(ax, xs[lo] * (1 - frac) + xs[hi] * frac, ys[lo] * (1 - frac) + ys[hi] * frac, symbol)

    def arc_points(x1: float, y1: float, x2: float, y2: float, bulge: float) -> tuple[list[float], list[float]]:
        steps = 40
        xs, ys = [], []
        for s in range(steps + 1):
            t = s / steps
            xs.append(x1 + (x2 - x1) * t)
            mid = 4 * t * (1 - t)
            ys.append(y1 + (y2 - y1) * t + bulge * mid)
        return xs, ys

    for e in d.edges:
        if e.is_north:
            lo, hi = abs(e.a), abs(e.b)
            depth = 0.35 + 0.18 * (hi - lo)
            xs, ys = arc_points(lo, 1.0, hi, 1.0, -depth)
        elif e.is_south:
            lo, hi = abs(e.a), abs(e.b)
            depth = 0.35 + 0.18 * (hi - lo)
            xs, ys = arc_points(lo, 0.0, hi, 0.0, depth)
        else:
            xs, ys = arc_points(e.a, 1.0, -e.b, 0.0, 0.0)
        ax.plot(xs, ys, color="black", linewidth=1.3, zorder=2)
        place_marks(xs, ys, e.deco)

    for p in range(d.loops):
        cx = 0.35 + 0.45 * p
        circ = mpatches.Circle((0.2 + cx, 0.5), 0.16, fill=False, color="black")
        ax.add_patch(circ)
        _deco_marker(ax, 0.2 + cx - 0.16, 0.5, LOOP_WORD[0])
        _deco_marker(ax, 0.2 + cx + 0.16, 0.5, LOOP_WORD[1])

    for idx in range(1, k + 1):
        ax.plot([idx], [1.0], marker=".", color="black")
        ax.plot([idx], [0.0], marker=".", color="black")
        ax.text(idx, 1.08, str(idx), ha="center", fontsize=9)
        ax.text(idx, -0.13, f"{idx}'", ha="center", fontsize=9)
    ax.plot([0.2, k + 0.3, k + 0.3, 0.2, 0.2], [-0.25, -0.25, 1.25, 1.25, -0.25], color="#999999", linewidth=0.8)
    ax.set_xlim(-0.2, k + 0.7)
    ax.set_ylim(-0.45, 1.45)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_counts_figure(counts_by_length: dict[int, int], title: str, path: str) -> None:
    """Bar chart of fully commutative element counts by length."""
    lengths = sorted(counts_by_length)
    values = [counts_by_length[l] for l in lengths]
    fig, ax = plt.subplots(figsize=(max(3.5, 0.5 * len(lengths) + 2), 3))
    ax.bar(lengths, values, color="#4878a8")
    ax.set_xlabel("length")
    ax.set_ylabel("fc elements")
    ax.set_title(title)
    ax.set_xticks(lengths)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_avalue_figure(avalues: Iterable[int], title: str, path: str) -> None:
    """Bar chart of a-values across the image diagrams of a sweep."""
    counter = Counter(avalues)
    keys = sorted(counter)
    fig, ax = plt.subplots(figsize=(max(3.5, 0.5 * len(keys) + 2), 3))
    ax.bar(keys, [counter[a] for a in keys], color="#a85848")
    ax.set_xlabel("a-value")
    ax.set_ylabel("diagrams")
    ax.set_title(title)
    ax.set_xticks(keys)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
