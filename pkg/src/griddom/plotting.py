"""Matplotlib figures for the ``report`` command."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .construct import verify_k_domination  # noqa: E402
from .io import SetDocument  # noqa: E402

RC = {
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
    "svg.hashsalt": "griddom",
}


def new_figure(width=5.0, height=None):
    plt.rcParams.update(RC)
    golden = (5 ** 0.5 - 1) / 2
    fig, ax = plt.subplots(figsize=(width, height or width * golden))
    return fig, ax


def save(fig, path):
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)


def plot_set(doc: SetDocument, path, title=None):
    g = doc.grid
    side = max(3.0, min(9.0, 0.35 * max(g.m, g.n)))
    fig, ax = new_figure(side * g.m / max(g.m, g.n) + 1.0, side * g.n / max(g.m, g.n) + 1.0)
    members = set(doc.vertices)
    orphans = set(doc.orphans) & members
    uncovered = set(verify_k_domination(g, members, doc.k).uncovered)
    for x in range(1, g.m + 1):
        ax.plot([x, x], [1, g.n], color="0.85", lw=0.6, zorder=0)
    for y in range(1, g.n + 1):
        ax.plot([1, g.m], [y, y], color="0.85", lw=0.6, zorder=0)

    def scatter(vs, **kw):
        vs = sorted(vs)
        if vs:
            ax.scatter([v[0] for v in vs], [v[1] for v in vs], zorder=2, **kw)

    plain = set(g.vertices()) - members - uncovered
    scatter(plain, s=10, color="0.7", label="dominated")
    scatter(members - orphans, s=40, color="k", label="member")
    scatter(orphans, s=40, color="tab:blue", marker="s", label="orphan")
    scatter(uncovered, s=40, facecolors="none", edgecolors="tab:red", label="undominated")
    ax.set_xlim(0.3, g.m + 0.7)
    ax.set_ylim(0.3, g.n + 0.7)
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(title or f"{g.m}x{g.n}, k={doc.k}, |S|={len(members)}")
    ax.legend(loc="upper left", bbox_to_anchor=(1.0, 1.0), frameon=False)
    save(fig, path)


def plot_ratio_trend(series: dict, path):
    """``series`` maps k to a list of (size, ratio) pairs."""
    fig, ax = new_figure()
    for k, pts in sorted(series.items()):
        ax.plot([p[0] for p in pts], [float(p[1]) for p in pts], marker="o", label=f"k={k}")
    ax.axhline(1.0, color="0.5", lw=0.8, ls="--")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("m = n")
    ax.set_ylabel("upper / lower")
    ax.legend(frameon=False)
    save(fig, path)


def plot_sweep(rows: list, path):
    """Construction size against both bounds along a square-grid sweep."""
    fig, ax = new_figure()
    xs = [r["m"] for r in rows]
    ax.plot(xs, [r["size"] for r in rows], marker=".", label="construction")
    ax.plot(xs, [r["upper"] for r in rows], ls="--", label="upper bound")
    ax.plot(xs, [r["lower"] for r in rows], ls=":", label="packing bound")
    exact = [(r["m"], r["exact"]) for r in rows if r.get("exact") is not None]
    if exact:
        ax.scatter(*zip(*exact), color="k", s=14, zorder=3, label="exact")
    ax.set_xlabel("m = n")
    ax.set_ylabel("dominating vertices")
    ax.legend(frameon=False)
    save(fig, path)
