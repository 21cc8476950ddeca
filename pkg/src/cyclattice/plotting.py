"""
Figure layers and rendering for nested lattice codes.

``code_layers`` collects the point sets that make up an encoding figure:
codewords, pre-mod points G_c b inside the parallelotope P(G_c diag(M)),
nearby shaping-lattice points and the outlines. ``write_figure`` renders
them with matplotlib (SVG) and writes the same layers as CSV next to it.
Output bytes are stable for fixed input.
"""

from __future__ import annotations

import csv
import itertools
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .nested import NestedCode, enumerate_codebook

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "svg.hashsalt": "cyclattice",
    "svg.fonttype": "path",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "figure.dpi": 100,
}

WINDOW_SCALE = 1.25


@dataclass
class Layers:
    codewords: np.ndarray          # (M, n), info-vector lexicographic order
    info: List[Tuple[int, ...]]
    premod: np.ndarray             # (M, n), G_c b
    shaping: np.ndarray            # (k, n), sorted by lattice index
    parallelotope: np.ndarray      # closed outline in the projection plane, (5, 2)
    voronoi: Optional[np.ndarray]  # closed outline of the zero Voronoi cell (n = 2 only)
    window: np.ndarray             # [[xmin, xmax], [ymin, ymax]] in the projection plane
    proj: Tuple[int, int]


def _gauss_reduce(G: np.ndarray) -> np.ndarray:
    """Lagrange-Gauss reduction of a 2-D basis (columns)."""
    u, v = G[:, 0].copy(), G[:, 1].copy()
    if u @ u > v @ v:
        u, v = v, u
    while True:
        m = round(float(u @ v) / float(u @ u))
        v = v - m * u
        if v @ v >= u @ u:
            return np.stack([u, v], axis=1)
        u, v = v, u


def _voronoi_cell_2d(code: NestedCode) -> np.ndarray:
    """Vertices of the zero-centred Voronoi cell of the 2-D shaping lattice, CCW."""
    from scipy.spatial import ConvexHull, HalfspaceIntersection

    G = _gauss_reduce(code.ls.Gf)
    halfspaces = []
    for z in itertools.product(range(-2, 3), repeat=2):
        if z == (0, 0):
            continue
        v = G @ np.array(z, dtype=float)
        # x . v <= |v|^2 / 2
        halfspaces.append([v[0], v[1], -0.5 * float(v @ v)])
    hs = HalfspaceIntersection(np.array(halfspaces), np.zeros(2))
    pts = hs.intersections
    hull = ConvexHull(pts)
    verts = pts[hull.vertices]
    # canonical start vertex for byte stability
    ang = np.arctan2(verts[:, 1], verts[:, 0])
    verts = verts[np.argsort(ang)]
    return np.round(verts, 12)


def _points_in_window(code: NestedCode, window: np.ndarray) -> np.ndarray:
    G, H = code.ls.Gf, code.ls.Hf
    corners = np.array(list(itertools.product(window[0], window[1]))).T
    t = H @ corners
    lo = np.floor(t.min(axis=1)).astype(int)
    hi = np.ceil(t.max(axis=1)).astype(int)
    pts = []
    for z in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        p = G @ np.array(z, dtype=float)
        if window[0, 0] <= p[0] <= window[0, 1] and window[1, 0] <= p[1] <= window[1, 1]:
            pts.append(p)
    return np.array(pts).reshape(-1, 2)


def code_layers(code: NestedCode, proj: Sequence[int] = (0, 1)) -> Layers:
    """Collect figure layers; ``proj`` picks the two plotted coordinates (0-based)."""
    proj = tuple(int(p) for p in proj)
    book = enumerate_codebook(code)
    info = [b for b, _ in book]
    cw = np.array([[float(v) for v in y] for _, y in book])
    pre = np.array([code.lc.Gf @ np.array(b, dtype=float) for b in info])
    P = code.lc.Gf @ np.diag(np.array(code.enc_diag, dtype=float))
    n = code.n
    if n == 2:
        para = np.array([[0.0, 0.0], P[:, 0], P[:, 0] + P[:, 1], P[:, 1], [0.0, 0.0]])
    else:
        # projection of the parallelotope edges through the origin corner
        i, j = proj
        span = [P[[i, j], k] for k in range(n) if code.enc_diag[k] > 1] or [np.zeros(2)]
        pts = [np.zeros(2)] + [s for s in span]
        para = np.array(pts + [np.zeros(2)])
    vor = _voronoi_cell_2d(code) if n == 2 else None

    stack = [cw[:, proj], pre[:, proj], para]
    if vor is not None:
        stack.append(vor)
    allp = np.vstack(stack)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    mid, half = (lo + hi) / 2, np.maximum((hi - lo) / 2, 1e-9) * WINDOW_SCALE
    window = np.round(np.stack([mid - half, mid + half], axis=1), 12)

    if n == 2:
        shaping = _points_in_window(code, window)
    else:
        # shaping points actually used by the mod operation, plus the origin
        used = {tuple(np.round(p - c, 9)) for p, c in zip(pre, cw)}
        used.add(tuple([0.0] * n))
        shaping = np.array(sorted(used))
    order = np.lexsort(np.round(shaping.T[::-1], 9)) if len(shaping) else []
    shaping = np.round(shaping[order], 12) if len(shaping) else shaping
    return Layers(cw, info, pre, shaping, para, vor, window, proj)


def _fmt(v: float) -> str:
    s = f"{float(v):.12g}"
    return "0" if s == "-0" else s


def write_layers_csv(code: NestedCode, layers: Layers, path: str) -> None:
    n = code.n
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["layer"] + [f"b_{i + 1}" for i in range(n)] + [f"x_{i + 1}" for i in range(n)])
        for b, y in zip(layers.info, layers.codewords):
            w.writerow(["codeword"] + list(b) + [_fmt(v) for v in y])
        for b, p in zip(layers.info, layers.premod):
            w.writerow(["premod"] + list(b) + [_fmt(v) for v in p])
        for p in layers.shaping:
            w.writerow(["shaping"] + [""] * n + [_fmt(v) for v in p])


def write_proj3_csv(code: NestedCode, layers: Layers, coords: Sequence[int], path: str) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["layer"] + [f"x_{c + 1}" for c in coords])
        for name, arr in (("codeword", layers.codewords), ("premod", layers.premod), ("shaping", layers.shaping)):
            for p in arr:
                w.writerow([name] + [_fmt(p[c]) for c in coords])


def _draw(ax, code: NestedCode, layers: Layers, proj: Tuple[int, int]) -> None:
    i, j = proj
    if layers.voronoi is not None and proj == layers.proj:
        v = np.vstack([layers.voronoi, layers.voronoi[:1]])
        ax.plot(v[:, 0], v[:, 1], color="0.6", lw=0.8, label="Voronoi region")
    if proj == layers.proj:
        ax.plot(layers.parallelotope[:, 0], layers.parallelotope[:, 1], "k--", lw=0.8, label="parallelotope")
    ax.scatter(layers.premod[:, i], layers.premod[:, j], s=14, c="gold", edgecolors="none", zorder=3,
               label="$G_c b$")
    ax.scatter(layers.codewords[:, i], layers.codewords[:, j], s=60, facecolors="none", edgecolors="red",
               zorder=4, label="codewords")
    if len(layers.shaping):
        ax.scatter(layers.shaping[:, i], layers.shaping[:, j], marker="x", s=24, c="blue", zorder=2,
                   label="shaping lattice")
    ax.set_xlabel(f"$x_{i + 1}$")
    ax.set_ylabel(f"$x_{j + 1}$")
    ax.set_aspect("equal", adjustable="box")
    ax.grid(True, lw=0.3, alpha=0.5)


def write_figure(code: NestedCode, out_dir: str, stem: str = "code",
                 proj3: Sequence[int] = (0, 1, 2), title: Optional[str] = None) -> Dict[str, str]:
    """Render the figure and its layer CSVs; returns the written paths by kind."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {}
    if code.n == 2:
        layers = code_layers(code, (0, 1))
        panels = [(0, 1)]
    else:
        proj3 = tuple(int(c) for c in proj3)
        if len(proj3) != 3 or len(set(proj3)) != 3 or not all(0 <= c < code.n for c in proj3):
            raise ValueError("need three distinct projection coordinates")
        layers = code_layers(code, proj3[:2])
        panels = [(proj3[0], proj3[1]), (proj3[0], proj3[2]), (proj3[1], proj3[2])]
        paths["proj3"] = os.path.join(out_dir, f"{stem}_proj3.csv")
        write_proj3_csv(code, layers, proj3, paths["proj3"])
    paths["layers"] = os.path.join(out_dir, f"{stem}_layers.csv")
    write_layers_csv(code, layers, paths["layers"])

    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, len(panels), figsize=(4.2 * len(panels), 4.2), squeeze=False)
        for ax, pr in zip(axes[0], panels):
            _draw(ax, code, layers, pr)
            if code.n == 2:
                ax.set_xlim(*layers.window[0])
                ax.set_ylim(*layers.window[1])
        axes[0][0].legend(loc="upper left", fontsize=7, framealpha=0.8)
        fig.suptitle(title or f"M = {code.M}, diag{tuple(code.enc_diag)}")
        fig.tight_layout()
        paths["svg"] = os.path.join(out_dir, f"{stem}.svg")
        fig.savefig(paths["svg"], format="svg", metadata={"Date": None})
        plt.close(fig)
    return paths
