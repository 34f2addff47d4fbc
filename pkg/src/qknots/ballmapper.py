"""Ball mapper graphs of coefficient-vector point clouds.

Points are scanned in the given order; a point farther than ``eps`` from
every anchor chosen so far becomes a new anchor.  Each anchor's closed
``eps``-ball defines a vertex, and two vertices are joined when their balls
share a point.

The anchor count is not monotone in ``eps`` in general: with the points
``(0,4), (1,2), (1,0), (3,2)`` in that order, ``eps = 2`` gives two anchors
and ``eps = 2.5`` gives three.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .laurent import BiLaurentPoly, LaurentPoly, to_vector

__all__ = [
    "MapperGraph",
    "build",
    "color_by",
    "eps_sweep",
    "points_from_polys",
    "half_width",
    "to_json",
    "to_svg",
]


@dataclass
class MapperGraph:
    anchors: list[int]
    covered: list[np.ndarray]
    edges: list[tuple[int, int]]
    eps: float
    n_points: int = 0
    colors: dict[str, list[float]] = field(default_factory=dict)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.covered]

    @property
    def n_vertices(self) -> int:
        return len(self.anchors)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def members(self, v: int) -> list[int]:
        return [int(i) for i in self.covered[v]]


def half_width(polys: Sequence) -> int:
    """Smallest ``d`` such that every polynomial fits in ``q^-d .. q^d``."""
    d = 0
    for p in polys:
        if isinstance(p, BiLaurentPoly):
            for a, _ in p.terms:
                d = max(d, abs(a))
        elif p:
            d = max(d, abs(int(p.min_degree)), abs(int(p.max_degree)))
    return d


def points_from_polys(polys: Sequence, d: int | None = None) -> np.ndarray:
    """Stack coefficient vectors with one common half-width (the batch maximum)."""
    if d is None:
        d = half_width(polys)
    d_t = None
    if polys and isinstance(polys[0], BiLaurentPoly):
        d_t = max((abs(b) for p in polys for _, b in p.terms), default=0)
    return np.array([to_vector(p, d, d_t) for p in polys], dtype=float)


def _greedy_anchors(x: np.ndarray, eps: float) -> list[int]:
    anchors: list[int] = []
    block = np.empty_like(x)
    eps2 = eps * eps
    for i, p in enumerate(x):
        k = len(anchors)
        if k and (((block[:k] - p) ** 2).sum(axis=1) <= eps2).any():
            continue
        block[k] = p
        anchors.append(i)
    return anchors


def build(points, eps: float) -> MapperGraph:
    """Greedy ``eps``-ball cover in input order, with intersection edges."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    x = np.asarray(points, dtype=float)
    if x.ndim != 2:
        raise ValueError("points must be a 2-d array (one vector per row)")
    if x.shape[0] == 0:
        return MapperGraph([], [], [], eps, 0)
    if math.isinf(eps):
        return MapperGraph([0], [np.arange(x.shape[0])], [], eps, x.shape[0])
    anchors = _greedy_anchors(x, eps)
    a = x[anchors]
    sq = (x**2).sum(axis=1)
    d2 = sq[anchors][:, None] + sq[None, :] - 2 * a @ x.T
    # exact recheck near the boundary, where the expansion above can round
    near = np.abs(d2 - eps * eps) <= 1e-9 * (1 + eps * eps)
    if near.any():
        for u, i in zip(*np.nonzero(near)):
            d2[u, i] = ((a[u] - x[i]) ** 2).sum()
    member = d2 <= eps * eps
    covered = [np.flatnonzero(row) for row in member]
    m = member.astype(np.float64)  # BLAS product; counts are exact in float64
    overlap = m @ m.T
    edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(np.triu(overlap, 1)))]
    return MapperGraph(anchors, covered, edges, eps, x.shape[0])


def color_by(g: MapperGraph, values: Sequence[float]) -> MapperGraph:
    """Attach per-vertex mean, min and max of a per-point value."""
    v = np.asarray(values, dtype=float)
    if len(v) != g.n_points:
        raise ValueError(f"expected {g.n_points} values, got {len(v)}")
    g.colors = {
        "mean": [float(v[c].mean()) for c in g.covered],
        "min": [float(v[c].min()) for c in g.covered],
        "max": [float(v[c].max()) for c in g.covered],
    }
    return g


def eps_sweep(points, eps_values: Sequence[float]) -> list[tuple[float, int, int]]:
    """``(eps, vertices, edges)`` for each value of ``eps``."""
    out = []
    for e in eps_values:
        g = build(points, e)
        out.append((float(e), g.n_vertices, g.n_edges))
    return out


def to_json(g: MapperGraph, ids: Sequence[str] | None = None) -> str:
    name = (lambda i: ids[i]) if ids is not None else (lambda i: i)
    verts = []
    for k, (a, c) in enumerate(zip(g.anchors, g.covered)):
        rec = {"id": k, "anchor": name(int(a)), "size": int(len(c)),
               "members": [name(int(i)) for i in c]}
        for key, vals in g.colors.items():
            rec[key] = vals[k]
        verts.append(rec)
    return json.dumps({"eps": g.eps, "vertices": verts, "edges": g.edges}, indent=1)


def _layout(g: MapperGraph) -> np.ndarray:
    """Concentric shells: largest vertex in the centre, then rings by size."""
    order = sorted(range(g.n_vertices), key=lambda v: (-len(g.covered[v]), v))
    pos = np.zeros((g.n_vertices, 2))
    ring, placed, cap = 0, 0, 0
    for v in order[1:]:
        if placed == cap:
            ring, placed = ring + 1, 0
            cap = 6 * ring
        ang = 2 * math.pi * placed / cap + 0.3 * ring
        pos[v] = (ring * math.cos(ang), ring * math.sin(ang))
        placed += 1
    return pos


def to_svg(g: MapperGraph, size: int = 600, color: str = "mean") -> str:
    pos = _layout(g)
    span = max(1.0, float(np.abs(pos).max()) if len(pos) else 1.0)
    scale = (size / 2 - 20) / span
    xy = pos * scale + size / 2
    sizes = np.asarray(g.sizes, dtype=float)
    rad = 3 + 9 * np.sqrt(sizes / sizes.max()) if len(sizes) else sizes
    vals = g.colors.get(color)
    if vals:
        lo, hi = min(vals), max(vals)
        t = [(x - lo) / (hi - lo) if hi > lo else 0.5 for x in vals]
    else:
        t = [0.5] * g.n_vertices
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for u, v in g.edges:
        out.append(f'<line x1="{xy[u,0]:.2f}" y1="{xy[u,1]:.2f}" x2="{xy[v,0]:.2f}" '
                   f'y2="{xy[v,1]:.2f}" stroke="#999" stroke-width="0.6"/>')
    for k in range(g.n_vertices):
        r, b = int(255 * t[k]), int(255 * (1 - t[k]))
        out.append(f'<circle cx="{xy[k,0]:.2f}" cy="{xy[k,1]:.2f}" r="{rad[k]:.2f}" '
                   f'fill="rgb({r},60,{b})"/>')
    out.append("</svg>")
    return "\n".join(out)
