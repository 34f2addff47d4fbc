"""The greedy ball mapper does not shrink monotonically as the radius grows.

Four points where a larger radius picks more anchors, followed by a radius
sweep over the Jones coefficient vectors of the knots up to 8 crossings.

Run:  python demos/ball_mapper_radius.py
"""

import numpy as np

from qknots.ballmapper import build, eps_sweep, points_from_polys, to_svg
from qknots.bracket import jones
from qknots.knotdata import load_census

pts = np.array([[0, 4], [1, 2], [1, 0], [3, 2]], dtype=float)
for eps in (2.0, 2.5):
    g = build(pts, eps)
    print(f"eps={eps}: anchors {g.anchors} -> {g.n_vertices} vertices")
print("At eps=2 the first ball swallows (1,2) and (3,2) is never an anchor;")
print("at eps=2.5 point (1,0) survives the first ball and needs one of its own.\n")

table = load_census(8)
x = points_from_polys([jones(d) for _, d in table])
print(f"Jones vectors: {x.shape[0]} knots in dimension {x.shape[1]}")
print("   eps  vertices  edges")
for eps, v, e in eps_sweep(x, np.geomspace(0.5, 20, 12)):
    print(f"{eps:6.2f}  {v:8d}  {e:5d}")

svg = to_svg(build(x, 3.0))
print(f"\nSVG for eps=3: {len(svg)} characters (write it to a file to view)")
