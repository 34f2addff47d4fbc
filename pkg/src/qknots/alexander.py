"""Alexander polynomial: Fox calculus on the Wirtinger presentation, and the
Seifert-matrix determinant ``det(S - q S^T)``.

Both paths finish with the same normalization: the representative that is
symmetric under ``q -> q^-1`` and takes the value ``+1`` at ``q = 1``.
"""

from __future__ import annotations

import gzip
import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .knotdata import Diagram, OrientedDiagram, orient
from .laurent import ONE, ZERO, LaurentPoly, exact_div

__all__ = [
    "alexander",
    "alexander_fox",
    "alexander_seifert",
    "alexander_matrix",
    "wirtinger_arcs",
    "bareiss_det",
    "normalize_alexander",
    "seifert_matrix",
    "AlexanderError",
]


class AlexanderError(ArithmeticError):
    """Degenerate Wirtinger matrix (the input cannot be a knot diagram)."""


def bareiss_det(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination; every division is exact."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return ONE
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = exact_div(piv * a[i][j] - aik * a[k][j], prev)
            a[i][k] = ZERO
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Shift to the symmetric representative and fix the sign so that p(1) = 1."""
    if not p:
        raise AlexanderError("Alexander polynomial vanished")
    mid = (p.min_degree + p.max_degree) / 2
    p = p.shift(-mid)
    if not p.is_integral():
        raise AlexanderError("Alexander polynomial of a knot must have an odd number of slots")
    at_one = sum(c for _, c in p.items())
    if at_one not in (1, -1):
        raise AlexanderError(f"Alexander polynomial has value {at_one} at 1")
    return p if at_one == 1 else -p


def wirtinger_arcs(d: Diagram) -> tuple[dict[int, int], int]:
    """Map each edge to its over-arc index; arcs break only at under-passes."""
    parent = {e: e for e in d.edges()}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for _, j, _, l in d.crossings:
        rj, rl = find(j), find(l)
        if rj != rl:
            parent[rj] = rl
    index: dict[int, int] = {}
    arc = {}
    for e in sorted(parent):
        r = find(e)
        arc[e] = index.setdefault(r, len(index))
    return arc, len(index)


def alexander_matrix(d: OrientedDiagram) -> list[list[LaurentPoly]]:
    """Fox Jacobian of the Wirtinger relations, abelianized to q (rows: crossings)."""
    arc, m = wirtinger_arcs(d.base)
    one_minus_q = LaurentPoly({0: 1, 1: -1})
    q = LaurentPoly({1: 1})
    rows = []
    for (i, j, k, l), s in zip(d.crossings, d.signs):
        row = [ZERO] * m
        over, a, b = arc[j], arc[i], arc[k]
        if s > 0:
            # x_b = x_o x_a x_o^-1
            entries = ((over, one_minus_q), (a, q), (b, -ONE))
        else:
            # x_b = x_o^-1 x_a x_o, with the row rescaled by q
            entries = ((over, -one_minus_q), (a, ONE), (b, -q))
        for col, val in entries:
            row[col] = row[col] + val
        rows.append(row)
    return rows


def alexander_fox(d: Diagram | OrientedDiagram) -> LaurentPoly:
    """Alexander polynomial from a knot diagram via Fox calculus."""
    od = d if isinstance(d, OrientedDiagram) else orient(d)
    if od.n == 0:
        return ONE
    mat = alexander_matrix(od)
    # any one relation is a consequence of the others; drop it and one generator
    minor = [row[1:] for row in mat[1:]]
    det = bareiss_det(minor)
    if not det:
        raise AlexanderError("degenerate Wirtinger matrix")
    return normalize_alexander(det)


def alexander_seifert(s: Sequence[Sequence[int]]) -> LaurentPoly:
    """Normalized ``det(S - q S^T)`` for an integer Seifert matrix."""
    n = len(s)
    if any(len(row) != n for row in s):
        raise ValueError("Seifert matrix must be square")
    m = [[LaurentPoly({0: s[i][j]}) - LaurentPoly({1: s[j][i]}) for j in range(n)] for i in range(n)]
    return normalize_alexander(bareiss_det(m))


@lru_cache(maxsize=1)
def _seifert_table() -> dict[str, list[list[int]]]:
    raw = resources.files("qknots").joinpath("data/seifert_matrices.txt.gz").read_bytes()
    out = {}
    for line in gzip.decompress(raw).decode("utf-8").splitlines():
        if not line or line.startswith("#"):
            continue
        name, mat = line.split(";", 1)
        out[name] = json.loads(mat)
    return out


def seifert_matrix(name: str) -> list[list[int]]:
    """Bundled Seifert matrix of a census knot (KnotInfo tabulation)."""
    try:
        return _seifert_table()[name]
    except KeyError:
        raise KeyError(f"no Seifert matrix bundled for {name!r}") from None


def alexander(d: Diagram | OrientedDiagram, engine: str = "fox") -> LaurentPoly:
    if engine == "fox":
        return alexander_fox(d)
    if engine == "seifert":
        base = d.base if isinstance(d, OrientedDiagram) else d
        return alexander_seifert(seifert_matrix(base.id))
    raise ValueError(f"unknown Alexander engine {engine!r}")
