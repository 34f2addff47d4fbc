"""Complex roots of invariant polynomials and root-location statistics.

Roots are found by Aberth-Ehrlich simultaneous iteration started from points
on a circle, followed by a few Newton steps on each root.  The residual of a
root ``z`` of ``p`` (degree ``d``) is measured as

    |p(z)| / (||p||_1 * max(1, |z|)^d)

which is ``|p(z)|/||p||_1`` inside the unit disc and the same quantity for
the reversed polynomial at ``1/z`` outside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .laurent import LaurentPoly

__all__ = [
    "RootSet",
    "RootStats",
    "RootFindingError",
    "normalize_for_roots",
    "find_roots",
    "poly_roots",
    "classify",
    "density_grid",
    "auto_bounds",
    "write_pgm",
    "write_grid_csv",
    "PURE_TOL",
    "ANNULUS",
    "ANNULUS_MEASURES",
    "RESIDUAL_TOL",
]

PURE_TOL = 1e-8
RESIDUAL_TOL = 1e-10
ANNULUS = (0.9, 1.1)
# the tabulated annulus statistic bounds |z|^2, not |z|, by ANNULUS;
# "modulus" applies the bounds to |z| itself
ANNULUS_MEASURES = ("squared", "modulus")


class RootFindingError(ArithmeticError):
    """The iteration did not reach the residual bound within its budget."""


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray

    def __len__(self):
        return len(self.roots)

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max()) if len(self.residuals) else 0.0


def normalize_for_roots(p: LaurentPoly) -> list[int]:
    """Ascending integer coefficients of ``p`` divided by ``q^mindeg``."""
    if not p:
        raise ValueError("the zero polynomial has no root set")
    if not p.is_integral():
        raise ValueError("root statistics need integer exponents")
    return p.coefficients()


def _horner(c_desc: np.ndarray, z: np.ndarray):
    """Values of the polynomial and its derivative (descending coefficients)."""
    p = np.full_like(z, c_desc[0])
    dp = np.zeros_like(z)
    for a in c_desc[1:]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _residuals(c_asc: np.ndarray, z: np.ndarray) -> np.ndarray:
    d = len(c_asc) - 1
    norm = np.abs(c_asc).sum()
    out = np.empty(len(z))
    inside = np.abs(z) <= 1
    if inside.any():
        p, _ = _horner(c_asc[::-1].astype(complex), z[inside])
        out[inside] = np.abs(p) / norm
    if (~inside).any():
        # p(z) / z^d is the reversed polynomial at 1/z
        p, _ = _horner(c_asc.astype(complex), 1 / z[~inside])
        out[~inside] = np.abs(p) / norm
    return out


def find_roots(coeffs: Sequence[int], max_iter: int = 500, polish: int = 3) -> RootSet:
    """All complex roots (with multiplicity) of ``sum coeffs[k] q^k``."""
    c = np.asarray(coeffs, dtype=float)
    if len(c) == 0 or not c.any():
        raise ValueError("zero polynomial")
    while c[-1] == 0:
        c = c[:-1]
    lead = 0
    while c[lead] == 0:
        lead += 1
    zeros_at_origin = lead
    c = c[lead:]
    d = len(c) - 1
    if d == 0:
        roots = np.zeros(zeros_at_origin, dtype=complex)
        return RootSet(roots, np.zeros(zeros_at_origin))
    desc = c[::-1].astype(complex)

    # start on a circle of the geometric-mean radius, rotated off the axes
    radius = abs(c[0] / c[-1]) ** (1.0 / d)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    for _ in range(max_iter):
        p, dp = _horner(desc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z = z - corr
        if np.all(np.abs(corr) <= 1e-15 * np.maximum(1.0, np.abs(z))):
            break
    for _ in range(polish):
        p, dp = _horner(desc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = p / dp
        step = np.where(np.isfinite(step), step, 0.0)
        trial = z - step
        # keep a Newton step only when it does not make the residual worse
        better = _residuals(c, trial) <= _residuals(c, z)
        z = np.where(better, trial, z)
    res = _residuals(c, z)
    if not np.all(res <= RESIDUAL_TOL):
        raise RootFindingError(f"residual {res.max():.3g} above {RESIDUAL_TOL}")
    if zeros_at_origin:
        z = np.concatenate([np.zeros(zeros_at_origin, dtype=complex), z])
        res = np.concatenate([np.zeros(zeros_at_origin), res])
    return RootSet(z, res)


def poly_roots(p: LaurentPoly) -> RootSet:
    return find_roots(normalize_for_roots(p))


@dataclass(frozen=True)
class RootStats:
    count: int
    pure: int
    annulus: int
    max_abs: float
    max_pure_abs: float

    @property
    def pure_pct(self) -> Fraction:
        return Fraction(100 * self.pure, self.count) if self.count else Fraction(0)

    @property
    def annulus_pct(self) -> Fraction:
        return Fraction(100 * self.annulus, self.count) if self.count else Fraction(0)


def classify(roots: Iterable[complex] | RootSet, tol: float = PURE_TOL,
             measure: str = "squared") -> RootStats:
    """Pure (on an axis) and annulus counts, and the largest moduli.

    A root is pure when ``|Re z|`` or ``|Im z|`` is at most ``tol * (1 + |z|)``.
    It lies in the annulus when ``0.9 <= |z|^2 <= 1.1`` (``measure="squared"``)
    or ``0.9 <= |z| <= 1.1`` (``measure="modulus"``).
    """
    if measure not in ANNULUS_MEASURES:
        raise ValueError(f"unknown annulus measure {measure!r}")
    z = roots.roots if isinstance(roots, RootSet) else np.asarray(list(roots), dtype=complex)
    if z.size == 0:
        return RootStats(0, 0, 0, 0.0, 0.0)
    a = np.abs(z)
    slack = tol * (1 + a)
    pure = (np.abs(z.real) <= slack) | (np.abs(z.imag) <= slack)
    lo, hi = ANNULUS
    m = a * a if measure == "squared" else a
    ann = (m >= lo) & (m <= hi)
    return RootStats(
        int(z.size), int(pure.sum()), int(ann.sum()), float(a.max()),
        float(a[pure].max()) if pure.any() else 0.0,
    )


def auto_bounds(roots: np.ndarray) -> tuple[float, float, float, float]:
    """Square centred at 0 whose half-width is the largest root modulus."""
    r = float(np.abs(roots).max()) if len(roots) else 1.0
    return (-r, r, -r, r)


def density_grid(roots, bounds="auto", G: int = 256):
    """``G x G`` histogram of roots in the complex plane.

    ``bounds`` is ``"auto"``, a half-width ``c`` (the square ``[-c, c]^2``) or
    ``(xmin, xmax, ymin, ymax)``.  Row 0 is the top (largest imaginary part).
    Returns ``(counts, bounds)``.
    """
    if G < 2:
        raise ValueError("grid needs G >= 2")
    z = roots.roots if isinstance(roots, RootSet) else np.asarray(list(roots), dtype=complex)
    if isinstance(bounds, str):
        if bounds != "auto":
            raise ValueError(f"unknown bounds mode {bounds!r}")
        box = auto_bounds(z)
    elif np.isscalar(bounds):
        c = float(bounds)
        box = (-c, c, -c, c)
    else:
        box = tuple(float(b) for b in bounds)
    if z.size == 0:
        return np.zeros((G, G), dtype=np.int64), box
    x0, x1, y0, y1 = box
    h, _, _ = np.histogram2d(z.imag, z.real, bins=G, range=[[y0, y1], [x0, x1]])
    return h[::-1].astype(np.int64), box


def write_pgm(counts: np.ndarray, path) -> None:
    """Plain PGM with log brightness, normalized to the busiest bin."""
    top = counts.max()
    if top > 0:
        img = np.rint(255 * np.log1p(counts) / np.log1p(top)).astype(int)
    else:
        img = np.zeros_like(counts, dtype=int)
    rows, cols = img.shape
    with open(path, "w", encoding="ascii") as f:
        f.write(f"P2\n{cols} {rows}\n255\n")
        for row in img:
            f.write(" ".join(str(v) for v in row) + "\n")


def write_grid_csv(counts: np.ndarray, path) -> None:
    np.savetxt(path, counts, fmt="%d", delimiter=",")
