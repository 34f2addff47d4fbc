import numpy as np
import pytest
from hypothesis import given, strategies as st

from qknots.laurent import LaurentPoly
from qknots.roots import (
    RootFindingError,
    classify,
    density_grid,
    find_roots,
    poly_roots,
    write_grid_csv,
    write_pgm,
)

coeff_lists = st.lists(st.integers(-9, 9), min_size=2, max_size=25).filter(
    lambda c: c[0] != 0 and c[-1] != 0)


def matched(a, b, tol):
    """Greedy nearest matching of two root multisets."""
    b = list(b)
    for z in a:
        k = int(np.argmin([abs(z - w) for w in b]))
        if abs(z - b[k]) > tol:
            return False
        b.pop(k)
    return True


@given(coeff_lists)
def test_conjugate_pairs(c):
    try:
        r = find_roots(c).roots
    except RootFindingError:
        return  # clustered roots beyond the residual bound are rejected, not returned
    assert len(r) == len(c) - 1
    assert matched(r, np.conj(r), 1e-5 * (1 + np.abs(r).max()))


@given(coeff_lists)
def test_mirror_gives_inverse_roots(c):
    try:
        r = find_roots(c).roots
        rm = poly_roots(LaurentPoly.from_coeffs(c).mirror()).roots
    except RootFindingError:
        return
    assert matched(1 / r, rm, 1e-5 * (1 + np.abs(rm).max()))


@given(coeff_lists)
def test_against_companion_matrix(c):
    try:
        r = find_roots(c).roots
    except RootFindingError:
        return
    ref = np.roots(c[::-1])
    assert matched(r, ref, 1e-4 * (1 + np.abs(ref).max()))


def test_zero_roots_and_degree():
    r = find_roots([0, 0, 1, 1]).roots
    assert sorted(np.abs(r).round(12)) == [0, 0, 1]
    with pytest.raises(ValueError):
        find_roots([0, 0])


def test_trefoil_jones_roots():
    j = LaurentPoly({-4: -1, -3: 1, -1: 1})
    st_ = classify(poly_roots(j))
    assert st_.count == 3
    assert f"{st_.max_abs:.10f}".startswith("1.2106")
    assert st_.pure_pct * 3 == 100
    assert st_.annulus == 0


def test_classify():
    # q^2 + 1: both roots pure and on the unit circle
    s = classify(poly_roots(LaurentPoly({0: 1, 2: 1})))
    assert (s.count, s.pure, s.annulus) == (2, 2, 2)
    z = np.array([1.0 + 0j, 1.06 + 0.0j, 0.96j + 0.3, 1.5])
    assert classify(z, measure="squared").annulus == 2
    assert classify(z, measure="modulus").annulus == 3
    with pytest.raises(ValueError):
        classify(z, measure="other")


def test_density_grid(tmp_path):
    z = np.array([1j, -1j, 0.5, 0.5 + 0.01j])
    g, box = density_grid(z, "auto", 8)
    assert g.sum() == 4 and box == (-1.0, 1.0, -1.0, 1.0)
    assert g[0].sum() == 1  # top row holds the largest imaginary part
    g2, box2 = density_grid(z, 2.0, 4)
    assert box2 == (-2.0, 2.0, -2.0, 2.0)
    write_pgm(g, tmp_path / "a.pgm")
    head = (tmp_path / "a.pgm").read_text().split("\n")[:3]
    assert head == ["P2", "8 8", "255"]
    write_grid_csv(g, tmp_path / "a.csv")
    assert np.loadtxt(tmp_path / "a.csv", delimiter=",").sum() == 4
