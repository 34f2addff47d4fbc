import itertools

import pytest
from hypothesis import given, strategies as st

from qknots.bracket import colored_jones_cabled, jones
from qknots.knotdata import parse_pd
from qknots.laurent import LaurentPoly, coeff_stats
from qknots.rmatrix import a2, b1, invariant, jones_rmatrix, morse_encode, rmatrix_library

from conftest import FIGURE_EIGHT, KINK, TREFOIL, census

ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})


def dense(data, which="R"):
    n = data.N
    table = getattr(data, which)
    m = [[ZERO] * (n * n) for _ in range(n * n)]
    for (a, b), outs in table.items():
        for (c, d), p in outs:
            m[c * n + d][a * n + b] = LaurentPoly(p, data.unit)
    return m


def matmul(x, y):
    k = len(y)
    return [[sum((x[i][t] * y[t][j] for t in range(k)), ZERO) for j in range(len(y[0]))] for i in range(len(x))]


def kron_id(m, n, left):
    """``m (x) id_n`` (left=True) or ``id_n (x) m`` on three tensor factors."""
    size = len(m) * n
    out = [[ZERO] * size for _ in range(size)]
    N = n
    for i, j in itertools.product(range(len(m)), repeat=2):
        if m[i][j].is_zero():
            continue
        for k in range(N):
            if left:
                out[i * N + k][j * N + k] = m[i][j]
            else:
                out[k * len(m) + i][k * len(m) + j] = m[i][j]
    return out


@pytest.mark.parametrize("name", ["J", "A2", "B1"])
def test_inverse_and_yang_baxter(name):
    data = rmatrix_library(name)
    R, Ri = dense(data), dense(data, "Rinv")
    n2 = data.N**2
    ident = [[ONE if i == j else ZERO for j in range(n2)] for i in range(n2)]
    assert matmul(R, Ri) == ident
    a = kron_id(R, data.N, left=True)
    b = kron_id(R, data.N, left=False)
    assert matmul(matmul(a, b), a) == matmul(matmul(b, a), b)


def test_jones_matrix_entries():
    data = rmatrix_library("J")
    R = dense(data)
    h = LaurentPoly.monomial("1/2")
    expected = [[h, ZERO, ZERO, ZERO],
                [ZERO, ZERO, LaurentPoly.monomial(1), ZERO],
                [ZERO, LaurentPoly.monomial(1), h - LaurentPoly.monomial("3/2"), ZERO],
                [ZERO, ZERO, ZERO, h]]
    assert R == expected or [list(r) for r in zip(*R)] == expected


def test_word_shapes():
    w = morse_encode(parse_pd(KINK))
    w.check()
    assert w.peak_width == 2
    assert [s.gen for s in w.slices][0] == "cup" and w.slices[-1].gen == "cap"
    w8 = morse_encode(parse_pd(FIGURE_EIGHT))
    w8.check()
    assert sum(s.gen in ("R", "Rinv") for s in w8.slices) == 4
    assert w8.widths[0] == 0 and w8.widths[-1] == 0 and w8.peak_width >= 2


def test_trefoil_values():
    d = parse_pd(TREFOIL)
    assert jones_rmatrix(d) == LaurentPoly({-4: -1, -3: 1, -1: 1})
    s = coeff_stats(a2(d))
    assert (s.span, s.max_abs, s.abs_sum) == (13, 2, 7)
    s = coeff_stats(b1(d))
    assert (s.span, s.max_abs, s.abs_sum) == (23, 1, 9)


def test_unknot_values():
    k = parse_pd(KINK)
    for f in (jones_rmatrix, a2, b1):
        assert f(k) == (ONE if f is jones_rmatrix else LaurentPoly({-2: 1, 0: 1, 2: 1}))


def test_jones_engines_agree_n8(census8):
    for name, d in census8:
        assert jones_rmatrix(d) == jones(d), name


def test_b1_matches_cabling_n8(census8):
    for name, d in census8:
        assert b1(d) == colored_jones_cabled(d), name


@given(st.integers(0, 34), st.integers(0, 10_000), st.sampled_from(["J", "A2", "B1"]))
def test_word_independence(k, seed, name):
    name_k, d = census(8)[k]
    greedy = invariant(d, name)
    assert invariant(d, name, choice="random", seed=seed) == greedy
    assert invariant(d, name, start=seed % d.n) == greedy
