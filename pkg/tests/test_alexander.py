import pytest
from hypothesis import given, strategies as st

from qknots.alexander import (
    AlexanderError,
    alexander,
    alexander_fox,
    alexander_seifert,
    bareiss_det,
    normalize_alexander,
    seifert_matrix,
)
from qknots.knotdata import mirror, parse_pd
from qknots.laurent import LaurentPoly

from conftest import FIGURE_EIGHT, KINK, TREFOIL, census, reference


def units_equal(a, b):
    """Equal up to a factor +-q^k."""
    if a.is_zero() or b.is_zero():
        return a == b
    ka, kb = min(a.terms), min(b.terms)
    sa = {k - ka: v for k, v in a.terms.items()}
    sb = {k - kb: v for k, v in b.terms.items()}
    return sa == sb or sa == {k: -v for k, v in sb.items()}


def test_trefoil_worked_example():
    a = alexander(parse_pd(TREFOIL))
    assert units_equal(a, LaurentPoly({0: 1, 1: -1, 2: 1}))
    assert a == LaurentPoly({-1: -1, 0: 1, 1: -1}) * LaurentPoly({0: -1})


def test_fixtures():
    assert alexander(parse_pd(FIGURE_EIGHT)) == LaurentPoly({-1: -1, 0: 3, 1: -1})
    assert alexander(parse_pd(KINK)) == LaurentPoly({0: 1})


def test_normalization():
    p = normalize_alexander(LaurentPoly({3: -1, 4: 1, 5: -1}))
    assert p == LaurentPoly({-1: 1, 0: -1, 1: 1})
    with pytest.raises(AlexanderError):
        normalize_alexander(LaurentPoly())


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_bareiss_matches_cofactor_expansion(rows):
    m = [[LaurentPoly({0: v}) for v in r] for r in rows]
    (a, b, c), (d, e, f), (g, h, i) = rows
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    assert bareiss_det(m) == LaurentPoly({0: det})


def test_fox_matches_seifert_and_knotinfo():
    ref = reference()
    for name, d in census(9):
        fox = alexander_fox(d)
        assert fox == alexander_seifert(seifert_matrix(name)), name
        assert fox == normalize_alexander(ref[name]["alexander"]), name
        assert fox == fox.mirror()
        assert fox.evaluate(1) == 1


def test_mirror_invariance(census8):
    for name, d in census8:
        assert alexander(mirror(d)) == alexander(d), name


def test_seifert_size_bounded_by_crossings():
    for name, d in census(10):
        assert len(seifert_matrix(name)) <= d.n


def test_seifert_engine_uses_knot_name():
    d = parse_pd(TREFOIL, "3_1")
    assert alexander(d, engine="seifert") == alexander(d)
    with pytest.raises(KeyError):
        alexander(parse_pd(TREFOIL, "nameless"), engine="seifert")
