import itertools

import pytest

from qknots.bracket import (
    bracket,
    bracket_naive,
    colored_jones_cabled,
    count_circles,
    jones,
    smoothing_arcs,
)
from qknots.knotdata import Diagram, MultiComponentError, PDError, mirror, parse_pd, writhe
from qknots.laurent import LaurentPoly

from conftest import FIGURE_EIGHT, HOPF, KINK, TREFOIL, census, reference


def circles_by_walk(d, r):
    """Independent circle count: walk the smoothed arcs edge by edge."""
    adj = {}
    for c, x in enumerate(d.crossings):
        for a, b in smoothing_arcs(x, (r >> c) & 1):
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
    seen, count = set(), 0
    for start in adj:
        if start in seen:
            continue
        count += 1
        stack = [start]
        while stack:
            e = stack.pop()
            if e not in seen:
                seen.add(e)
                stack.extend(adj[e])
    return count


def test_trefoil_circle_counts():
    d = parse_pd(TREFOIL)
    counts = [count_circles(d, r) for r in range(8)]
    assert counts[0] == 2
    assert sorted({counts[0], counts[7]}) == [2, 3]


@pytest.mark.parametrize("pd", [TREFOIL, FIGURE_EIGHT, KINK])
def test_circle_count_matches_walk(pd):
    d = parse_pd(pd)
    for r in range(2**d.n):
        assert count_circles(d, r) == circles_by_walk(d, r)
        assert 1 <= count_circles(d, r) <= d.n + 1


def test_kink_resolutions():
    d = parse_pd(KINK)
    assert sorted(count_circles(d, r) for r in (0, 1)) == [1, 2]


def test_hopf_bracket():
    h = parse_pd(HOPF, knot_only=False)
    assert bracket(h) == LaurentPoly({3: 1, 1: 1, -1: 1, -3: 1})
    assert bracket_naive(h) == bracket(h)


def test_unknot_bracket():
    assert bracket(Diagram(())) == LaurentPoly({1: -1, -1: -1})


def test_jones_fixtures():
    assert jones(parse_pd(TREFOIL)) == LaurentPoly({-4: -1, -3: 1, -1: 1})
    assert jones(parse_pd(FIGURE_EIGHT)) == LaurentPoly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    assert jones(parse_pd(KINK)) == LaurentPoly({0: 1})


def test_jones_rejects_links():
    with pytest.raises(MultiComponentError):
        jones(parse_pd(HOPF))


@pytest.mark.parametrize("kinked", [
    "PD[X[101,5,2,4],X[1,101,100,100],X[3,1,4,6],X[5,3,6,2]]",
    "PD[X[101,5,2,4],X[1,100,100,101],X[3,1,4,6],X[5,3,6,2]]",
])
def test_reidemeister_one(kinked):
    assert jones(parse_pd(kinked)) == jones(parse_pd(TREFOIL))


def test_reidemeister_two_and_all_small_unknots():
    # every knot diagram with at most two crossings is an unknot; the
    # writhe-zero ones are Reidemeister II pairs
    seen_r2 = 0
    for x in itertools.product(range(1, 5), repeat=8):
        text = f"PD[X[{x[0]},{x[1]},{x[2]},{x[3]}],X[{x[4]},{x[5]},{x[6]},{x[7]}]]"
        try:
            d = parse_pd(text)
        except PDError:
            continue
        assert jones(d) == LaurentPoly({0: 1}), text
        seen_r2 += writhe(d) == 0
    assert seen_r2 > 0


def test_jones_mirror_and_naive(census8):
    for name, d in census8:
        j = jones(d)
        assert jones(mirror(d)) == j.mirror(), name
        if d.n <= 8:
            assert jones(d, engine="naive") == j, name


def test_jones_matches_knotinfo_up_to_mirror():
    ref = reference()
    for name, d in census(10):
        assert jones(d) == ref[name]["jones"].mirror(), name


def test_cabled_colored_jones_trefoil():
    b = colored_jones_cabled(parse_pd(TREFOIL))
    assert b.is_integral()
    coeffs = [abs(c) for c in b.terms.values()]
    assert (sum(coeffs), max(coeffs), b.max_degree - b.min_degree + 1) == (9, 1, 23)
