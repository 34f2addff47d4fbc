import io

import pytest
from hypothesis import given, strategies as st

from qknots.knotdata import (
    CENSUS_COUNTS,
    DisconnectedDiagramError,
    MultiComponentError,
    NonPlanarError,
    PDError,
    PDLabelError,
    PDSyntaxError,
    convert_knotinfo_csv,
    ingest_list,
    mirror,
    orient,
    parse_pd,
    trace_components,
    two_cable,
    writhe,
)

from conftest import FIGURE_EIGHT, HOPF, KINK, TREFOIL, census


def test_parse_trefoil():
    d = parse_pd(TREFOIL, "3_1")
    assert d.n == 3
    assert d.id == "3_1"
    assert parse_pd(d.to_pd()).to_pd() == d.to_pd()


def test_bare_crossing_list_accepted():
    assert parse_pd("[[1,5,2,4],[3,1,4,6],[5,3,6,2]]").n == 3


@pytest.mark.parametrize("text", ["PD[X[1,2,3]]", "PD[X[1,5,2,4],X[3,1,4,6]", "PD[X[a,b,c,d]]", "PD X[1,1,2,2]]", ""])
def test_syntax_errors(text):
    with pytest.raises(PDError):
        parse_pd(text)


def test_syntax_error_reports_position():
    with pytest.raises(PDSyntaxError) as e:
        parse_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6 2]]")
    assert e.value.position > 0


def test_label_used_three_times():
    with pytest.raises(PDLabelError):
        parse_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,1,6,2]]")


def test_disconnected():
    with pytest.raises(DisconnectedDiagramError):
        parse_pd("PD[X[1,1,2,2],X[3,3,4,4]]")


def test_virtual_diagram_rejected():
    with pytest.raises(NonPlanarError):
        parse_pd("PD[X[1,2,3,4],X[2,4,1,3]]")


def test_multi_component_rejected_for_knots():
    with pytest.raises(MultiComponentError):
        parse_pd(HOPF)
    link = parse_pd(HOPF, knot_only=False)
    assert len(trace_components(link)) == 2


def test_writhe_and_orientation():
    assert writhe(parse_pd(TREFOIL)) in (3, -3)
    assert writhe(parse_pd(FIGURE_EIGHT)) == 0
    od = orient(parse_pd(TREFOIL))
    assert od.n_plus + od.n_minus == 3
    assert writhe(mirror(parse_pd(TREFOIL))) == -writhe(parse_pd(TREFOIL))


def test_kink_is_one_crossing():
    d = parse_pd(KINK)
    assert d.n == 1 and abs(writhe(d)) == 1


def test_two_cable_size_and_writhe():
    d = parse_pd(FIGURE_EIGHT)
    c = two_cable(d)
    assert c.n == 4 * d.n
    assert len(trace_components(c)) == 2


def test_ingest_collects_errors():
    text = "# comment\n3_1;" + TREFOIL + "\nbad;PD[X[1,2]]\n\n" + FIGURE_EIGHT + "\n"
    t = ingest_list(io.StringIO(text))
    assert t.ids() == ["3_1", "#1"]
    assert len(t.errors) == 1 and t.errors[0][1] == "bad"
    assert t.counts() == {3: 1, 4: 1}


def test_census_counts_small():
    t = census(9)
    assert t.counts() == {n: CENSUS_COUNTS[n] for n in range(3, 10)}
    assert t.ids()[:3] == ["3_1", "4_1", "5_1"]


def test_convert_knotinfo_csv():
    src = io.StringIO("name|pd_notation\n0_1|\n3_1|[[1,5,2,4],[3,1,4,6],[5,3,6,2]]\n")
    dst = io.StringIO()
    assert convert_knotinfo_csv(src, dst) == 1
    assert dst.getvalue() == "3_1;PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]\n"


@given(st.permutations(range(1, 7)))
def test_relabelling_edges_keeps_the_knot(perm):
    # relabel edges by a permutation: the diagram is unchanged up to labels
    m = dict(zip(range(1, 7), perm))
    raw = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]
    text = "PD[" + ",".join("X[" + ",".join(str(m[v]) for v in x) + "]" for x in raw) + "]"
    try:
        d = parse_pd(text)
    except PDError:
        # a permutation that breaks consecutive edge orientation is rejected, never mis-read
        return
    assert d.n == 3
    assert abs(writhe(d)) == 3
