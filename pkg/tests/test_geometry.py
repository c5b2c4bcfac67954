import json
import math

import pytest

from conftest import row_grading
from intgrass.classify import TypedVariety, build, iter_grid
from intgrass.errors import NoContraction, NotApplicable, PreconditionError
from intgrass.geometry import (
    BundleData,
    ContractionKind,
    bundle_data,
    contraction_kind,
    fujita_statement,
    geometry_report,
)
from intgrass.grading import dim_x

V = TypedVariety
SMALL_GRID = list(iter_grid(max_n=7, max_m=2, max_param=2))


def _gu(v):
    b = build(v)
    return b.grading, b.u


def test_contraction_kind_examples():
    g, u = _gu(V.type6(4, (0, 1)))
    assert contraction_kind(g, u, (1, 0)) is ContractionKind.FIBER_TYPE
    g, u = _gu(V.type3(5, 4, 1))
    assert contraction_kind(g, u, (2, 1)) is ContractionKind.DIVISORIAL
    with pytest.raises(NoContraction):
        contraction_kind(row_grading(1), (1, 1), (1, 1))
    with pytest.raises(PreconditionError):
        contraction_kind(row_grading(1), (1, 1), (-1, 1))


def test_small_contraction_occurs():
    # row 8: (0,1) bounds SAmple but lies inside Mov = cone((1,0),(-1,2))
    g = row_grading(8)
    assert contraction_kind(g, (1, 1), (0, 1)) is ContractionKind.SMALL
    g, u = _gu(V.type4(4, 2))
    assert contraction_kind(g, u, (2, 1)) is ContractionKind.SMALL


def test_bundle_data_examples():
    assert bundle_data(row_grading(1), (1, 1)) == BundleData(6, 4, 0, (0, 0, 0, 0))
    b = bundle_data(*_gu(V.type6(4, (0, 1))))
    assert (b.s, b.t1, b.twists) == (6, 2, (0, 1))
    with pytest.raises(NotApplicable):
        bundle_data(*_gu(V.type3(5, 4, 1)))


def test_bundle_data_type1_formulas():
    for v in SMALL_GRID:
        if v.tag != 1:
            continue
        b = bundle_data(*_gu(v))
        n, k, m = v.n, v.k, v.m
        assert b.t1 == (k - 1) * (n - k + 1) + m
        assert b.t2 == math.comb(n - k + 1, 2)
        assert b.s == math.comb(k - 1, 2)


def test_bundle_counts_add_up():
    for v in SMALL_GRID:
        if v.tag in (3, 4):
            continue
        b = bundle_data(*_gu(v))
        assert b.s + b.t == math.comb(v.n, 2) + v.m


def test_report_type1():
    rep = geometry_report(V.type1(5, 5, (0,)))
    assert rep.dim_x == 5
    assert rep.base == "Gr(2,4) in P^5"
    assert rep.base_dim == 4
    assert rep.fiber_dim == 1
    assert rep.fujita


def test_type1_fiber_dimension():
    for v in SMALL_GRID:
        if v.tag == 1:
            rep = geometry_report(v)
            assert rep.fiber_dim == 2 * (v.n - v.k) + 1 + v.m
            assert rep.fiber_dim + rep.base_dim == dim_x(v.n, v.m)


def test_report_type2():
    rep = geometry_report(V.type2(6, 0, (0,)))
    assert (rep.base, rep.fiber) == ("P^4", "P^4")


def test_report_type4_blowup():
    rep = geometry_report(V.type4(4, 2))
    assert rep.blowup == "blow-up of P^5 centred at V(T13*T24 - T14*T23, S1, S2)"
    assert rep.notes


def test_report_centres_for_m1():
    assert geometry_report(V.type3(5, 4, 1)).center.startswith("V(I_(2,3), T_ij; j >= 4)")
    assert geometry_report(V.type4(5, 1)).center.startswith("the point")


def test_contraction_kinds_on_grid():
    for v in SMALL_GRID:
        rep = geometry_report(v)
        kinds = {c.cls: c.kind for c in rep.contractions}
        if v.tag in (1, 2, 5, 6):
            assert ContractionKind.FIBER_TYPE in kinds.values()
        elif v.m == 1:
            assert kinds[(2, 1)] is ContractionKind.DIVISORIAL


def test_fujita():
    assert fujita_statement(V.type1(5, 5, (0,)))
    assert fujita_statement(V.type5(4, 2, (0, 0), (0,)))
    assert fujita_statement(V.type3(5, 4, 2))
    assert all(fujita_statement(v) for v in SMALL_GRID)


def test_report_serialisation():
    rep = geometry_report(V.type6(5, (0, 2)))
    data = json.loads(json.dumps(rep.to_json()))
    assert data["bundle"]["twists"] == [0, 2]
    assert data["contractions"][0]["kind"] == "fiber_type"
    text = rep.to_text()
    assert "base: Gr(2,5)" in text and "fiber dim: 1" in text
