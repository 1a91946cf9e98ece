from fractions import Fraction

import pytest

from chevtori.rootsystem import root_system
from chevtori.tables import NONSPLIT_TORI, load_tables, structure_order
from chevtori.torus import torus_order_poly_from_string


def test_row_index_completeness(tables6, tables7, tables8):
    assert [r.index for r in tables6.tori] == list(range(1, 26))
    assert [r.index for r in tables7.tori] == list(range(1, 31))
    assert [r.index for r in tables8.tori] == list(range(1, 68))


def test_verdict_partitions(tables7, tables8):
    assert {r.torus for r in tables7.nonsplit} == set(NONSPLIT_TORI["E7"])
    special = {t.index for t in tables8.special}
    assert special == {36, 41, 49, 59}
    assert {r.torus for r in tables8.nonsplit} | special == set(NONSPLIT_TORI["E8"])


def test_detail_rows_match_main_reps(tables7, tables8):
    for row in tables7.nonsplit:
        assert tables7.torus_row(row.torus).rep == row.w
    for row in tables7.split:
        assert tables7.torus_row(row.torus).rep == row.w
    for row in tables8.nonsplit:
        assert tables8.torus_row(row.torus).rep == row.w
    for row in tables8.split + tables8.split_odd:
        assert tables8.torus_row(row.torus).rep == row.w
    for t in tables8.special:
        # tori 41 and 49 use a different expression of the class
        if t.index not in (41, 49):
            assert tables8.torus_row(t.index).rep == t.w


def test_lift_rows_match_main_reps(tables7):
    for row in tables7.lifts:
        assert tables7.torus_row(row.index).rep == row.w
        assert tables7.torus_row(row.index).order == row.order


def test_ww0_lift_exactly_for_multiples_of_four(tables7):
    for row in tables7.lifts:
        assert (row.ww0_lift is not None) == (row.order % 4 == 0)


def test_structure_orders_match_numeric_column(tables7):
    for r in tables7.tori:
        assert structure_order(r.c_structure) == r.c_order


def test_class_equation_e7(tables7):
    # w and w w_0 exhaust the classes in pairs with equal centralizers
    total = sum(Fraction(2, r.c_order) for r in tables7.tori)
    assert total == 1


def test_torus_polynomials_have_full_degree(tables7, tables8):
    for tables, rank in ((tables7, 7), (tables8, 8)):
        for r in tables.tori:
            poly = torus_order_poly_from_string(r.torus)
            assert poly.degree() == rank
            assert poly.leading() == 1


def test_structure_order_examples():
    assert structure_order("2 x O7(2)") == 2903040
    assert structure_order("(2.O8+(2)):2") == 696729600
    assert structure_order("Z6 x S6") == 4320
    assert structure_order("order 2^13*3^3") == 221184
    assert structure_order("Z3 x ((Z2 x S3 x S3 x S3):Z2)") == 2592
    with pytest.raises(ValueError):
        structure_order("M11")


def test_e6_rep_words_are_valid(tables6):
    rs = root_system("E6")
    for r in tables6.tori:
        m = rs.weyl_word(r.rep)  # raises if any index is out of range
        assert rs.matrix_order(m) >= 1


def test_prose_rows_have_both_residue_coverage(tables7):
    for torus in tables7.prose:
        conds = {c.qmod4 for c in torus.cases}
        assert conds == {0} or conds == {1, 3}
