import dataclasses

import pytest

from toricsl.condstar import check_condition_star
from toricsl.lattice import FgAbelianGroup, GroupElement
from toricsl.sl3 import (
    DUAL,
    STANDARD,
    TRIVIAL,
    ModuleSpec,
    Summand,
    UnsupportedCase,
    classify,
    coordinate_weights,
    load_table,
    parse_case_label,
    theta_weights,
    verify_all_cases,
    verify_case,
    verify_row,
    verify_spec,
)

# (label, v weights, trivial weights) transcribed from the published table
PUBLISHED = {
    "1a": ([], []),
    "1b": ([()], []),
    "1c": ([(), ()], []),
    "1d": ([(1,), (-1,)], [(1,)]),
    "1e": ([(1, 0), (0, 1)], [(-1, -1), (-1, -2)]),
    "2a": ([(1,), (1,), (-1,)], []),
    "2b": ([(1, 0), (0, 1), (-1, -2)], [(1, 0)]),
    "2c": ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(-1, -1, -2), (-1, -2, -1)]),
    "3l2": ([(1,), (-1,)], []),
    "3l3": ([(1, 0), (0, 1), (-1, -1)], []),
}


def E(*x):
    return GroupElement(tuple(x))


def test_bundled_table_matches_published_weights():
    table = load_table()
    assert [r.label for r in table] == list(PUBLISHED)
    for row in table:
        v, w = PUBLISHED[row.label]
        assert list(row.v) == v and list(row.w) == w
        assert row.dim_q == (len(v[0]) if v else 0)


def test_full_table_passes():
    rep = verify_all_cases()
    assert rep.passed and rep.npassed == 10 == len(rep.rows)
    for row in rep.rows:
        for variant in row.variants:
            assert [c.name for c in variant.checks] == ["condition_star", "open_orbit", "dim_q", "constraints"]


@pytest.mark.parametrize("label", ["1a", "1b", "1c", "1d,r=0", "1d,r=1", "1e", "2a", "2b,r=0",
                                   "2b,r=1", "2c", "3l2", "3,l=3"])
def test_each_variant_passes(label):
    assert verify_case(label).passed


def test_row_with_several_variants_needs_r():
    with pytest.raises(UnsupportedCase):
        verify_case("2b")
    assert len(verify_row(next(r for r in load_table() if r.label == "2b")).variants) == 2


def test_case_1e_carries_spanning_certificates():
    rep = check_condition_star(coordinate_weights(load_table()[4].spec(2)))
    assert rep.holds and len(rep.spanning.certificates) == 8


def test_parse_case_label():
    assert parse_case_label("2b,r=1") == ("2b", 1)
    assert parse_case_label("3,l=2") == ("3l2", None)
    assert parse_case_label("1a") == ("1a", None)
    with pytest.raises(ValueError):
        parse_case_label("7z")


def test_coordinate_weights():
    z1 = FgAbelianGroup.free(1)
    spec = ModuleSpec(3, z1, [Summand(STANDARD, E(1)), Summand(STANDARD, E(1)), Summand(STANDARD, E(-1))])
    coll = coordinate_weights(spec)
    assert sorted(coll.expanded(), key=lambda e: e.free) == [E(-1)] * 3 + [E(1)] * 6
    trivial = FgAbelianGroup(0)
    assert coordinate_weights(ModuleSpec(3, trivial, [Summand(STANDARD, E())])).expanded() == [E()] * 3
    assert coordinate_weights(ModuleSpec(3, trivial, [])).expanded() == []


def test_multiplicity_is_three_l_plus_r():
    for row in load_table():
        for r in row.r_values:
            spec = row.spec(r)
            assert coordinate_weights(spec).total_multiplicity == spec.dimension == 3 * len(row.v) + r


def test_theta_weights():
    table = {r.label: r for r in load_table()}
    assert theta_weights(table["2a"].spec(0)) == [E(1)]
    assert theta_weights(table["3l2"].spec(0)) == [E(2)]
    assert theta_weights(table["3l2"].spec(0), pairing="sum") == [E(0)]
    assert theta_weights(table["1d"].spec(1)) == [E(1)]
    assert theta_weights(table["2b"].spec(1)) == [E(0, -1), E(1, 0)]
    assert theta_weights(table["1a"].spec(0)) == []


def test_literal_sum_pairing_breaks_row_3l2():
    rep = verify_all_cases(pairing="sum")
    failing = [r.label for r in rep.rows if not r.passed]
    assert failing == ["3l2"]


def test_classify():
    z = FgAbelianGroup(0)
    s, d, t = Summand(STANDARD, E()), Summand(DUAL, E()), Summand(TRIVIAL, E())
    assert classify(3, [s, s, t]).case == 1
    assert classify(3, [s, s, s]).case == 2
    assert classify(3, [d, d, d]).conjugate
    assert classify(3, [s, d]).l == 2
    shape = classify(3, [s, d, d])
    assert shape.case == 3 and shape.l == 3 and shape.conjugate
    assert classify(4, [s] * 4).case == 2
    with pytest.raises(UnsupportedCase):
        classify(3, [s, s, s, s])
    with pytest.raises(UnsupportedCase):
        ModuleSpec(4, z, [s])


# -- perturbations --------------------------------------------------------------


def _doubled(row):
    return dataclasses.replace(
        row,
        v=tuple(tuple(2 * c for c in x) for x in row.v),
        w=tuple(tuple(2 * c for c in x) for x in row.w),
    )


@pytest.mark.parametrize("label", ["1d", "1e", "2a", "2b", "2c", "3l2", "3l3"])
def test_doubling_weights_breaks_generation(label):
    row = _doubled(next(r for r in load_table() if r.label == label))
    rep = verify_row(row)
    assert not rep.passed
    for v in rep.variants:
        assert not v.check("condition_star").passed


@pytest.mark.parametrize("label", ["1a", "1b", "1c"])
def test_wrong_class_group_rank_is_detected(label):
    row = dataclasses.replace(next(r for r in load_table() if r.label == label), dim_q=1)
    assert not verify_row(row).passed


def test_dependent_theta_weights_fail_open_orbit():
    z2 = FgAbelianGroup.free(2)
    # 2b with w1 proportional to the determinant weight (0,-1)
    spec = ModuleSpec(3, z2, [Summand(STANDARD, E(1, 0)), Summand(STANDARD, E(0, 1)),
                              Summand(STANDARD, E(-1, -2)), Summand(TRIVIAL, E(0, 1))])
    rep = verify_spec(spec, 2, "2b*", 1)
    assert not rep.check("open_orbit").passed
