import pytest
from hypothesis import given, settings, strategies as st

from dwdefect.coloring import (ALL, FOREST_IDENTITY, build_spanning_forest, count_colorings,
                               counting_invariant, enumerate_colorings, normalization,
                               normalization_divisor)
from dwdefect.complex import direct_triangulation
from dwdefect.errors import NonIntegerInvariant
from dwdefect.examples import EXAMPLE_NAMES, gen_example, named_parcel
from dwdefect.parcel import compose

from conftest import suspended_octahedron
from oracles import commuting_pairs, naive_colorings

# (complex, parcel) pairs small enough for the naive oracle
SMALL = [("circle_defect_point", "z2_bulk"), ("circle_defect_point", "z2_defect"),
         ("circle_defect_point", "z2_z2"), ("torus_plain", "z2_bulk"),
         ("sphere_equator", "z2_bulk"), ("sphere_equator", "z2_defect"),
         ("sphere_equator", "z4_defect"), ("sphere_equator", "z2_z2"),
         ("torus_meridian", "z2_bulk"), ("torus_meridian", "z2_defect"),
         ("small3", "z2_bulk"), ("small3", "z2_defect"), ("small3", "z2_z2")]


def _t(name):
    return direct_triangulation(suspended_octahedron() if name == "small3" else gen_example(name))


@pytest.mark.parametrize("cname,pname", SMALL)
def test_colorings_match_naive_oracle(cname, pname):
    t, p = _t(cname), named_parcel(pname)
    want = {tuple(sorted(col.items())) for col in naive_colorings(t, p)}
    edges = t.base.edges
    got = {tuple(sorted(zip(edges, col.arrows))) for col in enumerate_colorings(t, p)}
    assert got == want
    assert count_colorings(t, p) == len(want)


@pytest.mark.parametrize("cname,pname", SMALL)
def test_every_coloring_is_multiplicative(cname, pname):
    t, p = _t(cname), named_parcel(pname)
    for col in enumerate_colorings(t, p):
        for f in t.faces:
            assert compose(col[f.first], col[f.second], p) == col[f.third]


def test_counts_on_torus():
    t = _t("torus_plain")
    assert count_colorings(t, named_parcel("z2_bulk")) == 256
    assert count_colorings(t, named_parcel("z2_bulk"), FOREST_IDENTITY) == 4


def test_trivial_parcel_everywhere():
    p = named_parcel("trivial")
    for name in EXAMPLE_NAMES:
        t = _t(name)
        assert count_colorings(t, p) == 1
        assert counting_invariant(t, p) == 1


def test_spanning_forest_shapes():
    f = build_spanning_forest(_t("torus_plain"))
    assert len(f.roots) == 1 and len(f.edges) == 6
    f = build_spanning_forest(_t("sphere_equator"))
    assert sorted(len(e) for e in f.tree_edges) == [0, 0, 3]
    assert f.stratum.count("defect") == 1
    f = build_spanning_forest(_t("circle_defect_point"))
    assert [len(e) for e in f.tree_edges] == [1, 0]


def test_normalization_exponents():
    p = named_parcel("z2_z2")
    assert normalization(_t("torus_plain"), p) == (6, 0)
    assert normalization(_t("sphere_equator"), p) == (0, 3)
    assert normalization(_t("torus_meridian"), p) == (5, 2)
    assert normalization(_t("lens_like_3d"), p) == (4, 11)
    assert normalization_divisor(_t("circle_defect_point"), p) == 2


def test_non_integer_invariant_detected(monkeypatch):
    from dwdefect import coloring

    monkeypatch.setattr(coloring, "count_colorings", lambda *a, **k: 7)
    with pytest.raises(NonIntegerInvariant):
        counting_invariant(_t("torus_plain"), named_parcel("z2_bulk"))


def test_lens_counts():
    t = _t("lens_like_3d")
    assert count_colorings(t, named_parcel("z2_bulk")) == 64
    assert counting_invariant(t, named_parcel("z2_defect")) == 4


def test_torus_dw_oracle_z2():
    t = _t("torus_plain")
    p = named_parcel("z2_bulk")
    assert counting_invariant(t, p) == commuting_pairs(p.B) == 4


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(SMALL))
def test_forest_identity_equals_normalized_count(pair):
    t, p = _t(pair[0]), named_parcel(pair[1])
    total = count_colorings(t, p, ALL)
    assert total == count_colorings(t, p, FOREST_IDENTITY) * normalization_divisor(t, p)
