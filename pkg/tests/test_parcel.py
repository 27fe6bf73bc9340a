from dataclasses import replace

import pytest

from dwdefect.errors import InfiniteOrderViolation, NotComposable, WordTooLong
from dwdefect.examples import PARCEL_NAMES, named_parcel
from dwdefect.parcel import (BETA, DELTA, IOTA, OMEGA, FiniteGroupTable, ParcelArrow, PathWord,
                             build_group_parcel, compose, cyclic_group, direct_product,
                             fiber_size, kind_of_word, symmetric_group, trivial_group,
                             trivial_parcel, validate_parcel)


@pytest.mark.parametrize("g", [trivial_group(), cyclic_group(5), symmetric_group(3),
                               direct_product(cyclic_group(2), cyclic_group(3))])
def test_constructed_groups_are_groups(g):
    assert g.is_group()


def test_symmetric_group_is_not_abelian():
    s3 = symmetric_group(3)
    assert len(s3) == 6
    assert any(s3.mul[a][b] != s3.mul[b][a] for a in range(6) for b in range(6))


def test_non_associative_table_is_flagged():
    # x*y = x - y mod 3 has identity on the right only and is not associative
    mul = tuple(tuple((a - b) % 3 for b in range(3)) for a in range(3))
    g = FiniteGroupTable(mul, 0, (0, 1, 2))
    chk = g.axiom_checks()
    assert not chk["associative"] and not chk["identity"]


def test_group_parcel_fibers():
    p = build_group_parcel(cyclic_group(2), trivial_group(), (0, 0, 1), (0, 0, 0))
    assert (len(p.B), len(p.D), p.n_i, p.n_w) == (2, 1, 2, 2)
    assert validate_parcel(p).ok


def test_double_coset_collapses_when_factors_conjugate_phi_into_itself():
    # G_beta = G_delta = Z/2 and phi = (1, 1, 1): G_beta phi G_delta has 4 elements
    z2 = cyclic_group(2)
    p = build_group_parcel(z2, z2, (1, 1, 1), (0, 0, 0))
    assert p.n_i == 4 and p.n_w == 4


def test_infinite_order_required():
    with pytest.raises(InfiniteOrderViolation):
        build_group_parcel(cyclic_group(2), trivial_group(), (0, 0, 1), (0, 0, -1))


@pytest.mark.parametrize("name", PARCEL_NAMES)
def test_named_parcels_validate(name):
    rep = validate_parcel(named_parcel(name))
    assert rep.ok, rep.lines()


def test_composition_is_diagrammatic():
    p = named_parcel("s3_bulk")
    B = p.B
    a, b = ParcelArrow("B", 1), ParcelArrow("B", 3)
    assert compose(a, b, p) == ParcelArrow("B", B.mul[1][3])
    x = ParcelArrow("I", 0)
    assert compose(a, x, p).kind == "I"
    assert compose(x, p.identity(DELTA), p) == x


def test_words_of_length_two_are_not_modelled():
    p = trivial_parcel()
    with pytest.raises(WordTooLong):
        compose(ParcelArrow("I", 0), ParcelArrow("W", 0), p)
    with pytest.raises(NotComposable):
        compose(ParcelArrow("I", 0), ParcelArrow("B", 0), p)
    with pytest.raises(WordTooLong):
        kind_of_word(PathWord(BETA, (IOTA, OMEGA)))


def test_fiber_sizes():
    p = named_parcel("z2_defect")
    assert fiber_size(p, PathWord(BETA, ())) == 1
    assert fiber_size(p, PathWord(DELTA, ())) == 2
    assert fiber_size(p, PathWord(BETA, (IOTA,))) == 2


def test_broken_action_is_reported():
    p = named_parcel("z2_bulk")
    bad = replace(p, i_left=(p.i_left[0], p.i_left[0]), _tables={})
    rep = validate_parcel(bad)
    assert not rep.ok
    assert "action_left_assoc" in rep.failures() or "glabel_equivariant" in rep.failures()


def test_non_group_identity_fiber_breaks_conservativity():
    p = named_parcel("z2_bulk")
    mono = FiniteGroupTable(((0, 1), (1, 1)), 0, (0, 1))   # {0, 1} under max
    rep = validate_parcel(replace(p, B=mono, glabel=None, _tables={}))
    assert "conservative" in rep.failures()
