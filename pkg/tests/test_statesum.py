from itertools import product

import pytest

from dwdefect.cocycle import PartialCocycle, constant_cocycle, pullback
from dwdefect.coloring import counting_invariant
from dwdefect.complex import direct_triangulation
from dwdefect.cyclotomic import CyclotomicInt
from dwdefect.errors import DimensionMismatch, DomainCoverageError
from dwdefect.examples import gen_example, named_cochain, named_parcel
from dwdefect.statesum import StateSumValue, twisted_state_sum, untwisted_value

from conftest import suspended_octahedron
from oracles import naive_state_sum_counts, numeric

CASES = [("circle_defect_point", "z2_bulk", "z2_char_1d"),
         ("circle_defect_point", "z2_z2", "z2_char_1d"),
         ("torus_plain", "z2_bulk", "z2_sign_2d"),
         ("sphere_equator", "z2_bulk", "z2_sign_2d"),
         ("sphere_equator", "z2_defect", "z2_sign_2d"),
         ("sphere_equator", "z2_z2", "z2_sign_2d"),
         ("sphere_equator", "z4_defect", "z4_bilinear"),
         ("torus_meridian", "z2_defect", "z2_sign_2d"),
         ("small3", "z2_bulk", "z2_cube"),
         ("small3", "z2_defect", "z2_cube"),
         ("small3", "z2_z2", "z2_cube")]


def _t(name):
    return direct_triangulation(suspended_octahedron() if name == "small3" else gen_example(name))


def _alpha(cname, pname, p):
    return pullback(named_cochain(cname, pname), p)


@pytest.mark.parametrize("cx,pn,cn", CASES)
def test_state_sum_matches_naive_oracle(cx, pn, cn):
    t, p = _t(cx), named_parcel(pn)
    a = _alpha(cn, pn, p)
    z = twisted_state_sum(t, p, a)
    counts = naive_state_sum_counts(t, p, a)
    assert z.value == CyclotomicInt.from_exponent_counts(a.m, counts)
    assert abs(z.to_complex() - numeric(counts) / z.divisor) < 1e-9


@pytest.mark.parametrize("cx,pn,cn", CASES)
def test_untwisted_reduction(cx, pn, cn):
    t, p = _t(cx), named_parcel(pn)
    z = twisted_state_sum(t, p, constant_cocycle(p, t.base.d))
    assert z.is_integral()
    assert z == untwisted_value(counting_invariant(t, p) * z.divisor, t, p)
    assert z.canonical() == (1, (counting_invariant(t, p),), 1)


@pytest.mark.parametrize("cx,pn,cn", CASES)
def test_orientation_flip_negates_exponents(cx, pn, cn):
    t, p = _t(cx), named_parcel(pn)
    a = _alpha(cn, pn, p)
    neg = PartialCocycle(a.d, a.m, {xs: -k % a.m for xs, k in a.values.items()})
    flipped = direct_triangulation(t.base.with_orientation_flipped())
    assert twisted_state_sum(flipped, p, a) == twisted_state_sum(t, p, neg)


def test_torus_twisted_dw_value():
    """Sum over commuting pairs of omega(g,h)/omega(h,g) for a bilinear omega on Z2^2."""
    p = named_parcel("z2sq_bulk")
    a = _alpha("z2sq_bilinear", "z2sq_bulk", p)
    t = _t("torus_plain")
    g = p.glabel.gbeta

    def om(x, y):
        return (x // 2) * (y % 2)

    want = sum((-1) ** ((om(x, y) - om(y, x)) % 2) for x, y in product(range(len(g)), repeat=2))
    z = twisted_state_sum(t, p, a)
    assert z.canonical() == (2, (want,), 1) == (2, (4,), 1)


def test_dimension_mismatch():
    p = named_parcel("z2_bulk")
    with pytest.raises(DimensionMismatch):
        twisted_state_sum(_t("torus_plain"), p, constant_cocycle(p, 3))


def test_missing_value():
    p = named_parcel("z2_bulk")
    a = constant_cocycle(p, 2, 2)
    a.values.clear()
    with pytest.raises(DomainCoverageError):
        twisted_state_sum(_t("torus_plain"), p, a)


def test_value_canonical_form():
    v = StateSumValue(CyclotomicInt(4, (8, 4)), 2, 2, 1, 0)
    assert v.canonical() == (4, (2, 1), 1)
    assert str(v) == "[2,1]"
    w = StateSumValue(CyclotomicInt(4, (6,)), 2, 2, 1, 0)
    assert str(w) == "[3,0]/2" and not w.is_integral()
    assert StateSumValue(CyclotomicInt(2, (4,)), 2, 1, 1, 0) == StateSumValue(CyclotomicInt(2, (8,)), 2, 2, 1, 0)
