from itertools import product

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from dwdefect.cocycle import (GroupCochain, QuotientMap, admissible_tuples, check_group_cocycle,
                              check_partial_cocycle, coboundary, constant_cocycle,
                              d3_eight_term_check, pullback, restriction_is_sign_valued)
from dwdefect.errors import DimensionMismatch, DomainCoverageError, InvalidInput, MissingGroupLabel
from dwdefect.examples import (bilinear_two_cocycle, cyclic_three_cocycle, named_cochain,
                               named_parcel, z2_cube_cochain)
from dwdefect.parcel import ParcelArrow, cyclic_group, trivial_parcel

from oracles import group_cocycle_brute

CYCLIC_PARCELS = ["trivial", "z2_bulk", "z2_defect", "z4_defect", "z2_z2"]


def _factor_sizes(name):
    p = named_parcel(name)
    return len(p.B), len(p.D)


@st.composite
def cyclic_qmaps(draw, parcel=None, n=None):
    """A homomorphism G_beta x G_delta x Z -> Z/n for a parcel with cyclic factors."""
    parcel = parcel or draw(st.sampled_from(CYCLIC_PARCELS))
    n = n or draw(st.integers(2, 4))
    nb, nd = _factor_sizes(parcel)

    def hom(a):
        ks = [k for k in range(n) if (a * k) % n == 0]
        k = draw(st.sampled_from(ks))
        return tuple((g * k) % n for g in range(a))

    return parcel, QuotientMap(cyclic_group(n), hom(nb), hom(nd), draw(st.integers(0, n - 1)))


def test_admissible_tuple_count_formula():
    p = named_parcel("z2_z2")          # |B| = |D| = 2, |I| = |W| = 4
    nb, nd, ni, nw = 2, 2, 4, 4
    for k in (1, 2, 3):
        want = nb ** k + nd ** k + sum(nb ** j * ni * nd ** (k - 1 - j) + nd ** j * nw * nb ** (k - 1 - j)
                                       for j in range(k))
        assert sum(1 for _ in admissible_tuples(p, k)) == want


def test_z2_cube_is_a_group_cocycle_by_brute_force():
    c = z2_cube_cochain()
    assert group_cocycle_brute(c.Q, c.table, 3, 2)
    assert check_group_cocycle(c)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)])
def test_standard_cyclic_three_cocycles(n, k):
    q = QuotientMap(cyclic_group(n), (0,), (0,), 1)
    c = cyclic_three_cocycle(n, k, q)
    assert group_cocycle_brute(c.Q, c.table, 3, n)
    assert check_group_cocycle(c)


def test_non_cocycle_detected_by_both_checks():
    q = QuotientMap(cyclic_group(3), (0,), (0,), 1)
    c = GroupCochain.from_function(2, 3, q, lambda a, b: a * a * b)
    assert not group_cocycle_brute(c.Q, c.table, 2, 3)
    assert not check_group_cocycle(c)


@settings(max_examples=40, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 3), st.integers(2, 4), st.data())
def test_coboundaries_are_cocycles(d, n, data):
    q = QuotientMap(cyclic_group(n), (0,), (0,), 1)
    f = {xs: data.draw(st.integers(0, n - 1)) for xs in product(range(n), repeat=d - 1)}
    c = coboundary(d, n, q, f)
    assert group_cocycle_brute(c.Q, c.table, d, n)


def test_pullback_needs_labels():
    p = named_parcel("z2_bulk")
    from dataclasses import replace

    with pytest.raises(MissingGroupLabel):
        pullback(named_cochain("z2_cube", "z2_bulk"), replace(p, glabel=None, _tables={}))


def test_missing_value_is_a_coverage_error():
    p = trivial_parcel()
    a = constant_cocycle(p, 2)
    del a.values[next(iter(a.values))]
    with pytest.raises(DomainCoverageError):
        check_partial_cocycle(a, p)


@pytest.mark.parametrize("parcel", ["trivial", "z2_bulk", "z2_defect", "z2_z2"])
def test_z2_cube_pullbacks_pass(parcel):
    p = named_parcel(parcel)
    a = pullback(named_cochain("z2_cube", parcel), p)
    rep = check_partial_cocycle(a, p)
    assert rep.ok, rep.lines()
    assert d3_eight_term_check(a, p)


def test_perturbing_one_value_breaks_condition_one():
    p = named_parcel("z2_bulk")
    a = pullback(named_cochain("z2_sign_2d", "z2_bulk"), p)
    xs = (ParcelArrow("B", 1), ParcelArrow("I", 0))
    rep = check_partial_cocycle(a.perturbed(xs, 1), p)
    assert not rep.condition1 and rep.failures1


def test_parity_law_d2_values_outside_signs_fail():
    p = named_parcel("z4_defect")
    q = QuotientMap(cyclic_group(4), (0,), tuple(range(4)), 0)
    fails = pullback(bilinear_two_cocycle(4, 1, q), p)
    passes = pullback(bilinear_two_cocycle(4, 2, q), p)
    assert not restriction_is_sign_valued(fails, p)
    assert restriction_is_sign_valued(passes, p)
    r1, r2 = check_partial_cocycle(fails, p), check_partial_cocycle(passes, p)
    assert r1.condition1 and not r1.condition2
    assert r2.condition1 and r2.condition2


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from([1, 2, 3]), cyclic_qmaps(), st.data())
def test_parity_law_for_pulled_back_cocycles(d, pq, data):
    """Given condition 1, condition 2 holds iff d is odd or alpha is +-1 on D^d."""
    parcel, q = pq
    n = len(q.Q)
    k = data.draw(st.integers(0, n - 1))
    if d == 1:
        c = GroupCochain.from_function(1, n, q, lambda a: k * a)
    elif d == 2:
        c = bilinear_two_cocycle(n, k, q)
    else:
        c = cyclic_three_cocycle(n, k, q)
    f = {xs: data.draw(st.integers(0, n - 1)) for xs in product(range(n), repeat=d - 1)}
    b = coboundary(d, n, q, f)
    c = GroupCochain(d, n, q, {xs: (c.table[xs] + b.table[xs]) % n for xs in c.table})
    assert group_cocycle_brute(c.Q, c.table, d, n)
    p = named_parcel(parcel)
    a = pullback(c, p)
    rep = check_partial_cocycle(a, p)
    assert rep.condition1
    assert rep.condition2 == (d % 2 == 1 or restriction_is_sign_valued(a, p))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["trivial", "z2_bulk", "z2_defect"]), st.integers(2, 3), st.data())
def test_eight_terms_match_condition_two_on_arbitrary_cochains(parcel, m, data):
    p = named_parcel(parcel)
    a = constant_cocycle(p, 3, m)
    for xs in a.values:
        a.values[xs] = data.draw(st.integers(0, m - 1))
    assert d3_eight_term_check(a, p) == check_partial_cocycle(a, p).condition2


def test_eight_terms_need_d3():
    p = trivial_parcel()
    with pytest.raises(DimensionMismatch):
        d3_eight_term_check(constant_cocycle(p, 2), p)


def test_pullback_rejects_incompatible_quotient():
    with pytest.raises(InvalidInput):
        pullback(z2_cube_cochain(), named_parcel("z2_defect"))
