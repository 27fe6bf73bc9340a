import json

import pytest
from hypothesis import given, strategies as st

from dwdefect import documents as docs
from dwdefect.cocycle import constant_cocycle, pullback
from dwdefect.complex import direct_triangulation
from dwdefect.coloring import count_colorings
from dwdefect.errors import DocumentError
from dwdefect.examples import (COCHAIN_NAMES, EXAMPLE_NAMES, PARCEL_NAMES, gen_example,
                               named_cochain, named_parcel)


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_complex_round_trip(name):
    c = gen_example(name)
    text = docs.render(c)
    assert docs.parse(text) == c
    assert docs.canonical(text) == text


@pytest.mark.parametrize("name", PARCEL_NAMES)
def test_parcel_round_trip(name):
    p = named_parcel(name)
    text = docs.render(p)
    q = docs.parse(text)
    assert docs.render(q) == text
    assert q.glabel is not None
    t = direct_triangulation(gen_example("sphere_equator"))
    assert count_colorings(t, q) == count_colorings(t, p)


@pytest.mark.parametrize("name", COCHAIN_NAMES)
def test_group_cochain_round_trip(name):
    parcel = {"z2sq_bilinear": "z2sq_bulk", "z4_bilinear": "z4_defect"}.get(name, "z2_z2")
    c = named_cochain(name, parcel)
    text = docs.render(c)
    assert docs.render(docs.parse(text)) == text


def test_partial_cocycle_round_trip():
    p = named_parcel("z2_defect")
    a = pullback(named_cochain("z2_sign_2d", "z2_defect"), p)
    b = docs.parse(docs.render(a))
    assert (b.d, b.m, b.values) == (a.d, a.m, a.values)
    z = constant_cocycle(p, 1)
    assert docs.parse(docs.render(z)).values == z.values


def test_run_record_round_trip():
    r = docs.RunRecord("invariant", {"complex": "x.json"}, {"complex": "ab12"}, ["invariant\t4"], 0)
    assert docs.parse(docs.render(r)) == r


@given(st.dictionaries(st.text(min_size=1, max_size=5),
                       st.one_of(st.integers(), st.lists(st.integers(), max_size=4),
                                 st.text(max_size=5)), max_size=5))
def test_dumps_is_valid_sorted_json(obj):
    text = docs.dumps(obj)
    assert json.loads(text) == obj
    assert docs.dumps(json.loads(text)) == text


def _mutated(name, fn):
    obj = json.loads(docs.render(gen_example(name)))
    fn(obj)
    return json.dumps(obj)


def test_out_of_range_vertex_is_located():
    text = _mutated("sphere_equator", lambda o: o["simplices"][1].__setitem__(2, [0, 99]))
    with pytest.raises(DocumentError) as e:
        docs.parse(text)
    assert e.value.path == "$.simplices[1][2][1]"
    assert e.value.code == "E_DOCUMENT"


def test_missing_group_inverse_is_located():
    obj = json.loads(docs.render(named_parcel("z2_bulk")))
    del obj["B"]["inverse"]
    with pytest.raises(DocumentError) as e:
        docs.parse(json.dumps(obj))
    assert e.value.path == "$.B.inverse"


def test_syntax_error_is_located():
    text = docs.render(gen_example("circle_defect_point")).replace('"d": 1,', '"d": 1', 1)
    with pytest.raises(DocumentError) as e:
        docs.parse(text)
    assert e.value.line == 3 and e.value.column is not None


def test_unknown_format_and_keys():
    with pytest.raises(DocumentError) as e:
        docs.parse('{"format": "nope"}')
    assert e.value.path == "$.format"
    text = _mutated("circle_defect_point", lambda o: o.__setitem__("colour", 1))
    with pytest.raises(DocumentError):
        docs.parse(text)


def test_bad_sign_rejected():
    text = _mutated("torus_plain", lambda o: o["top_orientation"].__setitem__(0, 2))
    with pytest.raises(DocumentError) as e:
        docs.parse(text)
    assert e.value.path == "$.top_orientation"


def test_digest_is_stable():
    text = docs.render(gen_example("torus_plain"))
    assert docs.digest(text) == docs.digest(text)
    assert docs.digest(text) != docs.digest(text + " ")
