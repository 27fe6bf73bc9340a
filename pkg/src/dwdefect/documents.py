"""Text documents for complexes, parcels, cochains and run records.

Documents are JSON objects tagged with a ``format`` string.  Printing is
canonical: keys sorted, two-space indentation, and lists of scalars kept on
one line, so ``print(parse(text))`` is a fixed point.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .cocycle import GroupCochain, PartialCocycle, QuotientMap
from .complex import StratifiedComplex
from .errors import DocumentError
from .parcel import KINDS, FiniteGroupTable, Gamma2Parcel, GroupLabel, ParcelArrow

COMPLEX_FORMAT = "dwdefect.complex/1"
PARCEL_FORMAT = "dwdefect.parcel/1"
COCHAIN_FORMAT = "dwdefect.cochain/1"
RUN_FORMAT = "dwdefect.run/1"


# -- canonical printing --------------------------------------------------------


def _scalar(x) -> bool:
    return x is None or isinstance(x, (bool, int, float, str))


def _dump(obj, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, (list, tuple)):
        if all(_scalar(x) for x in obj):
            return "[" + ", ".join(json.dumps(x) for x in obj) + "]"
        return "[\n" + ",\n".join(pad + _dump(x, indent + 1) for x in obj) + "\n" + "  " * indent + "]"
    return json.dumps(obj)


def dumps(obj: dict) -> str:
    return _dump(obj) + "\n"


def loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"syntax error: {e.msg}", line=e.lineno, column=e.colno) from None
    if not isinstance(obj, dict):
        raise DocumentError("document must be an object", path="$")
    return obj


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


# -- field access with paths ---------------------------------------------------


class _Fields:
    def __init__(self, obj: dict, path: str):
        self.obj, self.path = obj, path

    def get(self, key: str, typ=None, *, optional: bool = False, default=None):
        p = f"{self.path}.{key}"
        if key not in self.obj:
            if optional:
                return default
            raise DocumentError(f"missing field {key!r}", path=p)
        v = self.obj[key]
        if typ is not None and not _is(v, typ):
            raise DocumentError(f"expected {typ.__name__ if isinstance(typ, type) else typ}", path=p)
        return v

    def sub(self, key: str, *, optional: bool = False) -> "_Fields | None":
        v = self.get(key, dict, optional=optional)
        return None if v is None else _Fields(v, f"{self.path}.{key}")

    def check_keys(self, allowed: set[str]) -> None:
        extra = sorted(set(self.obj) - allowed)
        if extra:
            raise DocumentError(f"unknown field {extra[0]!r}", path=f"{self.path}.{extra[0]}")


def _is(v, typ) -> bool:
    if typ is int:
        return isinstance(v, int) and not isinstance(v, bool)
    return isinstance(v, typ)


def _int_list(v, path: str, lo: int | None = None, hi: int | None = None) -> list[int]:
    if not isinstance(v, list):
        raise DocumentError("expected a list of integers", path=path)
    for i, x in enumerate(v):
        if not _is(x, int):
            raise DocumentError("expected an integer", path=f"{path}[{i}]")
        if (lo is not None and x < lo) or (hi is not None and x >= hi):
            raise DocumentError(f"value {x} out of range {lo}..{hi - 1 if hi is not None else ''}",
                                path=f"{path}[{i}]")
    return v


def _table(v, path: str, rows: int, cols: int, values: int) -> tuple[tuple[int, ...], ...]:
    if not isinstance(v, list) or len(v) != rows:
        raise DocumentError(f"expected {rows} rows", path=path)
    out = []
    for i, row in enumerate(v):
        r = _int_list(row, f"{path}[{i}]", 0, values)
        if len(r) != cols:
            raise DocumentError(f"expected {cols} columns", path=f"{path}[{i}]")
        out.append(tuple(r))
    return tuple(out)


def _check_format(f: _Fields, tag: str) -> None:
    got = f.get("format", str)
    if got != tag:
        raise DocumentError(f"expected format {tag!r}, got {got!r}", path=f"{f.path}.format")


# -- complexes -----------------------------------------------------------------


def complex_to_doc(c: StratifiedComplex) -> dict:
    return {
        "format": COMPLEX_FORMAT,
        "d": c.d,
        "strata": list(c.strata),
        "order": list(c.order),
        "simplices": [[list(s) for s in layer] for layer in c.simplices],
        "top_orientation": list(c.top_orientation),
        "defect": [list(s) for s in c.defect],
        "defect_orientation": list(c.defect_orientation),
    }


def complex_from_doc(obj: dict) -> StratifiedComplex:
    f = _Fields(obj, "$")
    _check_format(f, COMPLEX_FORMAT)
    f.check_keys({"format", "d", "strata", "order", "simplices", "top_orientation", "defect",
                  "defect_orientation"})
    d = f.get("d", int)
    if not 1 <= d <= 3:
        raise DocumentError("dimension must be 1, 2 or 3", path="$.d")
    strata = f.get("strata", list)
    for i, s in enumerate(strata):
        if s not in ("bulk", "defect"):
            raise DocumentError("stratum must be 'bulk' or 'defect'", path=f"$.strata[{i}]")
    n = len(strata)
    order = _int_list(f.get("order", list), "$.order", 0)
    if len(order) != n:
        raise DocumentError(f"expected {n} entries, one per vertex", path="$.order")
    layers = f.get("simplices", list)
    if len(layers) != d + 1:
        raise DocumentError(f"expected {d + 1} simplex lists", path="$.simplices")
    simplices = []
    for k, layer in enumerate(layers):
        if not isinstance(layer, list):
            raise DocumentError("expected a list of simplices", path=f"$.simplices[{k}]")
        out = []
        for i, s in enumerate(layer):
            path = f"$.simplices[{k}][{i}]"
            s = _int_list(s, path, 0, n)
            if len(s) != k + 1:
                raise DocumentError(f"a {k}-simplex has {k + 1} vertices", path=path)
            out.append(tuple(s))
        simplices.append(tuple(out))
    tor = _int_list(f.get("top_orientation", list), "$.top_orientation")
    if len(tor) != len(simplices[d]) or any(e not in (1, -1) for e in tor):
        raise DocumentError("expected one sign (1 or -1) per top simplex", path="$.top_orientation")
    defect = []
    for i, s in enumerate(f.get("defect", list)):
        path = f"$.defect[{i}]"
        s = _int_list(s, path, 0, n)
        if len(s) != d:
            raise DocumentError(f"a defect facet has {d} vertices", path=path)
        defect.append(tuple(s))
    dor = _int_list(f.get("defect_orientation", list), "$.defect_orientation")
    if len(dor) != len(defect) or any(e not in (1, -1) for e in dor):
        raise DocumentError("expected one sign (1 or -1) per defect facet", path="$.defect_orientation")
    return StratifiedComplex(d, tuple(strata), tuple(order), tuple(simplices), tuple(tor),
                             tuple(defect), tuple(dor))


# -- parcels -------------------------------------------------------------------


def _group_doc(g: FiniteGroupTable) -> dict:
    return {"mul": [list(r) for r in g.mul], "identity": g.identity, "inverse": list(g.inv)}


def _group_from(f: _Fields) -> FiniteGroupTable:
    f.check_keys({"mul", "identity", "inverse"})
    mul = f.get("mul", list)
    n = len(mul)
    if n == 0:
        raise DocumentError("a group has at least one element", path=f"{f.path}.mul")
    table = _table(mul, f"{f.path}.mul", n, n, n)
    e = f.get("identity", int)
    if not 0 <= e < n:
        raise DocumentError(f"identity {e} out of range", path=f"{f.path}.identity")
    inv = _int_list(f.get("inverse", list), f"{f.path}.inverse", 0, n)
    if len(inv) != n:
        raise DocumentError(f"expected {n} entries", path=f"{f.path}.inverse")
    return FiniteGroupTable(table, e, tuple(inv))


def parcel_to_doc(p: Gamma2Parcel) -> dict:
    doc: dict[str, Any] = {
        "format": PARCEL_FORMAT,
        "B": _group_doc(p.B),
        "D": _group_doc(p.D),
        "I": {"size": p.n_i, "left": [list(r) for r in p.i_left], "right": [list(r) for r in p.i_right]},
        "W": {"size": p.n_w, "left": [list(r) for r in p.w_left], "right": [list(r) for r in p.w_right]},
    }
    if p.glabel is not None:
        gl = p.glabel
        doc["glabel"] = {"gbeta": _group_doc(gl.gbeta), "gdelta": _group_doc(gl.gdelta),
                         **{k: [list(x) for x in gl.labels[k]] for k in KINDS}}
    return doc


def parcel_from_doc(obj: dict) -> Gamma2Parcel:
    f = _Fields(obj, "$")
    _check_format(f, PARCEL_FORMAT)
    f.check_keys({"format", "B", "D", "I", "W", "glabel"})
    B = _group_from(f.sub("B"))
    D = _group_from(f.sub("D"))
    fi, fw = f.sub("I"), f.sub("W")
    for s in (fi, fw):
        s.check_keys({"size", "left", "right"})
    ni, nw = fi.get("size", int), fw.get("size", int)
    for s, v in ((fi, ni), (fw, nw)):
        if v < 1:
            raise DocumentError("fiber must be non-empty", path=f"{s.path}.size")
    i_left = _table(fi.get("left", list), "$.I.left", len(B), ni, ni)
    i_right = _table(fi.get("right", list), "$.I.right", ni, len(D), ni)
    w_left = _table(fw.get("left", list), "$.W.left", len(D), nw, nw)
    w_right = _table(fw.get("right", list), "$.W.right", nw, len(B), nw)
    glabel = None
    g = f.sub("glabel", optional=True)
    if g is not None:
        g.check_keys({"gbeta", "gdelta", *KINDS})
        gb, gd = _group_from(g.sub("gbeta")), _group_from(g.sub("gdelta"))
        labels = {}
        sizes = {"B": len(B), "D": len(D), "I": ni, "W": nw}
        for k in KINDS:
            rows = g.get(k, list)
            if len(rows) != sizes[k]:
                raise DocumentError(f"expected {sizes[k]} labels", path=f"$.glabel.{k}")
            out = []
            for i, t in enumerate(rows):
                path = f"$.glabel.{k}[{i}]"
                t = _int_list(t, path)
                if len(t) != 3 or not 0 <= t[0] < len(gb) or not 0 <= t[1] < len(gd):
                    raise DocumentError("label must be [g_beta, g_delta, z] in range", path=path)
                out.append(tuple(t))
            labels[k] = tuple(out)
        glabel = GroupLabel(gb, gd, labels)
    return Gamma2Parcel(B, D, ni, nw, i_left, i_right, w_left, w_right, glabel)


# -- cochains ------------------------------------------------------------------


def _arrow_name(a: ParcelArrow) -> str:
    return f"{a.kind}{a.index}"


def _parse_arrow(s, path: str) -> ParcelArrow:
    if not isinstance(s, str) or len(s) < 2 or s[0] not in KINDS or not s[1:].isdigit():
        raise DocumentError("arrow must look like 'B0', 'D1', 'I0' or 'W2'", path=path)
    return ParcelArrow(s[0], int(s[1:]))


def cochain_to_doc(c: GroupCochain | PartialCocycle) -> dict:
    if isinstance(c, GroupCochain):
        q = c.qmap
        return {
            "format": COCHAIN_FORMAT,
            "kind": "group",
            "d": c.d,
            "m": c.m,
            "Q": _group_doc(q.Q),
            "on_beta": list(q.on_beta),
            "on_delta": list(q.on_delta),
            "z_image": q.z_image,
            "values": [list(xs) + [k] for xs, k in sorted(c.table.items())],
        }
    return {
        "format": COCHAIN_FORMAT,
        "kind": "partial",
        "d": c.d,
        "m": c.m,
        "values": [[_arrow_name(a) for a in xs] + [k] for xs, k in sorted(c.values.items())],
    }


def cochain_from_doc(obj: dict) -> GroupCochain | PartialCocycle:
    f = _Fields(obj, "$")
    _check_format(f, COCHAIN_FORMAT)
    kind = f.get("kind", str)
    d, m = f.get("d", int), f.get("m", int)
    if not 1 <= d <= 3:
        raise DocumentError("dimension must be 1, 2 or 3", path="$.d")
    if m < 1:
        raise DocumentError("modulus must be positive", path="$.m")
    rows = f.get("values", list)
    if kind == "group":
        f.check_keys({"format", "kind", "d", "m", "Q", "on_beta", "on_delta", "z_image", "values"})
        Q = _group_from(f.sub("Q"))
        nq = len(Q)
        ob = _int_list(f.get("on_beta", list), "$.on_beta", 0, nq)
        od = _int_list(f.get("on_delta", list), "$.on_delta", 0, nq)
        z = f.get("z_image", int)
        if not 0 <= z < nq:
            raise DocumentError(f"value {z} out of range", path="$.z_image")
        table = {}
        for i, r in enumerate(rows):
            path = f"$.values[{i}]"
            r = _int_list(r, path)
            if len(r) != d + 1 or any(not 0 <= x < nq for x in r[:d]):
                raise DocumentError(f"row must be {d} elements of Q then an exponent", path=path)
            key = tuple(r[:d])
            if key in table:
                raise DocumentError(f"repeated argument {key}", path=path)
            table[key] = r[d] % m
        return GroupCochain(d, m, QuotientMap(Q, tuple(ob), tuple(od), z), table)
    if kind == "partial":
        f.check_keys({"format", "kind", "d", "m", "values"})
        values = {}
        for i, r in enumerate(rows):
            path = f"$.values[{i}]"
            if not isinstance(r, list) or len(r) != d + 1 or not _is(r[d], int):
                raise DocumentError(f"row must be {d} arrows then an exponent", path=path)
            key = tuple(_parse_arrow(a, f"{path}[{j}]") for j, a in enumerate(r[:d]))
            if key in values:
                raise DocumentError("repeated argument", path=path)
            values[key] = r[d] % m
        return PartialCocycle(d, m, values)
    raise DocumentError("kind must be 'group' or 'partial'", path="$.kind")


# -- run records ----------------------------------------------------------------


@dataclass
class RunRecord:
    command: str
    args: dict[str, Any]
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    exit_code: int = 0

    def to_doc(self) -> dict:
        return {"format": RUN_FORMAT, "command": self.command, "args": self.args,
                "inputs": self.inputs, "outputs": self.outputs, "exit_code": self.exit_code}

    @classmethod
    def from_doc(cls, obj: dict) -> "RunRecord":
        f = _Fields(obj, "$")
        _check_format(f, RUN_FORMAT)
        f.check_keys({"format", "command", "args", "inputs", "outputs", "exit_code"})
        outputs = f.get("outputs", list)
        for i, line in enumerate(outputs):
            if not isinstance(line, str):
                raise DocumentError("expected a string", path=f"$.outputs[{i}]")
        inputs = f.get("inputs", dict)
        for k, v in inputs.items():
            if not isinstance(v, str):
                raise DocumentError("expected a digest string", path=f"$.inputs.{k}")
        return cls(f.get("command", str), f.get("args", dict), inputs, outputs, f.get("exit_code", int))


# -- dispatch ---------------------------------------------------------------------

_PARSERS = {
    COMPLEX_FORMAT: complex_from_doc,
    PARCEL_FORMAT: parcel_from_doc,
    COCHAIN_FORMAT: cochain_from_doc,
    RUN_FORMAT: RunRecord.from_doc,
}


def parse(text: str):
    obj = loads(text)
    tag = obj.get("format")
    if tag not in _PARSERS:
        raise DocumentError(f"unknown format {tag!r}", path="$.format")
    return _PARSERS[tag](obj)


def to_doc(x) -> dict:
    if isinstance(x, StratifiedComplex):
        return complex_to_doc(x)
    if isinstance(x, Gamma2Parcel):
        return parcel_to_doc(x)
    if isinstance(x, (GroupCochain, PartialCocycle)):
        return cochain_to_doc(x)
    if isinstance(x, RunRecord):
        return x.to_doc()
    raise TypeError(f"no document form for {type(x).__name__}")


def render(x) -> str:
    return dumps(to_doc(x))


def canonical(text: str) -> str:
    return render(parse(text))
