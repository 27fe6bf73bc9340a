"""Regular fiber-finite Gamma_2-parcels as finite tables.

A parcel here has exactly two objects, ``beta`` (bulk) and ``delta``
(defect).  Arrows are only modelled over words of length at most one:

=====  ================  ===============
kind   word              source -> target
=====  ================  ===============
``B``  identity at beta  beta -> beta
``D``  identity at delta delta -> delta
``I``  iota              beta -> delta
``W``  omega             delta -> beta
=====  ================  ===============

Composites over longer words never enter the state sum, so they are not
represented.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

from .errors import InfiniteOrderViolation, InvalidInput, NotComposable, WordTooLong
from .foundations import ValidationReport

BETA = "beta"
DELTA = "delta"
IOTA = "iota"
OMEGA = "omega"

KINDS = ("B", "D", "I", "W")
SOURCE = {"B": BETA, "D": DELTA, "I": BETA, "W": DELTA}
TARGET = {"B": BETA, "D": DELTA, "I": DELTA, "W": BETA}
LETTER = {"B": None, "D": None, "I": IOTA, "W": OMEGA}


@dataclass(frozen=True)
class FiniteGroupTable:
    """Multiplication table on ``range(n)`` with identity and inverse tables.

    Construction does not enforce the group axioms; :meth:`axiom_checks`
    reports on them so that non-groups can be rejected with a reason.
    """

    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def m(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        r = self.identity
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def axiom_checks(self) -> dict[str, bool]:
        n = self.n
        mul = self.mul
        shape = (all(len(row) == n for row in mul) and len(self.inv) == n
                 and all(0 <= x < n for row in mul for x in row)
                 and 0 <= self.identity < n and all(0 <= x < n for x in self.inv))
        if not shape:
            return {"shape": False, "associative": False, "identity": False, "inverses": False}
        e = self.identity
        assoc = all(mul[mul[a][b]][c] == mul[a][mul[b][c]]
                    for a in range(n) for b in range(n) for c in range(n))
        ident = all(mul[e][a] == a and mul[a][e] == a for a in range(n))
        inv = all(mul[a][self.inv[a]] == e and mul[self.inv[a]][a] == e for a in range(n))
        return {"shape": True, "associative": assoc, "identity": ident, "inverses": inv}

    def is_group(self) -> bool:
        return all(self.axiom_checks().values())

    @classmethod
    def from_mul(cls, mul: Sequence[Sequence[int]]) -> "FiniteGroupTable":
        """Derive identity and inverses from a multiplication table."""
        mul = tuple(tuple(r) for r in mul)
        n = len(mul)
        ids = [e for e in range(n) if all(mul[e][a] == a and mul[a][e] == a for a in range(n))]
        if not ids:
            raise InvalidInput("table has no two-sided identity")
        e = ids[0]
        inv = []
        for a in range(n):
            cands = [b for b in range(n) if mul[a][b] == e and mul[b][a] == e]
            if not cands:
                raise InvalidInput(f"element {a} has no inverse")
            inv.append(cands[0])
        return cls(mul, e, tuple(inv))


def trivial_group() -> FiniteGroupTable:
    return FiniteGroupTable(((0,),), 0, (0,))


def cyclic_group(n: int) -> FiniteGroupTable:
    return FiniteGroupTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
                            0, tuple((-a) % n for a in range(n)))


def symmetric_group(k: int) -> FiniteGroupTable:
    """S_k on permutations in lexicographic order; product is "first a, then b"."""
    from itertools import permutations

    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(tuple(index[tuple(b[a[i]] for i in range(k))] for b in perms) for a in perms)
    return FiniteGroupTable.from_mul(mul)


def direct_product(g: FiniteGroupTable, h: FiniteGroupTable) -> FiniteGroupTable:
    """Elements ``(a, b)`` are indexed as ``a * len(h) + b``."""
    nh = len(h)
    n = len(g) * nh
    mul = tuple(
        tuple(g.mul[x // nh][y // nh] * nh + h.mul[x % nh][y % nh] for y in range(n))
        for x in range(n)
    )
    inv = tuple(g.inv[x // nh] * nh + h.inv[x % nh] for x in range(n))
    return FiniteGroupTable(mul, g.identity * nh + h.identity, inv)


@dataclass(frozen=True)
class PathWord:
    source: str
    letters: tuple[str, ...] = ()

    def __post_init__(self):
        if self.source not in (BETA, DELTA):
            raise InvalidInput(f"unknown object {self.source!r}")
        at = self.source
        for letter in self.letters:
            if letter == IOTA and at == BETA:
                at = DELTA
            elif letter == OMEGA and at == DELTA:
                at = BETA
            else:
                raise InvalidInput(f"letter {letter!r} cannot leave {at!r}")

    @property
    def target(self) -> str:
        at = self.source
        for letter in self.letters:
            at = DELTA if letter == IOTA else BETA
        return at

    def __len__(self) -> int:
        return len(self.letters)


def word_of_kind(kind: str) -> PathWord:
    letter = LETTER[kind]
    return PathWord(SOURCE[kind], (letter,) if letter else ())


def kind_of_word(w: PathWord) -> str:
    if len(w) > 1:
        raise WordTooLong(f"word of length {len(w)} has no modelled fiber")
    if not w.letters:
        return "B" if w.source == BETA else "D"
    return "I" if w.letters[0] == IOTA else "W"


class ParcelArrow(NamedTuple):
    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @property
    def source(self) -> str:
        return SOURCE[self.kind]

    @property
    def target(self) -> str:
        return TARGET[self.kind]

    @property
    def word(self) -> PathWord:
        return word_of_kind(self.kind)


Triple = tuple[int, int, int]


@dataclass(frozen=True)
class GroupLabel:
    """Labels of parcel arrows by elements ``(g, h, z)`` of G_beta x G_delta x Z."""

    gbeta: FiniteGroupTable
    gdelta: FiniteGroupTable
    labels: dict[str, tuple[Triple, ...]]

    def mul(self, x: Triple, y: Triple) -> Triple:
        return (self.gbeta.mul[x[0]][y[0]], self.gdelta.mul[x[1]][y[1]], x[2] + y[2])

    def __call__(self, a: ParcelArrow) -> Triple:
        return self.labels[a.kind][a.index]


@dataclass(frozen=True)
class Gamma2Parcel:
    """Two groups ``B``, ``D`` and two biacted sets ``I``, ``W``.

    Action tables: ``i_left[b][x] = b.x``, ``i_right[x][h] = x.h`` for
    ``x`` in I; ``w_left[h][y] = h.y``, ``w_right[y][b] = y.b`` for ``y``
    in W.
    """

    B: FiniteGroupTable
    D: FiniteGroupTable
    n_i: int
    n_w: int
    i_left: tuple[tuple[int, ...], ...]
    i_right: tuple[tuple[int, ...], ...]
    w_left: tuple[tuple[int, ...], ...]
    w_right: tuple[tuple[int, ...], ...]
    glabel: GroupLabel | None = None
    _tables: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def size(self, kind: str) -> int:
        return {"B": len(self.B), "D": len(self.D), "I": self.n_i, "W": self.n_w}[kind]

    def arrows(self, kind: str) -> list[ParcelArrow]:
        return [ParcelArrow(kind, i) for i in range(self.size(kind))]

    def identity(self, obj: str) -> ParcelArrow:
        return ParcelArrow("B", self.B.identity) if obj == BETA else ParcelArrow("D", self.D.identity)

    def composition_table(self, k1: str, k2: str) -> tuple[str, tuple[tuple[int, ...], ...]]:
        """Result kind and table ``t[x][y]`` for composing kind ``k1`` then ``k2``."""
        key = (k1, k2)
        if key not in self._tables:
            tables = {
                ("B", "B"): ("B", self.B.mul),
                ("D", "D"): ("D", self.D.mul),
                ("B", "I"): ("I", self.i_left),
                ("I", "D"): ("I", self.i_right),
                ("D", "W"): ("W", self.w_left),
                ("W", "B"): ("W", self.w_right),
            }
            if key not in tables:
                if TARGET[k1] != SOURCE[k2]:
                    raise NotComposable(f"{k1} ends at {TARGET[k1]}, {k2} starts at {SOURCE[k2]}")
                raise WordTooLong(f"composite of {k1} and {k2} lies over a word of length 2")
            self._tables[key] = tables[key]
        return self._tables[key]


def compose(f: ParcelArrow, g: ParcelArrow, p: Gamma2Parcel) -> ParcelArrow:
    """``f`` followed by ``g``."""
    kind, table = p.composition_table(f.kind, g.kind)
    return ParcelArrow(kind, table[f.index][g.index])


def fiber_size(p: Gamma2Parcel, w: PathWord) -> int:
    return p.size(kind_of_word(w))


def _action_table_ok(table, rows: int, cols: int, values: int) -> bool:
    return (len(table) == rows and all(len(r) == cols for r in table)
            and all(0 <= v < values for r in table for v in r))


def validate_parcel(p: Gamma2Parcel) -> ValidationReport:
    rep = ValidationReport()
    for name, g in (("B", p.B), ("D", p.D)):
        checks = g.axiom_checks()
        rep.record(f"{name}_table_shape", checks["shape"], "malformed multiplication table")
        if not checks["shape"]:
            continue
        rep.record(f"{name}_associative", checks["associative"])
        rep.record(f"{name}_identity", checks["identity"])
        # A conservative functor to the path category forces identity fibers to be groups.
        rep.record("conservative", checks["inverses"] and checks["identity"],
                   f"fiber over Id of {name} is not a group")

    rep.record("surjective_on_arrows", p.n_i > 0 and p.n_w > 0, "fiber over iota or omega is empty")
    nb, nd, ni, nw = len(p.B), len(p.D), p.n_i, p.n_w
    shapes = {
        "i_left": _action_table_ok(p.i_left, nb, ni, ni),
        "i_right": _action_table_ok(p.i_right, ni, nd, ni),
        "w_left": _action_table_ok(p.w_left, nd, nw, nw),
        "w_right": _action_table_ok(p.w_right, nw, nb, nw),
    }
    for k, ok in shapes.items():
        rep.record(f"{k}_shape", ok, "action table has wrong shape or out-of-range entries")
    groups_ok = rep.checks.get("B_table_shape") and rep.checks.get("D_table_shape")
    if not (all(shapes.values()) and groups_ok):
        return rep

    B, D = p.B, p.D
    rep.record("action_identity",
               all(p.i_left[B.identity][x] == x and p.i_right[x][D.identity] == x for x in range(ni))
               and all(p.w_left[D.identity][y] == y and p.w_right[y][B.identity] == y for y in range(nw)),
               "identity does not act trivially")
    rep.record("action_left_assoc",
               all(p.i_left[B.mul[g][h]][x] == p.i_left[g][p.i_left[h][x]]
                   for g in range(nb) for h in range(nb) for x in range(ni))
               and all(p.w_left[D.mul[g][h]][y] == p.w_left[g][p.w_left[h][y]]
                       for g in range(nd) for h in range(nd) for y in range(nw)),
               "left action not associative")
    rep.record("action_right_assoc",
               all(p.i_right[p.i_right[x][g]][h] == p.i_right[x][D.mul[g][h]]
                   for g in range(nd) for h in range(nd) for x in range(ni))
               and all(p.w_right[p.w_right[y][g]][h] == p.w_right[y][B.mul[g][h]]
                       for g in range(nb) for h in range(nb) for y in range(nw)),
               "right action not associative")
    rep.record("actions_commute",
               all(p.i_right[p.i_left[b][x]][h] == p.i_left[b][p.i_right[x][h]]
                   for b in range(nb) for x in range(ni) for h in range(nd))
               and all(p.w_right[p.w_left[h][y]][b] == p.w_left[h][p.w_right[y][b]]
                       for h in range(nd) for y in range(nw) for b in range(nb)),
               "left and right actions do not commute")

    if p.glabel is not None:
        _validate_glabel(p, rep)
    return rep


def _validate_glabel(p: Gamma2Parcel, rep: ValidationReport) -> None:
    gl = p.glabel
    sizes_ok = all(len(gl.labels.get(k, ())) == p.size(k) for k in KINDS)
    rep.record("glabel_total", sizes_ok, "glabel does not cover every arrow")
    if not sizes_ok:
        return
    in_range = all(0 <= t[0] < len(gl.gbeta) and 0 <= t[1] < len(gl.gdelta)
                   for k in KINDS for t in gl.labels[k])
    rep.record("glabel_range", in_range, "glabel triple outside G_beta x G_delta x Z")
    if not in_range:
        return
    ok = True
    for k1, k2 in (("B", "B"), ("D", "D"), ("B", "I"), ("I", "D"), ("D", "W"), ("W", "B")):
        kind, table = p.composition_table(k1, k2)
        for x, y in product(range(p.size(k1)), range(p.size(k2))):
            lhs = gl.labels[kind][table[x][y]]
            rhs = gl.mul(gl.labels[k1][x], gl.labels[k2][y])
            if lhs != rhs:
                ok = False
                break
    rep.record("glabel_equivariant", ok, "glabel does not respect composition")
    inj = (len(set(gl.labels["B"])) == len(p.B) and len(set(gl.labels["D"])) == len(p.D))
    rep.record("glabel_injective", inj, "glabel not injective on an identity fiber")


def build_group_parcel(gbeta: FiniteGroupTable, gdelta: FiniteGroupTable,
                       phi: Triple, psi: Triple) -> Gamma2Parcel:
    """Parcel inside G = G_beta x G_delta x Z generated by the two finite
    factors and the elements ``phi`` (over iota) and ``psi`` (over omega).

    I is the double coset G_beta.phi.G_delta and W is G_delta.psi.G_beta,
    with the actions given by multiplication in G.
    """
    if phi[2] + psi[2] == 0:
        raise InfiniteOrderViolation("phi*psi has Z-component 0, so it is not of infinite order")
    gl = GroupLabel(gbeta, gdelta, {})
    b_elems = [(g, gdelta.identity, 0) for g in range(len(gbeta))]
    d_elems = [(gbeta.identity, h, 0) for h in range(len(gdelta))]

    def coset(left, mid, right):
        return sorted({gl.mul(gl.mul(a, mid), c) for a in left for c in right})

    i_elems = coset(b_elems, phi, d_elems)
    w_elems = coset(d_elems, psi, b_elems)
    i_idx = {t: k for k, t in enumerate(i_elems)}
    w_idx = {t: k for k, t in enumerate(w_elems)}
    i_left = tuple(tuple(i_idx[gl.mul(b, x)] for x in i_elems) for b in b_elems)
    i_right = tuple(tuple(i_idx[gl.mul(x, h)] for h in d_elems) for x in i_elems)
    w_left = tuple(tuple(w_idx[gl.mul(h, y)] for y in w_elems) for h in d_elems)
    w_right = tuple(tuple(w_idx[gl.mul(y, b)] for b in b_elems) for y in w_elems)
    labels = {"B": tuple(b_elems), "D": tuple(d_elems), "I": tuple(i_elems), "W": tuple(w_elems)}
    return Gamma2Parcel(gbeta, gdelta, len(i_elems), len(w_elems), i_left, i_right,
                        w_left, w_right, GroupLabel(gbeta, gdelta, labels))


def trivial_parcel() -> Gamma2Parcel:
    t = trivial_group()
    return build_group_parcel(t, t, (0, 0, 1), (0, 0, 0))
