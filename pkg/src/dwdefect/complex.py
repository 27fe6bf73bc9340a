"""Stratified simplicial pairs (defect inside bulk) and directed triangulations.

Simplices are sorted vertex tuples.  An *oriented* simplex is any vertex
sequence; its orientation relative to the sorted tuple is the sign of the
sorting permutation.  Top simplices and defect facets carry a sign saying
whether the sorted tuple is positively oriented.

Boundary convention: deleting the vertex at position ``i`` of an oriented
vertex list gives the facet with sign ``(-1)**i``.  A top simplex is on the
*inbound* side of a defect facet when the orientation it induces on the
facet agrees with the facet's own orientation; mixed edges of inbound
simplices run bulk -> defect, those of outbound simplices defect -> bulk.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import (CyclicTournament, InvalidComplex, NotFlagLike, SideConflict,
                     UnknownFaceConfiguration)
from .foundations import ValidationReport

BULK = "bulk"
DEFECT = "defect"
INBOUND = "inbound"
OUTBOUND = "outbound"

Simplex = tuple[int, ...]


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def orient(seq: Sequence[int], sign: int = 1) -> tuple[Simplex, int]:
    """``(sorted tuple, sign)`` for the oriented simplex ``sign * [seq]``."""
    return tuple(sorted(seq)), sign * perm_sign(seq)


def as_oriented_list(s: Simplex, sign: int) -> tuple[int, ...]:
    """A vertex sequence whose order is the orientation ``sign * [s]``."""
    if sign > 0 or len(s) < 2:
        return tuple(s)
    return (s[1], s[0]) + tuple(s[2:])


def all_faces(top: Iterable[Simplex], d: int) -> tuple[tuple[Simplex, ...], ...]:
    layers: list[set[Simplex]] = [set() for _ in range(d + 1)]
    for s in top:
        for k in range(1, d + 2):
            layers[k - 1].update(combinations(s, k))
    return tuple(tuple(sorted(layer)) for layer in layers)


def facet_signs(s: Simplex) -> list[tuple[Simplex, int]]:
    return [(s[:i] + s[i + 1:], -1 if i % 2 else 1) for i in range(len(s))]


def orient_coherently(simplices: Sequence[Simplex]) -> list[int]:
    """Signs making the pseudo-manifold ``simplices`` coherently oriented.

    Each connected component gets ``+1`` on its first simplex.
    """
    by_facet: dict[Simplex, list[tuple[int, int]]] = defaultdict(list)
    for idx, s in enumerate(simplices):
        for f, e in facet_signs(s):
            by_facet[f].append((idx, e))
    signs = [0] * len(simplices)
    for start in range(len(simplices)):
        if signs[start]:
            continue
        signs[start] = 1
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for f, ea in facet_signs(simplices[a]):
                for b, eb in by_facet[f]:
                    if b == a:
                        continue
                    want = -signs[a] * ea * eb
                    if not signs[b]:
                        signs[b] = want
                        queue.append(b)
                    elif signs[b] != want:
                        raise InvalidComplex("complex is not orientable")
    return signs


@dataclass(frozen=True)
class StratifiedComplex:
    d: int
    strata: tuple[str, ...]
    order: tuple[int, ...]
    simplices: tuple[tuple[Simplex, ...], ...]
    top_orientation: tuple[int, ...]
    defect: tuple[Simplex, ...]
    defect_orientation: tuple[int, ...]

    @classmethod
    def from_top(cls, d: int, top: Iterable[Sequence[int]], strata: Sequence[str],
                 order: Sequence[int] | None = None,
                 defect: Iterable[Sequence[int]] = (),
                 top_orientation: Sequence[int] | None = None,
                 defect_orientation: Sequence[int] | None = None) -> "StratifiedComplex":
        """Build from top simplices and defect facets.

        Each simplex is read as an oriented vertex sequence unless explicit
        signs are given, in which case they refer to the sequence as written.
        Missing orders default to the vertex id rank within each stratum.
        """
        top = [tuple(s) for s in top]
        tsigns = list(top_orientation) if top_orientation is not None else [1] * len(top)
        oriented = sorted(orient(s, e) for s, e in zip(top, tsigns))
        if len({s for s, _ in oriented}) != len(oriented):
            raise InvalidComplex("repeated top simplex")
        dfl = [tuple(s) for s in defect]
        dsigns = list(defect_orientation) if defect_orientation is not None else [1] * len(dfl)
        doriented = sorted(orient(s, e) for s, e in zip(dfl, dsigns))
        if order is None:
            order = _default_order(strata)
        simplices = all_faces([s for s, _ in oriented], d)
        # keep isolated vertices (none expected, but the vertex list is authoritative)
        verts = sorted(set(simplices[0]) | {(v,) for v in range(len(strata))})
        simplices = (tuple(verts),) + simplices[1:]
        return cls(d, tuple(strata), tuple(order), simplices,
                   tuple(e for _, e in oriented),
                   tuple(s for s, _ in doriented), tuple(e for _, e in doriented))

    # -- basic accessors --------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.strata)

    @property
    def top(self) -> tuple[Simplex, ...]:
        return self.simplices[self.d]

    @property
    def edges(self) -> tuple[Simplex, ...]:
        return self.simplices[1] if self.d >= 1 else ()

    def is_defect(self, v: int) -> bool:
        return self.strata[v] == DEFECT

    @cached_property
    def defect_vertices(self) -> frozenset[int]:
        return frozenset(v for v, s in enumerate(self.strata) if s == DEFECT)

    @cached_property
    def simplex_index(self) -> dict[Simplex, tuple[int, int]]:
        return {s: (k, i) for k, layer in enumerate(self.simplices) for i, s in enumerate(layer)}

    @cached_property
    def edge_index(self) -> dict[Simplex, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def defect_sign(self) -> dict[Simplex, int]:
        return dict(zip(self.defect, self.defect_orientation))

    @cached_property
    def defect_subcomplex(self) -> frozenset[Simplex]:
        out = {(v,) for v in self.defect_vertices}
        for s in self.defect:
            for k in range(1, len(s) + 1):
                out.update(combinations(s, k))
        return frozenset(out)

    def oriented_top(self) -> list[tuple[int, ...]]:
        return [as_oriented_list(s, e) for s, e in zip(self.top, self.top_orientation)]

    def oriented_defect(self) -> list[tuple[int, ...]]:
        return [as_oriented_list(s, e) for s, e in zip(self.defect, self.defect_orientation)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(layer) for k, layer in enumerate(self.simplices))

    def defect_euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.defect_subcomplex)

    def with_orientation_flipped(self) -> "StratifiedComplex":
        return StratifiedComplex(self.d, self.strata, self.order, self.simplices,
                                 tuple(-e for e in self.top_orientation),
                                 self.defect, self.defect_orientation)


def _default_order(strata: Sequence[str]) -> list[int]:
    counters: dict[str, int] = defaultdict(int)
    out = []
    for s in strata:
        out.append(counters[s])
        counters[s] += 1
    return out


def relabel(c: StratifiedComplex, perm: Sequence[int]) -> StratifiedComplex:
    """Rename vertex ``v`` to ``perm[v]``; tags and stratum orders travel along."""
    n = c.n_vertices
    strata = [""] * n
    order = [0] * n
    for v in range(n):
        strata[perm[v]] = c.strata[v]
        order[perm[v]] = c.order[v]
    top = [tuple(perm[v] for v in s) for s in c.top]
    dfl = [tuple(perm[v] for v in s) for s in c.defect]
    return StratifiedComplex.from_top(c.d, top, strata, order, dfl,
                                      c.top_orientation, c.defect_orientation)


# -- validation --------------------------------------------------------------


def validate_flag_like(c: StratifiedComplex) -> ValidationReport:
    rep = ValidationReport()
    d, n = c.d, c.n_vertices
    rep.record("dimension", 1 <= d <= 3 and len(c.simplices) == d + 1,
               "dimension must be 1..3 with one simplex list per dimension")
    if not rep.ok:
        return rep

    ok = True
    msg = ""
    seen: set[Simplex] = set()
    for k, layer in enumerate(c.simplices):
        for s in layer:
            if (len(s) != k + 1 or list(s) != sorted(set(s))
                    or any(not (0 <= v < n) for v in s)):
                ok, msg = False, f"malformed {k}-simplex {s}"
            elif s in seen:
                ok, msg = False, f"duplicate simplex {s}"
            seen.add(s)
    rep.record("structure", ok, msg)
    ok = len(c.top_orientation) == len(c.top) and all(e in (1, -1) for e in c.top_orientation)
    ok = ok and len(c.defect_orientation) == len(c.defect) and all(e in (1, -1) for e in c.defect_orientation)
    rep.record("structure", ok, "orientation lists do not match simplex lists")
    rep.record("strata", len(c.order) == n and all(s in (BULK, DEFECT) for s in c.strata),
               "unknown stratum tag or order list of wrong length")
    if not rep.ok:
        return rep
    for tag in (BULK, DEFECT):
        ords = [c.order[v] for v in range(n) if c.strata[v] == tag]
        rep.record("strata", len(ords) == len(set(ords)), f"repeated order index within {tag}")

    missing = [f for k in range(1, d + 1) for s in c.simplices[k]
               for f in combinations(s, k) if f not in seen]
    isolated = [v for v in range(n) if (v,) not in seen]
    rep.record("closed_under_faces", not missing and not isolated,
               f"missing face {missing[0]}" if missing else
               (f"vertex {isolated[0]} not listed" if isolated else ""))

    dv = c.defect_vertices
    bad = [s for s in c.defect if len(s) != d or s not in seen or any(v not in dv for v in s)]
    rep.record("defect_subcomplex", not bad, f"bad defect simplex {bad[0]}" if bad else "")
    if d >= 2:
        covered = {v for s in c.defect for v in s}
        stray = sorted(dv - covered)
        rep.record("defect_subcomplex", not stray, f"defect vertex {stray[0]} in no defect simplex" if stray else "")
    else:
        rep.record("defect_subcomplex", {s[0] for s in c.defect} == set(dv),
                   "defect points and defect-tagged vertices differ")

    sub = c.defect_subcomplex
    flag_bad = None
    for layer in c.simplices:
        for s in layer:
            w = tuple(v for v in s if v in dv)
            if w and w not in sub:
                flag_bad = (s, w)
                break
        if flag_bad:
            break
    rep.record("flag_like", flag_bad is None,
               f"simplex {flag_bad[0]} meets the defect in {flag_bad[1]}, not a face" if flag_bad else "")

    if rep.checks.get("structure") and rep.checks.get("closed_under_faces"):
        _check_pseudomanifold(c, rep)
    return rep


def _check_pseudomanifold(c: StratifiedComplex, rep: ValidationReport) -> None:
    d = c.d
    cofaces: dict[Simplex, list[tuple[int, int]]] = defaultdict(list)
    for idx, s in enumerate(c.top):
        for f, e in facet_signs(s):
            cofaces[f].append((idx, e))
    bad = [f for f in c.simplices[d - 1] if len(cofaces[f]) != 2]
    rep.record("pseudo_manifold", not bad,
               f"{d - 1}-simplex {bad[0]} lies in {len(cofaces[bad[0]])} top simplices" if bad else "")
    incoherent = None
    for f, lst in cofaces.items():
        if len(lst) == 2:
            (a, ea), (b, eb) = lst
            if c.top_orientation[a] * ea != -c.top_orientation[b] * eb:
                incoherent = f
                break
    rep.record("orientation", incoherent is None,
               f"top orientations agree on shared face {incoherent}" if incoherent else "")

    if d >= 2:
        dcof: dict[Simplex, list[tuple[int, int]]] = defaultdict(list)
        for idx, s in enumerate(c.defect):
            for f, e in facet_signs(s):
                dcof[f].append((idx, e))
        bad = [f for f, lst in dcof.items() if len(lst) != 2]
        rep.record("defect_closed", not bad,
                   f"defect {d - 2}-simplex {bad[0]} lies in {len(dcof[bad[0]])} defect simplices" if bad else "")
        incoherent = None
        for f, lst in dcof.items():
            if len(lst) == 2:
                (a, ea), (b, eb) = lst
                if c.defect_orientation[a] * ea != -c.defect_orientation[b] * eb:
                    incoherent = f
                    break
        rep.record("defect_orientation", incoherent is None,
                   f"defect orientations agree on shared face {incoherent}" if incoherent else "")


# -- directed triangulations ---------------------------------------------------


def side_of_defect(c: StratifiedComplex, sigma: int, tau: Simplex) -> str:
    s = c.top[sigma]
    tau = tuple(sorted(tau))
    if tau not in c.defect_sign:
        raise InvalidComplex(f"{tau} is not a defect simplex")
    missing = [i for i, v in enumerate(s) if v not in tau]
    if len(missing) != 1 or s[:missing[0]] + s[missing[0] + 1:] != tau:
        raise InvalidComplex(f"{tau} is not a facet of top simplex {s}")
    induced = c.top_orientation[sigma] * (-1 if missing[0] % 2 else 1)
    return INBOUND if induced == c.defect_sign[tau] else OUTBOUND


class FaceType(str, Enum):
    BULK = "bulk"
    DEFECT = "defect"
    DEFECT_EDGE_INBOUND = "defect_edge_inbound"
    DEFECT_EDGE_OUTBOUND = "defect_edge_outbound"
    BULK_EDGE_RECEIVING = "bulk_edge_receiving"
    BULK_EDGE_EMITTING = "bulk_edge_emitting"


class FaceInfo(NamedTuple):
    type: FaceType
    first: int
    second: int
    third: int


class LongPathForm(NamedTuple):
    kind: str            # "bulk", "outbound" (b..b c a..a) or "inbound" (a..a d b..b)
    k: int | None        # 1-based position of the c or d letter
    letters: str


LETTER_OF_KIND = {"B": "a", "D": "b", "W": "c", "I": "d"}


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class DirectedTriangulation:
    base: StratifiedComplex
    edge_dir: tuple[tuple[int, int], ...]
    long_path: tuple[tuple[int, ...], ...]
    side: tuple[str | None, ...]

    @cached_property
    def edge_kind(self) -> tuple[str, ...]:
        dv = self.base.defect_vertices
        out = []
        for tail, head in self.edge_dir:
            if tail in dv:
                out.append("D" if head in dv else "W")
            else:
                out.append("I" if head in dv else "B")
        return tuple(out)

    @cached_property
    def faces(self) -> tuple[FaceInfo, ...]:
        if self.base.d < 2:
            return ()
        return tuple(face_type(self, i) for i in range(len(self.base.simplices[2])))

    @cached_property
    def long_path_edges(self) -> tuple[tuple[int, ...], ...]:
        ei = self.base.edge_index
        return tuple(tuple(ei[tuple(sorted((lp[i], lp[i + 1])))] for i in range(len(lp) - 1))
                     for lp in self.long_path)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(orientation_sign(self, i) for i in range(len(self.base.top)))


def direct_triangulation(c: StratifiedComplex) -> DirectedTriangulation:
    rep = validate_flag_like(c)
    for name in ("dimension", "structure", "strata", "closed_under_faces", "defect_subcomplex", "flag_like"):
        if not rep.checks.get(name, True):
            raise NotFlagLike(f"{name}: {rep.messages.get(name, 'failed')}")
    for name in ("pseudo_manifold", "orientation", "defect_closed"):
        if not rep.checks.get(name, True):
            raise InvalidComplex(f"{name}: {rep.messages.get(name, 'failed')}")

    dv = c.defect_vertices
    top = c.top
    n_top = len(top)
    seeds: dict[int, str] = {}
    for si, s in enumerate(top):
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            if f in c.defect_sign:
                seeds[si] = side_of_defect(c, si, f)

    uf = _UnionFind(n_top)
    first_with_edge: dict[Simplex, int] = {}
    mixed_simplices = []
    for si, s in enumerate(top):
        mixed = [(u, v) for u, v in combinations(s, 2) if (u in dv) != (v in dv)]
        if mixed:
            mixed_simplices.append(si)
        for e in mixed:
            if e in first_with_edge:
                uf.union(si, first_with_edge[e])
            else:
                first_with_edge[e] = si
    class_side: dict[int, str] = {}
    for si, sd in seeds.items():
        r = uf.find(si)
        if class_side.setdefault(r, sd) != sd:
            raise SideConflict(f"top simplices sharing mixed edges lie on both sides (at {top[si]})")
    side: list[str | None] = [None] * n_top
    for si in mixed_simplices:
        r = uf.find(si)
        if r not in class_side:
            raise SideConflict(f"side of {top[si]} is not determined by any defect facet")
        side[si] = class_side[r]

    edir = []
    for u, v in c.edges:
        if (u in dv) == (v in dv):
            edir.append((u, v) if c.order[u] < c.order[v] else (v, u))
        else:
            sd = side[first_with_edge[(u, v)]]
            bulk_v, def_v = (v, u) if u in dv else (u, v)
            edir.append((bulk_v, def_v) if sd == INBOUND else (def_v, bulk_v))
    edge_set = set(edir)

    paths = []
    for s in top:
        outdeg = {v: sum((v, w) in edge_set for w in s if w != v) for v in s}
        lp = tuple(sorted(s, key=lambda v: -outdeg[v]))
        if sorted(outdeg.values()) != list(range(len(s))):
            raise CyclicTournament(f"edge directions on {s} contain a cycle")
        paths.append(lp)
    return DirectedTriangulation(c, tuple(edir), tuple(paths), tuple(side))


def _local_order(t: DirectedTriangulation, verts: Sequence[int]) -> tuple[int, ...]:
    ei = t.base.edge_index
    edir = t.edge_dir
    outdeg = {v: 0 for v in verts}
    for u, v in combinations(sorted(verts), 2):
        tail, _ = edir[ei[(u, v)]]
        outdeg[tail] += 1
    if sorted(outdeg.values()) != list(range(len(verts))):
        raise CyclicTournament(f"edge directions on {tuple(verts)} contain a cycle")
    return tuple(sorted(verts, key=lambda v: -outdeg[v]))


def face_type(t: DirectedTriangulation, f: int) -> FaceInfo:
    c = t.base
    face = c.simplices[2][f]
    v0, v1, v2 = _local_order(t, face)
    ei = c.edge_index
    e01 = ei[tuple(sorted((v0, v1)))]
    e12 = ei[tuple(sorted((v1, v2)))]
    e02 = ei[tuple(sorted((v0, v2)))]
    dv = c.defect_vertices
    tags = tuple(v in dv for v in (v0, v1, v2))
    table = {
        (False, False, False): FaceType.BULK,
        (True, True, True): FaceType.DEFECT,
        (False, True, True): FaceType.DEFECT_EDGE_INBOUND,
        (True, True, False): FaceType.DEFECT_EDGE_OUTBOUND,
        (False, False, True): FaceType.BULK_EDGE_RECEIVING,
        (True, False, False): FaceType.BULK_EDGE_EMITTING,
    }
    if tags not in table:
        raise UnknownFaceConfiguration(f"face {face} mixes inbound and outbound edges")
    return FaceInfo(table[tags], e01, e12, e02)


def long_path_form(t: DirectedTriangulation, sigma: int) -> LongPathForm:
    kinds = [t.edge_kind[e] for e in t.long_path_edges[sigma]]
    letters = "".join(LETTER_OF_KIND[k] for k in kinds)
    d = len(letters)
    for kind, letter, before, after in (("outbound", "c", "b", "a"), ("inbound", "d", "a", "b")):
        if letter in letters:
            k = letters.index(letter)
            if letters == before * k + letter + after * (d - k - 1):
                return LongPathForm(kind, k + 1, letters)
            raise UnknownFaceConfiguration(f"long path {letters!r} has no recognised form")
    if letters == "a" * d:
        return LongPathForm("bulk", None, letters)
    raise UnknownFaceConfiguration(f"long path {letters!r} has no recognised form")


def orientation_sign(t: DirectedTriangulation, sigma: int) -> int:
    return perm_sign(t.long_path[sigma]) * t.base.top_orientation[sigma]


def strata_counts(c: StratifiedComplex) -> tuple[int, int, int, int]:
    """(bulk components, defect components, bulk vertices, defect vertices)"""
    dv = c.defect_vertices
    uf = _UnionFind(c.n_vertices)
    for u, v in c.edges:
        if (u in dv) == (v in dv):
            uf.union(u, v)
    roots_b = {uf.find(v) for v in range(c.n_vertices) if v not in dv}
    roots_d = {uf.find(v) for v in dv}
    return len(roots_b), len(roots_d), c.n_vertices - len(dv), len(dv)
