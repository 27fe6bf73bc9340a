"""Bistellar moves in the bulk, suspended moves at the defect, and a seeded fuzzer.

A move is written ``(F, A)`` with ``|F| + |A| = d + 2`` (bulk) or
``|F| + |A| = d + 1`` (a move inside the (d-1)-dimensional defect).  It
applies when the star of ``F`` is exactly ``{F + A - a : a in A}`` and
replaces it by ``{A + F - f : f in F}``.  An empty ``A`` stands for one new
vertex, so ``(top simplex, ())`` is the stellar subdivision and its inverse is
``((v,), link of v)``.

The suspended version of a defect move acts on the top simplices
``u * tau`` and ``w * tau`` flanking each defect facet ``tau`` in the star,
where ``u`` is the common inbound apex and ``w`` the common outbound one.
"""

from __future__ import annotations

import hashlib
import random
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Sequence

from .cocycle import PartialCocycle, check_partial_cocycle
from .coloring import counting_invariant
from .complex import (BULK, DEFECT, INBOUND, OUTBOUND, DirectedTriangulation, Simplex,
                      StratifiedComplex, direct_triangulation, facet_signs, long_path_form,
                      side_of_defect, validate_flag_like)
from .errors import (DwDefectError, InvalidComplex, InvalidInput, NotApplicable,
                     SideStructureViolation, StratumViolation)
from .parcel import Gamma2Parcel
from .statesum import StateSumValue, twisted_state_sum

BULK_PACHNER = "bulk_pachner"
EXTENDED_DEFECT = "extended_defect"
NEW = -1


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    face: tuple[int, ...]
    opposite: tuple[int, ...] = ()
    position: int | None = None

    @property
    def creates_vertex(self) -> bool:
        return not self.opposite

    @property
    def removes_vertex(self) -> bool:
        return len(self.face) == 1 and bool(self.opposite)

    def arity(self, d: int) -> tuple[int, int]:
        """(simplices removed, simplices added) in the stratum being moved."""
        return (len(self.opposite) or 1), len(self.face)

    def label(self, d: int) -> str:
        k, l = self.arity(d)
        if self.kind == EXTENDED_DEFECT:
            k, l = 2 * k, 2 * l
        opp = ",".join(map(str, self.opposite)) if self.opposite else "new"
        pos = "" if self.position is None else f" pos={self.position}"
        return f"{self.kind} {k}->{l} F=({','.join(map(str, self.face))}) A=({opp}){pos}"


def _stars(c: StratifiedComplex, simplices: Sequence[Simplex]) -> dict[int, list[int]]:
    by_vertex: dict[int, list[int]] = defaultdict(list)
    for i, s in enumerate(simplices):
        for v in s:
            by_vertex[v].append(i)
    return by_vertex


def _containing(simplices: Sequence[Simplex], by_vertex, face: Simplex) -> list[int]:
    cands = set(by_vertex.get(face[0], ()))
    for v in face[1:]:
        cands &= set(by_vertex.get(v, ()))
    return sorted(cands)


def _coherent_extension(simplices: list[Simplex], known: dict[int, int]) -> list[int]:
    """Extend known orientation signs coherently along shared facets."""
    by_facet: dict[Simplex, list[tuple[int, int]]] = defaultdict(list)
    for i, s in enumerate(simplices):
        for f, e in facet_signs(s):
            by_facet[f].append((i, e))
    signs = [0] * len(simplices)
    queue = deque()
    for i, e in known.items():
        signs[i] = e
        queue.append(i)
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
                    raise NotApplicable("result is not coherently orientable")
    if not all(signs):
        raise NotApplicable("new simplices are not connected to the rest of the complex")
    return signs


def _rebuild(c: StratifiedComplex, remove_top: set[Simplex], add_top: list[Simplex],
             remove_defect: set[Simplex] = frozenset(), add_defect: Sequence[Simplex] = (),
             new_stratum: str | None = None, position: int | None = None,
             drop_vertex: int | None = None) -> StratifiedComplex:
    strata = list(c.strata)
    order = list(c.order)
    if new_stratum is not None:
        same = [v for v in range(len(strata)) if strata[v] == new_stratum]
        pos = len(same) if position is None else position
        if not 0 <= pos <= len(same):
            raise NotApplicable(f"insertion position {pos} outside 0..{len(same)}")
        for v in same:
            if order[v] >= pos:
                order[v] += 1
        strata.append(new_stratum)
        order.append(pos)

    old = dict(zip(c.top, c.top_orientation))
    top = [s for s in c.top if s not in remove_top]
    known = {i: old[s] for i, s in enumerate(top)}
    top += [tuple(sorted(s)) for s in add_top]
    tsigns = _coherent_extension(top, known)

    dold = dict(zip(c.defect, c.defect_orientation))
    dfl = [s for s in c.defect if s not in remove_defect]
    dknown = {i: dold[s] for i, s in enumerate(dfl)}
    dfl += [tuple(sorted(s)) for s in add_defect]
    if c.d >= 2 and dfl:
        dsigns = _coherent_extension(dfl, dknown) if dknown else None
        if dsigns is None:
            raise NotApplicable("defect would lose every oriented facet")
    else:
        dsigns = [dold.get(s, 1) for s in dfl]

    if drop_vertex is not None:
        if any(drop_vertex in s for s in top) or any(drop_vertex in s for s in dfl):
            raise NotApplicable(f"vertex {drop_vertex} still in use")
        tag, o = strata[drop_vertex], order[drop_vertex]
        for v in range(len(strata)):
            if strata[v] == tag and order[v] > o:
                order[v] -= 1
        del strata[drop_vertex]
        del order[drop_vertex]

        def shift(s):
            return tuple(v - (v > drop_vertex) for v in s)

        top = [shift(s) for s in top]
        dfl = [shift(s) for s in dfl]
    return StratifiedComplex.from_top(c.d, top, strata, order, dfl, tsigns, dsigns)


def _direct_or_raise(c: StratifiedComplex, exc: type[NotApplicable]) -> DirectedTriangulation:
    rep = validate_flag_like(c)
    if not rep.ok:
        if not rep.checks.get("flag_like", True) or not rep.checks.get("defect_subcomplex", True):
            raise StratumViolation("result is not flag-like: " + "; ".join(rep.failures()))
        raise NotApplicable("result is not a valid complex: " + "; ".join(rep.failures()))
    try:
        t = direct_triangulation(c)
        t.faces
        for s in range(len(c.top)):
            long_path_form(t, s)
    except DwDefectError as e:
        raise exc(f"result cannot be directed: {e}") from e
    return t


def _check_pair(c: StratifiedComplex, face: tuple[int, ...], opposite: tuple[int, ...], total: int) -> None:
    if list(face) != sorted(set(face)) or list(opposite) != sorted(set(opposite)):
        raise NotApplicable("face and opposite must be sorted vertex lists without repeats")
    if any(not 0 <= v < c.n_vertices for v in face + opposite):
        raise NotApplicable("vertex id out of range")
    if set(face) & set(opposite):
        raise NotApplicable("face and opposite share a vertex")
    if opposite and len(face) + len(opposite) != total:
        raise NotApplicable(f"|F| + |A| must be {total}")


def apply_bulk_pachner(t: DirectedTriangulation, m: MoveSpec) -> DirectedTriangulation:
    c = t.base
    d = c.d
    if m.kind != BULK_PACHNER:
        raise NotApplicable(f"not a bulk move: {m.kind}")
    F, A = tuple(m.face), tuple(m.opposite)
    _check_pair(c, F, A, d + 2)
    if F not in c.simplex_index:
        raise NotApplicable(f"{F} is not a simplex")
    if not A and len(F) != d + 1:
        raise NotApplicable("a new vertex can only subdivide a top simplex")
    if A and A in c.simplex_index:
        raise NotApplicable(f"{A} is already a simplex; the result would not be simplicial")
    star = {s for s in c.top if set(F) <= set(s)}
    expected = {F} if not A else {tuple(sorted(set(F) | (set(A) - {a}))) for a in A}
    if star != expected:
        raise NotApplicable(f"star of {F} is not the before-configuration of this move")
    sub = c.defect_subcomplex
    dset = set(c.defect)
    for k, layer in enumerate(c.simplices):
        for s in layer:
            if set(F) <= set(s) and (s in sub or s in dset) and A:
                raise StratumViolation(f"move removes defect simplex {s}")
    new_v = c.n_vertices
    A_eff = A if A else (new_v,)
    added = [tuple(sorted(set(A_eff) | (set(F) - {f}))) for f in F]
    if any(s in c.simplex_index for s in added):
        raise NotApplicable("after-configuration repeats an existing simplex")
    drop = F[0] if len(F) == 1 and A else None
    new = _rebuild(c, star, added, new_stratum=BULK if not A else None,
                   position=m.position, drop_vertex=drop)
    return _direct_or_raise(new, StratumViolation)


def apply_extended_move(t: DirectedTriangulation, m: MoveSpec) -> DirectedTriangulation:
    c = t.base
    d = c.d
    if m.kind != EXTENDED_DEFECT:
        raise NotApplicable(f"not an extended move: {m.kind}")
    if d < 2:
        raise NotApplicable("extended moves need a defect of positive dimension")
    F, A = tuple(m.face), tuple(m.opposite)
    _check_pair(c, F, A, d + 1)
    if F not in c.defect_subcomplex:
        raise NotApplicable(f"{F} is not a defect simplex")
    if not A and len(F) != d:
        raise NotApplicable("a new defect vertex can only subdivide a defect facet")
    if any(v not in c.defect_vertices for v in A):
        raise NotApplicable("opposite vertices must lie in the defect")
    if A and A in c.simplex_index:
        raise NotApplicable(f"{A} is already a simplex; the result would not be simplicial")
    dstar = {s for s in c.defect if set(F) <= set(s)}
    expected = {F} if not A else {tuple(sorted(set(F) | (set(A) - {a}))) for a in A}
    if dstar != expected:
        raise NotApplicable(f"defect star of {F} is not the before-configuration of this move")

    top_idx = {s: i for i, s in enumerate(c.top)}
    inbound, outbound = set(), set()
    flank = set()
    for tau in dstar:
        cof = [s for s in c.top if set(tau) <= set(s)]
        sides = {}
        for s in cof:
            sides[side_of_defect(c, top_idx[s], tau)] = (set(s) - set(tau)).pop()
        if len(cof) != 2 or set(sides) != {INBOUND, OUTBOUND}:
            raise SideStructureViolation(f"defect simplex {tau} is not flanked by one inbound and one outbound simplex")
        inbound.add(sides[INBOUND])
        outbound.add(sides[OUTBOUND])
        flank.update(cof)
    if len(inbound) != 1 or len(outbound) != 1:
        raise NotApplicable("flanking simplices do not share suspension apexes")
    u, w = inbound.pop(), outbound.pop()
    star = {s for s in c.top if set(F) <= set(s)}
    if star != flank:
        raise NotApplicable(f"star of {F} is larger than the suspended configuration")
    new_v = c.n_vertices
    A_eff = A if A else (new_v,)
    new_defect = [tuple(sorted(set(A_eff) | (set(F) - {f}))) for f in F]
    added = [tuple(sorted(set(s) | {apex})) for s in new_defect for apex in (u, w)]
    if any(s in c.simplex_index for s in new_defect + added):
        raise NotApplicable("after-configuration repeats an existing simplex")
    drop = F[0] if len(F) == 1 and A else None
    new = _rebuild(c, star, added, dstar, new_defect, new_stratum=DEFECT if not A else None,
                   position=m.position, drop_vertex=drop)
    nt = _direct_or_raise(new, NotApplicable)
    nc = nt.base
    shift = (lambda v: v - (v > drop)) if drop is not None else (lambda v: v)
    nidx = {s: i for i, s in enumerate(nc.top)}
    for s in new_defect:
        s2 = tuple(sorted(map(shift, s)))
        for apex, want in ((u, INBOUND), (w, OUTBOUND)):
            sigma = nidx[tuple(sorted(s2 + (shift(apex),)))]
            if side_of_defect(nc, sigma, s2) != want:
                raise SideStructureViolation(f"suspension apex {apex} changed side")
    return nt


def apply_move(t: DirectedTriangulation, m: MoveSpec) -> DirectedTriangulation:
    if m.kind == BULK_PACHNER:
        return apply_bulk_pachner(t, m)
    if m.kind == EXTENDED_DEFECT:
        return apply_extended_move(t, m)
    raise InvalidInput(f"unknown move kind {m.kind!r}")


def inverse_move(before: StratifiedComplex, m: MoveSpec) -> MoveSpec:
    """The move undoing ``m``; vertex ids refer to the complex after ``m``."""
    if m.creates_vertex:
        return MoveSpec(m.kind, (before.n_vertices,), tuple(m.face))
    if m.removes_vertex:
        v = m.face[0]
        shifted = tuple(x - (x > v) for x in m.opposite)
        return MoveSpec(m.kind, shifted, (), before.order[v])
    return MoveSpec(m.kind, tuple(m.opposite), tuple(m.face))


def candidate_moves(t: DirectedTriangulation, families: Sequence[str] = (BULK_PACHNER, EXTENDED_DEFECT)) -> list[MoveSpec]:
    """Moves whose star has the right shape; the remaining checks happen on application."""
    c = t.base
    d = c.d
    out: list[MoveSpec] = []
    if BULK_PACHNER in families:
        by_v = _stars(c, c.top)
        sub = c.defect_subcomplex
        for layer in c.simplices:
            for F in layer:
                if F in sub:
                    continue
                if len(F) == d + 1:
                    out.append(MoveSpec(BULK_PACHNER, F))
                    continue
                star = _containing(c.top, by_v, F)
                A = sorted({v for i in star for v in c.top[i]} - set(F))
                if len(A) == d + 2 - len(F) and len(star) == len(A):
                    out.append(MoveSpec(BULK_PACHNER, F, tuple(A)))
    if EXTENDED_DEFECT in families and d >= 2:
        by_v = _stars(c, c.defect)
        for F in sorted(c.defect_subcomplex):
            if len(F) == d:
                out.append(MoveSpec(EXTENDED_DEFECT, F))
                continue
            star = _containing(c.defect, by_v, F)
            A = sorted({v for i in star for v in c.defect[i]} - set(F))
            if len(A) == d + 1 - len(F) and len(star) == len(A):
                out.append(MoveSpec(EXTENDED_DEFECT, F, tuple(A)))
    return out


# -- fuzzing -------------------------------------------------------------------


def value_digest(value) -> str:
    return hashlib.sha256(str(value).encode()).hexdigest()[:12]


@dataclass
class FuzzStep:
    index: int
    move: str
    status: str
    n_vertices: int
    n_top: int
    invariant: int | None = None
    state_sum: StateSumValue | None = None

    def line(self) -> str:
        z = "-" if self.state_sum is None else str(self.state_sum)
        n = "-" if self.invariant is None else str(self.invariant)
        dig = value_digest((n, z))
        return f"{self.index}\t{self.move}\t{self.status}\tV={self.n_vertices}\tT={self.n_top}\tN={n}\tZ={z}\t{dig}"


@dataclass
class FuzzReport:
    seed: int
    steps: list[FuzzStep] = field(default_factory=list)
    final: DirectedTriangulation | None = None

    @property
    def applied(self) -> int:
        return sum(s.status == "applied" for s in self.steps[1:])

    @property
    def applied_kinds(self) -> set[str]:
        return {s.move.split()[0] for s in self.steps[1:] if s.status == "applied"}

    def values(self) -> list[tuple[int | None, StateSumValue | None]]:
        return [(s.invariant, s.state_sum) for s in self.steps if s.status in ("initial", "applied")]

    @property
    def invariant_constant(self) -> bool:
        return len({v[0] for v in self.values()}) == 1

    @property
    def state_sum_constant(self) -> bool:
        return len({v[1] for v in self.values()}) == 1

    @property
    def ok(self) -> bool:
        return self.invariant_constant and self.state_sum_constant

    def lines(self) -> list[str]:
        head = ["step\tmove\tstatus\tvertices\ttop\tinvariant\tstate_sum\tdigest"]
        tail = [f"# seed={self.seed} applied={self.applied} invariant_constant={self.invariant_constant} "
                f"state_sum_constant={self.state_sum_constant} result={'pass' if self.ok else 'FAIL'}"]
        return head + [s.line() for s in self.steps] + tail


def _classify(m: MoveSpec) -> str:
    if m.creates_vertex:
        return "create"
    if m.removes_vertex:
        return "remove"
    return "flip"


def fuzz_invariance(t: DirectedTriangulation, p: Gamma2Parcel, alpha: PartialCocycle | None,
                    seed: int, n_moves: int, *,
                    families: Sequence[str] = (BULK_PACHNER, EXTENDED_DEFECT),
                    max_vertices: int | None = None, max_attempts: int | None = None,
                    require_cocycle: bool = True, track_invariant: bool = True) -> FuzzReport:
    """Apply ``n_moves`` random applicable moves, recomputing values after each.

    A random choice picks a family, then a move class (create, flip, remove)
    among those with candidates, then a candidate; inapplicable picks are
    logged and skipped.  ``max_vertices`` stops vertex-creating moves once the
    complex is that large.
    """
    if alpha is not None and require_cocycle and not check_partial_cocycle(alpha, p).ok:
        raise InvalidInput("cocycle fails the partial-cocycle conditions")
    rng = random.Random(seed)
    rep = FuzzReport(seed)
    d = t.base.d

    def evaluate(tt):
        n = counting_invariant(tt, p) if track_invariant else None
        z = twisted_state_sum(tt, p, alpha) if alpha is not None else None
        return n, z

    n0, z0 = evaluate(t)
    rep.steps.append(FuzzStep(0, "-", "initial", t.base.n_vertices, len(t.base.top), n0, z0))
    attempts = 0
    limit = max_attempts if max_attempts is not None else 50 * max(n_moves, 1)
    step = 0
    while rep.applied < n_moves and attempts < limit:
        attempts += 1
        step += 1
        cands = candidate_moves(t, families)
        if max_vertices is not None and t.base.n_vertices >= max_vertices:
            cands = [m for m in cands if not m.creates_vertex]
        if not cands:
            rep.steps.append(FuzzStep(step, "-", "skipped: no candidate moves", t.base.n_vertices, len(t.base.top)))
            break
        fams = sorted({m.kind for m in cands})
        fam = rng.choice(fams)
        pool = [m for m in cands if m.kind == fam]
        classes = sorted({_classify(m) for m in pool})
        cls = rng.choice(classes)
        pool = [m for m in pool if _classify(m) == cls]
        m = rng.choice(pool)
        if m.creates_vertex:
            tag = BULK if m.kind == BULK_PACHNER else DEFECT
            size = sum(1 for s in t.base.strata if s == tag)
            m = MoveSpec(m.kind, m.face, m.opposite, rng.randint(0, size))
        try:
            nt = apply_move(t, m)
        except NotApplicable as e:
            rep.steps.append(FuzzStep(step, m.label(d), f"skipped: {e.code}", t.base.n_vertices, len(t.base.top)))
            continue
        t = nt
        n, z = evaluate(t)
        rep.steps.append(FuzzStep(step, m.label(d), "applied", t.base.n_vertices, len(t.base.top), n, z))
    rep.final = t
    return rep
