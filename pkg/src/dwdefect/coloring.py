"""C-colorings of a directed triangulation and the counting invariant.

A coloring assigns to each edge an arrow of the fiber its kind dictates
(B, D, I or W) such that on every 2-face, first edge then second edge
composes to the third.  The search is a depth-first assignment with face
propagation: whenever two edges of a face determine the third uniquely it is
set at once, and contradictions prune the branch.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .complex import BULK, DEFECT, DirectedTriangulation, strata_counts
from .errors import DimensionMismatch, NonIntegerInvariant
from .parcel import BETA, DELTA, Gamma2Parcel, ParcelArrow

ALL = "all"
FOREST_IDENTITY = "forest_identity"


@dataclass(frozen=True)
class Coloring:
    """Arrow per edge id of the underlying complex."""

    arrows: tuple[ParcelArrow, ...]

    def __getitem__(self, e: int) -> ParcelArrow:
        return self.arrows[e]

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class SpanningForest:
    roots: tuple[int, ...]
    stratum: tuple[str, ...]
    tree_edges: tuple[tuple[int, ...], ...]

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(e for t in self.tree_edges for e in t)


def build_spanning_forest(t: DirectedTriangulation) -> SpanningForest:
    c = t.base
    dv = c.defect_vertices
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(c.n_vertices)}
    for e, (u, v) in enumerate(c.edges):
        if (u in dv) == (v in dv):
            adj[u].append((v, e))
            adj[v].append((u, e))
    for v in adj:
        adj[v].sort(key=lambda we: (c.order[we[0]], we[0]))
    seen: set[int] = set()
    roots, strata, trees = [], [], []
    by_order = sorted(range(c.n_vertices), key=lambda v: (c.strata[v] != BULK, c.order[v], v))
    for r in by_order:
        if r in seen:
            continue
        seen.add(r)
        tree = []
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w, e in adj[u]:
                if w not in seen:
                    seen.add(w)
                    tree.append(e)
                    queue.append(w)
        roots.append(r)
        strata.append(DEFECT if r in dv else BULK)
        trees.append(tuple(sorted(tree)))
    return SpanningForest(tuple(roots), tuple(strata), tuple(trees))


class _Search:
    """Constraint search over edge assignments with an undo trail."""

    def __init__(self, t: DirectedTriangulation, p: Gamma2Parcel):
        c = t.base
        self.t, self.p = t, p
        self.n_edges = len(c.edges)
        self.kinds = t.edge_kind
        self.domain = [p.size(k) for k in self.kinds]
        faces = t.faces
        # per edge: (role, e1, e2, e3, table, left solver, right solver); the
        # solvers give the unique missing factor, -1 if none, -2 if several
        inc: list[list[tuple]] = [[] for _ in range(self.n_edges)]
        for fi, f in enumerate(faces):
            kind, table = p.composition_table(self.kinds[f.first], self.kinds[f.second])
            if kind != self.kinds[f.third]:
                raise DimensionMismatch(f"face {fi}: composite kind {kind} on a {self.kinds[f.third]} edge")
            n1, n2, n3 = p.size(self.kinds[f.first]), p.size(self.kinds[f.second]), p.size(kind)
            left = [[-1] * n3 for _ in range(n2)]    # left[b][r] = a with a.b = r
            right = [[-1] * n3 for _ in range(n1)]   # right[a][r] = b with a.b = r
            for a in range(n1):
                for b in range(n2):
                    r = table[a][b]
                    left[b][r] = a if left[b][r] == -1 else -2
                    right[a][r] = b if right[a][r] == -1 else -2
            for role, e in enumerate((f.first, f.second, f.third)):
                inc[e].append((role, f.first, f.second, f.third, table, left, right))
        self.incident = inc
        first_face = [len(faces)] * self.n_edges
        for fi, f in enumerate(faces):
            for e in (f.first, f.second, f.third):
                first_face[e] = min(first_face[e], fi)
        self.order = sorted(range(self.n_edges), key=lambda e: (first_face[e], e))

    def _propagate(self, vals: list[int], trail: list[int], start: list[int]) -> bool:
        queue = list(start)
        incident = self.incident
        while queue:
            e = queue.pop()
            for role, e1, e2, e3, table, left, right in incident[e]:
                a, b, r = vals[e1], vals[e2], vals[e3]
                if a >= 0 and b >= 0:
                    want = table[a][b]
                    if r < 0:
                        vals[e3] = want
                        trail.append(e3)
                        queue.append(e3)
                    elif r != want:
                        return False
                elif r >= 0:
                    if a >= 0:
                        x, tgt = right[a][r], e2
                    elif b >= 0:
                        x, tgt = left[b][r], e1
                    else:
                        continue
                    if x == -1:
                        return False
                    if x >= 0:
                        vals[tgt] = x
                        trail.append(tgt)
                        queue.append(tgt)
        return True

    def run(self, visit: Callable[[list[int]], None], preset: dict[int, int] | None = None) -> None:
        vals = [-1] * self.n_edges
        trail: list[int] = []
        if preset:
            for e, x in preset.items():
                vals[e] = x
            if not self._propagate(vals, trail, list(preset)):
                return
        order, domain, n = self.order, self.domain, len(self.order)

        def dfs(pos: int) -> None:
            while pos < n and vals[order[pos]] >= 0:
                pos += 1
            if pos == n:
                visit(vals)
                return
            e = order[pos]
            mark = len(trail)
            for x in range(domain[e]):
                vals[e] = x
                trail.append(e)
                if self._propagate(vals, trail, [e]):
                    dfs(pos + 1)
                while len(trail) > mark:
                    vals[trail.pop()] = -1

        dfs(0)


def _forest_preset(t: DirectedTriangulation, p: Gamma2Parcel) -> dict[int, int]:
    forest = build_spanning_forest(t)
    kinds = t.edge_kind
    out = {}
    for e in forest.edges:
        out[e] = p.identity(BETA if kinds[e] == "B" else DELTA).index
    return out


def _preset(t, p, mode):
    if mode == ALL:
        return None
    if mode == FOREST_IDENTITY:
        return _forest_preset(t, p)
    raise ValueError(f"unknown mode {mode!r}")


def iter_coloring_indices(t: DirectedTriangulation, p: Gamma2Parcel, mode: str = ALL,
                          visit: Callable[[list[int]], None] | None = None) -> None:
    """Call ``visit`` with the live index vector of every coloring (do not keep it)."""
    _Search(t, p).run(visit, _preset(t, p, mode))


def enumerate_colorings(t: DirectedTriangulation, p: Gamma2Parcel,
                        mode: str = ALL) -> Iterator[Coloring]:
    out: list[Coloring] = []
    kinds = t.edge_kind

    def visit(vals):
        out.append(Coloring(tuple(ParcelArrow(k, x) for k, x in zip(kinds, vals))))

    iter_coloring_indices(t, p, mode, visit)
    return iter(out)


def count_colorings(t: DirectedTriangulation, p: Gamma2Parcel, mode: str = ALL) -> int:
    n = 0

    def visit(_):
        nonlocal n
        n += 1

    iter_coloring_indices(t, p, mode, visit)
    return n


def normalization(t: DirectedTriangulation, p: Gamma2Parcel) -> tuple[int, int]:
    """Exponents ``(v_beta - sigma_beta, v_delta - sigma_delta)`` of |B| and |D|."""
    sb, sd, vb, vd = strata_counts(t.base)
    return vb - sb, vd - sd


def normalization_divisor(t: DirectedTriangulation, p: Gamma2Parcel) -> int:
    eb, ed = normalization(t, p)
    return len(p.B) ** eb * len(p.D) ** ed


def counting_invariant(t: DirectedTriangulation, p: Gamma2Parcel, *, check_forest: bool = True) -> int:
    total = count_colorings(t, p, ALL)
    q = Fraction(total, normalization_divisor(t, p))
    if q.denominator != 1:
        raise NonIntegerInvariant(f"{total} colorings not divisible by the normalization")
    if check_forest:
        forest = count_colorings(t, p, FOREST_IDENTITY)
        if forest != q:
            raise NonIntegerInvariant(f"normalized count {q} differs from gauge-fixed count {forest}")
    return int(q)
