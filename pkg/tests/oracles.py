"""Independent brute-force evaluators used as test oracles.

Nothing here reuses the library's search, face typing or long-path code:
colorings are found by plain backtracking that only checks a triangle once
all three of its edges carry arrows, and the path through each top simplex
is recomputed from the edge directions.
"""

from __future__ import annotations

import cmath
from itertools import combinations, permutations, product


def commuting_pairs(g) -> int:
    n = len(g)
    return sum(g.mul[a][b] == g.mul[b][a] for a in range(n) for b in range(n))


def edge_kind(tail: int, head: int, defect: frozenset) -> str:
    return {(False, False): "B", (True, True): "D", (False, True): "I", (True, False): "W"}[
        (tail in defect, head in defect)]


def directed_edges(t) -> dict[tuple[int, int], tuple[int, int]]:
    """sorted edge -> (tail, head)"""
    return {tuple(sorted(e)): e for e in t.edge_dir}


def vertex_path(verts, dirs) -> tuple[int, ...]:
    """Order the vertices of a simplex so every edge points forward."""
    for perm in permutations(verts):
        if all(dirs[tuple(sorted((perm[i], perm[j])))] == (perm[i], perm[j])
               for i in range(len(perm)) for j in range(i + 1, len(perm))):
            return perm
    raise AssertionError(f"no consistent order on {verts}")


def sign_of(seq) -> int:
    s = 1
    for i, j in combinations(range(len(seq)), 2):
        if seq[i] > seq[j]:
            s = -s
    return s


def naive_colorings(t, p) -> list[dict[tuple[int, int], object]]:
    """All colorings as dicts keyed by sorted edge."""
    from dwdefect.parcel import ParcelArrow, compose

    c = t.base
    dv = c.defect_vertices
    dirs = directed_edges(t)
    edges = sorted(dirs, key=lambda e: (max(e), e))  # close triangles on low vertices early
    kinds = {e: edge_kind(*dirs[e], dv) for e in edges}
    triangles = []
    for f in (c.simplices[2] if c.d >= 2 else ()):
        a, b, cc = vertex_path(f, dirs)
        triangles.append((tuple(sorted((a, b))), tuple(sorted((b, cc))), tuple(sorted((a, cc)))))
    pos = {e: i for i, e in enumerate(edges)}
    # check each triangle as soon as its last edge (in list order) is set
    due: dict[int, list] = {}
    for tri in triangles:
        due.setdefault(max(pos[e] for e in tri), []).append(tri)
    out = []
    cur: dict = {}

    def rec(i):
        if i == len(edges):
            out.append(dict(cur))
            return
        e = edges[i]
        for x in range(p.size(kinds[e])):
            cur[e] = ParcelArrow(kinds[e], x)
            if all(compose(cur[f1], cur[f2], p) == cur[f3] for f1, f2, f3 in due.get(i, ())):
                rec(i + 1)
        del cur[e]

    rec(0)
    return out


def naive_state_sum_counts(t, p, alpha) -> list[int]:
    """Exponent histogram of sum over colorings of prod alpha^eps."""
    c = t.base
    dirs = directed_edges(t)
    paths = []
    for s, o in zip(c.top, c.top_orientation):
        path = vertex_path(s, dirs)
        paths.append((path, sign_of(path) * o))
    counts = [0] * alpha.m
    for col in naive_colorings(t, p):
        k = 0
        for path, eps in paths:
            xs = tuple(col[tuple(sorted((path[i], path[i + 1])))] for i in range(len(path) - 1))
            k += eps * alpha.values[xs]
        counts[k % alpha.m] += 1
    return counts


def numeric(counts) -> complex:
    m = len(counts)
    return sum(n * cmath.exp(2j * cmath.pi * k / m) for k, n in enumerate(counts))


def group_cocycle_brute(Q, table: dict, d: int, m: int) -> bool:
    """Written-out coboundary for d = 1, 2, 3."""
    n = len(Q)
    mu = Q.mul
    f = table.__getitem__
    for xs in product(range(n), repeat=d + 1):
        if d == 1:
            a, b = xs
            e = f((b,)) - f((mu[a][b],)) + f((a,))
        elif d == 2:
            a, b, cc = xs
            e = f((b, cc)) - f((mu[a][b], cc)) + f((a, mu[b][cc])) - f((a, b))
        else:
            a, b, cc, dd = xs
            e = (f((b, cc, dd)) - f((mu[a][b], cc, dd)) + f((a, mu[b][cc], dd))
                 - f((a, b, mu[cc][dd])) + f((a, b, cc)))
        if e % m:
            return False
    return True
