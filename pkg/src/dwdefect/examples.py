"""Named example complexes, parcels and cochains."""

from __future__ import annotations

from itertools import product

from .cocycle import GroupCochain, QuotientMap
from .complex import BULK, DEFECT, StratifiedComplex, orient_coherently
from .errors import InvalidInput
from .parcel import (FiniteGroupTable, Gamma2Parcel, build_group_parcel, cyclic_group,
                     direct_product, symmetric_group, trivial_group)

EXAMPLE_NAMES = ("circle_defect_point", "torus_plain", "sphere_equator", "torus_meridian", "lens_like_3d")


def _assemble(d, top, strata, defect=()):
    top = [tuple(sorted(s)) for s in top]
    defect = [tuple(sorted(s)) for s in defect]
    tsign = orient_coherently(top)
    dsign = orient_coherently(defect) if d >= 2 else [1] * len(defect)
    return StratifiedComplex.from_top(d, top, strata, None, defect, tsign, dsign)


def circle_defect_point() -> StratifiedComplex:
    # p = 0 in the defect; the circle runs p -> 1 -> 2 -> p
    return StratifiedComplex.from_top(1, [(0, 1), (1, 2), (2, 0)], [DEFECT, BULK, BULK],
                                      defect=[(0,)])


def torus_plain() -> StratifiedComplex:
    top = [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)]
    top += [(i, (i + 2) % 7, (i + 3) % 7) for i in range(7)]
    return _assemble(2, top, [BULK] * 7)


def sphere_equator() -> StratifiedComplex:
    # poles 0, 1; equator 2-3-4-5
    eq = [2, 3, 4, 5]
    top = []
    for i in range(4):
        a, b = eq[i], eq[(i + 1) % 4]
        top += [(0, a, b), (1, a, b)]
    defect = [(eq[i], eq[(i + 1) % 4]) for i in range(4)]
    return _assemble(2, top, [BULK, BULK] + [DEFECT] * 4, defect)


def torus_meridian(m: int = 3, n: int = 3) -> StratifiedComplex:
    """m x n grid torus with the column ``i = 0`` as a non-separating defect circle."""

    def v(i, j):
        return (i % m) * n + (j % n)

    top = []
    for i, j in product(range(m), range(n)):
        top += [(v(i, j), v(i + 1, j), v(i + 1, j + 1)), (v(i, j), v(i, j + 1), v(i + 1, j + 1))]
    defect = [(v(0, j), v(0, j + 1)) for j in range(n)]
    strata = [DEFECT if k < n else BULK for k in range(m * n)]
    return _assemble(2, top, strata, defect)


def lens_like_3d(n: int = 3) -> StratifiedComplex:
    """S^2 x S^1 as (octahedral sphere) x (n-cycle); the defect is equator x S^1.

    Each prism triangle x circle-edge is cut by the staircase rule using the
    sphere's vertex numbering, so the defect torus is a full subcomplex.
    It is the double of a solid torus along its boundary torus.
    """
    sphere = sphere_equator()

    def v(s, k):
        return s * n + (k % n)

    top = []
    for tri in sphere.top:
        for k in range(n):
            lo, hi = k, k + 1
            for cut in range(3):
                chain = [v(tri[i], lo) for i in range(cut + 1)] + [v(tri[i], hi) for i in range(cut, 3)]
                top.append(tuple(chain))
    defect = []
    for a, b in sphere.defect:
        for k in range(n):
            defect += [(v(a, k), v(a, k + 1), v(b, k + 1)), (v(a, k), v(b, k), v(b, k + 1))]
    strata = [sphere.strata[s] for s in range(6) for _ in range(n)]
    return _assemble(3, top, strata, defect)


def gen_example(name: str) -> StratifiedComplex:
    builders = {
        "circle_defect_point": circle_defect_point,
        "torus_plain": torus_plain,
        "sphere_equator": sphere_equator,
        "torus_meridian": torus_meridian,
        "lens_like_3d": lens_like_3d,
    }
    if name not in builders:
        raise InvalidInput(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
    return builders[name]()


# -- parcels and cochains ----------------------------------------------------

PARCEL_NAMES = ("trivial", "z2_bulk", "s3_bulk", "z2sq_bulk", "z2_defect", "z4_defect", "z2_z2")


def _groups(name: str) -> tuple[FiniteGroupTable, FiniteGroupTable]:
    t = trivial_group()
    return {
        "trivial": (t, t),
        "z2_bulk": (cyclic_group(2), t),
        "s3_bulk": (symmetric_group(3), t),
        "z2sq_bulk": (direct_product(cyclic_group(2), cyclic_group(2)), t),
        "z2_defect": (t, cyclic_group(2)),
        "z4_defect": (t, cyclic_group(4)),
        "z2_z2": (cyclic_group(2), cyclic_group(2)),
    }[name]


def named_parcel(name: str) -> Gamma2Parcel:
    """Group parcels with phi = (e, e, 1) and psi = (e, e, 0)."""
    if name not in PARCEL_NAMES:
        raise InvalidInput(f"unknown parcel {name!r}; choose from {', '.join(PARCEL_NAMES)}")
    gb, gd = _groups(name)
    return build_group_parcel(gb, gd, (gb.identity, gd.identity, 1), (gb.identity, gd.identity, 0))


def z2_cube_cochain(on_beta=(0, 1), on_delta=(0,), z_image=1) -> GroupCochain:
    """(-1)^{abc} on Z/2, reached from G by the given quotient map."""
    q = QuotientMap(cyclic_group(2), tuple(on_beta), tuple(on_delta), z_image)
    return GroupCochain.from_function(3, 2, q, lambda a, b, c: a * b * c)


def cyclic_three_cocycle(n: int, k: int, qmap: QuotientMap) -> GroupCochain:
    """zeta_n^{k a [b + c >= n]}: the standard 3-cocycles of Z/n."""
    return GroupCochain.from_function(3, n, qmap, lambda a, b, c: k * a * ((b + c) >= n))


def bilinear_two_cocycle(n: int, k: int, qmap: QuotientMap) -> GroupCochain:
    """zeta_n^{k a b} on Z/n (a bilinear form, hence a 2-cocycle)."""
    return GroupCochain.from_function(2, n, qmap, lambda a, b: k * a * b)


COCHAIN_NAMES = ("one_d1", "one_d2", "one_d3", "z2_char_1d", "z2_cube", "z2_sign_2d", "z2sq_bilinear", "z4_bilinear")


def named_cochain(name: str, parcel: str) -> GroupCochain:
    """Named cochains; the quotient map depends on the parcel's factor groups."""
    gb, gd = _groups(parcel)
    if name.startswith("one_d"):
        d = int(name[-1])
        q = QuotientMap(trivial_group(), (0,) * len(gb), (0,) * len(gd), 0)
        return GroupCochain.from_function(d, 1, q, lambda *xs: 0)
    if name == "z2_char_1d":
        # the character x -> (-1)^{a + z}, a 1-cocycle
        ob = tuple(range(len(gb))) if len(gb) == 2 else (0,) * len(gb)
        q = QuotientMap(cyclic_group(2), ob, (0,) * len(gd), 1)
        return GroupCochain.from_function(1, 2, q, lambda a: a)
    if name == "z2_cube":
        # a + z on G_beta = Z/2 (or just z when G_beta is trivial)
        ob = tuple(range(len(gb))) if len(gb) == 2 else (0,) * len(gb)
        od = (0,) * len(gd)
        return z2_cube_cochain(ob, od, 1)
    if name == "z2_sign_2d":
        # (-1)^{ab} on Z/2 through the Z-component mod 2 plus either Z/2 factor
        z2 = cyclic_group(2)
        ob = tuple(range(len(gb))) if len(gb) == 2 else (0,) * len(gb)
        od = tuple(range(len(gd))) if len(gd) == 2 else (0,) * len(gd)
        q = QuotientMap(z2, ob, od, 1)
        return GroupCochain.from_function(2, 2, q, lambda a, b: a * b)
    if name == "z2sq_bilinear":
        if len(gb) != 4:
            raise InvalidInput("z2sq_bilinear needs a parcel with G_beta = Z/2 x Z/2")
        q = QuotientMap(gb, tuple(range(4)), (0,) * len(gd), 0)
        # (-1)^{a_1 b_2} with x = 2 a_1 + a_2
        return GroupCochain.from_function(2, 2, q, lambda x, y: (x // 2) * (y % 2))
    if name == "z4_bilinear":
        if len(gd) != 4:
            raise InvalidInput("z4_bilinear needs a parcel with G_delta = Z/4")
        q = QuotientMap(cyclic_group(4), (0,) * len(gb), tuple(range(4)), 0)
        return bilinear_two_cocycle(4, 1, q)
    raise InvalidInput(f"unknown cochain {name!r}; choose from {', '.join(COCHAIN_NAMES)}")


def product_quotient(gbeta: FiniteGroupTable, gdelta: FiniteGroupTable, r: int) -> QuotientMap:
    """G_beta x G_delta x Z -> G_beta x G_delta x Z/r, identity on the finite factors."""
    zr = cyclic_group(r)
    Q = direct_product(direct_product(gbeta, gdelta), zr)
    nd = len(gdelta)
    on_beta = tuple((g * nd + gdelta.identity) * r + 0 for g in range(len(gbeta)))
    on_delta = tuple((gbeta.identity * nd + h) * r + 0 for h in range(nd))
    z_image = (gbeta.identity * nd + gdelta.identity) * r + (1 % r)
    return QuotientMap(Q, on_beta, on_delta, z_image)
