"""Partial d-cocycles on a parcel and finite-group cochains pulled back to them.

All scalar values are roots of unity zeta_m^k and are stored as the
exponent ``k`` modulo ``m``; products become sums of exponents, so every
equality here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Sequence

from .errors import DimensionMismatch, DomainCoverageError, InvalidInput, MissingGroupLabel
from .parcel import FiniteGroupTable, Gamma2Parcel, ParcelArrow, Triple, compose

Tuple = tuple[ParcelArrow, ...]


def admissible_tuples(p: Gamma2Parcel, length: int) -> Iterator[Tuple]:
    """Composable tuples of arrows over identities or generators with at
    most one arrow over a generator."""
    B, D, I, W = (p.arrows(k) for k in "BDIW")
    yield from product(B, repeat=length)
    yield from product(D, repeat=length)
    for k in range(length):
        for head in product(B, repeat=k):
            for x in I:
                for tail in product(D, repeat=length - 1 - k):
                    yield head + (x,) + tail
        for head in product(D, repeat=k):
            for y in W:
                for tail in product(B, repeat=length - 1 - k):
                    yield head + (y,) + tail


@dataclass
class PartialCocycle:
    d: int
    m: int
    values: dict[Tuple, int]

    def __call__(self, xs: Sequence[ParcelArrow]) -> int:
        try:
            return self.values[tuple(xs)]
        except KeyError:
            raise DomainCoverageError(f"no value on {tuple(map(str, xs))}") from None

    def check_total(self, p: Gamma2Parcel) -> None:
        for xs in admissible_tuples(p, self.d):
            if xs not in self.values:
                raise DomainCoverageError(f"no value on admissible tuple {tuple(map(str, xs))}")

    def perturbed(self, xs: Tuple, by: int) -> "PartialCocycle":
        vals = dict(self.values)
        vals[xs] = (vals[xs] + by) % self.m
        return PartialCocycle(self.d, self.m, vals)


def constant_cocycle(p: Gamma2Parcel, d: int, m: int = 1, k: int = 0) -> PartialCocycle:
    return PartialCocycle(d, m, {xs: k % m for xs in admissible_tuples(p, d)})


def partial_cocycle_from_function(p: Gamma2Parcel, d: int, m: int,
                                  fn: Callable[[Tuple], int]) -> PartialCocycle:
    return PartialCocycle(d, m, {xs: fn(xs) % m for xs in admissible_tuples(p, d)})


# -- group cochains ---------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Homomorphism G_beta x G_delta x Z -> Q given on the three factors."""

    Q: FiniteGroupTable
    on_beta: tuple[int, ...]
    on_delta: tuple[int, ...]
    z_image: int

    def __call__(self, t: Triple) -> int:
        Q = self.Q
        return Q.mul[Q.mul[self.on_beta[t[0]]][self.on_delta[t[1]]]][Q.power(self.z_image, t[2])]

    def is_homomorphism(self, gbeta: FiniteGroupTable, gdelta: FiniteGroupTable) -> bool:
        Q = self.Q
        if len(self.on_beta) != len(gbeta) or len(self.on_delta) != len(gdelta):
            return False
        for g, f in ((gbeta, self.on_beta), (gdelta, self.on_delta)):
            if any(Q.mul[f[a]][f[b]] != f[g.mul[a][b]] for a in range(len(g)) for b in range(len(g))):
                return False
        images = [set(self.on_beta), set(self.on_delta), {self.z_image}]
        for i in range(3):
            for j in range(i + 1, 3):
                if any(Q.mul[a][b] != Q.mul[b][a] for a in images[i] for b in images[j]):
                    return False
        return True


@dataclass
class GroupCochain:
    d: int
    m: int
    qmap: QuotientMap
    table: dict[tuple[int, ...], int] = field(default_factory=dict)

    @property
    def Q(self) -> FiniteGroupTable:
        return self.qmap.Q

    @classmethod
    def from_function(cls, d: int, m: int, qmap: QuotientMap,
                      fn: Callable[..., int]) -> "GroupCochain":
        n = len(qmap.Q)
        return cls(d, m, qmap, {xs: fn(*xs) % m for xs in product(range(n), repeat=d)})


def _coboundary_exponent(d: int, m: int, xs, value, merge) -> int:
    """Exponent of the alternating (d+1)-term coboundary at ``xs``.

    ``value`` evaluates the cochain on a d-tuple; ``merge(a, b)`` composes.
    """
    total = value(xs[1:])
    for j in range(1, d + 1):
        merged = xs[:j - 1] + (merge(xs[j - 1], xs[j]),) + xs[j + 1:]
        total += value(merged) if j % 2 == 0 else -value(merged)
    total += value(xs[:-1]) if (d + 1) % 2 == 0 else -value(xs[:-1])
    return total % m


def check_group_cocycle(c: GroupCochain) -> bool:
    Q = c.Q
    value = c.table.__getitem__
    merge = lambda a, b: Q.mul[a][b]  # noqa: E731
    return all(_coboundary_exponent(c.d, c.m, xs, value, merge) == 0
               for xs in product(range(len(Q)), repeat=c.d + 1))


def coboundary(d: int, m: int, qmap: QuotientMap, f: dict[tuple[int, ...], int]) -> GroupCochain:
    """The d-cochain delta(f) for a (d-1)-cochain ``f`` on Q."""
    Q = qmap.Q
    merge = lambda a, b: Q.mul[a][b]  # noqa: E731
    value = f.__getitem__ if d > 1 else (lambda xs: f[()])
    table = {}
    for xs in product(range(len(Q)), repeat=d):
        table[xs] = _coboundary_exponent(d - 1, m, xs, value, merge)
    return GroupCochain(d, m, qmap, table)


def pullback(c: GroupCochain, p: Gamma2Parcel) -> PartialCocycle:
    if p.glabel is None:
        raise MissingGroupLabel("parcel carries no group labels")
    q = c.qmap
    gl = p.glabel
    if not q.is_homomorphism(gl.gbeta, gl.gdelta):
        raise InvalidInput("quotient map is not a homomorphism from the parcel's labelling group")
    img = {k: [q(t) for t in gl.labels[k]] for k in "BDIW"}
    values = {}
    for xs in admissible_tuples(p, c.d):
        values[xs] = c.table[tuple(img[a.kind][a.index] for a in xs)]
    return PartialCocycle(c.d, c.m, values)


# -- partial cocycle conditions --------------------------------------------


@dataclass
class CocycleReport:
    condition1: bool
    condition2: bool
    failures1: list[Tuple] = field(default_factory=list)
    failures2: list[Tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.condition1 and self.condition2

    def lines(self) -> list[str]:
        out = []
        for name, ok, fails in (("condition1", self.condition1, self.failures1),
                                ("condition2", self.condition2, self.failures2)):
            line = f"{name}\t{'pass' if ok else 'FAIL'}"
            if fails:
                line += "\tfirst failure: (" + ", ".join(map(str, fails[0])) + ")"
            out.append(line)
        return out


def _merge_in(p: Gamma2Parcel):
    return lambda a, b: compose(a, b, p)


def extended_move_exponent(alpha: PartialCocycle, p: Gamma2Parcel, xs: Tuple) -> int:
    """Exponent of the extended-move product at ``xs = (c0, b1..bd, d_{d+1})``.

    The product is the coboundary of ``(c0, b1..bd)`` with its first factor
    removed, times the coboundary of ``(b1..bd, d_{d+1})`` with its last
    factor removed, both with the sign pattern that starts at ``+1``:

        prod_{l=0}^{d-1} a(c0.., x_l x_{l+1}, ..bd)^{(-1)^l} . a(c0, b1..b_{d-1})^{(-1)^d}
      . a(b2..bd, d) . prod_{l=1}^{d} a(b1.., x_l x_{l+1}, ..d)^{(-1)^l}
    """
    d, m = alpha.d, alpha.m
    merge = _merge_in(p)
    left = xs[:-1]
    right = xs[1:]
    total = 0
    for ell in range(d):
        merged = left[:ell] + (merge(left[ell], left[ell + 1]),) + left[ell + 2:]
        total += alpha(merged) * (-1) ** ell
    total += alpha(left[:-1]) * (-1) ** d
    total += alpha(right[1:])
    for ell in range(1, d + 1):
        i = ell - 1
        merged = right[:i] + (merge(right[i], right[i + 1]),) + right[i + 2:]
        total += alpha(merged) * (-1) ** ell
    return total % m


def extended_tuples(p: Gamma2Parcel, d: int) -> Iterator[Tuple]:
    for c0 in p.arrows("I"):
        for bs in product(p.arrows("D"), repeat=d):
            for dd in p.arrows("W"):
                yield (c0,) + bs + (dd,)


def check_partial_cocycle(alpha: PartialCocycle, p: Gamma2Parcel, *,
                          max_failures: int = 8) -> CocycleReport:
    alpha.check_total(p)
    d, m = alpha.d, alpha.m
    merge = _merge_in(p)
    f1: list[Tuple] = []
    for xs in admissible_tuples(p, d + 1):
        if _coboundary_exponent(d, m, xs, alpha, merge) != 0:
            f1.append(xs)
            if len(f1) >= max_failures:
                break
    f2: list[Tuple] = []
    for xs in extended_tuples(p, d):
        if extended_move_exponent(alpha, p, xs) != 0:
            f2.append(xs)
            if len(f2) >= max_failures:
                break
    return CocycleReport(not f1, not f2, f1, f2)


def d3_eight_term_check(alpha: PartialCocycle, p: Gamma2Parcel) -> bool:
    """The eight-factor relation for d = 3, written out term by term."""
    if alpha.d != 3:
        raise DimensionMismatch(f"eight-term relation needs d = 3, got {alpha.d}")
    a, m = alpha, alpha.m

    def c(x, y):
        return compose(x, y, p)

    for c0 in p.arrows("I"):
        for b1, b2, b3 in product(p.arrows("D"), repeat=3):
            for d4 in p.arrows("W"):
                e = (a((c(c0, b1), b2, b3)) + a((b2, b3, d4))
                     - a((c0, c(b1, b2), b3)) - a((c(b1, b2), b3, d4))
                     + a((c0, b1, c(b2, b3))) + a((b1, c(b2, b3), d4))
                     - a((c0, b1, b2)) - a((b1, b2, c(b3, d4))))
                if e % m:
                    return False
    return True


def restriction_is_sign_valued(alpha: PartialCocycle, p: Gamma2Parcel) -> bool:
    """Whether alpha on defect-only d-tuples takes values in {+1, -1}."""
    m = alpha.m
    return all((2 * alpha(xs)) % m == 0 for xs in product(p.arrows("D"), repeat=alpha.d))


def validate_cochain(c: GroupCochain) -> None:
    n = len(c.Q)
    if c.m < 1:
        raise InvalidInput("modulus must be positive")
    missing = [xs for xs in product(range(n), repeat=c.d) if xs not in c.table]
    if missing:
        raise DomainCoverageError(f"cochain missing value on {missing[0]}")
