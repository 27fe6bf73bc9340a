"""The twisted state sum over C-colorings."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from operator import itemgetter

from .cocycle import PartialCocycle
from .coloring import ALL, iter_coloring_indices, normalization
from .complex import DirectedTriangulation
from .cyclotomic import CyclotomicInt
from .errors import DimensionMismatch, DomainCoverageError
from .parcel import Gamma2Parcel, ParcelArrow


@dataclass(frozen=True)
class StateSumValue:
    """``value / (nb**eb * nd**ed)`` with the divisor kept symbolic."""

    value: CyclotomicInt
    nb: int
    eb: int
    nd: int
    ed: int

    @property
    def divisor(self) -> int:
        return self.nb ** self.eb * self.nd ** self.ed

    def canonical(self) -> tuple[int, tuple[int, ...], int]:
        """``(m, coefficients, denominator)`` of the reduced fraction."""
        den = self.divisor
        g = den
        for c in self.value.coeffs:
            g = gcd(g, c)
        g = g or 1
        return self.value.m, tuple(c // g for c in self.value.coeffs), den // g

    def is_integral(self) -> bool:
        return self.canonical()[2] == 1

    def normalized(self) -> CyclotomicInt:
        return self.value.exact_div(self.divisor)

    def __eq__(self, other):
        if not isinstance(other, StateSumValue):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def to_complex(self) -> complex:
        return self.value.to_complex() / self.divisor

    def __str__(self) -> str:
        m, coeffs, den = self.canonical()
        body = "[" + ",".join(map(str, coeffs)) + "]"
        return f"{body}/{den}" if den != 1 else body


def simplex_weights(t: DirectedTriangulation, p: Gamma2Parcel, alpha: PartialCocycle):
    """Per top simplex: long-path edge ids, sign and an index-tuple lookup table."""
    kinds = t.edge_kind
    cache: dict[tuple[str, ...], dict[tuple[int, ...], int]] = {}
    out = []
    for sigma, edges in enumerate(t.long_path_edges):
        sig = tuple(kinds[e] for e in edges)
        if sig not in cache:
            table = {}
            for xs, k in alpha.values.items():
                if tuple(a.kind for a in xs) == sig:
                    table[tuple(a.index for a in xs)] = k
            cache[sig] = table
        out.append((edges, t.signs[sigma], cache[sig], sig))
    return out


def twisted_state_sum(t: DirectedTriangulation, p: Gamma2Parcel, alpha: PartialCocycle) -> StateSumValue:
    if alpha.d != t.base.d:
        raise DimensionMismatch(f"cocycle has d = {alpha.d}, complex has d = {t.base.d}")
    m = alpha.m
    weights = simplex_weights(t, p, alpha)
    counts = [0] * m
    # split by sign so the inner loop is two plain runs of table lookups
    pos, neg = [], []
    for edges, sign, table, _ in weights:
        if len(edges) == 1:
            table = {k[0]: v for k, v in table.items()}
        (pos if sign > 0 else neg).append((itemgetter(*edges), table))

    def visit(vals):
        try:
            k = 0
            for g, tb in pos:
                k += tb[g(vals)]
            for g, tb in neg:
                k -= tb[g(vals)]
        except KeyError:
            _missing(weights, vals)
        counts[k % m] += 1

    iter_coloring_indices(t, p, ALL, visit)
    eb, ed = normalization(t, p)
    return StateSumValue(CyclotomicInt.from_exponent_counts(m, counts), len(p.B), eb, len(p.D), ed)


def _missing(weights, vals):
    for edges, _, table, sig in weights:
        key = tuple(vals[e] for e in edges)
        if key not in table:
            raise DomainCoverageError(
                "no value on " + str(tuple(str(ParcelArrow(s, i)) for s, i in zip(sig, key))))
    raise AssertionError("lookup failed without a missing key")


def untwisted_value(count: int, t: DirectedTriangulation, p: Gamma2Parcel, m: int = 1) -> StateSumValue:
    eb, ed = normalization(t, p)
    return StateSumValue(CyclotomicInt.from_int(m, count), len(p.B), eb, len(p.D), ed)
