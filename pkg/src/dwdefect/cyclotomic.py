"""Exact arithmetic in Z[zeta_m] = Z[x] / (Phi_m(x)).

Polynomials are coefficient tuples, lowest degree first.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple

from .errors import ModulusMismatch, NotARootOfUnity


def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a: Iterable[int], b: Iterable[int]) -> list[int]:
    a, b = list(a), list(b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod_monic(num: Iterable[int], den: Iterable[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of ``num`` by a monic ``den``."""
    num, den = list(num), _trim(list(den))
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    dd = len(den) - 1
    rem = list(num)
    if len(rem) <= dd:
        return [0], rem
    quot = [0] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c:
            quot[k - dd] = c
            for j in range(dd + 1):
                rem[k - dd + j] -= c * den[j]
    return quot, rem[:dd] if dd else [0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m by dividing x^m - 1 by Phi_d for every proper divisor d of m."""
    if m < 1:
        raise ValueError("m must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p, r = poly_divmod_monic(p, cyclotomic_polynomial(d))
            assert not any(r)
    return tuple(_trim(p))


def degree(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce(m: int, coeffs: Iterable[int]) -> tuple[int, ...]:
    phi = cyclotomic_polynomial(m)
    n = len(phi) - 1
    c = list(coeffs)
    if len(c) > n:
        _, c = poly_divmod_monic(c, phi)
    c = c + [0] * (n - len(c))
    return tuple(c)


class CyclotomicInt:
    """An element of Z[zeta_m] stored as its reduced coefficient vector."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[int] = (), *, reduced: bool = False):
        self.m = m
        self.coeffs = tuple(coeffs) if reduced else _reduce(m, coeffs)

    @classmethod
    def from_int(cls, m: int, k: int) -> "CyclotomicInt":
        return cls(m, [k])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CyclotomicInt":
        k %= m
        return cls(m, [0] * k + [1])

    @classmethod
    def from_exponent_counts(cls, m: int, counts: Iterable[int]) -> "CyclotomicInt":
        """sum_k counts[k] * zeta_m^k"""
        return cls(m, list(counts))

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.m, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        if other.m != self.m:
            raise ModulusMismatch(f"Z[zeta_{self.m}] vs Z[zeta_{other.m}]")
        return other

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicInt(self.m, (a + b for a, b in zip(self.coeffs, o.coeffs)), reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.m, (-a for a in self.coeffs), reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicInt(self.m, poly_mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.root_inverse() ** (-k)
        r = CyclotomicInt.from_int(self.m, 1)
        base = self
        while k:
            if k & 1:
                r = r * base
            base = base * base
            k >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(self.m, other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        return f"CyclotomicInt({self.m}, {list(self.coeffs)})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def root_exponent(self) -> int | None:
        """``k`` with ``self == zeta_m^k``, or None."""
        for k in range(self.m):
            if CyclotomicInt.zeta(self.m, k) == self:
                return k
        return None

    def root_inverse(self) -> "CyclotomicInt":
        k = self.root_exponent()
        if k is None:
            raise NotARootOfUnity(f"{self!r} is not a root of unity")
        return CyclotomicInt.zeta(self.m, -k)

    def divisible_by(self, n: int) -> bool:
        return all(c % n == 0 for c in self.coeffs)

    def exact_div(self, n: int) -> "CyclotomicInt":
        if not self.divisible_by(n):
            raise ArithmeticError(f"{self!r} not divisible by {n}")
        return CyclotomicInt(self.m, (c // n for c in self.coeffs), reduced=True)

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(c * z ** k for k, c in enumerate(self.coeffs))


class RootOfUnity(NamedTuple):
    """zeta_m^k with ``k`` in ``range(m)``."""

    m: int
    k: int

    @classmethod
    def of(cls, m: int, k: int) -> "RootOfUnity":
        return cls(m, k % m)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":  # type: ignore[override]
        if other.m != self.m:
            raise ModulusMismatch(f"mu_{self.m} vs mu_{other.m}")
        return RootOfUnity(self.m, (self.k + other.k) % self.m)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.m, (-self.k) % self.m)

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.m, (self.k * e) % self.m)

    def to_cyclotomic(self) -> CyclotomicInt:
        return CyclotomicInt.zeta(self.m, self.k)
