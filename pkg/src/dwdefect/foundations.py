"""Finite preorders, their decomposition into an equivalence plus a poset,
and the small report type shared by the validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import InvalidPoset, NotReflexive, NotTransitive

Pair = tuple[int, int]


@dataclass
class ValidationReport:
    """Named pass/fail checks with an optional message per failed check."""

    checks: dict[str, bool] = field(default_factory=dict)
    messages: dict[str, str] = field(default_factory=dict)

    def record(self, name: str, ok: bool, message: str = "") -> bool:
        prev = self.checks.get(name, True)
        self.checks[name] = prev and ok
        if not ok and message and name not in self.messages:
            self.messages[name] = message
        return ok

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def lines(self) -> list[str]:
        out = []
        for name, ok in self.checks.items():
            msg = self.messages.get(name, "")
            out.append(f"{name}\t{'pass' if ok else 'FAIL'}" + (f"\t{msg}" if msg else ""))
        return out


@dataclass(frozen=True)
class FinitePreorder:
    n: int
    rel: frozenset[Pair]

    @property
    def carrier(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class PosetOnClasses:
    """A partition of ``range(n)`` with a partial order on the blocks.

    Blocks are keyed by their minimum member.
    """

    n: int
    classes: dict[int, frozenset[int]]
    order: frozenset[Pair]

    def class_of(self, a: int) -> int:
        for cid, members in self.classes.items():
            if a in members:
                return cid
        raise KeyError(a)


def reflexive_transitive_closure(n: int, pairs) -> FinitePreorder:
    """Warshall closure of ``pairs`` on ``range(n)``."""
    reach = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        reach[a][b] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return FinitePreorder(n, frozenset((i, j) for i in range(n) for j in range(n) if reach[i][j]))


def _check_pairs(n: int, rel) -> None:
    for a, b in rel:
        if not (0 <= a < n and 0 <= b < n):
            raise NotReflexive(f"pair {(a, b)} outside carrier range({n})")


def decompose_preorder(p: FinitePreorder) -> PosetOnClasses:
    rel = p.rel
    _check_pairs(p.n, rel)
    for a in p.carrier:
        if (a, a) not in rel:
            raise NotReflexive(f"({a}, {a}) missing")
    for (a, b), (c, e) in product(rel, rel):
        if b == c and (a, e) not in rel:
            raise NotTransitive(f"({a}, {b}) and ({b}, {e}) present but ({a}, {e}) missing")

    cid = {}
    classes: dict[int, set[int]] = {}
    for a in p.carrier:
        rep = min(b for b in p.carrier if (a, b) in rel and (b, a) in rel)
        cid[a] = rep
        classes.setdefault(rep, set()).add(a)
    order = frozenset((cid[a], cid[b]) for a, b in rel)
    return PosetOnClasses(p.n, {k: frozenset(v) for k, v in classes.items()}, order)


def compose_preorder(q: PosetOnClasses) -> FinitePreorder:
    seen: set[int] = set()
    for cid, members in q.classes.items():
        if not members or min(members) != cid:
            raise InvalidPoset(f"class {cid} must be keyed by its minimum member")
        if seen & members:
            raise InvalidPoset(f"class {cid} overlaps another class")
        seen |= members
    if seen != set(range(q.n)):
        raise InvalidPoset("classes do not partition the carrier")
    ids = set(q.classes)
    for a, b in q.order:
        if a not in ids or b not in ids:
            raise InvalidPoset(f"order pair {(a, b)} names an unknown class")
    for c in ids:
        if (c, c) not in q.order:
            raise InvalidPoset(f"order not reflexive at class {c}")
    for a, b in q.order:
        if a != b and (b, a) in q.order:
            raise InvalidPoset(f"order not antisymmetric on classes {a}, {b}")
        for c in ids:
            if (b, c) in q.order and (a, c) not in q.order:
                raise InvalidPoset(f"order not transitive through {(a, b, c)}")

    rel = set()
    for (ca, cb) in q.order:
        for a in q.classes[ca]:
            for b in q.classes[cb]:
                rel.add((a, b))
    return FinitePreorder(q.n, frozenset(rel))
