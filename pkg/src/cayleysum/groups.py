"""Exact arithmetic for finite abelian groups given as products of cyclic factors.

A group is described by a :class:`GroupSpec` holding the canonical list of
prime-power cyclic factor orders.  Elements are plain tuples of residues, one
per factor; they carry no reference to their spec, so every operation takes
the spec explicitly.  A dense integer index (mixed-radix, factor 0 most
significant) is available for bitset bookkeeping in the solver.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd, prod

Element = tuple[int, ...]

_TERM_RE = re.compile(r"^Z(\d+)(?:\^(\d+))?$")


class GroupSpecError(ValueError):
    pass


def _prime_power_split(m: int) -> list[int]:
    """Split m >= 2 into its prime-power parts (CRT decomposition)."""
    parts = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            q = 1
            while m % d == 0:
                q *= d
                m //= d
            parts.append(q)
        d += 1
    if m > 1:
        parts.append(m)
    return parts


def _is_prime_power(q: int) -> bool:
    return len(_prime_power_split(q)) == 1 and q >= 2


def _least_prime(q: int) -> int:
    d = 2
    while d * d <= q:
        if q % d == 0:
            return d
        d += 1
    return q


@dataclass(frozen=True)
class GroupSpec:
    """Canonical finite abelian group: prime-power factors, prime ascending
    then exponent descending."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for q in self.factors:
            if q < 2 or not _is_prime_power(q):
                raise GroupSpecError(f"factor {q} is not a prime power >= 2")
        if tuple(canonical_factors(self.factors)) != self.factors:
            raise GroupSpecError(
                f"factors {self.factors} are not in canonical order"
            )

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def characteristic(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.factors, 1)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return format_group_spec(self)

    # -- element helpers -------------------------------------------------

    def identity(self) -> Element:
        return (0,) * len(self.factors)

    def elements(self):
        """All elements in mixed-radix index order."""
        return [tuple(t) for t in product(*(range(q) for q in self.factors))]

    def element_count(self) -> int:
        return self.order

    def encode(self, a: Element) -> int:
        """Mixed-radix index; factor 0 is the most significant digit."""
        idx = 0
        for r, q in zip(a, self.factors):
            idx = idx * q + r
        return idx

    def decode(self, idx: int) -> Element:
        res = []
        for q in reversed(self.factors):
            res.append(idx % q)
            idx //= q
        return tuple(reversed(res))

    def validate_element(self, a: Element) -> None:
        if len(a) != len(self.factors):
            raise GroupSpecError(
                f"element {a} has wrong arity for {self} ({len(self.factors)} factors)"
            )
        for r, q in zip(a, self.factors):
            if not 0 <= r < q:
                raise GroupSpecError(f"residue {r} out of range for factor {q}")


def canonical_factors(factors) -> list[int]:
    """Split arbitrary cyclic factor orders into prime powers and sort them
    by prime ascending, then exponent descending."""
    pps: list[int] = []
    for m in factors:
        if m < 2:
            raise GroupSpecError(f"cyclic factor {m} < 2")
        pps.extend(_prime_power_split(m))
    return sorted(pps, key=lambda q: (_least_prime(q), -q))


def parse_group_spec(text: str) -> GroupSpec:
    """Parse the `Z<k>` grammar, e.g. ``Z8``, ``Z4xZ2``, ``Z2^3``.

    Isomorphic inputs (``Z6`` vs ``Z2xZ3``) yield identical canonical specs.
    """
    terms = text.strip().split("x")
    factors = []
    for term in terms:
        m = _TERM_RE.match(term.strip())
        if not m:
            raise GroupSpecError(f"malformed group spec term {term!r} in {text!r}")
        base = int(m.group(1))
        rep = int(m.group(2)) if m.group(2) else 1
        if base < 2:
            raise GroupSpecError(f"cyclic factor Z{base} has order < 2")
        if rep < 1:
            raise GroupSpecError(f"repetition ^{rep} < 1")
        factors.extend([base] * rep)
    return GroupSpec(tuple(canonical_factors(factors)))


def format_group_spec(spec: GroupSpec) -> str:
    """Canonical display form in the same grammar (``Z2^3``, ``Z4xZ2``)."""
    if not spec.factors:
        return "Z1"
    out = []
    i = 0
    fs = spec.factors
    while i < len(fs):
        j = i
        while j < len(fs) and fs[j] == fs[i]:
            j += 1
        out.append(f"Z{fs[i]}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "x".join(out)


def trivial_group() -> GroupSpec:
    return GroupSpec(())


# -- arithmetic ---------------------------------------------------------


def add(spec: GroupSpec, a: Element, b: Element) -> Element:
    if len(a) != len(spec.factors) or len(b) != len(spec.factors):
        raise GroupSpecError("operand arity does not match the spec")
    return tuple((x + y) % q for x, y, q in zip(a, b, spec.factors))


def neg(spec: GroupSpec, a: Element) -> Element:
    return tuple((-x) % q for x, q in zip(a, spec.factors))


def sub(spec: GroupSpec, a: Element, b: Element) -> Element:
    return tuple((x - y) % q for x, y, q in zip(a, b, spec.factors))


def scalar_mul(spec: GroupSpec, d: int, a: Element) -> Element:
    """d*a for any integer d, negatives included."""
    return tuple((d * x) % q for x, q in zip(a, spec.factors))


def sum_of_set(spec: GroupSpec, elems) -> Element:
    """Group sum of an iterable of elements; empty input gives the identity."""
    acc = spec.identity()
    for a in elems:
        acc = add(spec, acc, a)
    return acc


def characteristic(spec: GroupSpec) -> int:
    return spec.characteristic


def is_elementary_two(spec: GroupSpec) -> tuple[bool, int]:
    """(every factor equals 2, rank).  Rank is the factor count."""
    return all(q == 2 for q in spec.factors), len(spec.factors)


# -- enumeration --------------------------------------------------------


def _partitions_desc(e: int):
    """Partitions of e in reverse-lexicographic order, e.g. 3 -> [3],[2,1],[1,1,1]."""
    if e == 0:
        yield []
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield []
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield [first] + rest

    yield from rec(e, e)


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                e += 1
                n //= d
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def enumerate_abelian_groups(n: int) -> list[GroupSpec]:
    """One canonical spec per isomorphism class of abelian groups of order n.

    Classes correspond to choices of a partition of each prime exponent in
    the factorization of n; the order is deterministic (partitions taken in
    reverse-lexicographic order per prime).
    """
    if n < 1:
        raise GroupSpecError("group order must be >= 1")
    if n == 1:
        return [trivial_group()]
    per_prime = []
    for p, e in _factorize(n):
        per_prime.append([[p**k for k in part] for part in _partitions_desc(e)])
    specs = []
    for combo in product(*per_prime):
        factors = [q for block in combo for q in block]
        specs.append(GroupSpec(tuple(canonical_factors(factors))))
    return specs


# -- solution counting (Lemma on pair sums) ------------------------------


def two_torsion_count(spec: GroupSpec, g: Element) -> int:
    """Number of y with 2y = g, by enumeration."""
    spec.validate_element(g)
    return sum(1 for y in spec.elements() if scalar_mul(spec, 2, y) == g)


def count_pair_solutions(spec: GroupSpec, g: Element) -> int:
    """Number of unordered pairs {y1, y2}, y1 != y2, with y1 + y2 = g."""
    spec.validate_element(g)
    cnt = 0
    for y1 in spec.elements():
        y2 = sub(spec, g, y1)
        if y1 != y2:
            cnt += 1
    return cnt // 2


def count_ordered_pair_solutions(spec: GroupSpec, g: Element) -> int:
    """Ordered pairs (y1, y2), y1 != y2, y1 + y2 = g.  Exceeds n/2 for every
    g whenever the group is not elementary abelian 2."""
    return 2 * count_pair_solutions(spec, g)


def addition_table(spec: GroupSpec) -> list[list[int]]:
    """n x n table of mixed-radix indices: table[i][j] = encode(dec(i)+dec(j))."""
    els = spec.elements()
    n = len(els)
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = spec.encode(add(spec, els[i], els[j]))
            table[i][j] = v
            table[j][i] = v
    return table
