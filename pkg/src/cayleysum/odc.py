"""Orthogonal double covers of K_{2^k} from rainbow trees over Z_2^k.

A rainbow spanning tree of K_{Z_2^k} keeps its edge colours under
translation (2g = 0), and its 2^k translates pairwise share exactly the
edge whose colour is the translation difference, covering every edge of
K_{2^k} exactly twice.  Copies are stored as sorted edge lists over
mixed-radix vertex indices, so covers diff cleanly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cayley import Embedding, all_minus_zero_targets, verify_rainbow
from .groups import GroupSpec, add, is_elementary_two
from .trees import Tree


class OdcError(ValueError):
    pass


@dataclass(frozen=True)
class Cover:
    spec: GroupSpec
    copies: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def n_vertices(self) -> int:
        return self.spec.order

    def to_json(self) -> dict:
        return {
            "group": str(self.spec),
            "copies": [[list(e) for e in copy] for copy in self.copies],
        }


def translates_cover(tree: Tree, f: Embedding) -> Cover:
    """All 2^k translates of a rainbow tree embedding over Z_2^k."""
    spec = f.spec
    el2, rank = is_elementary_two(spec)
    if not el2 or rank < 2:
        raise OdcError("translate covers need Z_2^k with k >= 2")
    if tree.n != spec.order:
        raise OdcError(f"tree order {tree.n} != group order {spec.order}")
    report = verify_rainbow(tree, f, all_minus_zero_targets(spec))
    if not report.verdict:
        raise OdcError(f"embedding is not rainbow: {report.violations}")
    copies = []
    for g in spec.elements():
        edges = []
        for u, v in tree.edges:
            a = spec.encode(add(spec, f.assignment[u], g))
            b = spec.encode(add(spec, f.assignment[v], g))
            edges.append((min(a, b), max(a, b)))
        copies.append(tuple(sorted(edges)))
    return Cover(spec, tuple(copies))


@dataclass
class OdcReport:
    pairwise_ok: bool
    coverage_ok: bool
    violations: list

    @property
    def verdict(self) -> bool:
        return self.pairwise_ok and self.coverage_ok

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "pairwise_ok": self.pairwise_ok,
            "coverage_ok": self.coverage_ok,
            "violations": self.violations,
        }


def verify_odc(cover: Cover) -> OdcReport:
    """Exhaustive check: every pair of copies shares exactly one edge and
    every edge of the complete graph is covered exactly twice."""
    n = cover.n_vertices
    violations = []
    pairwise_ok = True
    for i, j in combinations(range(len(cover.copies)), 2):
        common = set(cover.copies[i]) & set(cover.copies[j])
        if len(common) != 1:
            pairwise_ok = False
            violations.append(
                {"kind": "pairwise", "copies": [i, j], "shared": sorted(map(list, common))}
            )
    counts: dict[tuple[int, int], int] = {}
    for copy in cover.copies:
        for e in copy:
            counts[e] = counts.get(e, 0) + 1
    coverage_ok = True
    for a in range(n):
        for b in range(a + 1, n):
            c = counts.get((a, b), 0)
            if c != 2:
                coverage_ok = False
                violations.append({"kind": "coverage", "edge": [a, b], "count": c})
    return OdcReport(pairwise_ok, coverage_ok, violations)
