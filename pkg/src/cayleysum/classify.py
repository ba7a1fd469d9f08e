"""Obstruction classifier for rainbow tree embeddings in K_G.

Four obstruction families, each a checkable certificate of nonexistence:

  o1  G = Z_2^k (k >= 2) and T is a path.
  o2  G = Z_2^k (k >= 2) and T has precisely two vertices of even degree.
  o3  some edge uv has deg(u) = deg(v) = 0 (mod every cyclic factor of G)
      while every other vertex degree is 1 (mod every factor).
  o4  G = Z_2^k (k >= 2), T has precisely four even-degree vertices and a
      perfect matching on them.

The obstructed verdict is sound for every n (each family carries a direct
counting argument); a clear verdict guarantees an embedding only
asymptotically, so the solver is the authority at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import GroupSpec, is_elementary_two
from .trees import Tree, even_degree_vertices, has_perfect_matching_on, is_path


class ClassifyError(ValueError):
    pass


def mod_g_congruent(d: int, d_prime: int, spec: GroupSpec) -> bool:
    """d = d' (mod G): multiplication by d - d' is identically zero, which
    holds iff d - d' is divisible by the characteristic (equivalently by
    every canonical factor)."""
    return (d - d_prime) % spec.characteristic == 0


@dataclass(frozen=True)
class ObstructionReport:
    o1_path_z2k: bool
    o2_two_even: bool
    o3_char_pair: tuple[int, int] | None
    o4_four_even_pm: tuple[tuple[int, ...], tuple[tuple[int, int], ...]] | None

    @property
    def obstructed(self) -> bool:
        return (
            self.o1_path_z2k
            or self.o2_two_even
            or self.o3_char_pair is not None
            or self.o4_four_even_pm is not None
        )

    def flags(self) -> dict:
        return {
            "o1": self.o1_path_z2k,
            "o2": self.o2_two_even,
            "o3": self.o3_char_pair is not None,
            "o4": self.o4_four_even_pm is not None,
        }

    def to_json(self) -> dict:
        return {
            "o1_path_z2k": self.o1_path_z2k,
            "o2_two_even": self.o2_two_even,
            "o3_char_pair": list(self.o3_char_pair) if self.o3_char_pair else None,
            "o4_four_even_pm": (
                {
                    "even_vertices": list(self.o4_four_even_pm[0]),
                    "matching": [list(e) for e in self.o4_four_even_pm[1]],
                }
                if self.o4_four_even_pm
                else None
            ),
            "obstructed": self.obstructed,
        }


def _find_char_pair(tree: Tree, spec: GroupSpec) -> tuple[int, int] | None:
    """Witness edge for o3, if any.  One congruence test against the
    characteristic suffices (same semantics as testing every factor)."""
    if spec.characteristic == 1:
        return None
    deg = tree.degrees
    zero = [mod_g_congruent(d, 0, spec) for d in deg]
    one = [mod_g_congruent(d, 1, spec) for d in deg]
    for u, v in tree.edges:
        if zero[u] and zero[v]:
            if all(one[w] for w in range(tree.n) if w not in (u, v)):
                return (u, v)
    return None


def _find_four_even_pm(tree: Tree):
    evens = sorted(even_degree_vertices(tree))
    if len(evens) != 4:
        return None
    if not has_perfect_matching_on(tree, evens):
        return None
    a, b, c, d = evens
    edge_set = set(tree.induced_edges(evens))
    for pairing in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
        if all((min(e), max(e)) in edge_set for e in pairing):
            return (tuple(evens), pairing)
    return None


def classify(tree: Tree, spec: GroupSpec) -> ObstructionReport:
    """Evaluate every obstruction family, retaining all flags (an instance
    can legitimately trigger several)."""
    if tree.n != spec.order:
        raise ClassifyError(
            f"tree has {tree.n} vertices but group has order {spec.order}"
        )
    el2, rank = is_elementary_two(spec)
    z2k = el2 and rank >= 2
    evens = even_degree_vertices(tree)
    return ObstructionReport(
        o1_path_z2k=z2k and is_path(tree),
        o2_two_even=z2k and len(evens) == 2,
        o3_char_pair=_find_char_pair(tree, spec),
        o4_four_even_pm=_find_four_even_pm(tree) if z2k else None,
    )
