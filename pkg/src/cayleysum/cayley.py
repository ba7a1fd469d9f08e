"""The coloured complete graph K_G and embeddings of trees into it.

K_G has vertex set G and the edge xy carries colour x+y; colours are plain
group elements, no separate type.  An :class:`Embedding` is an injective
(partial or total) map from tree vertices to group elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import Element, GroupSpec, add, is_elementary_two, scalar_mul, sum_of_set
from .trees import Tree


class CayleyError(ValueError):
    pass


def color(spec: GroupSpec, x: Element, y: Element) -> Element:
    """Colour of the edge xy in K_G, i.e. x + y.  Loops are not edges."""
    if x == y:
        raise CayleyError(f"no loop at {x}: K_G has no edge xx")
    return add(spec, x, y)


@dataclass(frozen=True)
class Embedding:
    spec: GroupSpec
    assignment: dict[int, Element] = field(default_factory=dict)

    def __post_init__(self):
        images = list(self.assignment.values())
        for a in images:
            self.spec.validate_element(a)
        if len(set(images)) != len(images):
            raise CayleyError("embedding is not injective")

    def domain(self) -> set[int]:
        return set(self.assignment)

    def image(self) -> set[Element]:
        return set(self.assignment.values())

    def is_total_on(self, tree: Tree) -> bool:
        return set(range(tree.n)) <= self.domain()

    def with_vertex(self, v: int, a: Element) -> "Embedding":
        new = dict(self.assignment)
        new[v] = a
        return Embedding(self.spec, new)

    def to_json(self) -> dict:
        return {
            "group": str(self.spec),
            "map": [[v, list(a)] for v, a in sorted(self.assignment.items())],
        }

    @staticmethod
    def from_json(data: dict, spec: GroupSpec) -> "Embedding":
        return Embedding(spec, {int(v): tuple(a) for v, a in data["map"]})


@dataclass(frozen=True)
class TargetSets:
    """Allowed vertex labels and allowed edge colours.

    `thm24_context` opts into the core-condition setting, where an
    elementary abelian 2-group of rank >= 2 must not allow colour 0.
    """

    v_target: frozenset[Element]
    c_target: frozenset[Element]
    thm24_context: bool = False

    @staticmethod
    def make(spec: GroupSpec, v_target, c_target, thm24_context: bool = False) -> "TargetSets":
        vt = frozenset(tuple(a) for a in v_target)
        ct = frozenset(tuple(a) for a in c_target)
        for a in vt | ct:
            spec.validate_element(a)
        el2, rank = is_elementary_two(spec)
        if thm24_context and el2 and rank >= 2 and spec.identity() in ct:
            raise CayleyError("0 not allowed in c_target over Z_2^k (rank >= 2)")
        return TargetSets(vt, ct, thm24_context)


def full_targets(spec: GroupSpec) -> TargetSets:
    els = spec.elements()
    return TargetSets.make(spec, els, els)


def all_minus_zero_targets(spec: GroupSpec) -> TargetSets:
    els = spec.elements()
    return TargetSets.make(spec, els, [e for e in els if e != spec.identity()])


@dataclass
class RainbowReport:
    injective: bool
    colors_distinct: bool
    image_in_targets: bool
    colors_in_targets: bool
    violations: list

    @property
    def verdict(self) -> bool:
        return (
            self.injective
            and self.colors_distinct
            and self.image_in_targets
            and self.colors_in_targets
        )

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "injective": self.injective,
            "colors_distinct": self.colors_distinct,
            "image_in_targets": self.image_in_targets,
            "colors_in_targets": self.colors_in_targets,
            "violations": self.violations,
        }


def verify_rainbow(tree: Tree, f: Embedding, targets: TargetSets) -> RainbowReport:
    """Check injectivity, pairwise-distinct edge colours, and target
    membership; all violations are reported, not just the first."""
    if not f.is_total_on(tree):
        raise CayleyError("embedding must be total on the tree")
    spec = f.spec
    violations = []

    by_image: dict[Element, list[int]] = {}
    for v in range(tree.n):
        by_image.setdefault(f.assignment[v], []).append(v)
    injective = True
    for a, vs in sorted(by_image.items()):
        if len(vs) > 1:
            injective = False
            violations.append({"kind": "injectivity", "vertices": vs, "element": list(a)})

    by_color: dict[Element, list] = {}
    colors_distinct = True
    for u, v in tree.edges:
        if f.assignment[u] == f.assignment[v]:
            # undefined colour; the clash is already an injectivity violation
            colors_distinct = False
            violations.append({"kind": "collapsed_edge", "edge": [u, v]})
            continue
        c = color(spec, f.assignment[u], f.assignment[v])
        by_color.setdefault(c, []).append([u, v])
    for c, es in sorted(by_color.items()):
        if len(es) > 1:
            colors_distinct = False
            violations.append({"kind": "duplicate_color", "color": list(c), "edges": es})

    image_ok = True
    for v in range(tree.n):
        if f.assignment[v] not in targets.v_target:
            image_ok = False
            violations.append(
                {"kind": "vertex_target", "vertex": v, "element": list(f.assignment[v])}
            )
    colors_ok = True
    for c, es in sorted(by_color.items()):
        if c not in targets.c_target:
            colors_ok = False
            violations.append({"kind": "color_target", "color": list(c), "edges": es})

    return RainbowReport(injective, colors_distinct, image_ok, colors_ok, violations)


def edge_colors(tree: Tree, f: Embedding) -> list[Element]:
    return [color(f.spec, f.assignment[u], f.assignment[v]) for u, v in tree.edges]


def weighted_vertex_sum(tree: Tree, f: Embedding) -> Element:
    """Sum of d_T(v) * f(v) over the vertices; equals the sum of all edge
    colours of f(T) -- the identity behind pseudoembeddings."""
    if not f.is_total_on(tree):
        raise CayleyError("embedding must be total on the tree")
    spec = f.spec
    acc = spec.identity()
    for v in range(tree.n):
        acc = add(spec, acc, scalar_mul(spec, tree.degrees[v], f.assignment[v]))
    return acc


def is_pseudoembedding(tree: Tree, f: Embedding, targets: TargetSets) -> bool:
    """Injection with image exactly v_target whose degree-weighted vertex sum
    equals the sum of c_target.  Need not be rainbow."""
    if not f.is_total_on(tree):
        raise CayleyError("embedding must be total on the tree")
    image = {f.assignment[v] for v in range(tree.n)}
    if len(image) != tree.n or image != set(targets.v_target):
        return False
    want = sum_of_set(f.spec, targets.c_target)
    return weighted_vertex_sum(tree, f) == want


def translate_embedding(f: Embedding, g: Element) -> Embedding:
    """Shift every image by +g; edge colours shift by +2g (unchanged over
    Z_2^k), so rainbowness with full targets is preserved."""
    f.spec.validate_element(g)
    return Embedding(f.spec, {v: add(f.spec, a, g) for v, a in f.assignment.items()})
