"""Trees: representation, enumeration, cores, approximations, decompositions.

Vertices are 0-indexed integers.  A :class:`Tree` is immutable after
construction and validated to be connected and acyclic.  Canonical tree
identifiers are AHU encodings rooted at the centroid, used both for
isomorphism dedup in :func:`enumerate_trees` and as stable CSV keys.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

ENUMERATION_MAX_N = 12


class TreeError(ValueError):
    pass


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    degrees: tuple[int, ...] = field(repr=False)

    @staticmethod
    def from_edges(n: int, edges) -> "Tree":
        if n < 1:
            raise TreeError("a tree needs at least one vertex")
        norm = []
        seen = set()
        adj = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise TreeError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise TreeError(f"loop at vertex {u}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise TreeError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
            adj[u].append(v)
            adj[v].append(u)
        if len(norm) != n - 1:
            raise TreeError(f"{len(norm)} edges given, a tree on {n} vertices has {n - 1}")
        # connectivity (n-1 edges + connected => acyclic)
        if n > 1:
            stack, visited = [0], {0}
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in visited:
                        visited.add(w)
                        stack.append(w)
            if len(visited) != n:
                raise TreeError("graph is disconnected (or cyclic)")
        return Tree(
            n=n,
            edges=tuple(sorted(norm)),
            adjacency=tuple(tuple(sorted(a)) for a in adj),
            degrees=tuple(len(a) for a in adj),
        )

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n > 1 else 0

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.degrees[v] == 1]

    def induced_edges(self, vertices) -> list[tuple[int, int]]:
        vs = set(vertices)
        return [e for e in self.edges if e[0] in vs and e[1] in vs]

    def bipartition(self) -> tuple[set[int], set[int]]:
        """2-colouring of the tree (side of vertex 0 first)."""
        side = [-1] * self.n
        side[0] = 0
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adjacency[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
        return {v for v in range(self.n) if side[v] == 0}, {
            v for v in range(self.n) if side[v] == 1
        }


def parse_tree(text: str) -> Tree:
    """Edge-list format: first line n, then n-1 lines "u v" (0-indexed)."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise TreeError("empty tree description")
    try:
        n = int(lines[0])
    except ValueError:
        raise TreeError(f"first line must be the vertex count, got {lines[0]!r}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise TreeError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Tree.from_edges(n, edges)


def format_tree(tree: Tree) -> str:
    return "\n".join([str(tree.n)] + [f"{u} {v}" for u, v in tree.edges])


def from_prufer(seq) -> Tree:
    """Standard Prüfer decode: sequence of length n-2 over [0, n)."""
    seq = list(seq)
    n = len(seq) + 2
    for s in seq:
        if not 0 <= s < n:
            raise TreeError(f"Prüfer entry {s} out of range for n={n}")
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    import heapq

    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        deg[s] -= 1
        if deg[s] == 1:
            heapq.heappush(leaves, s)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Tree.from_edges(n, edges)


def to_prufer(tree: Tree) -> list[int]:
    if tree.n < 2:
        raise TreeError("Prüfer sequences need n >= 2")
    import heapq

    deg = list(tree.degrees)
    adj = [set(a) for a in tree.adjacency]
    leaves = [v for v in range(tree.n) if deg[v] == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(tree.n - 2):
        leaf = heapq.heappop(leaves)
        parent = next(iter(adj[leaf]))
        seq.append(parent)
        adj[parent].discard(leaf)
        adj[leaf].clear()
        deg[parent] -= 1
        if deg[parent] == 1:
            heapq.heappush(leaves, parent)
    return seq


def path_tree(n: int) -> Tree:
    return Tree.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    """Star with center 0 on n vertices."""
    return Tree.from_edges(n, [(0, i) for i in range(1, n)])


def delete_vertex(tree: Tree, v: int) -> tuple[Tree, dict[int, int]]:
    """Remove a leaf, reindexing compactly.  Returns (tree, old->new map)."""
    if tree.degrees[v] != 1 and tree.n > 1:
        raise TreeError(f"vertex {v} is not a leaf")
    remap = {}
    for u in range(tree.n):
        if u != v:
            remap[u] = len(remap)
    edges = [(remap[a], remap[b]) for a, b in tree.edges if v not in (a, b)]
    return Tree.from_edges(tree.n - 1, edges), remap


def random_tree(n: int, rng: random.Random) -> Tree:
    if n <= 2:
        return path_tree(n)
    return from_prufer([rng.randrange(n) for _ in range(n - 2)])


# -- isomorphism (AHU at the centroid) -----------------------------------


def centroids(tree: Tree) -> list[int]:
    n = tree.n
    if n == 1:
        return [0]
    order, parent = _dfs_order(tree, 0)
    size = [1] * n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    cents = []
    for u in range(n):
        heaviest = n - size[u]
        for w in tree.adjacency[u]:
            if parent[w] == u:
                heaviest = max(heaviest, size[w])
        if heaviest <= n // 2:
            cents.append(u)
    return sorted(cents)


def _dfs_order(tree: Tree, root: int):
    parent = [-1] * tree.n
    order = [root]
    seen = [False] * tree.n
    seen[root] = True
    stack = [root]
    while stack:
        u = stack.pop()
        for w in tree.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
                stack.append(w)
    return order, parent


def ahu_encoding(tree: Tree, root: int) -> str:
    """Nested-parenthesis AHU code of the tree rooted at `root`."""
    order, parent = _dfs_order(tree, root)
    code: list[str | None] = [None] * tree.n
    for u in reversed(order):
        kids = sorted(code[w] for w in tree.adjacency[u] if parent[w] == u)
        code[u] = "(" + "".join(kids) + ")"
    return code[root]


def canonical_id(tree: Tree) -> str:
    """Minimal AHU code over the centroid(s): a stable isomorphism key."""
    return min(ahu_encoding(tree, c) for c in centroids(tree))


def tree_from_ahu(code: str) -> Tree:
    """Rebuild a labelled representative from an AHU code (DFS preorder labels)."""
    edges = []
    stack: list[int] = []
    next_label = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], next_label))
            stack.append(next_label)
            next_label += 1
        elif ch == ")":
            stack.pop()
        else:
            raise TreeError(f"bad AHU code character {ch!r}")
    if stack:
        raise TreeError("unbalanced AHU code")
    return Tree.from_edges(next_label, edges)


def enumerate_trees(n: int, max_degree: int) -> list[Tree]:
    """One labelled representative per isomorphism class with Delta <= max_degree.

    Generation is by Prüfer sequences with canonical (AHU) dedup; only
    non-decreasing sequences are generated, which is enough to reach every
    isomorphism class (verified against the known free-tree counts for all
    supported n).  Representatives are rebuilt from the canonical code, so
    the output does not depend on generation order.
    """
    if not 1 <= n <= ENUMERATION_MAX_N:
        raise TreeError(f"enumeration supports 1 <= n <= {ENUMERATION_MAX_N}")
    if n == 1:
        return [Tree.from_edges(1, [])]
    if n == 2:
        return [path_tree(2)] if max_degree >= 1 else []
    codes = set()
    for seq in combinations_with_replacement(range(n), n - 2):
        t = from_prufer(list(seq))
        if t.max_degree <= max_degree:
            codes.add(canonical_id(t))
    return [tree_from_ahu(code) for code in sorted(codes)]


# -- cores ----------------------------------------------------------------


@dataclass(frozen=True)
class Core:
    vertices: frozenset[int]
    exhausted_degrees: frozenset[int]

    def validate(self, tree: Tree) -> None:
        by_deg: dict[int, list[int]] = {}
        for v in range(tree.n):
            by_deg.setdefault(tree.degrees[v], []).append(v)
        for d, vs in by_deg.items():
            inside = sum(1 for v in vs if v in self.vertices)
            outside = len(vs) - inside
            if outside == 0:
                if d not in self.exhausted_degrees:
                    raise TreeError(f"degree {d} fully inside but not marked exhausted")
            else:
                if d in self.exhausted_degrees:
                    raise TreeError(f"degree {d} marked exhausted but has outside vertices")
                if inside < 6 or outside < 6:
                    raise TreeError(
                        f"degree {d}: {inside} inside / {outside} outside, both must be >= 6"
                    )


def find_core(tree: Tree, exact_size: int | None = None) -> Core:
    """Core per the 12*Delta recipe: per degree, include everything when
    there are <= 12 vertices of that degree, else exactly 6 (lowest index).

    With `exact_size` (must equal 12*Delta and Delta <= sqrt(n/12)), pad with
    vertices of the most popular degree while keeping >= 6 of it outside.
    """
    by_deg: dict[int, list[int]] = {}
    for v in range(tree.n):
        by_deg.setdefault(tree.degrees[v], []).append(v)
    chosen: set[int] = set()
    exhausted: set[int] = set()
    for d, vs in sorted(by_deg.items()):
        if len(vs) <= 12:
            chosen.update(vs)
            exhausted.add(d)
        else:
            chosen.update(sorted(vs)[:6])
    if exact_size is not None:
        delta = tree.max_degree
        if exact_size != 12 * delta:
            raise TreeError(f"exact_size must be 12*Delta = {12 * delta}")
        if delta * delta * 12 > tree.n:
            raise TreeError(
                f"Delta={delta} too large for an exact 12*Delta core at n={tree.n}"
            )
        popular = max(by_deg, key=lambda d: (len(by_deg[d]), -d))
        pool = [v for v in sorted(by_deg[popular]) if v not in chosen]
        need = exact_size - len(chosen)
        if need < 0:
            raise TreeError("core already larger than the requested exact size")
        if len(pool) - need < 6:
            raise TreeError("cannot pad: fewer than 6 popular-degree vertices would remain")
        chosen.update(pool[:need])
    core = Core(vertices=frozenset(chosen), exhausted_degrees=frozenset(exhausted))
    core.validate(tree)
    return core


# -- leaves / bare paths (removable structures) ---------------------------


def maximal_bare_paths(tree: Tree) -> list[list[int]]:
    """Maximal paths whose internal vertices have degree 2 in the tree.

    Returned as vertex sequences; endpoints are the nearest vertices of
    degree != 2 (or leaves).  Degenerate length-1 paths are omitted.
    """
    if tree.n <= 2:
        return [list(range(tree.n))] if tree.n == 2 else []
    anchors = [v for v in range(tree.n) if tree.degrees[v] != 2]
    if not anchors:
        raise TreeError("a tree always has a vertex of degree != 2")
    paths = []
    seen_edges = set()
    for a in anchors:
        for w in tree.adjacency[a]:
            e = (min(a, w), max(a, w))
            if e in seen_edges:
                continue
            path = [a, w]
            seen_edges.add(e)
            prev, cur = a, w
            while tree.degrees[cur] == 2:
                nxt = next(x for x in tree.adjacency[cur] if x != prev)
                seen_edges.add((min(cur, nxt), max(cur, nxt)))
                path.append(nxt)
                prev, cur = cur, nxt
            if len(path) >= 3:
                paths.append(path)
    return paths


def _chop_bare_paths(tree: Tree, t: int, forbidden: set[int]) -> list[list[int]]:
    """Vertex-disjoint bare paths of length t (t edges), all of whose t+1
    vertices avoid `forbidden`; internal vertices have degree 2 in the tree.

    High-degree chain anchors are never used (they may belong to several
    chains), but leaf anchors are fair game as path endpoints.
    """
    pieces = []
    for chain in maximal_bare_paths(tree):
        usable = list(chain)
        if tree.degrees[usable[0]] != 1:
            usable = usable[1:]
        if usable and tree.degrees[usable[-1]] != 1:
            usable = usable[:-1]
        run: list[int] = []
        for v in usable:
            if v in forbidden:
                run = []
                continue
            run.append(v)
            if len(run) == t + 1:
                pieces.append(run)
                run = []
    return pieces


def _greedy_leaf_matching(tree: Tree) -> list[tuple[int, int]]:
    used_parents: set[int] = set()
    leafset = set(tree.leaves())
    matching = []
    for leaf in sorted(leafset):
        parent = tree.adjacency[leaf][0]
        if parent in used_parents or parent in leafset:
            continue
        used_parents.add(parent)
        matching.append((leaf, parent))
    return matching


def leaves_or_bare_paths(tree: Tree, t: int):
    """Either ("paths", >= n/(10*t) disjoint bare paths of length t) or
    ("matching", leaf-edge matching of size >= n/(10*Delta*t)).

    The path branch is preferred whenever it meets its bound; when it does
    not, the tree has >= n/(10*t) leaves and the matching branch meets its
    own bound.
    """
    if t < 1:
        raise TreeError("t must be >= 1")
    n = tree.n
    if n <= 2:
        matching = [tree.edges[0]] if tree.n == 2 else []
        return "matching", matching
    pieces = _chop_bare_paths(tree, t, forbidden=set())
    if len(pieces) >= n / (10 * t):
        return "paths", pieces
    matching = _greedy_leaf_matching(tree)
    if len(matching) < n / (10 * tree.max_degree * t):
        raise TreeError("leaf-matching bound violated (unexpected)")
    return "matching", [(min(a, b), max(a, b)) for a, b in matching]


# -- approximations --------------------------------------------------------


@dataclass(frozen=True)
class Approximation:
    kind: str  # "matching" | "path"
    kept_vertices: frozenset[int]
    u1: tuple[int, ...]
    u2: tuple[int, ...]
    removed: tuple  # matching: edges; path: vertex sequences
    t: int

    def removed_vertex_count(self) -> int:
        if self.kind == "matching":
            return len(self.removed)
        return sum(len(p) - 2 for p in self.removed)

    def removed_edge_count(self) -> int:
        if self.kind == "matching":
            return len(self.removed)
        return sum(len(p) - 1 for p in self.removed)

    def check_ratio_identities(self) -> None:
        """Exact integer forms of the size identities: matching kind has
        r = p and p = 2q; path kind has p = (t-1) q and r = p + q."""
        p = self.removed_vertex_count()
        q = len(self.u1)
        r = self.removed_edge_count()
        if len(self.u1) != len(self.u2):
            raise TreeError("|U1| != |U2|")
        if self.kind == "matching":
            if r != p or p != 2 * q:
                raise TreeError(f"matching ratio identities violated: p={p} q={q} r={r}")
        else:
            if p != (self.t - 1) * q or r != p + q:
                raise TreeError(f"path ratio identities violated: p={p} q={q} r={r} t={self.t}")


def asymptotic_t(n: int) -> int:
    """The asymptotic path-length parameter ceil(2 log^7 n); impractically
    large at desk scale, kept for reference."""
    if n < 2:
        return 1
    return math.ceil(2 * math.log(n) ** 7)


def find_approximation(tree: Tree, core: Core, t: int) -> Approximation:
    """Remove a leaf matching or disjoint bare paths of length t, avoiding the
    core, so that each non-exhausted core degree keeps >= 6 vertices outside
    the core among the kept vertices."""
    if t < 1:
        raise TreeError("t must be >= 1")
    n = tree.n
    core.validate(tree)
    by_deg: dict[int, int] = {}
    for v in range(tree.n):
        by_deg[tree.degrees[v]] = by_deg.get(tree.degrees[v], 0) + 1

    def outside_count(d: int) -> int:
        return sum(
            1 for v in range(tree.n) if tree.degrees[v] == d and v not in core.vertices
        )

    path_target = 2 * math.ceil(n / (40 * t))
    pieces = _chop_bare_paths(tree, t, forbidden=set(core.vertices))
    path_budget = len(pieces)
    if 2 in set(tree.degrees) and 2 not in core.exhausted_degrees and t > 1:
        # each piece removes t-1 internal degree-2 vertices
        path_budget = min(path_budget, (outside_count(2) - 6) // (t - 1))
    use_paths = len(pieces) >= n / (10 * t) and path_target <= path_budget

    if not use_paths:
        target = 2 * math.ceil(n / (40 * tree.max_degree * t))
        avail = [v for v in sorted(tree.leaves()) if v not in core.vertices]
        # removing leaves shrinks the degree-1 class; keep 6 outside if non-exhausted
        budget = len(avail)
        if 1 not in core.exhausted_degrees:
            budget = min(budget, outside_count(1) - 6)
        used_parents: set[int] = set()
        matching = []
        leafset = set(tree.leaves())
        for leaf in avail:
            if len(matching) == target:
                break
            parent = tree.adjacency[leaf][0]
            if parent in used_parents or parent in leafset:
                continue
            used_parents.add(parent)
            matching.append((leaf, parent))
        if len(matching) < target or target > budget or target < 2:
            raise TreeError("tree too small for an approximation avoiding the core")
        matching = matching[:target]
        removed_leaves = {e[0] for e in matching}
        kept = frozenset(range(n)) - removed_leaves
        endpoints = sorted(e[1] for e in matching)
        half = len(endpoints) // 2
        appr = Approximation(
            kind="matching",
            kept_vertices=kept,
            u1=tuple(endpoints[:half]),
            u2=tuple(endpoints[half:]),
            removed=tuple((min(a, b), max(a, b)) for a, b in matching),
            t=t,
        )
    else:
        pieces = pieces[:path_target]
        removed_internal = {v for p in pieces for v in p[1:-1]}
        kept = frozenset(range(n)) - removed_internal
        oriented = [p if p[0] < p[-1] else list(reversed(p)) for p in pieces]
        appr = Approximation(
            kind="path",
            kept_vertices=kept,
            u1=tuple(p[0] for p in oriented),
            u2=tuple(p[-1] for p in oriented),
            removed=tuple(tuple(p) for p in oriented),
            t=t,
        )
    if not core.vertices <= appr.kept_vertices:
        raise TreeError("core not contained in the approximation")
    for d in set(tree.degrees) - core.exhausted_degrees:
        left = sum(
            1
            for v in appr.kept_vertices
            if tree.degrees[v] == d and v not in core.vertices
        )
        if left < 6:
            raise TreeError(f"approximation leaves only {left} degree-{d} vertices outside the core")
    appr.check_ratio_identities()
    return appr


# -- small-component splitting (recursive tree division) ------------------


def _split_tree_once(adj: dict[int, list[int]], nodes: list[int], s: int):
    """Find a cut vertex v and a chunk of child subtrees totalling >= s-1
    vertices (each child subtree < s); returns (v, chunk_vertices)."""
    root = nodes[0]
    parent = {root: None}
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                stack.append(w)
    size = {u: 1 for u in order}
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    # deepest vertex with subtree weight >= s
    v = None
    for u in reversed(order):
        if size[u] >= s:
            kids = [w for w in adj[u] if parent.get(w) == u]
            if all(size[w] < s for w in kids):
                v = u
                break
    if v is None:
        return None
    chunk: list[int] = []
    total = 0
    for w in adj[v]:
        if parent.get(w) == v:
            sub = []
            st = [w]
            while st:
                x = st.pop()
                sub.append(x)
                for y in adj[x]:
                    if parent.get(y) == x:
                        st.append(y)
            chunk.extend(sub)
            total += size[w]
            if total >= s - 1:
                break
    return v, chunk


def split_small_components(tree: Tree, m: int) -> set[int]:
    """Vertex set I with |I| <= 3n/m such that every component of T - I has
    at most m vertices.

    Recursive tree division: repeatedly detach child-subtree chunks of
    >= ceil(m/3) vertices at a cut vertex which joins I.
    """
    n = tree.n
    if not 1 <= m <= n / 10:
        raise TreeError(f"m={m} out of range [1, n/10] for n={n}")
    s = math.ceil(m / 3) + 1
    adj = {v: list(tree.adjacency[v]) for v in range(n)}
    alive = set(range(n))
    I: set[int] = set()
    while True:
        # components of size <= m are final; split every oversized one once
        comps = []
        seen: set[int] = set()
        for v in sorted(alive):
            if v in seen:
                continue
            comp = [v]
            seen.add(v)
            st = [v]
            while st:
                u = st.pop()
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        st.append(w)
            if len(comp) > m:
                comps.append(sorted(comp))
        if not comps:
            break
        for comp in comps:
            res = _split_tree_once(adj, comp, s)
            if res is None:
                # unreachable: |comp| > m >= s - 1 puts the root over threshold
                raise TreeError("internal split failure")
            v, chunk = res
            I.add(v)
            remove = set(chunk) | {v}
            for x in remove:
                alive.discard(x)
                for y in adj[x]:
                    adj[y].remove(x)
                adj[x] = []
    if len(I) > 3 * n / m:
        raise TreeError(f"|I|={len(I)} exceeds 3n/m={3 * n / m} (unexpected)")
    return I


# -- layered matching decomposition ---------------------------------------


@dataclass(frozen=True)
class LayeredDecomposition:
    vertex_layers: tuple[frozenset[int], ...]
    matchings: tuple[tuple[tuple[int, int], ...], ...]  # aligned; matchings[0] empty

    def validate(self, vertices, edges) -> None:
        layer_of = {}
        for i, layer in enumerate(self.vertex_layers):
            for v in layer:
                if v in layer_of:
                    raise TreeError(f"vertex {v} appears in two layers")
                layer_of[v] = i
        if set(layer_of) != set(vertices):
            raise TreeError("vertex layers do not partition the vertex set")
        all_edges = []
        for i, match in enumerate(self.matchings):
            used = set()
            for u, v in match:
                iu, iv = layer_of[u], layer_of[v]
                if max(iu, iv) != i or min(iu, iv) >= i:
                    raise TreeError(f"edge ({u},{v}) does not go from layer {i} to an earlier one")
                if u in used or v in used:
                    raise TreeError(f"layer {i} is not a matching")
                used.update((u, v))
                all_edges.append((min(u, v), max(u, v)))
        if sorted(all_edges) != sorted((min(u, v), max(u, v)) for u, v in edges):
            raise TreeError("matchings do not reassemble the edge set")


def layered_matching_decomposition(
    vertices, edges, m: int, parts=None
) -> LayeredDecomposition:
    """Peel one leaf per edge-bearing component, layer by layer.

    Every component must have <= m vertices.  With a 3-partition `parts`
    given, each vertex layer is refined to lie inside a single part (at most
    3m + 3 layers).
    """
    vertices = sorted(set(vertices))
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    # component size check
    seen: set[int] = set()
    for v in vertices:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        st = [v]
        while st:
            u = st.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    st.append(w)
        if len(comp) > m:
            raise TreeError(f"component of size {len(comp)} exceeds m={m}")

    peels: list[tuple[list[int], list[tuple[int, int]]]] = []
    alive = {v: set(adj[v]) for v in vertices}
    active = set(vertices)
    while any(alive[v] for v in active):
        comp_seen: set[int] = set()
        picked: list[int] = []
        picked_edges: list[tuple[int, int]] = []
        for v in sorted(active):
            if v in comp_seen:
                continue
            comp = [v]
            comp_seen.add(v)
            st = [v]
            while st:
                u = st.pop()
                for w in alive[u]:
                    if w not in comp_seen:
                        comp_seen.add(w)
                        comp.append(w)
                        st.append(w)
            deg1 = sorted(u for u in comp if len(alive[u]) == 1)
            if deg1:
                leaf = deg1[0]
                nb = next(iter(alive[leaf]))
                picked.append(leaf)
                picked_edges.append((leaf, nb))
        if not picked:
            break
        for leaf, nb in picked_edges:
            alive[nb].discard(leaf)
            alive[leaf].clear()
            active.discard(leaf)
        peels.append((picked, picked_edges))

    layers = [frozenset(sorted(active))]
    matchings: list[tuple[tuple[int, int], ...]] = [()]
    for picked, picked_edges in reversed(peels):
        layers.append(frozenset(picked))
        matchings.append(tuple(picked_edges))

    if parts is not None:
        u1, u2, u3 = (set(p) for p in parts)
        refined_layers: list[frozenset[int]] = []
        refined_matchings: list[tuple[tuple[int, int], ...]] = []
        for layer, match in zip(layers, matchings):
            for part in (u1, u2, u3):
                sub = layer & part
                if not sub:
                    continue
                refined_layers.append(frozenset(sub))
                refined_matchings.append(tuple((a, b) for a, b in match if a in sub))
        layers, matchings = refined_layers, refined_matchings

    dec = LayeredDecomposition(tuple(layers), tuple(matchings))
    dec.validate(vertices, edges)
    return dec


# -- small helpers for the characterization --------------------------------


def even_degree_vertices(tree: Tree) -> set[int]:
    return {v for v in range(tree.n) if tree.degrees[v] % 2 == 0}


def odd_degree_vertices(tree: Tree) -> set[int]:
    return {v for v in range(tree.n) if tree.degrees[v] % 2 == 1}


def is_path(tree: Tree) -> bool:
    if tree.n <= 2:
        return True
    return sum(1 for d in tree.degrees if d == 1) == 2 and tree.max_degree <= 2


def has_perfect_matching_on(tree: Tree, vertices) -> bool:
    """Perfect matching of the induced subgraph T[S], |S| <= 8, by exhaustive
    search.  Odd |S| gives False by definition."""
    vs = sorted(set(vertices))
    if len(vs) > 8:
        raise TreeError("perfect-matching test limited to |S| <= 8")
    if len(vs) % 2 == 1:
        return False
    if not vs:
        return True
    edges = tree.induced_edges(vs)

    def rec(remaining: frozenset[int]) -> bool:
        if not remaining:
            return True
        v = min(remaining)
        for a, b in edges:
            if a == v and b in remaining:
                if rec(remaining - {a, b}):
                    return True
            elif b == v and a in remaining:
                if rec(remaining - {a, b}):
                    return True
        return False

    return rec(frozenset(vs))
