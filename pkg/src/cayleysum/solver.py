"""Exhaustive backtracking search for rainbow tree embeddings in K_G.

All bookkeeping runs over dense mixed-radix element indices with Python-int
bitsets for used vertices/colours.  Node limits produce a distinct
"inconclusive" outcome; a resource cap never masquerades as nonexistence.
Also houses the core-condition decision search (the polynomial-time test
behind the core equivalence) and an independent all-injections counting
oracle used to cross-check the backtracker.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .cayley import Embedding, TargetSets, verify_rainbow
from .groups import GroupSpec, add as gadd, addition_table, is_elementary_two, scalar_mul, sum_of_set
from .trees import Tree


class SolverError(ValueError):
    pass


class InconclusiveError(RuntimeError):
    """Node limit exhausted before the search completed."""

    def __init__(self, stats: "SearchStats"):
        super().__init__(f"node limit reached after {stats.nodes_expanded} nodes")
        self.stats = stats


@dataclass
class SearchConfig:
    vertex_order: str = "bfs-from-max-degree-root"  # or "most-constrained"
    symmetry_reduction: bool = False
    node_limit: int | None = None
    mode: str = "decide"  # decide | count | enumerate

    def __post_init__(self):
        if self.vertex_order not in ("bfs-from-max-degree-root", "most-constrained"):
            raise SolverError(f"unknown vertex order {self.vertex_order!r}")
        if self.mode not in ("decide", "count", "enumerate"):
            raise SolverError(f"unknown mode {self.mode!r}")


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    solutions_found: int = 0
    elapsed: float = 0.0


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def effective_color_mask(spec: GroupSpec, targets: TargetSets) -> int:
    """c_target as a bitmask; over Z_2^k a requested full-group colour set
    drops the identity automatically (colour 0 occurs on no edge there)."""
    n = spec.order
    cmask = _mask(spec.encode(c) for c in targets.c_target)
    el2, rank = is_elementary_two(spec)
    if el2 and rank >= 1 and cmask == (1 << n) - 1:
        cmask &= ~1  # identity has index 0
    return cmask


def translation_symmetry_permitted(spec: GroupSpec, targets: TargetSets) -> bool:
    """Translating an embedding by g shifts every colour by 2g, so the
    reduction is sound iff v_target is all of G and c_target is a union of
    cosets of the subgroup 2G."""
    n = spec.order
    if len(targets.v_target) != n:
        return False
    two_g = {spec.encode(tuple((2 * x) % q for x, q in zip(a, spec.factors))) for a in spec.elements()}
    add = addition_table(spec)
    cset = {spec.encode(c) for c in targets.c_target}
    return all(add[c][h] in cset for c in cset for h in two_g)


def _search(
    tree: Tree,
    spec: GroupSpec,
    targets: TargetSets,
    partial: Embedding | None,
    cfg: SearchConfig,
    root_fix: int | None,
):
    """Core backtracker.  Returns (witness_assignment or None, count, stats,
    solutions) where solutions is populated only in enumerate mode."""
    n_tree = tree.n
    n = spec.order
    add = addition_table(spec)
    vmask = _mask(spec.encode(v) for v in targets.v_target)
    cmask = effective_color_mask(spec, targets)
    adjacency = tree.adjacency

    assign = [-1] * n_tree
    used_v = 0
    used_c = 0
    stats = SearchStats()

    seeds = []
    if partial is not None:
        for v, a in partial.assignment.items():
            idx = spec.encode(a)
            if not (vmask >> idx) & 1:
                raise SolverError(f"partial image {a} outside v_target")
            assign[v] = idx
            used_v |= 1 << idx
            seeds.append(v)
        for u, v in tree.edges:
            if assign[u] >= 0 and assign[v] >= 0:
                c = add[assign[u]][assign[v]]
                if not (cmask >> c) & 1 or (used_c >> c) & 1:
                    raise SolverError("partial embedding is not rainbow inside the targets")
                used_c |= 1 << c

    # assignment order: each new vertex has an already-assigned neighbour
    if seeds:
        frontier_roots = sorted(seeds)
    else:
        root = max(range(n_tree), key=lambda v: (tree.degrees[v], -v))
        frontier_roots = [root]
    order: list[int] = []
    visited = [False] * n_tree
    queue = list(frontier_roots)
    for s in queue:
        visited[s] = True
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        if assign[u] < 0:
            order.append(u)
        for w in adjacency[u]:
            if not visited[w]:
                visited[w] = True
                queue.append(w)
    if not all(visited):
        raise SolverError("tree is not connected (unreachable vertices)")

    positions = len(order)
    node_limit = cfg.node_limit
    mode = cfg.mode
    most_constrained = cfg.vertex_order == "most-constrained"

    witness: list[int] | None = None
    solutions: list[list[int]] = []
    count = 0

    def candidates(v: int, used_v: int, used_c: int):
        nbr_imgs = [assign[w] for w in adjacency[v] if assign[w] >= 0]
        out = []
        avail = vmask & ~used_v
        g = 0
        m = avail
        while m:
            low = m & -m
            g = low.bit_length() - 1
            m ^= low
            cm = 0
            ok = True
            for a in nbr_imgs:
                c = add[g][a]
                bit = 1 << c
                if not (cmask >> c) & 1 or (used_c & bit) or (cm & bit):
                    ok = False
                    break
                cm |= bit
            if ok:
                out.append((g, cm))
        return out

    remaining = set(order)

    def pick_vertex() -> int:
        best_v, best = -1, None
        for v in sorted(remaining):
            if not any(assign[w] >= 0 for w in adjacency[v]) and len(remaining) != n_tree:
                continue
            cands = candidates(v, used_v, used_c)
            if best is None or len(cands) < best:
                best, best_v = len(cands), v
                if best == 0:
                    break
        return best_v

    def rec(pos: int, used_v: int, used_c: int) -> bool:
        nonlocal count, witness
        if pos == positions:
            count += 1
            if witness is None:
                witness = assign.copy()
            if mode == "enumerate":
                solutions.append(assign.copy())
            return mode == "decide"
        if most_constrained:
            v = pick_vertex()
            if v < 0:
                return False
        else:
            v = order[pos]
        fixed = root_fix if (pos == 0 and root_fix is not None and partial is None) else None
        for g, cm in candidates(v, used_v, used_c):
            if fixed is not None and g != fixed:
                continue
            stats.nodes_expanded += 1
            if node_limit is not None and stats.nodes_expanded > node_limit:
                raise InconclusiveError(stats)
            assign[v] = g
            if most_constrained:
                remaining.discard(v)
            done = rec(pos + 1, used_v | (1 << g), used_c | cm)
            assign[v] = -1
            if most_constrained:
                remaining.add(v)
            if done:
                return True
        return False

    if positions == 0:
        count = 1
        witness = assign.copy()
        if mode == "enumerate":
            solutions.append(assign.copy())
    else:
        start = time.perf_counter()
        try:
            rec(0, used_v, used_c)
        finally:
            stats.elapsed = time.perf_counter() - start
            stats.solutions_found = count

    stats.solutions_found = count
    return witness, count, stats, solutions


def solve_exact(
    tree: Tree,
    spec: GroupSpec,
    targets: TargetSets,
    partial: Embedding | None = None,
    cfg: SearchConfig | None = None,
) -> tuple[Embedding | None, SearchStats]:
    """Decide-mode search: a witness rainbow embedding extending `partial`,
    or None after a complete search.  Raises InconclusiveError on node-limit
    exhaustion."""
    cfg = cfg or SearchConfig()
    if tree.n > len(targets.v_target):
        raise SolverError("tree larger than v_target")
    root_fix = None
    if cfg.symmetry_reduction and partial is None:
        if not translation_symmetry_permitted(spec, targets):
            raise SolverError(
                "symmetry reduction needs v_target = G and a 2G-coset-closed c_target"
            )
        root_fix = 0
    witness, _count, stats, _ = _search(tree, spec, targets, partial, cfg, root_fix)
    if witness is None:
        return None, stats
    emb = Embedding(spec, {v: spec.decode(witness[v]) for v in range(tree.n)})
    report = verify_rainbow(tree, emb, _effective_targets(spec, targets))
    if not report.verdict:
        raise SolverError(f"internal error: witness failed verification: {report.violations}")
    return emb, stats


def _effective_targets(spec: GroupSpec, targets: TargetSets) -> TargetSets:
    cmask = effective_color_mask(spec, targets)
    cset = [spec.decode(i) for i in range(spec.order) if (cmask >> i) & 1]
    return TargetSets.make(spec, targets.v_target, cset)


def count_embeddings(
    tree: Tree,
    spec: GroupSpec,
    targets: TargetSets,
    cfg: SearchConfig | None = None,
) -> int:
    """Exact number of rainbow embeddings of the tree into the targets."""
    cfg = cfg or SearchConfig(mode="count")
    if cfg.mode != "count":
        cfg = SearchConfig(cfg.vertex_order, cfg.symmetry_reduction, cfg.node_limit, "count")
    root_fix = None
    factor = 1
    if cfg.symmetry_reduction:
        if not translation_symmetry_permitted(spec, targets):
            raise SolverError(
                "symmetry reduction needs v_target = G and a 2G-coset-closed c_target"
            )
        root_fix = 0
        factor = spec.order
    _w, count, _stats, _ = _search(tree, spec, targets, None, cfg, root_fix)
    return count * factor


def enumerate_embeddings(
    tree: Tree,
    spec: GroupSpec,
    targets: TargetSets,
    cfg: SearchConfig | None = None,
) -> list[Embedding]:
    cfg = cfg or SearchConfig(mode="enumerate")
    _w, _count, _stats, sols = _search(tree, spec, targets, None, cfg, None)
    return [
        Embedding(spec, {v: spec.decode(s[v]) for v in range(tree.n)}) for s in sols
    ]


def naive_count_embeddings(tree: Tree, spec: GroupSpec, targets: TargetSets) -> int:
    """Independent counting oracle: enumerate every injection of V(T) into
    v_target outright (no pruning) and test the rainbow conditions with
    numpy.  Only sensible at small n."""
    n_tree = tree.n
    vt = sorted(spec.encode(v) for v in targets.v_target)
    if len(vt) < n_tree:
        return 0
    cmask_int = effective_color_mask(spec, targets)
    allowed = np.zeros(spec.order, dtype=bool)
    for i in range(spec.order):
        if (cmask_int >> i) & 1:
            allowed[i] = True
    perms = np.array(list(permutations(vt, n_tree)), dtype=np.int64)
    if perms.size == 0:
        return 0
    add = np.array(addition_table(spec), dtype=np.int64)
    if tree.n == 1:
        return len(perms)
    eu = np.array([u for u, _ in tree.edges])
    ev = np.array([v for _, v in tree.edges])
    colors = add[perms[:, eu], perms[:, ev]]
    ok = allowed[colors].all(axis=1)
    srt = np.sort(colors, axis=1)
    distinct = (np.diff(srt, axis=1) != 0).all(axis=1) if colors.shape[1] > 1 else np.ones(len(perms), dtype=bool)
    return int((ok & distinct).sum())


# -- core condition (the polynomial-time decision) -------------------------


def check_core_condition(
    tree: Tree, core_vertices, spec: GroupSpec, targets: TargetSets, phi: Embedding
) -> bool:
    """Does phi witness the core condition?  Rainbow on the induced core
    forest inside the targets, with the two sum constraints:
    sum of d_T(v) phi(v) = sum(c_target) and sum of phi = sum(v_target)."""
    core_vertices = sorted(core_vertices)
    if set(phi.assignment) != set(core_vertices):
        return False
    add_tab = addition_table(spec)
    cmask = effective_color_mask(spec, targets)
    seen = 0
    for u, v in tree.induced_edges(core_vertices):
        c = add_tab[spec.encode(phi.assignment[u])][spec.encode(phi.assignment[v])]
        if not (cmask >> c) & 1 or (seen >> c) & 1:
            return False
        seen |= 1 << c
    if any(phi.assignment[v] not in targets.v_target for v in core_vertices):
        return False
    s1 = spec.identity()
    s2 = spec.identity()
    for v in core_vertices:
        s1 = gadd(spec, s1, phi.assignment[v])
        s2 = gadd(spec, s2, scalar_mul(spec, tree.degrees[v], phi.assignment[v]))
    return s1 == sum_of_set(spec, targets.v_target) and s2 == sum_of_set(
        spec, targets.c_target
    )


def core_condition_search(
    tree: Tree,
    core_vertices,
    spec: GroupSpec,
    targets: TargetSets,
    node_limit: int | None = None,
) -> Embedding | None:
    """Exhaustive search for a core-condition witness phi, or None.

    phi ranges over injections of the core vertices into v_target that are
    rainbow on the induced core forest; the two sum constraints prune the
    final vertex (its image is forced by the vertex-sum constraint)."""
    core_vertices = sorted(set(core_vertices))
    if not core_vertices:
        raise SolverError("empty core")
    n = spec.order
    add = addition_table(spec)
    vt = [i for i in range(n) if spec.decode(i) in targets.v_target]
    vmask = _mask(vt)
    cmask = effective_color_mask(spec, targets)
    deg = tree.degrees

    s1_target = spec.encode(sum_of_set(spec, targets.v_target))
    s2_target = spec.encode(sum_of_set(spec, targets.c_target))

    core_set = set(core_vertices)
    nbrs = {
        v: [w for w in tree.adjacency[v] if w in core_set] for v in core_vertices
    }
    # order: BFS inside each induced component, components by lowest vertex
    order: list[int] = []
    seen: set[int] = set()
    for v in core_vertices:
        if v in seen:
            continue
        seen.add(v)
        comp = [v]
        qi = 0
        while qi < len(comp):
            u = comp[qi]
            qi += 1
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
        order.extend(comp)

    k = len(order)
    pos_of = {v: i for i, v in enumerate(order)}
    earlier = {v: [w for w in nbrs[v] if pos_of[w] < pos_of[v]] for v in order}
    assign: dict[int, int] = {}
    nodes = 0

    neg_table = [spec.encode(tuple((-x) % q for x, q in zip(spec.decode(i), spec.factors))) for i in range(n)]
    dmul = {}
    for v in order:
        d = deg[v]
        if d not in dmul:
            dmul[d] = [
                spec.encode(tuple((d * x) % q for x, q in zip(spec.decode(i), spec.factors)))
                for i in range(n)
            ]

    def rec(pos: int, used_v: int, used_c: int, s1: int, s2: int):
        nonlocal nodes
        if pos == k:
            return dict(assign) if (s1 == s1_target and s2 == s2_target) else None
        v = order[pos]
        if pos == k - 1:
            # vertex sum forces the last image
            g = add[s1_target][neg_table[s1]]
            cand = [g] if (vmask >> g) & 1 and not (used_v >> g) & 1 else []
        else:
            avail = vmask & ~used_v
            cand = []
            m = avail
            while m:
                low = m & -m
                cand.append(low.bit_length() - 1)
                m ^= low
        for g in cand:
            cm = 0
            ok = True
            for w in earlier[v]:
                c = add[g][assign[w]]
                bit = 1 << c
                if not (cmask >> c) & 1 or (used_c & bit) or (cm & bit):
                    ok = False
                    break
                cm |= bit
            if not ok:
                continue
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                st = SearchStats(nodes_expanded=nodes)
                raise InconclusiveError(st)
            assign[v] = g
            res = rec(
                pos + 1,
                used_v | (1 << g),
                used_c | cm,
                add[s1][g],
                add[s2][dmul[deg[v]][g]],
            )
            del assign[v]
            if res is not None:
                return res
        return None

    res = rec(0, 0, 0, spec.encode(spec.identity()), spec.encode(spec.identity()))
    if res is None:
        return None
    phi = Embedding(spec, {v: spec.decode(g) for v, g in res.items()})
    if not check_core_condition(tree, core_vertices, spec, targets, phi):
        raise SolverError("internal error: core witness failed verification")
    return phi


def solve_with_core(
    tree: Tree,
    spec: GroupSpec,
    targets: TargetSets,
    phi: Embedding,
    cfg: SearchConfig | None = None,
) -> tuple[Embedding | None, SearchStats]:
    """Complete search for a full rainbow embedding extending a core witness.

    The extension can fail at desk scale even when the core condition holds
    (the equivalence is asymptotic); failure is an ordinary None outcome."""
    if not check_core_condition(tree, sorted(phi.assignment), spec, targets, phi):
        raise SolverError("phi does not satisfy the core condition")
    return solve_exact(tree, spec, targets, partial=phi, cfg=cfg)
