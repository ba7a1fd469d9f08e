"""Experiment grid, classifier-vs-solver cross-checks, and the harmonious
labelling bridge.

The hard soundness invariant of every run: an obstructed instance must never
come back `found`.  Inconclusive rows (node-limit) count toward neither
verdict.  The bridge turns a rainbow bijection of a leaf-deleted tree onto
Z_n into a harmonious labelling of the full tree on n+1 vertices.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass

from .cayley import TargetSets, all_minus_zero_targets, full_targets
from .classify import classify
from .groups import GroupSpec, enumerate_abelian_groups, is_elementary_two
from .solver import InconclusiveError, SearchConfig, count_embeddings, solve_exact
from .trees import Tree, canonical_id, delete_vertex, enumerate_trees


class HarnessError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    group: str
    tree_id: str
    delta: int
    o1: bool
    o2: bool
    o3: bool
    o4: bool
    solver_result: str  # found | none | inconclusive
    embedding_count: int | None
    nodes: int
    elapsed_ms: float

    @property
    def obstructed(self) -> bool:
        return self.o1 or self.o2 or self.o3 or self.o4

    @property
    def hard_violation(self) -> bool:
        return self.obstructed and self.solver_result == "found"


def default_targets(spec: GroupSpec, color_policy: str = "default") -> TargetSets:
    """Colour policy: Z_2^k (rank >= 2) searches G minus the identity colour
    (no edge carries it there anyway); other groups search the full colour
    set, where a spanning tree necessarily leaves one colour unused."""
    if color_policy == "all":
        return full_targets(spec)
    if color_policy == "all-minus-zero":
        return all_minus_zero_targets(spec)
    if color_policy != "default":
        raise HarnessError(f"unknown colour policy {color_policy!r}")
    el2, rank = is_elementary_two(spec)
    if el2 and rank >= 2:
        return all_minus_zero_targets(spec)
    return full_targets(spec)


def run_instance(
    tree: Tree,
    spec: GroupSpec,
    color_policy: str = "default",
    node_limit: int | None = None,
    count: bool = False,
) -> ExperimentRow:
    report = classify(tree, spec)
    targets = default_targets(spec, color_policy)
    cfg = SearchConfig(node_limit=node_limit)
    start = time.perf_counter()
    emb_count = None
    try:
        witness, stats = solve_exact(tree, spec, targets, cfg=cfg)
        result = "found" if witness is not None else "none"
        nodes = stats.nodes_expanded
        if count:
            emb_count = count_embeddings(tree, spec, targets, SearchConfig(node_limit=node_limit, mode="count"))
    except InconclusiveError as exc:
        result = "inconclusive"
        nodes = exc.stats.nodes_expanded
    elapsed_ms = (time.perf_counter() - start) * 1000
    flags = report.flags()
    return ExperimentRow(
        n=tree.n,
        group=str(spec),
        tree_id=canonical_id(tree),
        delta=tree.max_degree,
        o1=flags["o1"],
        o2=flags["o2"],
        o3=flags["o3"],
        o4=flags["o4"],
        solver_result=result,
        embedding_count=emb_count,
        nodes=nodes,
        elapsed_ms=elapsed_ms,
    )


def experiment_cross_check(
    n_max: int,
    delta_max: int,
    color_policy: str = "default",
    node_limit: int | None = None,
    count: bool = False,
) -> list[ExperimentRow]:
    """Full grid: every n <= n_max, every abelian group of order n, every
    tree with Delta <= delta_max."""
    if n_max > 9 and node_limit is None:
        raise HarnessError("grids beyond n=9 need an explicit node limit")
    rows = []
    for n in range(1, n_max + 1):
        trees = enumerate_trees(n, min(delta_max, max(n - 1, 1)))
        specs = enumerate_abelian_groups(n)
        for tree in trees:
            for spec in specs:
                rows.append(run_instance(tree, spec, color_policy, node_limit, count))
    return rows


def summarize(rows: list[ExperimentRow]) -> dict:
    found = sum(1 for r in rows if r.solver_result == "found")
    none = sum(1 for r in rows if r.solver_result == "none")
    inconclusive = sum(1 for r in rows if r.solver_result == "inconclusive")
    obstructed = sum(1 for r in rows if r.obstructed)
    violations = sum(1 for r in rows if r.hard_violation)
    clear = [r for r in rows if not r.obstructed]
    clear_found = sum(1 for r in clear if r.solver_result == "found")
    clear_decided = sum(1 for r in clear if r.solver_result != "inconclusive")
    return {
        "rows": len(rows),
        "found": found,
        "none": none,
        "inconclusive": inconclusive,
        "obstructed": obstructed,
        "hard_violations": violations,
        "converse_found_rate": (clear_found / clear_decided) if clear_decided else None,
    }


CSV_COLUMNS = [
    "n", "group", "tree_id", "delta",
    "o1", "o2", "o3", "o4",
    "solver_result", "count", "nodes", "ms",
]


def run_report(rows: list[ExperimentRow]) -> tuple[str, dict]:
    """Deterministic CSV (sorted by n, group, tree_id) plus a JSON-ready
    summary.  Duplicate instance keys are rejected."""
    keys = [(r.n, r.group, r.tree_id) for r in rows]
    if len(set(keys)) != len(keys):
        dupes = sorted({k for k in keys if keys.count(k) > 1})
        raise HarnessError(f"duplicate rows for {dupes[:3]}")
    ordered = sorted(rows, key=lambda r: (r.n, r.group, r.tree_id))
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for r in ordered:
        writer.writerow(
            [
                r.n, r.group, r.tree_id, r.delta,
                int(r.o1), int(r.o2), int(r.o3), int(r.o4),
                r.solver_result,
                "" if r.embedding_count is None else r.embedding_count,
                r.nodes, f"{r.elapsed_ms:.3f}",
            ]
        )
    return buf.getvalue(), summarize(rows)


# -- harmonious labelling bridge --------------------------------------------


@dataclass(frozen=True)
class HarmoniousLabelling:
    labels: dict[int, int]  # vertex -> residue mod n (n = edge count)
    repeated_label: int

    def to_json(self) -> dict:
        return {
            "labels": [[v, l] for v, l in sorted(self.labels.items())],
            "repeated_label": self.repeated_label,
        }


def _crt_int(spec: GroupSpec, a) -> int:
    """The integer in [0, n) matching a cyclic-group element through CRT."""
    if spec.characteristic != spec.order:
        raise HarnessError("CRT integer form needs a cyclic group")
    n = spec.order
    x, mod = 0, 1
    for r, q in zip(a, spec.factors):
        # solve x' = x (mod mod), x' = r (mod q)
        inv = pow(mod, -1, q)
        x = x + mod * ((r - x) * inv % q)
        mod *= q
    return x % n


def int_to_cyclic(spec: GroupSpec, value: int):
    return tuple(value % q for q in spec.factors)


def check_harmonious(tree: Tree, labels: dict[int, int]) -> bool:
    """n+1 vertices labelled by Z_n: exactly one label used twice and all n
    edge sums distinct mod n."""
    n = tree.n - 1
    if set(labels) != set(range(tree.n)):
        return False
    if n == 0:
        return False
    values = sorted(v % n for v in labels.values())
    from collections import Counter

    counts = Counter(values)
    doubled = [v for v, c in counts.items() if c == 2]
    if len(doubled) != 1 or any(c > 2 for c in counts.values()):
        return False
    sums = [(labels[u] + labels[v]) % n for u, v in tree.edges]
    return len(set(sums)) == n


def harmonious_from_rainbow(
    tree_plus: Tree, leaf: int, f: dict[int, int]
) -> HarmoniousLabelling:
    """Extend a rainbow bijection of the leaf-deleted tree onto Z_n by
    labelling the leaf c - f(parent), where c is the unique unused colour."""
    n = tree_plus.n - 1
    if tree_plus.degrees[leaf] != 1:
        raise HarnessError(f"vertex {leaf} is not a leaf")
    rest = set(range(tree_plus.n)) - {leaf}
    if set(f) != rest:
        raise HarnessError("labelling must cover exactly the leaf-deleted vertices")
    if sorted(v % n for v in f.values()) != list(range(n)):
        raise HarnessError("labelling is not a bijection onto Z_n")
    sums = [
        (f[u] + f[v]) % n for u, v in tree_plus.edges if leaf not in (u, v)
    ]
    if len(set(sums)) != n - 1:
        raise HarnessError("labelling is not rainbow")
    unused = (set(range(n)) - set(sums)).pop()
    parent = tree_plus.adjacency[leaf][0]
    labels = {v: f[v] % n for v in f}
    labels[leaf] = (unused - f[parent]) % n
    result = HarmoniousLabelling(labels, repeated_label=labels[leaf])
    if not check_harmonious(tree_plus, labels):
        raise HarnessError("internal error: produced labelling is not harmonious")
    return result


def find_harmonious(
    tree_plus: Tree, leaf: int | None = None, node_limit: int | None = None
) -> HarmoniousLabelling | None:
    """Solve the leaf-deleted tree over Z_n and bridge; tries every leaf in
    index order when none is given.  None when no leaf deletion admits a
    rainbow bijection."""
    n = tree_plus.n - 1
    if n < 1:
        raise HarnessError("need at least one edge")
    spec = enumerate_abelian_groups(n)[0]  # the cyclic group comes first
    if spec.characteristic != spec.order:
        raise HarnessError("internal error: expected the cyclic group first")
    leaves = [leaf] if leaf is not None else [v for v in range(tree_plus.n) if tree_plus.degrees[v] == 1]
    for lf in leaves:
        if tree_plus.degrees[lf] != 1:
            raise HarnessError(f"vertex {lf} is not a leaf")
        reduced, remap = delete_vertex(tree_plus, lf)
        witness, _stats = solve_exact(
            reduced, spec, full_targets(spec), cfg=SearchConfig(node_limit=node_limit)
        )
        if witness is None:
            continue
        f = {
            old: _crt_int(spec, witness.assignment[new])
            for old, new in remap.items()
        }
        return harmonious_from_rainbow(tree_plus, lf, f)
    return None
