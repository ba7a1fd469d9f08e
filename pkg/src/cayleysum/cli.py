"""Command-line interface.

Subcommands: classify, solve, core-embed, partition-zero-sum, odc, grid,
harmonious.  Trees come from edge-list files (first line n, then "u v"
lines) or from a comma-separated Prüfer sequence; groups from the Z-grammar
(Z8, Z4xZ2, Z2^3).  Exit codes follow the per-command conventions below.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cayley import TargetSets, full_targets
from .classify import classify
from .construct import (
    ConstructError,
    NoSolutionError,
    build_core_embedding,
    partition_zero_sum,
    pipeline_core,
)
from .groups import GroupSpec, parse_group_spec
from .harness import experiment_cross_check, find_harmonious, run_report
from .odc import translates_cover, verify_odc
from .solver import InconclusiveError, SearchConfig, count_embeddings, solve_exact
from .trees import Tree, from_prufer, parse_tree


def _add_tree_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--tree", metavar="FILE", help="edge-list tree file")
    g.add_argument("--prufer", metavar="SEQ", help="comma-separated Prüfer sequence")


def _load_tree(args) -> Tree:
    if args.tree:
        with open(args.tree) as fh:
            return parse_tree(fh.read())
    seq = [int(x) for x in args.prufer.split(",") if x.strip() != ""]
    return from_prufer(seq)


def _parse_colors(spec: GroupSpec, text: str) -> TargetSets:
    els = spec.elements()
    if text == "all":
        return full_targets(spec)
    if text == "all-minus-zero":
        return TargetSets.make(spec, els, [e for e in els if e != spec.identity()])
    idxs = [int(x) for x in text.split(",")]
    return TargetSets.make(spec, els, [spec.decode(i) for i in idxs])


def _emit(data) -> None:
    json.dump(data, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_classify(args) -> int:
    tree = _load_tree(args)
    spec = parse_group_spec(args.group)
    report = classify(tree, spec)
    _emit(report.to_json())
    return 1 if report.obstructed else 0


def cmd_solve(args) -> int:
    tree = _load_tree(args)
    spec = parse_group_spec(args.group)
    targets = _parse_colors(spec, args.colors)
    cfg = SearchConfig(node_limit=args.node_limit, symmetry_reduction=args.symmetry)
    try:
        if args.count:
            total = count_embeddings(tree, spec, targets, cfg)
            witness, stats = solve_exact(tree, spec, targets, cfg=cfg)
            _emit(
                {
                    "count": total,
                    "witness": witness.to_json() if witness else None,
                    "nodes": stats.nodes_expanded,
                }
            )
            return 0 if total > 0 else 1
        witness, stats = solve_exact(tree, spec, targets, cfg=cfg)
        if witness is None:
            _emit({"witness": None, "nodes": stats.nodes_expanded})
            return 1
        _emit({"witness": witness.to_json(), "nodes": stats.nodes_expanded})
        return 0
    except InconclusiveError as exc:
        _emit({"inconclusive": True, "nodes": exc.stats.nodes_expanded})
        return 2


def cmd_core_embed(args) -> int:
    tree = _load_tree(args)
    spec = parse_group_spec(args.group)
    core = pipeline_core(tree)
    try:
        result = build_core_embedding(tree, core, spec, node_limit=args.node_limit)
    except NoSolutionError as exc:
        _emit({"error": str(exc)})
        return 1
    except (ConstructError, InconclusiveError) as exc:
        _emit({"error": str(exc)})
        return 2
    out = result.to_json()
    out["core_vertices"] = sorted(core.vertices)
    _emit(out)
    return 0


def cmd_partition_zero_sum(args) -> int:
    spec = parse_group_spec(args.group)
    elems = [spec.decode(int(x)) for x in args.set.split(",")]
    sizes = [int(x) for x in args.sizes.split(",")]
    try:
        parts = partition_zero_sum(spec, elems, sizes)
    except ConstructError as exc:
        _emit({"error": str(exc)})
        return 1
    _emit({"parts": [[list(e) for e in part] for part in parts]})
    return 0


def cmd_odc(args) -> int:
    tree = _load_tree(args)
    spec = parse_group_spec(args.group)
    targets = TargetSets.make(
        spec, spec.elements(), [e for e in spec.elements() if e != spec.identity()]
    )
    try:
        witness, _stats = solve_exact(
            tree, spec, targets, cfg=SearchConfig(node_limit=args.node_limit)
        )
    except InconclusiveError as exc:
        _emit({"error": "search inconclusive", "nodes": exc.stats.nodes_expanded})
        return 1
    if witness is None:
        _emit({"error": "no rainbow embedding exists"})
        return 1
    cover = translates_cover(tree, witness)
    report = verify_odc(cover)
    out = cover.to_json()
    out["embedding"] = witness.to_json()
    out["verification"] = report.to_json()
    _emit(out)
    return 0 if report.verdict else 1


def cmd_grid(args) -> int:
    rows = experiment_cross_check(
        args.nmax, args.dmax, node_limit=args.node_limit, count=args.count
    )
    csv_text, summary = run_report(rows)
    with open(args.out, "w") as fh:
        fh.write(csv_text)
    _emit(summary)
    return 3 if summary["hard_violations"] else 0


def cmd_harmonious(args) -> int:
    tree = _load_tree(args)
    labelling = find_harmonious(tree, leaf=args.leaf, node_limit=args.node_limit)
    if labelling is None:
        _emit({"error": "no leaf deletion admits a rainbow bijection"})
        return 1
    _emit(labelling.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayleysum",
        description="Rainbow tree embeddings in Cayley-sum colourings of finite abelian groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="obstruction report (exit 1 when obstructed)")
    _add_tree_args(p)
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="exhaustive rainbow embedding search")
    _add_tree_args(p)
    p.add_argument("--group", required=True)
    p.add_argument("--colors", default="all", help="all | all-minus-zero | comma list of colour indices")
    p.add_argument("--count", action="store_true", help="count all embeddings")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--symmetry", action="store_true", help="translation symmetry reduction")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("core-embed", help="constructive core embedding with special colour")
    _add_tree_args(p)
    p.add_argument("--group", required=True)
    p.add_argument("--node-limit", type=int, default=None)
    p.set_defaults(func=cmd_core_embed)

    p = sub.add_parser("partition-zero-sum", help="zero-sum partition of a set of elements")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True, help="comma list of element indices")
    p.add_argument("--sizes", required=True, help="comma list of part sizes")
    p.set_defaults(func=cmd_partition_zero_sum)

    p = sub.add_parser("odc", help="orthogonal double cover from translates")
    _add_tree_args(p)
    p.add_argument("--group", required=True, help="must be Z2^k")
    p.add_argument("--node-limit", type=int, default=None)
    p.set_defaults(func=cmd_odc)

    p = sub.add_parser("grid", help="full cross-check grid, CSV + summary")
    p.add_argument("--nmax", type=int, default=9)
    p.add_argument("--dmax", type=int, default=8)
    p.add_argument("--out", required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--node-limit", type=int, default=None)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("harmonious", help="harmonious labelling via the rainbow bridge")
    _add_tree_args(p)
    p.add_argument("--leaf", type=int, default=None)
    p.add_argument("--node-limit", type=int, default=None)
    p.set_defaults(func=cmd_harmonious)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        _emit({"error": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
