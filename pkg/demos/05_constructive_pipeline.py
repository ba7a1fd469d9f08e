"""The deterministic construction of a core embedding with a special colour.

For a group that is not elementary abelian 2, the pipeline places the
degree-atypical vertices by a simple star multiset (fixing the special
colour c* as the degree-weighted term), greedily adds the degree-1-mod-G
vertices, and finishes the leaves with a prescribed-sum selection that
forces the vertex sum to equal sum(G).  Over Z_2^k the odd/even-degree
split maps to standard basis blocks with both part sums zero.  When a
stage's precondition fails at small scale, the builder falls back to the
exhaustive core-condition search; every result is verified before return.
"""

from cayleysum import build_core_embedding, parse_group_spec
from cayleysum.construct import pipeline_core
from cayleysum.solver import check_core_condition
from cayleysum.trees import Tree, find_core, path_tree


def spider(legs):
    edges, nid = [], 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nid))
            prev = nid
            nid += 1
    return Tree.from_edges(nid, edges)


# cyclic case: the pipeline proper
z30 = parse_group_spec("Z30")
p30 = path_tree(30)
core = pipeline_core(p30)
res = build_core_embedding(p30, core, z30)
print(f"P30/Z30: method={res.method}, c_special={res.c_special}")
print("  both sum conditions verified:",
      check_core_condition(p30, sorted(core.vertices), z30, res.targets, res.phi))

# elementary abelian case: the basis-block construction needs rank >= |core|,
# so it comes alive at n = 2^10 with a three-leg spider (core of 10 vertices)
t = spider([341, 341, 341])
z10 = parse_group_spec("Z2^10")
core10 = find_core(t)
res10 = build_core_embedding(t, core10, z10)
print(f"spider(341,341,341)/Z2^10: method={res10.method}, core size {len(core10.vertices)}")

# tiny instances route to the exhaustive fallback and stay verified
z8 = parse_group_spec("Z8")
t8 = spider([3, 2, 2])
res8 = build_core_embedding(t8, find_core(t8), z8)
print(f"spider(3,2,2)/Z8: method={res8.method}, c_special={res8.c_special}")
