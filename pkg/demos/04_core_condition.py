"""The core condition: a small certificate that decides embeddability.

A core samples every degree class of the tree (all of a class, or at least
six inside and six outside).  The decision condition asks for a rainbow
embedding phi of the core with two exact sum constraints:

    sum over the core of deg_T(v) * phi(v) = sum(C_target)
    sum of phi over the core              = sum(V_target)

For large bounded-degree trees this is equivalent to the existence of a
full rainbow embedding; at desk scale the forward direction (embedding =>
certificate) is exact and checked, while the reverse is recorded.
"""

from cayleysum import (
    TargetSets,
    core_condition_search,
    core_certificate_from_embedding,
    extend_to_pseudoembedding,
    find_core,
    full_targets,
    is_pseudoembedding,
    parse_group_spec,
    solve_exact,
    solve_with_core,
)
from cayleysum.cayley import edge_colors
from cayleysum.construct import pipeline_core
from cayleysum.trees import path_tree

z4 = parse_group_spec("Z4")
p4 = path_tree(4)
targets = TargetSets.make(z4, z4.elements(), [(0,), (1,), (2,)])
phi = core_condition_search(p4, range(4), z4, targets)
print("P4/Z4 core witness for colours {0,1,2}:", sorted(phi.assignment.items()))
w, _ = solve_with_core(p4, z4, targets, phi)
print("extends to a full embedding:", w is not None)

# certificate extraction from a solved instance (path on 15 over Z15)
z15 = parse_group_spec("Z15")
p15 = path_tree(15)
f, _ = solve_exact(p15, z15, full_targets(z15))
core = pipeline_core(p15)
cert = core_certificate_from_embedding(p15, f, core, z15)
print(f"certificate on core {sorted(core.vertices)}: "
      f"{sum(1 for v in core.vertices if cert.assignment[v] != f.assignment[v])} "
      "vertices re-placed by a prescribed-sum triple")

# a core witness extends to a pseudoembedding (image = V_target, weighted
# sum = colour-set sum) by zero-sum partitioning of the leftover elements
from cayleysum import build_core_embedding

z20 = parse_group_spec("Z20")
p20 = path_tree(20)
core20 = pipeline_core(p20)
res = build_core_embedding(p20, core20, z20)
h = extend_to_pseudoembedding(p20, core20, res.phi, res.targets)
print("pseudoembedding of P20 into Z20:", is_pseudoembedding(p20, h, res.targets))
