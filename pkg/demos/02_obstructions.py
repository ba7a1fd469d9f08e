"""The four obstruction families, each confirmed by complete search.

o1: paths over Z_2^k (the classic parity argument) --
    the colour set would be all of G minus 0, which sums to 0, but a path's
    colour sum is the endpoint sum, never 0.
o2: exactly two even-degree vertices over Z_2^k.
o3: an adjacent pair of characteristic-divisible degrees with every other
    degree = 1 mod G, over any abelian group.
o4: exactly four even-degree vertices carrying a perfect matching, over Z_2^k.
"""

from cayleysum import (
    all_minus_zero_targets,
    classify,
    count_embeddings,
    full_targets,
    parse_group_spec,
)
from cayleysum.trees import Tree, path_tree

instances = []

z22 = parse_group_spec("Z2^2")
instances.append(("P4 over Z2^2", path_tree(4), z22, all_minus_zero_targets(z22)))

z23 = parse_group_spec("Z2^3")
o4_tree = Tree.from_edges(8, [(0, 1), (0, 2), (2, 3), (1, 4), (0, 5), (0, 6), (3, 7)])
instances.append(("4-even-with-matching over Z2^3", o4_tree, z23, all_minus_zero_targets(z23)))

z33 = parse_group_spec("Z3^2")
o3_tree = Tree.from_edges(
    9, [(0, 1), (1, 2), (0, 3), (0, 4), (1, 5), (2, 6), (2, 7), (2, 8)]
)
instances.append(("deg-3/deg-3 pair over Z3^2", o3_tree, z33, full_targets(z33)))

for name, tree, spec, targets in instances:
    report = classify(tree, spec)
    count = count_embeddings(tree, spec, targets)
    print(f"{name}: flags={report.flags()} -> embeddings by complete search: {count}")
    assert report.obstructed and count == 0

# the same path is fine over the cyclic group of the same order
z4 = parse_group_spec("Z4")
print(
    "P4 over Z4: flags:", classify(path_tree(4), z4).flags(),
    "count:", count_embeddings(path_tree(4), z4, full_targets(z4)),
)
