"""Two applications: orthogonal double covers and harmonious labellings.

Over Z_2^k every translate of a rainbow spanning tree keeps its colours
(2g = 0), and the 2^k translates pairwise share exactly one edge while
covering each edge of K_{2^k} twice.  Over Z_n, a rainbow bijection of a
leaf-deleted tree extends to a harmonious labelling of the full tree by
giving the leaf the label c - f(parent), c the unused colour.
"""

from cayleysum import (
    all_minus_zero_targets,
    check_harmonious,
    find_harmonious,
    parse_group_spec,
    solve_exact,
    translates_cover,
    verify_odc,
)
from cayleysum.trees import enumerate_trees, path_tree, star_tree, tree_from_ahu

# K4 covered by stars: the canonical picture
z22 = parse_group_spec("Z2^2")
star = star_tree(4)
w, _ = solve_exact(star, z22, all_minus_zero_targets(z22))
cover = translates_cover(star, w)
print("K4 star cover:", verify_odc(cover).verdict)
for g, copy in enumerate(cover.copies):
    print(f"  copy {g}: {copy}  (the star at vertex {g})")

# an 8-vertex non-star tree over Z2^3
t8 = tree_from_ahu("((((())))(())())")
z23 = parse_group_spec("Z2^3")
w8, _ = solve_exact(t8, z23, all_minus_zero_targets(z23))
report = verify_odc(translates_cover(t8, w8))
print(f"8-vertex tree cover of K8: verdict={report.verdict}")

# the harmonious bridge, on every tree with up to 7 edges
total = 0
for n_plus in range(2, 9):
    for t in enumerate_trees(n_plus, max(n_plus - 1, 1)):
        lab = find_harmonious(t)
        assert lab is not None and check_harmonious(t, lab.labels)
        total += 1
print(f"harmonious labellings found and checked for {total} trees")
lab = find_harmonious(path_tree(5))
print("P5 example:", sorted(lab.labels.items()), "repeated label", lab.repeated_label)
