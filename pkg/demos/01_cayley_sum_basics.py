"""K_G basics: groups in canonical form, edge colours, rainbow checks.

The complete graph on a finite abelian group G colours edge xy with x+y.
A rainbow copy of a tree is an injective placement with all edge colours
distinct; over Z_n this is exactly the additive labelling behind the
harmonious-labelling story.
"""

from cayleysum import (
    Embedding,
    add,
    color,
    full_targets,
    parse_group_spec,
    sum_of_set,
    verify_rainbow,
    weighted_vertex_sum,
)
from cayleysum.cayley import edge_colors
from cayleysum.trees import path_tree

z4 = parse_group_spec("Z4")
z6 = parse_group_spec("Z6")
print(f"Z6 canonicalizes to {z6} (factors {z6.factors}), characteristic {z6.characteristic}")
print(f"colour of edge 1-2 in K_Z4: {color(z4, (1,), (2,))}")

p4 = path_tree(4)
good = Embedding(z4, {0: (2,), 1: (0,), 2: (1,), 3: (3,)})
bad = Embedding(z4, {0: (0,), 1: (1,), 2: (2,), 3: (3,)})

for name, emb in (("(2,0,1,3)", good), ("(0,1,2,3)", bad)):
    report = verify_rainbow(p4, emb, full_targets(z4))
    print(f"P4 -> {name}: colours {edge_colors(p4, emb)} rainbow={report.verdict}")
    if not report.verdict:
        print("  violations:", report.violations)

# the identity that powers everything downstream: the degree-weighted vertex
# sum equals the sum of the edge colours
ws = weighted_vertex_sum(p4, good)
cs = sum_of_set(z4, edge_colors(p4, good))
print(f"weighted vertex sum {ws} == edge-colour sum {cs}: {ws == cs}")

# translations shift colours by 2g, so they preserve rainbowness
from cayleysum import translate_embedding

shifted = translate_embedding(good, (1,))
print("translate by 1 stays rainbow:", verify_rainbow(p4, shifted, full_targets(z4)).verdict)
