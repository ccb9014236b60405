"""
A hybrid presentation of 2^4:A5
===============================

The affine group on 16 points has an elementary abelian normal subgroup of
order 16. Conjugation on it gives a faithful action of A5 on vectors; the
radical is described by a PC presentation and the quotient by permutations.
"""

import json
import random
from ctbl.groups import affine_2_4_a5
from ctbl.hybrid import build_from_perm_group, export_presentation, find_seed, verify_presentation

G = affine_2_4_a5()
seed = find_seed(G)
H = build_from_perm_group(G, seed)
print("normal subgroup", H.report.normal_subgroup_order, "action on", H.report.quotient_degree, "vectors")
print("order", H.order, "=", H.quotient_order, "*", H.radical.order)

# the exported record: quotient relators with tails, action, pc relators
record = export_presentation(H)
print(json.dumps({k: record[k] for k in ("quotient_relators", "tails")}, indent=1))

# check the relations on the permutation images of the generators
images = [H.to_permutation(g) for g in H.generators()]
print(verify_presentation(record, images, G.order()))

# hybrid products agree with permutation products
rng = random.Random(1)
pairs = [(H.random_element(rng), H.random_element(rng)) for _ in range(1000)]
print(all(H.to_permutation(H.multiply(a, b)) == H.to_permutation(a) * H.to_permutation(b) for a, b in pairs))
