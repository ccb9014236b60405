"""
The character table of A5
=========================

Classes, power maps and irreducible characters of the alternating group
on five points, computed by Brauer induction and LLL reduction.
"""

# the group and its table header
from ctbl.groups import alternating
from ctbl.classes import table_header
G = alternating(5)
header = table_header(G)
print("order", G.order(), "classes", len(header))

# one row per class: element order, class size, centralizer order
for c in header.classes:
    print(c.rep_order, c.size, c.centralizer_order)

# squaring swaps the two classes of 5-cycles
print("2-power map", header.power_maps[2])

# the irreducible characters, exact cyclotomic values
from ctbl.pipeline import brauer_table
result = brauer_table(G, header)
for chi in result.irreducibles:
    print(" | ".join(chi.to_strings()))

# the golden ratio appears on the 5-classes of the two degree-3 characters
from ctbl.cyclotomic import root_of_unity as E
golden = E(5) + E(5, 4)
print(golden * golden + golden - 1 == 0)

# both orthogonality relations hold exactly
from ctbl.pipeline import check_orthogonality
print(check_orthogonality(result.irreducibles, header))
