"""
Characters of p-groups and value shortcuts
==========================================

Each irreducible character of a p-group is induced from a linear
character of a subgroup C with kernel K. When a suitable normal subgroup
N sits inside K, many values follow from values already computed.
"""

from ctbl.groups import p_group_corpus
from ctbl.pgroup import PGroupData, build_pairs, characters_from_pair

# count directly computed values against values filled in by shortcut
for name, P in p_group_corpus().items():
    data = PGroupData(P)
    stats = {}
    pairs = build_pairs(P, data)
    n = 0
    for pair in pairs:
        n += len(characters_from_pair(pair, P, data=data, stats=stats))
    print("%-12s |P|=%4d pairs=%3d characters=%3d direct=%4d shortcut=%4d" % (
        name, P.order(), len(pairs), n, stats.get("direct", 0), stats.get("shortcut", 0)))

# splitting the pairs across four workers gives the same characters
from ctbl.pgroup import irreducible_characters
P = p_group_corpus()["2-group-128"]
one = irreducible_characters(P, jobs=1)
four = irreducible_characters(P, jobs=4)
print([c.to_strings() for c in one] == [c.to_strings() for c in four])
