"""
Brauer induction against a reference table
==========================================

Runs the induction pipeline on every group of the test corpus and
compares with the class-matrix eigenvector method.
"""

import time
import numpy as np
from ctbl.groups import corpus
from ctbl.classes import table_header
from ctbl.pipeline import brauer_table
from ctbl.oracle import oracle_table

rows = []
for name, G in corpus().items():
    header = table_header(G)
    t0 = time.perf_counter()
    result = brauer_table(G, header)
    t1 = time.perf_counter()
    reference = oracle_table(G, header)
    t2 = time.perf_counter()
    same = [c.to_strings() for c in result.irreducibles] == [c.to_strings() for c in reference]
    rows.append((name, G.order(), len(header), result.induced_count, same, t1 - t0, t2 - t1))

# group, order, classes, induced characters, equal, seconds (brauer, oracle)
for r in rows:
    print("%-12s %5d %3d %4d %s %.3f %.3f" % r)

# induced characters per class: how much redundancy LLL has to remove
ratio = np.array([r[3] / r[2] for r in rows])
print("induced per class: mean %.1f, max %.1f" % (ratio.mean(), ratio.max()))
