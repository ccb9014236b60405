"""
Run-length encoded character stores
===================================

Characters of p-groups repeat a handful of values across many classes,
which a shared value dictionary plus runs stores compactly.
"""

import numpy as np
from ctbl.groups import sylow2_s8
from ctbl.classes import table_header
from ctbl.brauer import build_brauer_subgroups, induced_characters
from ctbl.charstore import compression_ratio, encode, ValueDictionary

G = sylow2_s8()
header = table_header(G)
chars = induced_characters(header, build_brauer_subgroups(G, header))
print(len(chars), "induced characters on", len(header), "classes")
print("compression ratio %.2f" % compression_ratio(chars))

# distribution of run counts per character
d = ValueDictionary()
runs = np.array([len(encode(chi, d)[0].runs) for chi in chars])
print("runs per character: min %d, median %d, max %d" % (runs.min(), np.median(runs), runs.max()))
print("dictionary size", len(d))
