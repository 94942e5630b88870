"""Paired difference sets of sizes 6 and 10 in the groups of order 16.

A 6-subset and a 10-subset of the group select a 6 x 10 submatrix of the
character table.  When rows and columns are both equiangular tight for
their spans with matching angle ratio, the pair is reported.
"""

import time

from hyperetf import AbelianGroup, paired_search

for factors in ("2,2,2,2", "4,4", "2,8", "2,2,4"):
    G = AbelianGroup.parse(factors)
    t = time.perf_counter()
    hits = paired_search(G, 6, 10)
    print(f"{G}: {len(hits)} translation class(es) of pairs ({time.perf_counter() - t:.1f}s)")
    for h in hits[:2]:
        print("   ", h.describe())
