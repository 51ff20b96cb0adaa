"""Verify the exact spectral identities on every small instance.

For each canonical 2-connected series-parallel tree with up to 6 edges:
the induced coefficients on every spanning tree form an eigenvector of
the corresponding transfer-current submatrix with eigenvalue exactly 1/n,
every non-tree square submatrix is exactly singular, and the star space
sits at cosine 1/sqrt(n) from the nearest coordinate subspace.
"""

import math
from itertools import combinations

import spextremal as sp

for n in range(2, 7):
    for k in range(1, n):
        for tree in sp.enumerate_rooted(n, k):
            inst = sp.build(tree)
            trees = sp.spanning_trees(inst.graph)
            eigen = all(sp.check_eigen(inst, tau) for tau in trees)
            degenerate = all(
                sp.check_degenerate(inst, s)
                for s in combinations(range(n), k) if s not in set(trees))
            angle, _ = sp.target(inst.subspace)
            gap = abs(math.cos(angle) - 1 / math.sqrt(n))
            print(f"n={n} k={k} {sp.format_tree(tree):28s} "
                  f"eigen={'ok' if eigen else 'FAIL'} "
                  f"singular={'ok' if degenerate else 'FAIL'} "
                  f"|cos-1/sqrt(n)|={gap:.1e}")
