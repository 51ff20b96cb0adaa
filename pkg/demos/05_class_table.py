"""The triangle of symmetry-class counts.

Each entry counts the classes of extremal k-dimensional subspaces of R^n
modulo coordinate permutations and sign flips, obtained by enumerating
all canonical trees and folding them by the canonical form of the
squared-projector matrix.  Rows are palindromes because planar duality
pairs (n, k) with (n, n - k).
"""

import spextremal as sp

n_max = 7
print("n \\ k |", "  ".join(f"{k:2d}" for k in range(1, n_max)))
print("------+" + "-" * (4 * (n_max - 1)))
for n in range(2, n_max + 1):
    row = [sp.count_classes(n, k) for k in range(1, n)]
    print(f"{n:5d} |", "  ".join(f"{c:2d}" for c in row))
