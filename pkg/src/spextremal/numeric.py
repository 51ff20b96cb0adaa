"""Dense linear algebra for the construction: exact core, float geometry.

The exact side works on numpy object arrays of Fraction and carries the
incidence matrix, the graph Laplacian with its Moore-Penrose inverse, and
the transfer current matrix, so spectral identities can be checked with
zero tolerance.  The float side covers orthonormal bases, principal
angles, and the deviation target, where double precision is the natural
currency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .weights import BruteForceCapError, spanning_trees

DEFAULT_SUBSET_CAP = 12


class SingularMatrixError(ValueError):
    pass


class RankDeficientError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact rational matrices (numpy object arrays of Fraction)
# ---------------------------------------------------------------------------

def rational_matrix(rows) -> np.ndarray:
    data = [[Fraction(x) for x in row] for row in rows]
    out = np.empty((len(data), len(data[0])), dtype=object)
    for i, row in enumerate(data):
        if len(row) != out.shape[1]:
            raise ValueError("rows must have equal length")
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def rational_identity(n: int) -> np.ndarray:
    out = np.full((n, n), Fraction(0), dtype=object)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def rational_inverse(a: np.ndarray) -> np.ndarray:
    """Exact Gauss-Jordan inverse; raises SingularMatrixError."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    m = [[Fraction(a[i, j]) for j in range(n)] +
         [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return rational_matrix([row[n:] for row in m])


def rational_det(a: np.ndarray) -> Fraction:
    n = a.shape[0]
    m = [[Fraction(a[i, j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def rational_rank(a: np.ndarray) -> int:
    rows, cols = a.shape
    m = [[Fraction(a[i, j]) for j in range(cols)] for i in range(rows)]
    rank_ = 0
    for col in range(cols):
        pivot = next((r for r in range(rank_, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank_], m[pivot] = m[pivot], m[rank_]
        pv = m[rank_][col]
        m[rank_] = [x / pv for x in m[rank_]]
        for r in range(rows):
            if r != rank_ and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank_])]
        rank_ += 1
        if rank_ == rows:
            break
    return rank_


def to_float(a: np.ndarray) -> np.ndarray:
    return a.astype(float)


def matrix_to_json(a: np.ndarray) -> list:
    """Rows as lists; exact entries become "p/q" strings, floats stay floats."""
    if a.dtype == object:
        return [[f"{Fraction(x).numerator}/{Fraction(x).denominator}" for x in row]
                for row in a]
    return [[float(x) for x in row] for row in np.asarray(a, dtype=float)]


def matrix_from_json(rows) -> np.ndarray:
    """Inverse of matrix_to_json; "p/q" strings give an exact matrix."""
    if rows and rows[0] and isinstance(rows[0][0], str):
        return rational_matrix([[Fraction(x) for x in row] for row in rows])
    return np.asarray(rows, dtype=float)


# ---------------------------------------------------------------------------
# graph matrices
# ---------------------------------------------------------------------------

def incidence_matrix(graph) -> np.ndarray:
    """Vertex-by-edge matrix, +1 at the head and -1 at the tail of each edge."""
    m, n = graph.num_vertices, len(graph.edges)
    B = np.full((m, n), Fraction(0), dtype=object)
    for tail, head, eid in graph.edges:
        B[head, eid] = Fraction(1)
        B[tail, eid] = Fraction(-1)
    return B


def _weight_column(weights, n: int) -> np.ndarray:
    col = np.empty(n, dtype=object)
    for e in range(n):
        col[e] = Fraction(weights[e])
    return col


def laplacian(B: np.ndarray, weights) -> np.ndarray:
    """Weighted graph Laplacian B W B^T, exact."""
    w = _weight_column(weights, B.shape[1])
    return (B * w[None, :]).dot(B.T)


def pinv_laplacian(L: np.ndarray) -> np.ndarray:
    """Moore-Penrose inverse via the rank-one shift (L + J/m)^-1 - J/m.

    Exact for Laplacians of connected graphs, whose nullspace is the
    constant vector; a singular shift means the graph is disconnected.
    """
    m = L.shape[0]
    J = np.full((m, m), Fraction(1, m), dtype=object)
    try:
        inv = rational_inverse(L + J)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            "shifted Laplacian is singular; the graph is disconnected") from exc
    return inv - J


def transfer_current(B: np.ndarray, weights) -> np.ndarray:
    """Y = W B^T L^+ B, exact.

    An oblique projection: entry (e, f) is the current through e, taken
    along e's own direction, when a unit current is driven from f's tail
    to f's head.  Idempotent with trace equal to the graph rank.
    """
    w = _weight_column(weights, B.shape[1])
    Lp = pinv_laplacian(laplacian(B, weights))
    return B.T.dot(Lp).dot(B) * w[:, None]


def transfer_current_combinatorial(graph, weights) -> np.ndarray:
    """Spanning-tree form of the transfer current matrix.

    Diagonal (e, e): weight of trees through e over the weight of all
    trees.  Off-diagonal (e, f): for each tree, the unique tree path
    joining f's endpoints contributes the tree weight with sign +1 when it
    crosses e along e's direction while walking from f's tail to f's head,
    -1 against it, 0 when it avoids e.
    """
    n = len(graph.edges)
    trees = spanning_trees(graph)
    endpoints = {e: (t, h) for t, h, e in graph.edges}
    w = {e: Fraction(weights[e]) for e in range(n)}

    Y = np.full((n, n), Fraction(0), dtype=object)
    total = Fraction(0)
    for subset in trees:
        tw = math.prod(w[e] for e in subset)
        total += tw
        adjacency: dict[int, list] = {}
        for e in subset:
            t, h = endpoints[e]
            adjacency.setdefault(t, []).append((h, e, 1))
            adjacency.setdefault(h, []).append((t, e, -1))
        members = set(subset)
        for e in subset:
            Y[e, e] += tw
        for f in range(n):
            if f in members:
                continue
            src, dst = endpoints[f]
            parent = {src: None}
            stack = [src]
            while dst not in parent:
                v = stack.pop()
                for u, e, sense in adjacency.get(v, ()):
                    if u not in parent:
                        parent[u] = (v, e, sense)
                        stack.append(u)
            v = dst
            while parent[v] is not None:
                prev, e, sense = parent[v]
                Y[e, f] += sense * tw
                v = prev
    return Y * (Fraction(1) / total)


def projection(B: np.ndarray, weights) -> np.ndarray:
    """Float orthogonal projector onto the column space of W^(1/2) B^T."""
    n = B.shape[1]
    Lp = pinv_laplacian(laplacian(B, weights))
    core = to_float(B.T.dot(Lp).dot(B))
    root = np.sqrt([float(Fraction(weights[e])) for e in range(n)])
    return core * np.outer(root, root)


# ---------------------------------------------------------------------------
# float subspace geometry
# ---------------------------------------------------------------------------

@dataclass
class Subspace:
    """A k-dimensional subspace of R^n held as an orthonormal n-by-k basis."""

    ambient: int
    dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.shape != (self.ambient, self.dim):
            raise ValueError("basis shape does not match the declared dimensions")
        gram = b.T @ b
        if not np.allclose(gram, np.eye(self.dim), rtol=0.0, atol=1e-12):
            raise ValueError("basis columns are not orthonormal")
        self.basis = b


def orthonormalize(mat) -> Subspace:
    """Orthonormal basis with the same column space.

    Raises RankDeficientError when the smallest singular value is at or
    below 1e-10.
    """
    m = np.asarray(mat, dtype=float)
    if m.ndim != 2 or m.shape[0] < m.shape[1] or m.shape[1] == 0:
        raise ValueError("need a tall matrix with at least one column")
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s[-1] <= 1e-10:
        raise RankDeficientError("matrix does not have full column rank")
    return Subspace(m.shape[0], m.shape[1], u)


def principal_angles(u: Subspace, v: Subspace) -> np.ndarray:
    """Ascending principal angles (radians) between equal-shape subspaces."""
    if u.ambient != v.ambient or u.dim != v.dim:
        raise ValueError("subspaces must share ambient dimension and dimension")
    s = np.linalg.svd(u.basis.T @ v.basis, compute_uv=False)
    return np.arccos(np.clip(s, 0.0, 1.0))


def target(sub: Subspace, subset_cap: int = DEFAULT_SUBSET_CAP):
    """Least deviation from the coordinate k-subspaces, with its argmin.

    The deviation from a coordinate subspace is the largest principal
    angle, i.e. arccos of the smallest singular value of the k-by-k row
    submatrix of the basis; the sweep is exhaustive over all C(n, k)
    subsets.  Ties go to the lexicographically first subset.
    """
    n, k = sub.ambient, sub.dim
    if n > subset_cap:
        raise BruteForceCapError(
            f"target sweep needs at most {subset_cap} ambient dimensions, got {n}")
    subsets = list(combinations(range(n), k))
    stack = sub.basis[np.array(subsets), :]
    sigma_min = np.linalg.svd(stack, compute_uv=False)[:, -1]
    best = int(np.argmax(sigma_min))
    cos_best = float(np.clip(sigma_min[best], 0.0, 1.0))
    return math.acos(cos_best), subsets[best]


def match_sign_diagonal(A: np.ndarray, B: np.ndarray, tol: float):
    """Signs s with A == diag(s) B diag(s) within tol, or None.

    Relative signs propagate over entries of B that are safely nonzero;
    independent connected components are resolved by trying both signs.
    """
    n = A.shape[0]
    if A.shape != B.shape or np.max(np.abs(np.abs(A) - np.abs(B))) > tol:
        return None
    thresh = max(10.0 * tol, 1e-7)
    component = [-1] * n
    base_sign = [1.0] * n
    comps = 0
    for start in range(n):
        if component[start] != -1:
            continue
        component[start] = comps
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and component[j] == -1 and abs(B[i, j]) > thresh:
                    component[j] = comps
                    ratio = A[i, j] / B[i, j]
                    base_sign[j] = base_sign[i] * (1.0 if ratio > 0 else -1.0)
                    stack.append(j)
        comps += 1
    base = np.array(base_sign)
    comp = np.array(component)
    for bits in range(1 << comps):
        flips = np.array([1.0 if not (bits >> c) & 1 else -1.0 for c in range(comps)])
        s = base * flips[comp]
        if np.max(np.abs(A - np.outer(s, s) * B)) <= tol:
            return s
    return None
