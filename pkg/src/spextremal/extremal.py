"""Assembled extremal instances and their verification.

build() turns a decomposition tree into the full bundle: realized graph,
induced weights, incidence matrix, exact transfer current matrix, float
projector, and the orthonormalized star-space basis.  The check_* family
verifies the spectral facts that make the subspace extremal, check_dual
cross-checks the planar-dual instance, and class_key/count_classes fold
instances into symmetry classes of the resulting subspaces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .numeric import (
    Subspace,
    incidence_matrix,
    match_sign_diagonal,
    orthonormalize,
    projection,
    rational_det,
    target,
    to_float,
    transfer_current,
)
from .sptree import (
    MultiGraph,
    SpTree,
    dualize,
    enumerate_rooted,
    format_tree,
    parallel_rooted,
    realize,
)
from .weights import (
    induced_coefficients,
    induced_weights,
    spanning_trees,
    weights_to_json,
)


@dataclass
class ExtremalInstance:
    tree: SpTree
    graph: MultiGraph
    weights: dict
    B: np.ndarray
    Y: np.ndarray
    P: np.ndarray
    subspace: Subspace


def build(tree, directions=None) -> ExtremalInstance:
    """Realize the tree and assemble every derived object.

    Accepts a series-rooted tree too (a closed dual chain), rewriting it
    through parallel_rooted first.
    """
    tree = parallel_rooted(tree)
    graph = realize(tree, directions)
    w = induced_weights(tree)
    B = incidence_matrix(graph)
    Y = transfer_current(B, w)
    P = projection(B, w)
    n = len(graph.edges)
    root = np.sqrt([float(w[e]) for e in range(n)])
    scaled = root[:, None] * to_float(B).T
    # dropping one vertex column keeps the span: the columns sum to zero
    subspace = orthonormalize(scaled[:, 1:])
    return ExtremalInstance(tree, graph, w, B, Y, P, subspace)


def check_eigen(inst: ExtremalInstance, tau) -> bool:
    """Exact check that the induced coefficients on tau are an eigenvector
    of the tau submatrix of Y with eigenvalue exactly 1/n."""
    n = len(inst.graph.edges)
    y = induced_coefficients(inst.tree, tau, inst.graph)
    idx = sorted(tau)
    lam = Fraction(1, n)
    for e in idx:
        image = sum((inst.Y[e, f] * y[f] for f in idx), Fraction(0))
        if image != lam * y[e]:
            return False
    return True


def check_degenerate(inst: ExtremalInstance, subset) -> bool:
    """Exact-zero determinant of the Y submatrix on a non-tree subset."""
    idx = sorted(subset)
    return rational_det(inst.Y[np.ix_(idx, idx)]) == 0


def check_target(inst: ExtremalInstance, tol: float = 1e-9) -> bool:
    """Deviation cosine within tol of 1/sqrt(n)."""
    angle, _ = target(inst.subspace)
    n = len(inst.graph.edges)
    return abs(math.cos(angle) - 1.0 / math.sqrt(n)) <= tol


def check_dual(inst: ExtremalInstance, tol: float = 1e-9):
    """Cross-checks against the planar-dual instance.

    (a) dual weights are componentwise reciprocal up to one common factor,
    (b) some +-1 diagonal D maps I - P onto the dual projector,
    (c) the dual instance reaches the same deviation value.
    Returns (ok, diagnostics).
    """
    dual = build(dualize(inst.tree))
    products = {e: dual.weights[e] * inst.weights[e] for e in inst.weights}
    reciprocal_ok = len(set(products.values())) == 1
    complement = np.eye(len(inst.weights)) - inst.P
    signs = match_sign_diagonal(dual.P, complement, tol)
    complement_ok = signs is not None
    target_ok = check_target(dual, tol)
    diagnostics = {
        "weight_product": str(next(iter(products.values()))),
        "reciprocal_ok": reciprocal_ok,
        "complement_ok": complement_ok,
        "dual_target_ok": target_ok,
    }
    return reciprocal_ok and complement_ok and target_ok, diagnostics


# ---------------------------------------------------------------------------
# symmetry classes
# ---------------------------------------------------------------------------

def _swap_is_automorphism(Q: np.ndarray, i: int, j: int) -> bool:
    if Q[i, i] != Q[j, j]:
        return False
    n = Q.shape[0]
    for x in range(n):
        if x != i and x != j and Q[i, x] != Q[j, x]:
            return False
    return True


def canonical_matrix_form(Q: np.ndarray):
    """Least border encoding of a symmetric matrix over simultaneous
    row/column permutations; returns (encoding, permutation).

    Depth-first placement with prefix pruning; candidates related by a
    transposition automorphism are explored only once.  The encoding is
    the concatenation of border strips (Q[c, placed...], Q[c, c]).
    """
    n = Q.shape[0]
    best: list | None = None
    best_perm: tuple | None = None

    def search(order, strips, status):
        # status 0: strips equal best's prefix; -1: strictly smaller.
        # Returns True when the subtree replaced best, after which the
        # caller's prefix is exactly best's prefix again.
        nonlocal best, best_perm
        pos = len(order)
        if pos == n:
            if best is None or status < 0:
                best = list(strips)
                best_perm = tuple(order)
                return True
            return False
        used = set(order)
        kept = []
        for c in range(n):
            if c in used:
                continue
            if any(_swap_is_automorphism(Q, c, k) for k in kept):
                continue
            kept.append(c)
        replaced_here = False
        for c in kept:
            strip = tuple(Q[c, o] for o in order) + (Q[c, c],)
            st = status
            if st == 0 and best is not None:
                if strip > best[pos]:
                    continue
                if strip < best[pos]:
                    st = -1
            order.append(c)
            strips.append(strip)
            if search(order, strips, st):
                replaced_here = True
                status = 0
            order.pop()
            strips.pop()
        return replaced_here

    search([], [], 0)
    encoding = tuple(x for strip in best for x in strip)
    return encoding, best_perm


def class_key(inst: ExtremalInstance):
    """Canonical key of the sign-blind squared projector.

    Q = Y o Y^T is exact-rational, symmetric, invariant under edge
    redirections and weight rescalings, and permutation-canonicalized, so
    equal keys identify subspaces equal up to signed coordinate
    permutations.
    """
    Q = inst.Y * inst.Y.T
    encoding, _ = canonical_matrix_form(Q)
    return encoding


def count_classes(n: int, k: int) -> int:
    """Number of symmetry classes among all (n, k) instances."""
    return len({class_key(build(t)) for t in enumerate_rooted(n, k)})


def class_table(n_max: int, n_min: int = 2) -> list[list[int]]:
    """Triangle of class counts; row n holds k = 1..n-1."""
    return [[count_classes(n, k) for k in range(1, n)]
            for n in range(n_min, n_max + 1)]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def verify_instance(inst: ExtremalInstance, tol: float = 1e-9) -> dict:
    """Run every check on one instance and report the outcome."""
    n = len(inst.graph.edges)
    k = inst.subspace.dim
    trees = spanning_trees(inst.graph)
    tree_set = set(trees)
    eigen_ok = all(check_eigen(inst, tau) for tau in trees)
    degenerate_ok = all(check_degenerate(inst, s)
                        for s in combinations(range(n), k)
                        if s not in tree_set)
    angle, _ = target(inst.subspace)
    target_ok = abs(math.cos(angle) - 1.0 / math.sqrt(n)) <= tol
    dual_ok, _ = check_dual(inst, tol)
    return {
        "tree": format_tree(inst.tree),
        "weights": weights_to_json(inst.weights),
        "n": n,
        "k": k,
        "target_cos": math.cos(angle),
        "eigen_ok": eigen_ok,
        "degenerate_ok": degenerate_ok,
        "target_ok": target_ok,
        "dual_ok": dual_ok,
    }


def least_eigenvalue_report(inst: ExtremalInstance) -> list[tuple[tuple, float]]:
    """Smallest eigenvalue of the projector submatrix on each spanning tree.

    Observed (not proven) to equal 1/n; reported so counterexamples would
    surface.
    """
    out = []
    for tau in spanning_trees(inst.graph):
        idx = list(tau)
        sub = inst.P[np.ix_(idx, idx)]
        out.append((tau, float(np.linalg.eigvalsh(sub)[0])))
    return out
