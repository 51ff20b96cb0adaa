"""Edge weights, signed coefficients, and exact spanning-tree accounting.

The weight family computed here makes the star space of a 2-connected
series-parallel graph sit at cosine exactly 1/sqrt(n) from every
coordinate subspace.  The companion signed coefficients form, on each
spanning tree, an eigenvector of the matching transfer-current submatrix.
Everything is exact Fraction arithmetic; the brute-force subset sweeps
double as oracles for the closed-form recurrences.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from .sptree import (
    Leaf,
    Parallel,
    Series,
    SpTreeError,
    leaf_count,
    leaf_ids,
    parallel_rooted,
    realize_with_spans,
)

DEFAULT_BRUTE_CAP = 16


class BruteForceCapError(RuntimeError):
    """An exhaustive subset sweep would exceed the configured edge cap."""


def brute_force_cap() -> int:
    env = os.environ.get("EXTREMAL_BRUTE_CAP")
    return int(env) if env else DEFAULT_BRUTE_CAP


def induced_weights(tree) -> dict[int, Fraction]:
    """Edge weights read off the alternating decomposition chain.

    Every serial decomposition step from a subnetwork with a edges to a
    part with b edges contributes phi(a)/phi(b) with phi(x) = x*(n - x);
    chains ending at a parallel level end with a dummy serial step that
    contributes nothing.  Edges sitting directly in the root bundle get
    weight 1.
    """
    if isinstance(tree, Series):
        tree = parallel_rooted(tree)
    if not isinstance(tree, Parallel):
        raise SpTreeError("induced weights need a 2-connected (parallel-rooted) tree")
    n = leaf_count(tree)

    def phi(x: int) -> Fraction:
        return Fraction(x * (n - x))

    out: dict[int, Fraction] = {}

    def walk(node, factor: Fraction):
        if isinstance(node, Leaf):
            out[node.eid] = factor
        elif isinstance(node, Series):
            top = phi(leaf_count(node))
            for child in node.children:
                walk(child, factor * top / phi(leaf_count(child)))
        else:
            for child in node.children:
                walk(child, factor)

    walk(tree, Fraction(1))
    return out


def induced_coefficients(tree, tau, graph) -> dict[int, Fraction]:
    """Signed value on each edge of the spanning tree tau.

    Magnitudes follow the same decomposition chain as the weights with
    psi(sub) = n - |sub| when tau restricted to sub connects sub's
    terminals and -|sub| otherwise.  The sign is positive when the edge
    direction recorded in graph agrees with the edge's natural
    left-to-right sense.  The result is an eigenvector of the tau
    submatrix of the transfer current matrix with eigenvalue 1/n.
    """
    if isinstance(tree, Series):
        tree = parallel_rooted(tree)
    if not isinstance(tree, Parallel):
        raise SpTreeError("induced coefficients need a 2-connected tree")
    n = leaf_count(tree)
    reference, spans = realize_with_spans(tree)
    ref_pairs = {e: frozenset((t, h)) for t, h, e in reference.edges}
    got_pairs = {e: frozenset((t, h)) for t, h, e in graph.edges}
    if ref_pairs != got_pairs or reference.num_vertices != graph.num_vertices:
        raise SpTreeError("graph does not realize this tree")

    tau = sorted(set(tau))
    _require_spanning_tree(graph, tau)
    tau_set = set(tau)
    endpoints = {e: (t, h) for t, h, e in graph.edges}

    def connects(node) -> bool:
        parent = list(range(graph.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in leaf_ids(node):
            if e in tau_set:
                t, h = endpoints[e]
                parent[find(t)] = find(h)
        a, b = spans[node]
        return find(a) == find(b)

    def psi(node) -> Fraction:
        size = leaf_count(node)
        return Fraction(n - size) if connects(node) else Fraction(-size)

    out: dict[int, Fraction] = {}

    def walk(node, value: Fraction):
        if isinstance(node, Leaf):
            if node.eid in tau_set:
                sign = 1 if endpoints[node.eid] == spans[node] else -1
                out[node.eid] = sign * value
        elif isinstance(node, Series):
            top = psi(node)
            for child in node.children:
                walk(child, value * top / psi(child))
        else:
            for child in node.children:
                walk(child, value)

    walk(tree, Fraction(1))
    return out


class TreeSums(NamedTuple):
    """Weighted count of spanning trees and of terminal-splitting 2-forests."""

    trees: Fraction
    forests: Fraction


def tree_sums(tree, weights) -> TreeSums:
    """Both sums at once through the series/parallel recurrences.

    A series chain multiplies tree sums and spreads one forest split over
    its parts; a parallel bundle does the opposite.
    """

    def rec(node) -> TreeSums:
        if isinstance(node, Leaf):
            return TreeSums(Fraction(weights[node.eid]), Fraction(1))
        parts = [rec(c) for c in node.children]
        ts = [p.trees for p in parts]
        fs = [p.forests for p in parts]
        if isinstance(node, Series):
            total = math.prod(ts)
            split = sum(math.prod(ts[:i]) * fs[i] * math.prod(ts[i + 1:])
                        for i in range(len(parts)))
            return TreeSums(total, split)
        total = sum(math.prod(fs[:i]) * ts[i] * math.prod(fs[i + 1:])
                    for i in range(len(parts)))
        return TreeSums(total, math.prod(fs))

    return rec(tree)


def _require_spanning_tree(graph, edges) -> None:
    m = graph.num_vertices
    if len(edges) != m - 1 or not _is_forest(graph, edges):
        raise SpTreeError("edge subset is not a spanning tree")


def _is_forest(graph, subset) -> bool:
    parent = list(range(graph.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    endpoints = {e: (t, h) for t, h, e in graph.edges}
    for e in subset:
        rt, rh = find(endpoints[e][0]), find(endpoints[e][1])
        if rt == rh:
            return False
        parent[rt] = rh
    return True


def _separates_terminals(graph, subset) -> bool:
    parent = list(range(graph.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    endpoints = {e: (t, h) for t, h, e in graph.edges}
    for e in subset:
        rt, rh = find(endpoints[e][0]), find(endpoints[e][1])
        if rt == rh:
            return False
        parent[rt] = rh
    l, r = graph.terminals
    return find(l) != find(r)


def spanning_trees(graph) -> list[tuple]:
    """All spanning trees as sorted edge-id tuples, in lexicographic order."""
    n = len(graph.edges)
    cap = brute_force_cap()
    if n > cap:
        raise BruteForceCapError(f"{n} edges exceeds the brute-force cap {cap}")
    size = graph.num_vertices - 1
    return [s for s in combinations(range(n), size) if _is_forest(graph, s)]


def two_component_forests(graph) -> list[tuple]:
    """Spanning 2-forests with the terminals in different components."""
    n = len(graph.edges)
    cap = brute_force_cap()
    if n > cap:
        raise BruteForceCapError(f"{n} edges exceeds the brute-force cap {cap}")
    size = graph.num_vertices - 2
    return [s for s in combinations(range(n), size) if _separates_terminals(graph, s)]


def brute_tree_sums(graph, weights) -> TreeSums:
    """Exhaustive-enumeration oracle for tree_sums."""
    w = {e: Fraction(v) for e, v in weights.items()}
    total = sum((math.prod(w[e] for e in s) for s in spanning_trees(graph)),
                Fraction(0))
    split = sum((math.prod(w[e] for e in s) for s in two_component_forests(graph)),
                Fraction(0))
    return TreeSums(total, split)


def weights_to_json(weights) -> dict[str, str]:
    """Exact "p/q" map keyed by edge id."""
    out = {}
    for e in sorted(weights):
        f = Fraction(weights[e])
        out[str(e)] = f"{f.numerator}/{f.denominator}"
    return out


def weights_from_json(obj) -> dict[int, Fraction]:
    return {int(e): Fraction(s) for e, s in obj.items()}
