"""Series-parallel decomposition trees and their multigraph realizations.

A two-terminal series-parallel network is a single edge or an alternating
stack of parallel and series compositions of smaller ones.  The nontrivial
2-connected networks (everything reachable from a 2-cycle by edge
subdivision and duplication) are exactly those whose outermost composition
is parallel, so those are the trees with a Parallel root here.

This module provides the tree type with normalizing constructors, a strict
text grammar, canonical forms modulo the tree symmetries (reordering of
parallel branches, reversal of series chains), duality, exhaustive
enumeration, realization as a directed multigraph, and the reduction of a
concrete multigraph back to its canonical tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache


class SpTreeError(ValueError):
    """Malformed tree, impossible realization, or failed decomposition."""


class TreeParseError(SpTreeError):
    """Text input rejected by the tree grammar; carries the offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Leaf:
    eid: int = 0


@dataclass(frozen=True)
class Series:
    children: tuple


@dataclass(frozen=True)
class Parallel:
    children: tuple


SpTree = Leaf | Series | Parallel


def make_leaf(eid: int = 0) -> Leaf:
    return Leaf(eid)


def make_series(children) -> SpTree:
    """Serial composition; flattens nested series, unwraps singletons."""
    flat = []
    for child in children:
        if isinstance(child, Series):
            flat.extend(child.children)
        else:
            flat.append(child)
    if not flat:
        raise SpTreeError("series composition needs at least one operand")
    if len(flat) == 1:
        return flat[0]
    return Series(tuple(flat))


def make_parallel(children) -> SpTree:
    """Parallel composition; flattens nested parallels, unwraps singletons."""
    flat = []
    for child in children:
        if isinstance(child, Parallel):
            flat.extend(child.children)
        else:
            flat.append(child)
    if not flat:
        raise SpTreeError("parallel composition needs at least one operand")
    if len(flat) == 1:
        return flat[0]
    return Parallel(tuple(flat))


def leaf_count(tree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return sum(leaf_count(c) for c in tree.children)


def leaf_ids(tree) -> list[int]:
    """Edge ids in left-to-right reading order."""
    if isinstance(tree, Leaf):
        return [tree.eid]
    out = []
    for c in tree.children:
        out.extend(leaf_ids(c))
    return out


def rank(tree) -> int:
    """Edge count of any spanning tree of the two-terminal realization.

    Leaf counts 1, a series chain adds its parts, a parallel bundle glues
    terminals so each extra part loses one.
    """
    if isinstance(tree, Leaf):
        return 1
    if isinstance(tree, Series):
        return sum(rank(c) for c in tree.children)
    return sum(rank(c) - 1 for c in tree.children) + 1


def is_two_connected(tree) -> bool:
    """Trees with a Parallel root realize 2-connected graphs."""
    return isinstance(tree, Parallel)


def check_invariants(tree) -> None:
    """Raise unless alternation, arity, and edge-id invariants hold."""

    def walk(node):
        if isinstance(node, Leaf):
            return
        if len(node.children) < 2:
            raise SpTreeError("composition nodes need at least 2 children")
        for c in node.children:
            if type(c) is type(node):
                raise SpTreeError("series and parallel compositions must alternate")
            walk(c)

    walk(tree)
    ids = leaf_ids(tree)
    if sorted(ids) != list(range(len(ids))):
        raise SpTreeError("leaf edge ids must be a permutation of 0..n-1")


def reverse_tree(tree) -> SpTree:
    """The same network traversed from the other terminal."""
    if isinstance(tree, Leaf):
        return tree
    if isinstance(tree, Parallel):
        return Parallel(tuple(reverse_tree(c) for c in tree.children))
    return Series(tuple(reverse_tree(c) for c in reversed(tree.children)))


def skeleton_key(tree):
    """Total order on edge-id-erased shapes.

    Key is (leaf count, kind, child keys) with Leaf < Parallel < Series;
    parallel children compare as a sorted multiset and series chains as the
    smaller of the two reading directions, so the key is already invariant
    under the tree symmetries.
    """
    if isinstance(tree, Leaf):
        return (1, 0, ())
    kid_keys = [skeleton_key(c) for c in tree.children]
    if isinstance(tree, Parallel):
        return (leaf_count(tree), 1, tuple(sorted(kid_keys)))
    forward = tuple(kid_keys)
    backward = tuple(reversed(kid_keys))
    return (leaf_count(tree), 2, min(forward, backward))


def _canonical_oriented(tree):
    """Canonical shape keeping original leaf ids.

    Returns (shape, flipped) where flipped is the set of leaf ids whose
    natural left-to-right sense got inverted by series-chain reversals.
    """
    if isinstance(tree, Leaf):
        return tree, frozenset()
    parts = [_canonical_oriented(c) for c in tree.children]
    children = [p[0] for p in parts]
    flipped = frozenset().union(*(p[1] for p in parts))
    if isinstance(tree, Parallel):
        children.sort(key=skeleton_key)
        return Parallel(tuple(children)), flipped
    keys = [skeleton_key(c) for c in children]
    if tuple(reversed(keys)) < tuple(keys):
        children.reverse()
        flipped = flipped ^ frozenset(leaf_ids(tree))
    return Series(tuple(children)), flipped


def relabel_leaves(tree) -> SpTree:
    """Reassign edge ids 0..n-1 in left-to-right reading order."""
    counter = itertools.count()

    def rebuild(node):
        if isinstance(node, Leaf):
            return Leaf(next(counter))
        return type(node)(tuple(rebuild(c) for c in node.children))

    return rebuild(tree)


def canonicalize(tree) -> SpTree:
    """Unique representative modulo parallel reordering and series reversal.

    Two trees canonicalize identically iff they are related by those
    symmetries; edge ids are reassigned in reading order afterwards.
    """
    shape, _ = _canonical_oriented(tree)
    return relabel_leaves(shape)


def dualize(tree) -> SpTree:
    """Swap series and parallel composition kinds throughout.

    The output describes the planar dual network.  When the input root is
    parallel the output root is a series chain that has to be read as
    closed into a cycle; realize and parallel_rooted interpret it that way,
    so the realized dual has rank n - rank(tree).
    """
    if isinstance(tree, Leaf):
        return tree
    kids = tuple(dualize(c) for c in tree.children)
    return Series(kids) if isinstance(tree, Parallel) else Parallel(kids)


def parallel_rooted(tree) -> SpTree:
    """Two-terminal form of a series-rooted closed chain.

    The first chain component is kept as the branch spanning the chosen
    terminal pair; any other choice gives the same graph and induces the
    same edge weights up to a common factor.
    """
    if isinstance(tree, Parallel):
        return tree
    if isinstance(tree, Leaf):
        raise SpTreeError("a single edge has no 2-connected realization")
    kids = list(tree.children)
    return make_parallel([kids[0], make_series(kids[1:])])


# ---------------------------------------------------------------------------
# text grammar:  tree := "e" | "P(" tree ("," tree)+ ")" | "S(" tree ("," tree)+ ")"
# ---------------------------------------------------------------------------

def format_tree(tree) -> str:
    if isinstance(tree, Leaf):
        return "e"
    tag = "P" if isinstance(tree, Parallel) else "S"
    return tag + "(" + ",".join(format_tree(c) for c in tree.children) + ")"


def parse_tree(text: str) -> SpTree:
    """Parse the strict grammar; whitespace is ignored.

    Leaves get edge ids in reading order.  Same-kind nesting and
    single-operand compositions are rejected with the offending offset.
    """
    pos = 0
    counter = itertools.count()

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def fail(msg):
        raise TreeParseError(msg, pos)

    def node(parent_kind):
        nonlocal pos
        skip_ws()
        if pos >= len(text):
            fail("unexpected end of input")
        ch = text[pos]
        if ch == "e":
            pos += 1
            return Leaf(next(counter))
        if ch in "PS":
            kind = Parallel if ch == "P" else Series
            if kind is parent_kind:
                fail("series and parallel compositions must alternate")
            start = pos
            pos += 1
            skip_ws()
            if pos >= len(text) or text[pos] != "(":
                fail("expected '('")
            pos += 1
            kids = [node(kind)]
            skip_ws()
            while pos < len(text) and text[pos] == ",":
                pos += 1
                kids.append(node(kind))
                skip_ws()
            if pos >= len(text) or text[pos] != ")":
                fail("expected ',' or ')'")
            pos += 1
            if len(kids) < 2:
                pos = start
                fail("composition needs at least 2 operands")
            return kind(tuple(kids))
        fail(f"expected 'e', 'P' or 'S', found {ch!r}")

    tree = node(None)
    skip_ws()
    if pos != len(text):
        fail("trailing input after tree")
    return tree


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _series_shapes(n: int, k: int) -> tuple:
    """Canonical series chains with n edges and rank k (placeholder ids)."""
    if n < 2 or k < 2 or k > n:
        return ()
    out = []

    def extend(seq, edges_left, rank_left):
        if edges_left == 0:
            if rank_left == 0 and len(seq) >= 2:
                keys = tuple(skeleton_key(c) for c in seq)
                if keys <= tuple(reversed(keys)):
                    out.append(Series(tuple(seq)))
            return
        if rank_left < 1 or rank_left > edges_left:
            return
        extend(seq + [Leaf(0)], edges_left - 1, rank_left - 1)
        limit = edges_left - 1 if not seq else edges_left
        for n2 in range(2, limit + 1):
            for k2 in range(1, min(rank_left, n2 - 1) + 1):
                for comp in _parallel_shapes(n2, k2):
                    extend(seq + [comp], edges_left - n2, rank_left - k2)

    extend([], n, k)
    return tuple(out)


@lru_cache(maxsize=None)
def _parallel_shapes(n: int, k: int) -> tuple:
    """Canonical parallel bundles with n edges and rank k (placeholder ids)."""
    if n < 2 or k < 1 or k >= n:
        return ()
    comps = [Leaf(0)]
    for n2 in range(2, n):
        for k2 in range(2, n2 + 1):
            comps.extend(_series_shapes(n2, k2))
    comps.sort(key=skeleton_key)
    out = []

    def choose(idx, count, edges_left, rankdef_left, acc):
        if edges_left == 0:
            if rankdef_left == 0 and count >= 2:
                out.append(Parallel(tuple(acc)))
            return
        for i in range(idx, len(comps)):
            comp = comps[i]
            ne = leaf_count(comp)
            rdef = rank(comp) - 1
            if ne > edges_left or rdef > rankdef_left:
                continue
            acc.append(comp)
            choose(i, count + 1, edges_left - ne, rankdef_left - rdef, acc)
            acc.pop()

    choose(0, 0, n, k - 1, [])
    return tuple(out)


def enumerate_rooted(n: int, k: int) -> list:
    """Every canonical 2-connected tree with n edges and rank k, once each.

    Empty when no such tree exists (k >= n, k < 1, n < 2).
    """
    if n < 2 or k < 1 or k >= n:
        return []
    shapes = sorted(_parallel_shapes(n, k), key=skeleton_key)
    return [relabel_leaves(s) for s in shapes]


# ---------------------------------------------------------------------------
# realization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiGraph:
    """Directed multigraph; edges[i] = (tail, head, edge id), sorted by id."""

    num_vertices: int
    edges: tuple
    terminals: tuple


def realize(tree, directions=None) -> MultiGraph:
    """Glue the tree into its directed multigraph.

    directions[eid] = True flips that edge against its natural
    left-to-right sense.  A series root is read as the closed-up chain
    (rewritten through parallel_rooted), which is how duals realize.
    """
    graph, _ = realize_with_spans(tree, directions)
    return graph


def realize_with_spans(tree, directions=None):
    """realize plus each node's terminal pair in final vertex labels."""
    if isinstance(tree, Series):
        tree = parallel_rooted(tree)
    if isinstance(tree, Leaf):
        raise SpTreeError("a single edge is not a 2-connected network")
    ids = leaf_ids(tree)
    n = len(ids)
    if sorted(ids) != list(range(n)):
        raise SpTreeError("leaf edge ids must be a permutation of 0..n-1")
    if directions is None:
        directions = [False] * n
    if len(directions) != n:
        raise SpTreeError("need one direction flag per edge")

    parent: list[int] = []

    def fresh():
        parent.append(len(parent))
        return len(parent) - 1

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    raw_edges = []
    spans = {}

    def build(node):
        if isinstance(node, Leaf):
            left, right = fresh(), fresh()
            raw_edges.append((left, right, node.eid))
        elif isinstance(node, Series):
            left, right = build(node.children[0])
            for child in node.children[1:]:
                cl, cr = build(child)
                union(right, cl)
                right = cr
        else:
            pairs = [build(child) for child in node.children]
            left, right = pairs[0]
            for cl, cr in pairs[1:]:
                union(left, cl)
                union(right, cr)
        spans[node] = (left, right)
        return left, right

    root_l, root_r = build(tree)

    label = {}
    for pv in range(len(parent)):
        root = find(pv)
        if root not in label:
            label[root] = len(label)

    def lab(pv):
        return label[find(pv)]

    edges = []
    for tail, head, eid in raw_edges:
        t, h = lab(tail), lab(head)
        if directions[eid]:
            t, h = h, t
        edges.append((t, h, eid))
    edges.sort(key=lambda e: e[2])

    node_spans = {node: (lab(a), lab(b)) for node, (a, b) in spans.items()}
    graph = MultiGraph(len(label), tuple(edges), (lab(root_l), lab(root_r)))
    return graph, node_spans


# ---------------------------------------------------------------------------
# decomposition (graph -> tree)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Tree recovered from a concrete multigraph.

    tree is canonical with edge ids relabeled in reading order;
    edge_map[i] is the input edge id sitting at canonical leaf i.

    raw_tree keeps the reduction order and the original edge ids, and
    raw_flips[eid] says the input edge runs against its natural sense
    there, so realize(raw_tree, raw_flips) reproduces the input exactly up
    to vertex relabeling.  (The canonical tree cannot play that role in
    general: reversing an inner series chain into canonical order is a
    Whitney twist of the realization.)  canonicalize(raw_tree) == tree.
    """

    tree: SpTree
    edge_map: tuple
    raw_tree: SpTree
    raw_flips: tuple


@dataclass
class _VirtualEdge:
    u: int
    v: int
    tree: SpTree
    flips: dict


def _reverse_vedge(ve: _VirtualEdge) -> _VirtualEdge:
    return _VirtualEdge(ve.v, ve.u, reverse_tree(ve.tree),
                        {e: not f for e, f in ve.flips.items()})


def decompose(graph: MultiGraph, l: int, r: int, rng=None) -> Decomposition:
    """Reduce a 2-connected series-parallel multigraph to its tree.

    Alternates parallel reductions (merge multi-edge bundles) with series
    reductions (suppress interior degree-2 vertices) until one virtual edge
    between the terminals remains.  The result is canonicalized, so any
    reduction order agrees; rng, when given, shuffles the order (used to
    exercise that confluence).
    """
    nv = graph.num_vertices
    if not (0 <= l < nv and 0 <= r < nv) or l == r:
        raise SpTreeError("terminals must be two distinct vertices of the graph")
    vedges = []
    for tail, head, eid in graph.edges:
        if tail == head:
            raise SpTreeError("self-loops cannot occur in a 2-connected series-parallel graph")
        vedges.append(_VirtualEdge(tail, head, Leaf(eid), {eid: False}))
    if not vedges:
        raise SpTreeError("graph has no edges")

    while len(vedges) > 1:
        bundles = {}
        for ve in vedges:
            bundles.setdefault(frozenset((ve.u, ve.v)), []).append(ve)
        multi = [key for key, group in bundles.items() if len(group) > 1]
        if multi:
            if rng is not None:
                rng.shuffle(multi)
            key = multi[0]
            group = bundles[key]
            if rng is not None:
                rng.shuffle(group)
            a, b = min(key), max(key)
            oriented = [ve if ve.u == a else _reverse_vedge(ve) for ve in group]
            flips = {}
            for ve in oriented:
                flips.update(ve.flips)
            merged = _VirtualEdge(a, b, make_parallel([ve.tree for ve in oriented]), flips)
            vedges = [ve for ve in vedges if not any(ve is g for g in group)] + [merged]
            continue

        incidence = {}
        for ve in vedges:
            incidence.setdefault(ve.u, []).append(ve)
            incidence.setdefault(ve.v, []).append(ve)
        candidates = [x for x, inc in incidence.items()
                      if x not in (l, r) and len(inc) == 2]
        if not candidates:
            raise SpTreeError(
                "graph is not series-parallel reducible for these terminals")
        if rng is not None:
            rng.shuffle(candidates)
        else:
            candidates.sort()
        x = candidates[0]
        first, second = incidence[x]
        a2 = first if first.v == x else _reverse_vedge(first)
        b2 = second if second.u == x else _reverse_vedge(second)
        if a2.u == b2.v:
            raise SpTreeError(
                "graph is not series-parallel reducible for these terminals")
        merged = _VirtualEdge(a2.u, b2.v, make_series([a2.tree, b2.tree]),
                              {**a2.flips, **b2.flips})
        vedges = [ve for ve in vedges if ve is not first and ve is not second]
        vedges.append(merged)

    final = vedges[0]
    if frozenset((final.u, final.v)) != frozenset((l, r)):
        raise SpTreeError("reduction did not terminate at the chosen terminals")
    if final.u != l:
        final = _reverse_vedge(final)
    if not isinstance(final.tree, Parallel):
        raise SpTreeError("graph is not 2-connected (outermost composition is not parallel)")

    shape, _ = _canonical_oriented(final.tree)
    order = leaf_ids(shape)
    tree = relabel_leaves(shape)
    raw_flips = tuple(final.flips[e] for e in range(len(final.flips)))
    return Decomposition(tree, tuple(order), final.tree, raw_flips)
