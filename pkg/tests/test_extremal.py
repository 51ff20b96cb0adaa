import math
import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

import spextremal as sp
from spextremal.numeric import rational_matrix


def exact_equal(a, b):
    return a.shape == b.shape and bool((a == b).all())


class TestBuild:
    def test_two_cycle(self):
        inst = sp.build(sp.parse_tree("P(e,e)"))
        angle, _ = sp.target(inst.subspace)
        assert abs(math.cos(angle) - 1 / math.sqrt(2)) < 1e-12
        assert np.allclose(np.abs(inst.subspace.basis), 1 / math.sqrt(2))

    def test_triangle_transfer_current(self):
        inst = sp.build(sp.parse_tree("P(e,S(e,e))"), [False, True, True])
        third = Fraction(1, 3)
        expected = rational_matrix(
            [[1 - third, -third, -third],
             [-third, 1 - third, -third],
             [-third, -third, 1 - third]])
        assert exact_equal(inst.Y, expected)

    def test_banana_line(self):
        n = 5
        t = sp.make_parallel([sp.make_leaf(i) for i in range(n)])
        inst = sp.build(t)
        assert inst.subspace.dim == 1
        assert np.allclose(np.abs(inst.subspace.basis), 1 / math.sqrt(n))

    def test_series_rooted_input_accepted(self):
        dual = sp.dualize(sp.parse_tree("P(e,S(e,e,e))"))
        inst = sp.build(dual)
        assert len(inst.graph.edges) == 4
        assert inst.subspace.dim == 1


class TestCheckEigen:
    def test_triangle_hand_values(self):
        inst = sp.build(sp.parse_tree("P(e,S(e,e))"), [False, True, True])
        tau = (1, 2)
        sub = inst.Y[np.ix_(tau, tau)]
        expected = rational_matrix(
            [[Fraction(2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(2, 3)]])
        assert exact_equal(sub, expected)
        y = sp.induced_coefficients(inst.tree, tau, inst.graph)
        assert y[1] == y[2]  # proportional to (1, 1)
        assert sp.check_eigen(inst, tau)

    def test_banana_single_edges(self):
        n = 4
        t = sp.make_parallel([sp.make_leaf(i) for i in range(n)])
        inst = sp.build(t)
        for e in range(n):
            assert inst.Y[e, e] == Fraction(1, n)
            assert sp.check_eigen(inst, (e,))

    def test_holds_for_every_spanning_tree_small(self):
        for n in range(2, 6):
            for k in range(1, n):
                for t in sp.enumerate_rooted(n, k):
                    inst = sp.build(t)
                    for tau in sp.spanning_trees(inst.graph):
                        assert sp.check_eigen(inst, tau)

    def test_rejects_non_tree(self):
        inst = sp.build(sp.parse_tree("P(e,S(e,P(e,e)))"))
        with pytest.raises(sp.SpTreeError):
            sp.check_eigen(inst, (2, 3))


class TestCheckDegenerate:
    def test_diamond_parallel_pair(self):
        inst = sp.build(sp.parse_tree("P(e,S(e,P(e,e)))"))
        assert sp.check_degenerate(inst, (2, 3))

    def test_banana_has_no_degenerate_subsets(self):
        t = sp.make_parallel([sp.make_leaf(i) for i in range(3)])
        inst = sp.build(t)
        trees = set(sp.spanning_trees(inst.graph))
        non_trees = [s for s in combinations(range(3), 1) if s not in trees]
        assert non_trees == []

    def test_all_non_tree_subsets_small(self):
        for n in range(2, 6):
            for k in range(1, n):
                for t in sp.enumerate_rooted(n, k):
                    inst = sp.build(t)
                    trees = set(sp.spanning_trees(inst.graph))
                    for s in combinations(range(n), k):
                        if s not in trees:
                            assert sp.check_degenerate(inst, s)


class TestCheckTarget:
    def test_small_instances(self):
        for n in range(2, 6):
            for k in range(1, n):
                for t in sp.enumerate_rooted(n, k):
                    assert sp.check_target(sp.build(t))

    def test_corrupted_weights_fail(self):
        inst = sp.build(sp.parse_tree("P(e,S(e,P(e,e)))"))
        bad = dict(inst.weights)
        bad[2] = Fraction(7, 2)
        g = inst.graph
        B = sp.incidence_matrix(g)
        root = np.sqrt([float(bad[e]) for e in range(4)])
        basis = sp.orthonormalize((root[:, None] * B.astype(float).T)[:, 1:])
        corrupted = sp.ExtremalInstance(inst.tree, g, bad, B,
                                        sp.transfer_current(B, bad),
                                        sp.projection(B, bad), basis)
        assert not sp.check_target(corrupted)


class TestCheckDual:
    def test_banana_cycle_pair(self):
        t = sp.make_parallel([sp.make_leaf(i) for i in range(4)])
        ok, diag = sp.check_dual(sp.build(t))
        assert ok, diag

    def test_triangle(self):
        ok, diag = sp.check_dual(sp.build(sp.parse_tree("P(e,S(e,e))")))
        assert ok, diag

    def test_all_small(self):
        for n in range(2, 6):
            for k in range(1, n):
                for t in sp.enumerate_rooted(n, k):
                    ok, diag = sp.check_dual(sp.build(t))
                    assert ok, (sp.format_tree(t), diag)


class TestClassKey:
    def test_invariant_under_edge_relabeling(self):
        t = sp.parse_tree("P(e,S(e,P(e,e)))")
        base = sp.class_key(sp.build(t))
        # rebuild the same network with leaves permuted via a different but
        # symmetric tree text (swap the parallel pair order and outer branches)
        other = sp.parse_tree("P(S(P(e,e),e),e)")
        assert sp.class_key(sp.build(sp.canonicalize(other))) == base

    def test_invariant_under_direction_flips(self):
        rng = random.Random(9)
        t = sp.parse_tree("P(e,e,S(e,e))")
        base = sp.class_key(sp.build(t))
        for _ in range(5):
            dirs = [rng.random() < 0.5 for _ in range(4)]
            assert sp.class_key(sp.build(t, dirs)) == base

    def test_terminal_choices_merge(self):
        a, b = sp.enumerate_rooted(4, 2)
        assert sp.class_key(sp.build(a)) == sp.class_key(sp.build(b))

    def test_collision_safety_permutation_exists(self):
        from spextremal.extremal import canonical_matrix_form
        insts = [sp.build(t) for t in sp.enumerate_rooted(5, 2)]
        by_key = {}
        for inst in insts:
            by_key.setdefault(sp.class_key(inst), []).append(inst)
        for group in by_key.values():
            q0 = group[0].Y * group[0].Y.T
            _, p0 = canonical_matrix_form(q0)
            for other in group[1:]:
                q1 = other.Y * other.Y.T
                _, p1 = canonical_matrix_form(q1)
                n = q0.shape[0]
                # composing the canonical permutations maps q1 onto q0
                mapping = {p1[i]: p0[i] for i in range(n)}
                assert all(q1[i, j] == q0[mapping[i], mapping[j]]
                           for i in range(n) for j in range(n))


class TestCountClasses:
    def test_named_entries(self):
        assert sp.count_classes(5, 2) == 2
        assert sp.count_classes(7, 4) == 8

    def test_small_triangle(self):
        assert sp.class_table(5) == [[1], [1, 1], [1, 1, 1], [1, 2, 2, 1]]


class TestReports:
    def test_verify_instance_shape(self):
        report = sp.verify_instance(sp.build(sp.parse_tree("P(e,e)")))
        assert report["n"] == 2 and report["k"] == 1
        assert abs(report["target_cos"] - 1 / math.sqrt(2)) < 1e-12
        assert report["eigen_ok"] and report["degenerate_ok"] and report["dual_ok"]

    def test_least_eigenvalue_observation_small(self):
        for n in range(2, 6):
            for k in range(1, n):
                for t in sp.enumerate_rooted(n, k):
                    inst = sp.build(t)
                    for _, eig in sp.least_eigenvalue_report(inst):
                        assert abs(eig - 1.0 / n) < 1e-8
