import sys
import os
import itertools
import unittest

import pytest

# Add src to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from leavitt_sym.budget import BudgetGuard
from leavitt_sym.errors import BudgetExceededError, IsolatedVerticesError, PermutationError
from leavitt_sym.classifier import classify
from leavitt_sym.graph import enumerate_graphs, make_family, parse_graph, serialize_graph
from leavitt_sym.models import Family
from leavitt_sym.verification import (
    CHECKS,
    admissible_permutation,
    compose,
    inverse,
    maximal_perm_sym_bruteforce,
    parse_permutation,
    render_cycles,
    transposition_witness,
)

L2_PLUS_L1 = "a b ; l1: a -> a ; l2: a -> a ; l3: b -> b"


class TestPermutationNotation(unittest.TestCase):
    def setUp(self):
        self.g = make_family("Ln", 3)

    def test_cycle_and_one_line_forms_agree(self):
        cycle = parse_permutation(self.g, "(l1 l2 l3)")
        self.assertEqual(cycle, {"l1": "l2", "l2": "l3", "l3": "l1"})
        self.assertEqual(parse_permutation(self.g, "[l2, l3, l1]"), cycle)
        self.assertEqual(parse_permutation(self.g, "l2 l3 l1"), cycle)

    def test_identity(self):
        identity = {e: e for e in self.g.edge_ids}
        self.assertEqual(parse_permutation(self.g, "()"), identity)
        self.assertEqual(parse_permutation(self.g, "(l1)(l2)"), identity)
        self.assertEqual(render_cycles(self.g, identity), "()")

    def test_render_cycles(self):
        self.assertEqual(render_cycles(self.g, parse_permutation(self.g, "(l3 l1)")), "(l1 l3)")
        self.assertEqual(render_cycles(self.g, parse_permutation(self.g, "[l2, l3, l1]")), "(l1 l2 l3)")

    def test_compose_and_inverse(self):
        sigma = parse_permutation(self.g, "(l1 l2)")
        other = parse_permutation(self.g, "(l2 l3)")
        self.assertEqual(compose(self.g, sigma, other), {"l1": "l2", "l2": "l3", "l3": "l1"})
        cycle = parse_permutation(self.g, "(l1 l2 l3)")
        self.assertEqual(render_cycles(self.g, inverse(self.g, cycle)), "(l1 l3 l2)")
        self.assertEqual(compose(self.g, cycle, inverse(self.g, cycle)), {e: e for e in self.g.edge_ids})

    def test_malformed_permutations(self):
        for text in ["", "(l1 l2)(l2 l3)", "(l1 l9)", "[l1, l1, l2]", "[l1, l2]", "(l1 l2", "[l2, l1, l3"]:
            with self.subTest(text=text):
                with self.assertRaises(PermutationError):
                    parse_permutation(self.g, text)

    def test_non_bijection_is_rejected(self):
        with self.assertRaises(PermutationError):
            admissible_permutation(self.g, {"l1": "l1", "l2": "l1", "l3": "l3"})


class TestAdmissibility(unittest.TestCase):
    def test_two_cycle_swap(self):
        g = make_family("C2")
        certificate = admissible_permutation(g, parse_permutation(g, "(e12 e21)"))
        self.assertTrue(certificate.admissible)
        self.assertIsNone(certificate.failure)
        self.assertEqual(certificate.cycles, "(e12 e21)")

    def test_path_swap_fails_at_middle_vertex(self):
        g = make_family("P2")
        certificate = admissible_permutation(g, parse_permutation(g, "(e12 e23)"))
        self.assertFalse(certificate.admissible)
        failure = certificate.failure
        self.assertEqual(failure.check_index, 3)
        self.assertEqual(failure.check, "ck2-image")
        self.assertEqual(failure.vertices, ["v2"])
        self.assertEqual(failure.left, "P(v3)")
        self.assertEqual(failure.right, "P(v1)")

    def test_identity_is_always_admissible(self):
        for g in (make_family("P2"), make_family("T"), parse_graph(L2_PLUS_L1)):
            self.assertTrue(admissible_permutation(g, {e: e for e in g.edge_ids}).admissible)

    def test_range_consistency(self):
        g = parse_graph(L2_PLUS_L1)
        certificate = admissible_permutation(g, parse_permutation(g, "(l2 l3)"))
        self.assertEqual(certificate.failure.check, CHECKS[0])
        self.assertEqual(certificate.failure.vertices, ["a"])
        self.assertEqual(certificate.failure.edges, ["l1", "l2"])
        self.assertTrue(admissible_permutation(g, parse_permutation(g, "(l1 l2)")).admissible)

    def test_loop_graph_swap_fails(self):
        g = make_family("T")
        certificate = admissible_permutation(g, parse_permutation(g, "(e g)"))
        self.assertFalse(certificate.admissible)
        self.assertEqual(certificate.failure.check_index, 3)

    def test_isolated_vertices_are_rejected(self):
        g = parse_graph("a b ; l: a -> a")
        with self.assertRaises(IsolatedVerticesError):
            admissible_permutation(g, {"l": "l"})


def test_admissible_permutations_form_a_group():
    g = parse_graph(L2_PLUS_L1)
    edges = g.edge_ids
    admissible = []
    for images in itertools.permutations(edges):
        sigma = dict(zip(edges, images))
        if admissible_permutation(g, sigma).admissible:
            admissible.append(sigma)
    assert sorted(render_cycles(g, s) for s in admissible) == ["()", "(l1 l2)"]
    for sigma in admissible:
        for other in admissible:
            assert compose(g, sigma, other) in admissible
        assert inverse(g, sigma) in admissible


def test_bruteforce():
    result = maximal_perm_sym_bruteforce(make_family("Son", 3))
    assert result.maximal is True
    assert result.checked == 6
    assert result.failures == []

    result = maximal_perm_sym_bruteforce(make_family("P2"))
    assert result.maximal is False
    assert [f.cycles for f in result.failures] == ["(e12 e23)"]

    result = maximal_perm_sym_bruteforce(parse_graph(L2_PLUS_L1))
    assert result.checked == 6
    assert len(result.failures) == 4

    result = maximal_perm_sym_bruteforce(parse_graph(L2_PLUS_L1), collect_all=False)
    assert len(result.failures) == 1

    guard = BudgetGuard()
    assert maximal_perm_sym_bruteforce(make_family("Ln", 2), guard=guard).maximal
    assert guard.permutations_checked == 2


def test_bruteforce_respects_factorial_budget():
    with pytest.raises(BudgetExceededError) as exc:
        maximal_perm_sym_bruteforce(make_family("Ln", 7))
    assert exc.value.requested == 7
    assert exc.value.allowed == 6
    assert maximal_perm_sym_bruteforce(make_family("Ln", 3), BudgetGuard(factorial_budget=3)).maximal


def test_transposition_witness():
    assert transposition_witness(make_family("P2")).cycles == "(e12 e23)"
    assert transposition_witness(parse_graph(L2_PLUS_L1)).cycles == "(l1 l3)"
    assert transposition_witness(make_family("T")) is not None
    assert transposition_witness(make_family("Ln", 3)) is None
    assert transposition_witness(make_family("Son", 3)) is None


def test_every_obstructed_graph_has_an_inadmissible_transposition():
    seen = set()
    for g in enumerate_graphs(3, 3, no_isolated=True):
        verdict = classify(g)
        if verdict.family is not Family.NONE:
            continue
        seen.add(verdict.obstruction.lemma)
        certificate = transposition_witness(g)
        assert certificate is not None, serialize_graph(g)
        assert not certificate.admissible
        assert certificate.failure.check in CHECKS
        assert certificate.failure.detail
    assert {"EL1", "EL2", "EL3"} <= seen
