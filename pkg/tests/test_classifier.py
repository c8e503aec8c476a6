import sys
import os
import random
import unittest

import pytest

# Add src to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from leavitt_sym.classifier import (
    ONE_EDGE_COINCIDENCE,
    aut_f_report,
    classify,
    find_aut_f_witness,
    in_class_I1,
    in_class_S,
    obstructions,
)
from leavitt_sym.errors import IsolatedVerticesError
from leavitt_sym.graph import make_family, parse_graph, relabel
from leavitt_sym.models import Family, GroupKind

TWO_DISJOINT_EDGES = "a b c d ; e1: a -> b ; e2: c -> d"

# (graph, family, group, connected) across the sizes of the family table
FAMILY_TABLE = [
    (make_family("Ln", 1), Family.LN, "U+(1)", True),
    (make_family("Ln", 2), Family.LN, "U+(2)", True),
    (make_family("Ln", 3), Family.LN, "U+(3)", True),
    (make_family("Ln", 4), Family.LN, "U+(4)", True),
    (make_family("DisjointLoops", 1), Family.LN, "U+(1)", True),
    (make_family("DisjointLoops", 2), Family.DISJOINT_LOOPS, "Hinf+(2)", False),
    (make_family("DisjointLoops", 3), Family.DISJOINT_LOOPS, "Hinf+(3)", False),
    (make_family("DisjointLoops", 4), Family.DISJOINT_LOOPS, "Hinf+(4)", False),
    (make_family("C2"), Family.C2, "Hinf+(2)", True),
    (make_family("IntoStar", 1), Family.CLASS_S, "U+(1)", True),
    (make_family("IntoStar", 2), Family.CLASS_S, "U+(2)", True),
    (make_family("IntoStar", 3), Family.CLASS_S, "U+(3)", True),
    (make_family("IntoStar", 4), Family.CLASS_S, "U+(4)", True),
    (parse_graph("a b ; p: a -> b ; q: a -> b ; r: a -> b"), Family.CLASS_S, "U+(3)", True),
    (parse_graph("a b c ; x: a -> c ; y: a -> c ; z: b -> c ; w: b -> c"), Family.CLASS_S, "U+(4)", True),
    (make_family("Son", 2), Family.CLASS_I1_SON, "SHinf+(2)", True),
    (make_family("Son", 3), Family.CLASS_I1_SON, "SHinf+(3)", True),
    (make_family("Son", 4), Family.CLASS_I1_SON, "SHinf+(4)", True),
    (parse_graph(TWO_DISJOINT_EDGES), Family.CLASS_I1_OTHER, "SHinf+(2)", False),
    (parse_graph("a b c d x y ; e1: a -> b ; e2: c -> d ; e3: x -> y"), Family.CLASS_I1_OTHER, "SHinf+(3)", False),
    (parse_graph("a b c d x y ; e1: a -> b ; e2: a -> c ; e3: d -> x ; e4: d -> y"),
     Family.CLASS_I1_OTHER, "SHinf+(4)", False),
]


class TestFamilyTable(unittest.TestCase):
    def assertVerdict(self, g, family, group, connected):
        verdict = classify(g)
        self.assertEqual(verdict.family, family)
        self.assertEqual(verdict.group, group)
        self.assertEqual(verdict.connected, connected)
        self.assertIsNone(verdict.obstruction)

    def test_loops_at_one_vertex(self):
        for n in (1, 2, 4):
            self.assertVerdict(make_family("Ln", n), Family.LN, f"U+({n})", True)

    def test_disjoint_loops(self):
        self.assertVerdict(make_family("DisjointLoops", 3), Family.DISJOINT_LOOPS, "Hinf+(3)", False)

    def test_two_cycle(self):
        verdict = classify(make_family("C2"))
        self.assertEqual(verdict.group_kind, GroupKind.H2_INF_PLUS)
        self.assertVerdict(make_family("C2"), Family.C2, "Hinf+(2)", True)

    def test_edges_into_one_vertex(self):
        self.assertVerdict(make_family("IntoStar", 3), Family.CLASS_S, "U+(3)", True)
        self.assertVerdict(parse_graph("a b ; p: a -> b ; q: a -> b"), Family.CLASS_S, "U+(2)", True)

    def test_edges_into_private_sinks(self):
        self.assertVerdict(make_family("Son", 3), Family.CLASS_I1_SON, "SHinf+(3)", True)
        self.assertVerdict(parse_graph(TWO_DISJOINT_EDGES), Family.CLASS_I1_OTHER, "SHinf+(2)", False)

    def test_single_edge_coincidence(self):
        for g in (parse_graph("a b ; e: a -> b"), make_family("Ln", 1)):
            verdict = classify(g)
            self.assertEqual(verdict.group, "U+(1)")
            self.assertEqual(verdict.coincidence, ONE_EDGE_COINCIDENCE)
        self.assertEqual(classify(parse_graph("a b ; e: a -> b")).family, Family.CLASS_S)
        self.assertIsNone(classify(make_family("Ln", 2)).coincidence)

    def test_class_predicates(self):
        self.assertTrue(in_class_S(make_family("IntoStar", 2)))
        self.assertFalse(in_class_S(make_family("Ln", 2)))
        self.assertTrue(in_class_I1(make_family("Son", 2)))
        self.assertFalse(in_class_I1(make_family("P2")))


class TestObstructions(unittest.TestCase):
    def assertObstruction(self, g, kind, lemma):
        verdict = classify(g)
        self.assertEqual(verdict.family, Family.NONE)
        self.assertEqual(verdict.group, "NotMaximal")
        self.assertIsNotNone(verdict.obstruction)
        self.assertEqual(verdict.obstruction.kind, kind)
        self.assertEqual(verdict.obstruction.lemma, lemma)
        return verdict.obstruction

    def test_loop_next_to_non_loop(self):
        witness = self.assertObstruction(make_family("TPrime"), "loop-with-nonloop", "EL1")
        self.assertEqual(witness.edges, ["g", "e"])
        self.assertObstruction(make_family("T"), "loop-with-nonloop", "EL1")

    def test_intermediate_vertex(self):
        g = parse_graph("v1 v2 v3 v4 ; a: v1 -> v2 ; b: v2 -> v3 ; c: v2 -> v4")
        witness = self.assertObstruction(g, "intermediate-vertex", "EL2")
        self.assertEqual(witness.vertices, ["v2"])

    def test_crowded_sink(self):
        g = parse_graph("u1 u2 v w x ; a: u1 -> v ; b: u2 -> v ; c: w -> x")
        witness = self.assertObstruction(g, "crowded-sink", "EL3")
        self.assertEqual(witness.vertices, ["v"])
        self.assertEqual(witness.edges, ["a", "b", "c"])

    def test_uneven_loops(self):
        g = parse_graph("a b ; l1: a -> a ; l2: a -> a ; l3: b -> b")
        witness = self.assertObstruction(g, "uneven-loops", "EP1")
        self.assertEqual(witness.edges, ["l2", "l3"])

    def test_path_of_length_two(self):
        witness = self.assertObstruction(make_family("P2"), "P2-shaped", "EP2")
        self.assertEqual(witness.edges, ["e12", "e23"])

    def test_no_obstruction_for_maximal_graphs(self):
        for g in (make_family("Ln", 3), make_family("C2"), make_family("Son", 2)):
            self.assertIsNone(obstructions(g))


class TestAutF(unittest.TestCase):
    def test_scalar_f_with_unitary_group(self):
        for g in (make_family("Ln", 3), make_family("IntoStar", 2)):
            report = aut_f_report(g)
            self.assertTrue(report.scalar)
            self.assertTrue(report.possible)
            self.assertIsNone(report.witness)
        self.assertTrue(classify(make_family("Ln", 3)).aut_f_feasible)

    def test_scalar_f_with_other_group(self):
        for g in (make_family("Son", 3), make_family("C2")):
            report = aut_f_report(g)
            self.assertTrue(report.scalar)
            self.assertFalse(report.possible)

    def test_non_loop_into_crowded_vertex(self):
        g = parse_graph("v1 v2 v3 v4 ; e1: v1 -> v2 ; e2: v2 -> v3 ; e3: v2 -> v4")
        report = aut_f_report(g)
        self.assertFalse(report.scalar)
        witness = report.witness
        self.assertEqual(witness.case, "non-loop-into-crowded-vertex")
        self.assertEqual((witness.e, witness.g), ("e1", "e2"))
        self.assertEqual(witness.vanishing, "S(e1)S(e1)")
        self.assertEqual(witness.nonvanishing, "S(e1)S(e2)")
        self.assertTrue(witness.vanishing_confirmed)
        self.assertTrue(witness.nonvanishing_confirmed)

    def test_loop_with_non_loop_exit(self):
        witness = find_aut_f_witness(make_family("T"))
        self.assertEqual(witness.case, "loop-with-non-loop-exit")
        self.assertEqual((witness.e, witness.g), ("e", "g"))
        self.assertTrue(witness.vanishing_confirmed and witness.nonvanishing_confirmed)

    def test_loop_and_elsewhere(self):
        g = parse_graph("a b ; l1: a -> a ; l2: a -> a ; l3: b -> b")
        witness = aut_f_report(g).witness
        self.assertEqual(witness.case, "loop-and-elsewhere")
        self.assertEqual((witness.e, witness.g), ("l1", "l3"))
        self.assertEqual(witness.nonvanishing, "S(l1)S(l2)")
        self.assertTrue(witness.vanishing_confirmed and witness.nonvanishing_confirmed)


def test_isolated_vertices_are_rejected():
    g = parse_graph("a b ; l: a -> a")
    with pytest.raises(IsolatedVerticesError) as exc:
        classify(g)
    assert exc.value.vertices == ["b"]
    with pytest.raises(IsolatedVerticesError):
        aut_f_report(g)


def test_payload_shape():
    verdict = classify(make_family("T"))
    payload = verdict.to_payload(aut_f_report(make_family("T")))
    assert payload["family"] == "None"
    assert payload["group"] == "NotMaximal"
    assert payload["obstruction"] == "loop-with-nonloop"
    assert payload["f_diag"] == [2, 1]
    assert payload["f_scalar"] is False
    assert payload["witnesses"][0]["case"] == "loop-with-non-loop-exit"


@pytest.mark.parametrize("text", [
    "v1 v2 ; e12: v1 -> v2 ; e21: v2 -> v1",
    "a b c ; x: a -> c ; y: b -> c ; z: a -> c",
    TWO_DISJOINT_EDGES,
    "a b ; l1: a -> a ; l2: a -> a ; l3: b -> b",
    "v1 v2 v3 v4 ; a: v1 -> v2 ; b: v2 -> v3 ; c: v2 -> v4",
    "v w ; e: v -> v ; g: v -> w",
])
def test_verdict_is_isomorphism_invariant(text):
    g = parse_graph(text)
    rng = random.Random(text)
    vertices = list(g.vertices)
    edges = list(g.edge_ids)
    for _ in range(5):
        vmap = {v: f"x{i}" for i, v in enumerate(rng.sample(vertices, len(vertices)))}
        emap = {e: f"f{i}" for i, e in enumerate(rng.sample(edges, len(edges)))}
        h = relabel(g, vmap, emap,
                    vertex_order=rng.sample(list(vmap.values()), len(vmap)),
                    edge_order=rng.sample(list(emap.values()), len(emap)))
        before, after = classify(g), classify(h)
        assert after.family == before.family
        assert after.group == before.group
        assert sorted(after.f_matrix.diagonal) == sorted(before.f_matrix.diagonal)
        assert (after.obstruction is None) == (before.obstruction is None)
        if before.obstruction is not None:
            assert after.obstruction.kind == before.obstruction.kind
            assert after.obstruction.lemma == before.obstruction.lemma


@pytest.mark.parametrize("g,family,group,connected", FAMILY_TABLE)
def test_family_table(g, family, group, connected):
    verdict = classify(g)
    assert (verdict.family, verdict.group, verdict.connected) == (family, group, connected)
    assert verdict.n == len(g.edges)
    assert verdict.obstruction is None
