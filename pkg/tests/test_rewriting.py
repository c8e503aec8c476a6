import sys
import os
import random

import pytest
from hypothesis import given, settings, strategies

# Add src to sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from leavitt_sym.algebra import (
    adjoint,
    equals,
    equals_by_expansion,
    expansion_equals,
    mul,
    normal_form,
    product_terms,
    random_element,
)
from leavitt_sym.graph import make_family, parse_graph

GRAPHS = [
    make_family("Ln", 2),
    make_family("Ln", 3),
    make_family("C2"),
    make_family("T"),
    make_family("TPrime"),
    make_family("P2"),
    make_family("Son", 2),
    parse_graph("u v w ; a: u -> v ; b: u -> v ; c: v -> w ; d: v -> v"),
]

graphs = strategies.sampled_from(GRAPHS)
seeds = strategies.integers(min_value=0, max_value=2**32 - 1)


def _element(g, seed, n_terms=3):
    return random_element(g, random.Random(seed), n_terms=n_terms, max_len=2)


@settings(max_examples=60, deadline=None)
@given(graphs, seeds)
def test_normal_form_is_order_independent(g, seed):
    rng = random.Random(seed)
    a, b = _element(g, seed), _element(g, seed + 1)
    raw = product_terms(g, a.terms, b.terms)
    reference = normal_form(g, raw)
    for _ in range(100):
        assert normal_form(g, raw, rng=rng) == reference


@settings(max_examples=60, deadline=None)
@given(graphs, seeds)
def test_normal_form_is_idempotent(g, seed):
    a = _element(g, seed, n_terms=4)
    assert normal_form(g, a.terms).terms == a.terms


@settings(max_examples=100, deadline=None)
@given(graphs, seeds)
def test_ring_and_involution_axioms(g, seed):
    a, b, c = _element(g, seed), _element(g, seed + 1), _element(g, seed + 2)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)
    assert mul(a + b, c) == mul(a, c) + mul(b, c)
    assert adjoint(mul(a, b)) == mul(adjoint(b), adjoint(a))
    assert adjoint(a + b) == adjoint(a) + adjoint(b)
    assert adjoint(adjoint(a)) == a


@settings(max_examples=100, deadline=None)
@given(graphs, seeds)
def test_expansion_oracle_agrees_with_equals(g, seed):
    a, b = _element(g, seed), _element(g, seed + 1)
    assert equals(a, b) == equals_by_expansion(a, b)
    assert equals_by_expansion(a, a + b - b)


@settings(max_examples=100, deadline=None)
@given(graphs, seeds)
def test_raw_products_expand_like_their_normal_form(g, seed):
    a, b = _element(g, seed), _element(g, seed + 1)
    raw = product_terms(g, a.terms, b.terms)
    assert expansion_equals(g, raw, mul(a, b).terms)


@settings(max_examples=40, deadline=None)
@given(strategies.data())
def test_distinct_elements_are_told_apart(data):
    g = data.draw(graphs)
    a = _element(g, data.draw(seeds))
    b = a + _element(g, data.draw(seeds), n_terms=1)
    if not equals(a, b):
        assert not equals_by_expansion(a, b)


CYCLIC = [
    make_family("Ln", 1),
    make_family("Ln", 2),
    make_family("Ln", 3),
    make_family("C2"),
    make_family("T"),
    make_family("TPrime"),
]


@pytest.mark.slow
@pytest.mark.parametrize("index", range(len(CYCLIC)))
def test_expansion_and_rewrite_order_on_cyclic_graphs(index):
    g = CYCLIC[index]
    rng = random.Random(index)
    for _ in range(200):
        a, b = random_element(g, rng), random_element(g, rng)
        assert equals(a, b) == equals_by_expansion(a, b)
        raw = product_terms(g, a.terms, b.terms)
        reference = normal_form(g, raw)
        assert expansion_equals(g, raw, reference.terms)
        for _ in range(100):
            assert normal_form(g, raw, rng=rng).terms == reference.terms


@pytest.mark.slow
def test_ring_and_involution_axioms_on_many_triples():
    rng = random.Random(1000)
    for _ in range(1000):
        g = rng.choice(GRAPHS)
        a, b, c = random_element(g, rng), random_element(g, rng), random_element(g, rng)
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, b + c) == mul(a, b) + mul(a, c)
        assert mul(a + b, c) == mul(a, c) + mul(b, c)
        assert adjoint(mul(a, b)) == mul(adjoint(b), adjoint(a))
        assert adjoint(adjoint(a)) == a
