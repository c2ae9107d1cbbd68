from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hajoslab.canonical import canonical_form, canonical_labeling, is_isomorphic
from hajoslab.coloring import chromatic_number, is_colorable
from hajoslab.graph import Graph, GraphError
from hajoslab.graphio import from_graph6, from_json, read_graph, to_graph6, to_json
from oracles import brute_chromatic, nx_graph, nx_graph6
from test_graph import graphs


def test_graph6_known_strings():
    assert to_graph6(Graph.cycle(5)) == "Dhc"
    assert to_graph6(Graph.complete(4)) == "C~"
    assert to_graph6(Graph.empty(1)) == "@"
    assert from_graph6(">>graph6<<Dhc") == Graph.cycle(5)


def test_graph6_large_order_header():
    g = Graph.path(70)
    assert to_graph6(g) == nx_graph6(g)
    assert from_graph6(to_graph6(g)) == g


@pytest.mark.parametrize("bad", ["", "D", "Dh\x7f"])
def test_graph6_rejects_garbage(bad):
    with pytest.raises((GraphError, ValueError)):
        from_graph6(bad)


def test_json_roundtrip_and_read_graph():
    g = Graph.from_edges([(0, 2), (1, 2)], range(4))
    assert from_json(to_json(g)) == g
    assert read_graph(to_json(g)) == g
    assert read_graph("Dhc\n") == Graph.cycle(5)


@settings(max_examples=150, deadline=None)
@given(graphs(12))
def test_graph6_matches_networkx(g):
    assert to_graph6(g) == nx_graph6(g)
    assert from_graph6(to_graph6(g)) == g


def _shuffle(g: Graph, rng: random.Random) -> Graph:
    perm = list(g.vertices)
    rng.shuffle(perm)
    return g.relabeled(dict(zip(g.vertices, perm)))


@settings(max_examples=150, deadline=None)
@given(graphs(10), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(g, rng):
    assert canonical_form(_shuffle(g, rng)) == canonical_form(g)
    lab = canonical_labeling(g)
    assert sorted(lab.values()) == list(range(g.order))


@settings(max_examples=200, deadline=None)
@given(graphs(8), graphs(8))
def test_isomorphism_matches_networkx(g, h):
    assert is_isomorphic(g, h) == nx.is_isomorphic(nx_graph(g), nx_graph(h))


def test_isomorphism_classes_on_four_vertices():
    forms = set()
    pairs = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    for mask in range(1 << 6):
        forms.add(canonical_form(Graph.from_edges([e for i, e in enumerate(pairs) if mask >> i & 1], range(4))))
    assert len(forms) == 11


def test_regular_graphs_are_fast_and_distinguished():
    # vertex-transitive inputs stress the automorphism pruning
    petersen = Graph.from_edges(list(nx.petersen_graph().edges()))
    prism = Graph.from_edges(list(nx.circular_ladder_graph(5).edges()))
    assert not is_isomorphic(petersen, prism)
    assert is_isomorphic(Graph.complete(40), _shuffle(Graph.complete(40), random.Random(1)))


def test_chromatic_fixtures():
    assert chromatic_number(Graph.empty(0)) == 0
    assert chromatic_number(Graph.empty(3)) == 1
    assert chromatic_number(Graph.cycle(6)) == 2
    assert chromatic_number(Graph.cycle(7)) == 3
    assert chromatic_number(Graph.complete(6)) == 6
    mycielski = Graph.from_edges(list(nx.mycielski_graph(4).edges()))
    assert chromatic_number(mycielski) == 4


@settings(max_examples=100, deadline=None)
@given(graphs(7))
def test_chromatic_matches_brute(g):
    assert chromatic_number(g) == brute_chromatic(g.edges, g.order)
    col = is_colorable(g, chromatic_number(g))
    assert col is not None and all(col[u] != col[v] for u, v in g.edges)
