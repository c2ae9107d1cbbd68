from __future__ import annotations

import json

import numpy as np
import pytest

from hajoslab.canonical import canonical_form
from hajoslab.coloring import chromatic_number
from hajoslab.constructions import contains_clique
from hajoslab.generators import (CraConfig, GenerationError, UraConfig, cra, gnp, replay_cra, replay_ura,
                                 stream, ura, ura_attempt, ura_component)
from hajoslab.graph import Graph, is_connected
from hajoslab.graphio import read_graph6_lines


def test_streams_are_independent_and_reproducible():
    a = stream(1, 0, 5).random(4)
    assert np.array_equal(a, stream(1, 0, 5).random(4))
    assert not np.array_equal(a, stream(1, 0, 6).random(4))
    assert not np.array_equal(a, stream(1, 1, 5).random(4))


def test_config_validation():
    with pytest.raises(ValueError):
        CraConfig(2, 0.5, 3)
    with pytest.raises(ValueError):
        CraConfig(3, 1.0, 3)
    with pytest.raises(ValueError):
        UraConfig(3, 1, 0, 1)
    with pytest.raises(ValueError):
        UraConfig(3, 1, 1, 1, density=1.5)


def test_cra_batch_is_deterministic_distinct_and_replayable():
    batch = cra(CraConfig(4, 0.3, 40, seed=7))
    again = cra(CraConfig(4, 0.3, 40, seed=7))
    assert batch.graph6_lines() == again.graph6_lines()
    assert len(batch.graphs) == 40
    forms = {canonical_form(g) for g in batch.graphs} | {canonical_form(Graph.complete(4))}
    assert len(forms) == 41
    assert batch.provenance[0]["op"] == "merge"  # round one always merges
    assert [g.compacted() for g in replay_cra(4, batch.provenance)] == batch.graphs
    for g in batch.graphs[:15]:
        assert chromatic_number(g) >= 4 and g.order >= 4


def test_cra_round_cap():
    # each round adds at most one graph, so 10 rounds cannot produce 50
    with pytest.raises(GenerationError):
        cra(CraConfig(3, 0.5, 50, seed=0, round_cap=10))


def test_ura_component_shape():
    rng = stream(0, 1, 0)
    g = ura_component(4, 3, rng)
    assert 5 <= g.order <= 7 and contains_clique(g, 4) and is_connected(g)
    sparse = ura_component(4, 5, stream(0, 1, 1), density=0.0)
    assert all(u < 4 or v < 4 for u, v in sparse.edges)


def test_ura_batch_and_replay():
    cfg = UraConfig(3, 20, 2, 2, seed=3)
    batch = ura(cfg)
    assert len(batch.graphs) == 20
    assert batch.graph6_lines() == ura(cfg).graph6_lines()
    for g, prov in zip(batch.graphs, batch.provenance):
        assert replay_ura(prov, k=3) == g
        assert is_connected(g) and chromatic_number(g) >= 3


def test_ura_single_component_has_no_steps():
    cfg = UraConfig(4, 5, 3, 1, seed=0)
    out = ura_attempt(cfg, 0)
    assert out is not None and out[1]["steps"] == []
    assert out[0].order <= 7


def test_batch_write(tmp_path):
    batch = cra(CraConfig(3, 0.5, 5, seed=1))
    batch.write(tmp_path / "g.g6", tmp_path / "p.json")
    graphs = read_graph6_lines((tmp_path / "g.g6").read_text().splitlines())
    assert graphs == batch.graphs
    side = json.loads((tmp_path / "p.json").read_text())
    assert side["config"]["seed"] == 1 and len(side["provenance"]) == 5


def test_gnp():
    assert gnp(10, 0.0, 0).size == 0
    assert gnp(10, 1.0, 0).size == 45
    assert gnp(12, 0.5, 4, 2) == gnp(12, 0.5, 4, 2)
    with pytest.raises(ValueError):
        gnp(0, 0.5, 0)
