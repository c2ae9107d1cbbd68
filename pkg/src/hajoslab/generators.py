"""Random constructible graphs: the Hajós-step sampler (CRA), the
Urquhart-step sampler (URA) and G(n, p).

Every random choice is drawn from a Philox stream keyed by ``(seed, kind,
index)``, so a round or an attempt can be replayed on its own.  Accepted graphs
are compacted to ids ``0..n-1``; provenance entries refer to those ids.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any

import numpy as np

from .canonical import canonical_form
from .constructions import (MergeSpec, OreSpec, hajos_merge, ore_merge, urquhart_compose,
                            vertex_identify)
from .graph import Graph
from .graphio import from_json_dict, to_graph6, to_json_dict

CRA_STREAM, URA_STREAM, GNP_STREAM = 0, 1, 2


class GenerationError(RuntimeError):
    pass


def stream(seed: int, kind: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(kind, index))))


def _pick(rng: np.random.Generator, seq):
    return seq[int(rng.integers(len(seq)))]


@dataclass(frozen=True)
class CraConfig:
    k: int
    p: float
    t: int
    seed: int = 0
    round_cap: int | None = None

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("k must be at least 3")
        if not 0 < self.p < 1:
            raise ValueError("p must lie strictly between 0 and 1")
        if self.t < 0:
            raise ValueError("t must be nonnegative")


@dataclass(frozen=True)
class UraConfig:
    k: int
    t: int
    m: int
    n: int
    seed: int = 0
    retry_cap: int = 50
    attempt_cap: int | None = None
    density: float = 0.5  # edge probability among a component's added vertices

    def __post_init__(self):
        if self.k < 3:
            raise ValueError("k must be at least 3")
        if self.t < 0 or self.m < 1 or self.n < 1 or self.retry_cap < 1:
            raise ValueError("need t >= 0 and m, n, retry_cap >= 1")
        if not 0 <= self.density <= 1:
            raise ValueError("density must lie in [0, 1]")


@dataclass
class SampleBatch:
    """Accepted graphs in order, each with the log needed to rebuild it.

    For CRA, ``provenance[i]["op"]`` is ``vid`` or ``merge`` and refers to list
    positions where 0 is ``K_k`` and ``i + 1`` is ``graphs[i]``.  For URA each
    entry holds the component graphs and the Ore steps of one attempt.
    """

    kind: str
    config: dict
    graphs: list[Graph] = field(default_factory=list)
    provenance: list[dict] = field(default_factory=list)
    rounds: int = 0
    discarded: int = 0
    duplicates: int = 0

    def graph6_lines(self) -> list[str]:
        return [to_graph6(g) for g in self.graphs]

    def sidecar(self) -> dict:
        return {"kind": self.kind, "config": self.config, "rounds": self.rounds,
                "discarded": self.discarded, "duplicates": self.duplicates,
                "provenance": self.provenance}

    def write(self, graph6_path, sidecar_path) -> None:
        with open(graph6_path, "w") as fh:
            fh.writelines(line + "\n" for line in self.graph6_lines())
        with open(sidecar_path, "w") as fh:
            json.dump(self.sidecar(), fh, indent=1)


class _Dedup:
    """Isomorphism filter: cheap invariants first, canonical forms on collision."""

    def __init__(self):
        self.buckets: dict[tuple, list[int]] = {}
        self.graphs: list[Graph] = []
        self.forms: dict[int, bytes] = {}

    @staticmethod
    def invariant(g: Graph) -> tuple:
        return g.order, g.size, tuple(sorted(g.degree(v) for v in g))

    def form(self, idx: int) -> bytes:
        if idx not in self.forms:
            self.forms[idx] = canonical_form(self.graphs[idx])
        return self.forms[idx]

    def add(self, g: Graph) -> bool:
        key = self.invariant(g)
        bucket = self.buckets.setdefault(key, [])
        if bucket:
            f = canonical_form(g)
            if any(self.form(i) == f for i in bucket):
                return False
            self.forms[len(self.graphs)] = f
        bucket.append(len(self.graphs))
        self.graphs.append(g)
        return True


def cra(config: CraConfig) -> SampleBatch:
    k, p, t = config.k, config.p, config.t
    cap = config.round_cap if config.round_cap is not None else 1000 * max(t, 1)
    batch = SampleBatch("cra", asdict(config))
    seen = _Dedup()
    seen.add(Graph.complete(k))
    pool = seen.graphs
    noncomplete: list[int] = []
    i = 0
    while i < t:
        if batch.rounds >= cap:
            raise GenerationError(
                f"CRA stopped after {batch.rounds} rounds with {i}/{t} graphs "
                f"({batch.duplicates} duplicates); raise round_cap or change k/p")
        rng = stream(config.seed, CRA_STREAM, batch.rounds)
        batch.rounds += 1
        r = rng.random()
        if r > p and i > 0:
            j = _pick(rng, noncomplete)
            v, w = _pick(rng, pool[j].non_edges())
            new = vertex_identify(pool[j], [(v, w)]).compacted()
            op: dict[str, Any] = {"op": "vid", "graph": j, "pair": [v, w]}
        else:
            a, b = int(rng.integers(len(pool))), int(rng.integers(len(pool)))
            e1, e2 = _pick(rng, pool[a].edges), _pick(rng, pool[b].edges)
            ident = (int(rng.integers(2)), int(rng.integers(2)))
            new = hajos_merge(pool[a], pool[b], MergeSpec(e1, e2, ident)).compacted()
            op = {"op": "merge", "graphs": [a, b], "edge1": list(e1), "edge2": list(e2),
                  "identify": list(ident)}
        if not seen.add(new):
            batch.duplicates += 1
            continue
        if not new.is_complete():
            noncomplete.append(len(pool) - 1)
        op["round"] = batch.rounds - 1
        batch.graphs.append(new)
        batch.provenance.append(op)
        i += 1
    return batch


def replay_cra(k: int, provenance: list[dict]) -> list[Graph]:
    """Rebuild a CRA batch from its log alone."""
    pool = [Graph.complete(k)]
    for op in provenance:
        if op["op"] == "vid":
            g = vertex_identify(pool[op["graph"]], [tuple(op["pair"])])
        else:
            a, b = op["graphs"]
            spec = MergeSpec(tuple(op["edge1"]), tuple(op["edge2"]), tuple(op["identify"]))
            g = hajos_merge(pool[a], pool[b], spec)
        pool.append(g.compacted())
    return pool[1:]


def ura_component(k: int, m: int, rng: np.random.Generator, density: float = 0.5) -> Graph:
    """``K_k`` plus ``r`` new vertices, each wired to a nonempty random subset of
    it; the new vertices are joined among themselves with probability ``density``."""
    r = int(rng.integers(1, m + 1))
    edges = list(combinations(range(k), 2))
    for j in range(k, k + r):
        while True:
            mask = rng.integers(2, size=k)
            if mask.any():
                break
        edges.extend((w, j) for w in range(k) if mask[w])
    extra = list(combinations(range(k, k + r), 2))
    if extra:
        keep = rng.random(len(extra)) < density
        edges.extend(e for e, b in zip(extra, keep) if b)
    return Graph.from_edges(edges, range(k + r))


def _sample_mu(g1: Graph, g2: Graph, spec: MergeSpec, ell: int, rng) -> dict[int, int] | None:
    dom = [v for v in g1.vertices if v != spec.x1]
    rng_ = [v for v in g2.vertices if v != spec.x2]
    if ell > min(len(dom), len(rng_)):
        return None
    a = rng.choice(len(dom), size=ell, replace=False)
    b = rng.choice(len(rng_), size=ell, replace=False)
    mu = {dom[int(i)]: rng_[int(j)] for i, j in zip(a, b)}
    if mu.get(spec.y1) == spec.y2:
        return None
    return mu


def _ore_step(g1: Graph, g2: Graph, rng, retry_cap: int) -> tuple[Graph, OreSpec] | None:
    """Random edges, ``ell`` and Ore pairs, redrawing ``ell`` then the edges on failure."""
    for _ in range(retry_cap):
        e1, e2 = _pick(rng, g1.edges), _pick(rng, g2.edges)
        spec = MergeSpec(e1, e2, (int(rng.integers(2)), int(rng.integers(2))))
        for _ in range(retry_cap):
            ell = int(rng.integers(1, min(g1.order, g2.order)))
            for _ in range(retry_cap):
                mu = _sample_mu(g1, g2, spec, ell, rng)
                if mu is not None:
                    ore = OreSpec(spec, mu)
                    return ore_merge(g1, g2, ore), ore
    return None


def ura_attempt(config: UraConfig, index: int) -> tuple[Graph, dict] | None:
    """One sample; ``None`` when an Ore step exhausts its retries."""
    rng = stream(config.seed, URA_STREAM, index)
    rc = int(rng.integers(1, config.n + 1))
    comps = [ura_component(config.k, config.m, rng, config.density) for _ in range(rc)]
    pool = list(comps)
    steps = []
    while len(pool) > 1:
        i, j = (int(x) for x in rng.choice(len(pool), size=2, replace=False))
        out = _ore_step(pool[i], pool[j], rng, config.retry_cap)
        if out is None:
            return None
        pool[i], spec = out
        del pool[j]
        steps.append({"pool": [i, j], "edge1": list(spec.merge.edge1), "edge2": list(spec.merge.edge2),
                      "identify": list(spec.merge.identify),
                      "mu": [[a, b] for a, b in sorted(spec.mu.items())]})
    prov = {"attempt": index, "components": [to_json_dict(c) for c in comps], "steps": steps}
    return pool[0].compacted(), prov


def replay_ura(entry: dict, k: int | None = None) -> Graph:
    comps = [from_json_dict(c) for c in entry["components"]]
    specs = [OreSpec(MergeSpec(tuple(s["edge1"]), tuple(s["edge2"]), tuple(s["identify"])),
                     {a: b for a, b in s["mu"]}) for s in entry["steps"]]
    order = [tuple(s["pool"]) for s in entry["steps"]]
    return urquhart_compose(comps, specs, order, k=k).compacted()


def ura(config: UraConfig) -> SampleBatch:
    cap = config.attempt_cap if config.attempt_cap is not None else 1000 * max(config.t, 1)
    batch = SampleBatch("ura", asdict(config))
    seen = _Dedup()
    while len(batch.graphs) < config.t:
        if batch.rounds >= cap:
            raise GenerationError(
                f"URA stopped after {batch.rounds} attempts with {len(batch.graphs)}/{config.t} graphs")
        out = ura_attempt(config, batch.rounds)
        batch.rounds += 1
        if out is None:
            batch.discarded += 1
            continue
        g, prov = out
        if not seen.add(g):
            batch.duplicates += 1
            continue
        batch.graphs.append(g)
        batch.provenance.append(prov)
    return batch


def gnp(n: int, p: float, seed: int, index: int = 0) -> Graph:
    """Erdős–Rényi graph: each pair joined independently with probability ``p``."""
    if n < 1 or not 0 <= p <= 1:
        raise ValueError("need n >= 1 and 0 <= p <= 1")
    pairs = list(combinations(range(n), 2))
    draws = stream(seed, GNP_STREAM, index).random(len(pairs))
    return Graph.from_edges((e for e, x in zip(pairs, draws) if x < p), range(n))
