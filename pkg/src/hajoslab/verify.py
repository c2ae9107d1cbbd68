"""Randomised and exhaustive property suites for the topological effects of
the graph operations.

Each suite draws instance ``i`` from its own Philox stream, so any failure is
reproducible from ``(suite, seed, i)``.  Suites report every failing instance
as graph6 plus the measured Betti numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .canonical import canonical_form
from .coloring import chromatic_number
from .complex import betti_numbers, is_path_connected, neighborhood_complex
from .constructions import MergeSpec, dhgo_compose, hajos_merge, vertex_identify
from .generators import stream
from .graph import (Graph, bfs_distances, bridges, has_path_of_length, is_bipartite,
                    is_connected)
from .graphio import to_graph6

VERIFY_STREAM = 3
SAMPLE_TRIES = 10_000


@dataclass
class VerifyReport:
    suite: str
    trials: int
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials

    def line(self) -> str:
        return f"{self.suite}: {self.passed}/{self.trials} {'PASS' if self.ok else 'FAIL'}"

    def to_json_dict(self) -> dict:
        return {"suite": self.suite, "trials": self.trials, "passed": self.passed, "ok": self.ok,
                "failures": self.failures}


def _betti(g: Graph, max_dim: int = 1) -> tuple[int, ...]:
    return betti_numbers(neighborhood_complex(g), max_dim).values


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    pairs = list(combinations(range(n), 2))
    keep = rng.random(len(pairs)) < p
    return Graph.from_edges((e for e, b in zip(pairs, keep) if b), range(n))


def random_connected(rng, lo: int, hi: int, min_chi: int = 1, p: tuple[float, float] = (0.2, 0.7)) -> Graph:
    """Connected graph on ``lo..hi`` vertices with chromatic number at least ``min_chi``."""
    for _ in range(SAMPLE_TRIES):
        n = int(rng.integers(lo, hi + 1))
        g = random_graph(rng, n, float(rng.uniform(*p)))
        if not is_connected(g):
            continue
        if min_chi >= 3 and is_bipartite(g):
            continue
        if min_chi > 3 and chromatic_number(g) < min_chi:
            continue
        return g
    raise RuntimeError("sampler did not find a graph; widen its parameters")


def _pick(rng, seq):
    return seq[int(rng.integers(len(seq)))]


def _with_tail(rng, core: Graph) -> Graph:
    """Attach a path of 4..8 new vertices, plus a few random pendant vertices."""
    edges = list(core.edges)
    top = core.max_vertex() + 1
    prev = _pick(rng, core.vertices)
    for i in range(int(rng.integers(4, 9))):
        edges.append((prev, top))
        prev, top = top, top + 1
    verts = list(range(top))
    for _ in range(int(rng.integers(0, 4))):
        edges.append((_pick(rng, verts), top))
        verts.append(top)
        top += 1
    return Graph.from_edges(edges, verts)


def far_identification(trials: int, seed: int) -> VerifyReport:
    """Identifying two vertices at distance >= 5 in a connected non-bipartite
    graph adds exactly two to the first Betti number and leaves b2 alone."""
    rep = VerifyReport("far-identification", trials)
    for i in range(trials):
        rng = stream(seed, VERIFY_STREAM, i)
        for _ in range(SAMPLE_TRIES):
            g = _with_tail(rng, random_connected(rng, 3, 7, 3))
            far = [(v, w) for v in g for w, d in bfs_distances(g, v).items() if v < w and d >= 5]
            if far:
                break
        v, w = _pick(rng, far)
        h = vertex_identify(g, [(v, w)])
        before, after = _betti(g, 2), _betti(h, 2)
        if after[1] == before[1] + 2 and after[2] == before[2]:
            rep.passed += 1
        else:
            rep.failures.append({"trial": i, "graph": to_graph6(g), "pair": [v, w],
                                 "before": list(before), "after": list(after)})
    return rep


def _merge_instance(rng) -> tuple[Graph, Graph, MergeSpec, int]:
    """Inputs for a Hajós merge meeting one of the two bridge/chromatic hypotheses."""
    case = int(rng.integers(1, 3))
    for _ in range(SAMPLE_TRIES):
        g1 = random_connected(rng, 3, 7, 3)
        g2 = random_connected(rng, 4 if case == 2 else 3, 7, 4 if case == 2 else 3,
                              p=(0.5, 0.9) if case == 2 else (0.2, 0.7))
        b1, b2 = bridges(g1), bridges(g2)
        e1s = [e for e in g1.edges if case == 2 or e not in b1]
        e2s = [e for e in g2.edges if e not in b2]
        if e1s and e2s:
            spec = MergeSpec(_pick(rng, e1s), _pick(rng, e2s),
                             (int(rng.integers(2)), int(rng.integers(2))))
            return g1, g2, spec, case
    raise RuntimeError("no merge instance found")


def merge_circle(trials: int, seed: int) -> VerifyReport:
    """Hajós merges under either hypothesis keep a circle: b1 >= 1."""
    rep = VerifyReport("merge-circle", trials)
    for i in range(trials):
        rng = stream(seed, VERIFY_STREAM, i)
        g1, g2, spec, case = _merge_instance(rng)
        b = _betti(hajos_merge(g1, g2, spec))
        if b[1] >= 1:
            rep.passed += 1
        else:
            rep.failures.append({"trial": i, "case": case, "g1": to_graph6(g1), "g2": to_graph6(g2),
                                 "edge1": list(spec.edge1), "edge2": list(spec.edge2),
                                 "identify": list(spec.identify), "betti": list(b)})
    return rep


def split_circle(trials: int, seed: int) -> VerifyReport:
    """Split compositions under either hypothesis keep a circle: b1 >= 1."""
    rep = VerifyReport("split-circle", trials)
    for i in range(trials):
        rng = stream(seed, VERIFY_STREAM, i)
        case = int(rng.integers(1, 3))
        for _ in range(SAMPLE_TRIES):
            g1 = random_connected(rng, 3, 7, 3)
            g2 = random_connected(rng, 4 if case == 2 else 3, 7, 4 if case == 2 else 3,
                                  p=(0.5, 0.9) if case == 2 else (0.2, 0.7))
            xs = [v for v in g1 if g1.degree(v) >= 2]
            e2s = [e for e in g2.edges if e not in bridges(g2)]
            if xs and e2s:
                break
        x1 = _pick(rng, xs)
        nb = sorted(g1.neighbors(x1))
        while True:
            mask = rng.integers(2, size=len(nb))
            if 0 < mask.sum() < len(nb):
                break
        side = [u for u, b in zip(nb, mask) if b]
        e2 = _pick(rng, e2s)
        if rng.integers(2):
            e2 = (e2[1], e2[0])
        b = _betti(dhgo_compose(g1, x1, side, g2, e2))
        if b[1] >= 1:
            rep.passed += 1
        else:
            rep.failures.append({"trial": i, "case": case, "g1": to_graph6(g1), "x1": x1,
                                 "side": side, "g2": to_graph6(g2), "e2": list(e2), "betti": list(b)})
    return rep


def _short_pairs(g: Graph) -> list[tuple[int, int]]:
    out = []
    for v in g:
        dist = bfs_distances(g, v)
        for w in g:
            if v < w and dist.get(w, 10**9) >= 3 and has_path_of_length(g, v, w, 4):
                out.append((v, w))
    return out


def short_path_identification(trials: int, seed: int) -> VerifyReport:
    """d(v, w) >= 3 with a path of length four: b1 does not increase."""
    rep = VerifyReport("short-path-identification", trials)
    for i in range(trials):
        rng = stream(seed, VERIFY_STREAM, i)
        for _ in range(SAMPLE_TRIES):
            g = random_graph(rng, int(rng.integers(5, 11)), float(rng.uniform(0.15, 0.45)))
            pairs = _short_pairs(g)
            if pairs:
                break
        v, w = _pick(rng, pairs)
        before, after = _betti(g), _betti(vertex_identify(g, [(v, w)]))
        if after[1] <= before[1]:
            rep.passed += 1
        else:
            rep.failures.append({"trial": i, "graph": to_graph6(g), "pair": [v, w],
                                 "before": list(before), "after": list(after)})
    return rep


def distance_two_conditions(g: Graph, v: int, w: int) -> bool:
    """Distance exactly two, no path of length three, and disjoint second
    neighbourhoods of the private neighbours of ``v`` and ``w``."""
    if bfs_distances(g, v).get(w) != 2 or has_path_of_length(g, v, w, 3):
        return False
    nv, nw = g.neighbors(v), g.neighbors(w)
    common = nv & nw
    side_a = set().union(*(g.neighbors(a) for a in nv - common))
    side_b = set().union(*(g.neighbors(b) for b in nw - common))
    return not (side_a & side_b)


def distance_two_identification(trials: int, seed: int) -> VerifyReport:
    """Identification under the three distance-two conditions: b1 does not increase."""
    rep = VerifyReport("distance-two-identification", trials)
    for i in range(trials):
        rng = stream(seed, VERIFY_STREAM, i)
        for _ in range(SAMPLE_TRIES):
            g = random_graph(rng, int(rng.integers(5, 12)), float(rng.uniform(0.1, 0.4)))
            pairs = [(v, w) for v, w in combinations(g.vertices, 2) if distance_two_conditions(g, v, w)]
            if pairs:
                break
        v, w = _pick(rng, pairs)
        before, after = _betti(g), _betti(vertex_identify(g, [(v, w)]))
        if after[1] <= before[1]:
            rep.passed += 1
        else:
            rep.failures.append({"trial": i, "graph": to_graph6(g), "pair": [v, w],
                                 "before": list(before), "after": list(after)})
    return rep


def connected_graphs(n: int) -> list[Graph]:
    """All connected graphs on ``n`` vertices up to isomorphism.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending each smaller connected graph by one vertex with a nonempty
    neighbourhood reaches all of them.
    """
    if n < 1:
        return []
    level = {canonical_form(Graph.empty(1)): Graph.empty(1)}
    for size in range(2, n + 1):
        nxt: dict[bytes, Graph] = {}
        for g in level.values():
            for r in range(1, size):
                for nb in combinations(range(size - 1), r):
                    h = Graph.from_edges(list(g.edges) + [(u, size - 1) for u in nb], range(size))
                    nxt.setdefault(canonical_form(h), h)
        level = nxt
    return list(level.values())


def connectivity(max_order: int = 7) -> VerifyReport:
    """Exhaustive over connected graphs with at least one edge: N(G) is
    path-connected iff G is not bipartite.

    ``K_1`` is left out: its complex is a lone ground vertex with no faces,
    which counts as connected although ``K_1`` is bipartite.
    """
    graphs = [g for n in range(2, max_order + 1) for g in connected_graphs(n)]
    rep = VerifyReport("connectivity", len(graphs))
    for g in graphs:
        if is_path_connected(neighborhood_complex(g)) == (not is_bipartite(g)):
            rep.passed += 1
        else:
            rep.failures.append({"graph": to_graph6(g)})
    return rep


SUITES: dict[str, Callable[[int, int], VerifyReport]] = {
    "far-identification": far_identification,
    "merge-circle": merge_circle,
    "split-circle": split_circle,
    "short-path-identification": short_path_identification,
    "distance-two-identification": distance_two_identification,
}
KNOWN = sorted([*SUITES, "connectivity"])


def run_suite(name: str, trials: int = 100, seed: int = 0, max_order: int = 7) -> VerifyReport:
    if name == "connectivity":
        return connectivity(max_order)
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](trials, seed)
