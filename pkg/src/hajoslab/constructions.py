"""Hajós-type graph operations and the fixture families built from them.

Id conventions (all deterministic, so recipes and provenance logs replay
exactly):

* a binary operation keeps the ids of its first graph and shifts every id of
  the second graph by ``second_offset(g1) = max(V(g1)) + 1``;
* every identification creates one fresh id, ``max(V) + 1`` of the graph it
  is applied to, named by concatenating the two merged names;
* a split of ``u`` creates ``u' = max(V) + 1`` and ``u'' = max(V) + 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .graph import Graph, GraphError, is_connected


@dataclass(frozen=True)
class MergeSpec:
    """Edges used by a Hajós merge.

    ``identify`` selects which endpoint of ``edge1`` and of ``edge2`` is
    identified; the two remaining endpoints are joined by the new edge.  The
    default ``(0, 0)`` identifies ``edge1[0]`` with ``edge2[0]``.
    """

    edge1: tuple[int, int]
    edge2: tuple[int, int]
    identify: tuple[int, int] = (0, 0)

    @property
    def x1(self) -> int:
        return self.edge1[self.identify[0]]

    @property
    def y1(self) -> int:
        return self.edge1[1 - self.identify[0]]

    @property
    def x2(self) -> int:
        return self.edge2[self.identify[1]]

    @property
    def y2(self) -> int:
        return self.edge2[1 - self.identify[1]]


@dataclass(frozen=True)
class OreSpec:
    """A Hajós merge followed by identifying each ``a`` of G1 with ``mu[a]`` of G2."""

    merge: MergeSpec
    mu: Mapping[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class SplitSpec:
    """Split ``u``; ``side`` is the neighbourhood given to ``u'``, the rest goes to ``u''``."""

    u: int
    side: frozenset[int]

    def __init__(self, u: int, side: Iterable[int]):
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "side", frozenset(side))


def second_offset(g1: Graph) -> int:
    return g1.max_vertex() + 1


def _mutable(g: Graph) -> tuple[dict[int, set[int]], dict[int, str]]:
    return {v: set(n) for v, n in g.adjacency().items()}, {v: g.name_of(v) for v in g}


def _identify(adj: dict[int, set[int]], names: dict[int, str], a: int, b: int) -> int:
    if a not in adj or b not in adj:
        raise GraphError(f"vertex {a if a not in adj else b} does not exist (already merged?)")
    if a == b:
        raise GraphError(f"cannot identify vertex {a} with itself")
    if b in adj[a]:
        raise GraphError(f"vertices {a} and {b} are adjacent")
    new = max(adj) + 1
    nbrs = (adj.pop(a) | adj.pop(b))
    adj[new] = nbrs
    for u in nbrs:
        adj[u].discard(a)
        adj[u].discard(b)
        adj[u].add(new)
    names[new] = names.pop(a) + names.pop(b)
    return new


def vertex_identify(g: Graph, pairs: Sequence[tuple[int, int]]) -> Graph:
    """Identify each nonadjacent pair in order, collapsing parallel edges."""
    adj, names = _mutable(g)
    for i, (a, b) in enumerate(pairs):
        try:
            _identify(adj, names, a, b)
        except GraphError as exc:
            raise GraphError(f"identification pair #{i} ({a}, {b}): {exc}") from None
    return Graph(adj, names)


def _union(g1: Graph, g2: Graph):
    off = second_offset(g1)
    adj, names = _mutable(g1)
    adj2, names2 = _mutable(g2.shifted(off))
    adj.update(adj2)
    names.update(names2)
    return adj, names, off


def _merge_into(adj, names, spec: MergeSpec, off: int) -> int:
    x1, y1, x2, y2 = spec.x1, spec.y1, spec.x2 + off, spec.y2 + off
    adj[x1].discard(y1), adj[y1].discard(x1)
    adj[x2].discard(y2), adj[y2].discard(x2)
    adj[y1].add(y2), adj[y2].add(y1)
    return _identify(adj, names, x1, x2)


def _check_edge(g: Graph, e: tuple[int, int], label: str) -> None:
    u, v = e
    if u not in g or v not in g or not g.has_edge(u, v):
        raise GraphError(f"{label} {e} is not an edge")


def hajos_merge(g1: Graph, g2: Graph, spec: MergeSpec) -> Graph:
    """Delete both edges, identify ``x1`` with ``x2`` and join ``y1`` to ``y2``."""
    _check_edge(g1, spec.edge1, "edge1")
    _check_edge(g2, spec.edge2, "edge2")
    adj, names, off = _union(g1, g2)
    _merge_into(adj, names, spec, off)
    return Graph(adj, names)


def validate_ore(g1: Graph, g2: Graph, spec: OreSpec) -> None:
    m = spec.merge
    _check_edge(g1, m.edge1, "edge1")
    _check_edge(g2, m.edge2, "edge2")
    mu = dict(spec.mu)
    for a, b in mu.items():
        if a not in g1 or b not in g2:
            raise GraphError(f"mu pair ({a}, {b}) names a missing vertex")
    if len(set(mu.values())) != len(mu):
        raise GraphError("mu is not injective")
    if m.x1 in mu:
        raise GraphError(f"x1={m.x1} is in the domain of mu")
    if m.x2 in mu.values():
        raise GraphError(f"x2={m.x2} is in the range of mu")
    if mu.get(m.y1) == m.y2:
        raise GraphError("mu maps y1 to y2")


def ore_merge(g1: Graph, g2: Graph, spec: OreSpec) -> Graph:
    """Hajós merge, then the mu identifications in increasing order of G1 id."""
    validate_ore(g1, g2, spec)
    adj, names, off = _union(g1, g2)
    _merge_into(adj, names, spec.merge, off)
    for a in sorted(spec.mu):
        b = spec.mu[a] + off
        try:
            _identify(adj, names, a, b)
        except GraphError as exc:
            raise GraphError(f"mu pair ({a}, {spec.mu[a]}): {exc}") from None
    return Graph(adj, names)


def contains_clique(g: Graph, k: int) -> bool:
    adj = g.adjacency()

    def grow(size, cand):
        if size == k:
            return True
        for v in sorted(cand):
            if size + len(cand) < k:
                return False
            if grow(size + 1, cand & adj[v]):
                return True
            cand = cand - {v}
        return False

    return grow(0, frozenset(v for v in adj if len(adj[v]) >= k - 1))


def urquhart_compose(graphs: Sequence[Graph], specs: Sequence[OreSpec],
                     order: Sequence[tuple[int, int]] | None = None,
                     k: int | None = None) -> Graph:
    """Fold Ore merges over a pool of graphs.

    Step ``s`` merges ``pool[i]`` (as G1) with ``pool[j]`` (as G2) using
    ``specs[s]``, stores the result at ``i`` and deletes ``j``.  The default
    order ``(0, 1), (0, 1), ...`` is a left fold.  With ``k`` given, every input
    must be connected and contain a ``k``-clique.
    """
    if not graphs:
        raise GraphError("no graphs to compose")
    if k is not None:
        for i, g in enumerate(graphs):
            if not is_connected(g) or not contains_clique(g, k):
                raise GraphError(f"input {i} is not a connected supergraph of K_{k}")
    order = list(order) if order is not None else [(0, 1)] * len(specs)
    if len(order) != len(specs) or len(specs) != len(graphs) - 1:
        raise GraphError("need exactly len(graphs) - 1 merge steps")
    pool = list(graphs)
    for s, ((i, j), spec) in enumerate(zip(order, specs)):
        if i == j or not (0 <= i < len(pool) and 0 <= j < len(pool)):
            raise GraphError(f"step {s}: bad pool indices ({i}, {j})")
        pool[i] = ore_merge(pool[i], pool[j], spec)
        del pool[j]
    return pool[0]


def vertex_split(g: Graph, spec: SplitSpec) -> Graph:
    """Replace ``u`` by nonadjacent ``u'`` (neighbours ``side``) and ``u''`` (the rest)."""
    nbrs = g.neighbors(spec.u)
    side = spec.side
    if not side or not side < nbrs:
        raise GraphError("split side must be a nonempty proper subset of N(u)")
    adj, names = _mutable(g)
    top = g.max_vertex()
    u1, u2 = top + 1, top + 2
    del adj[spec.u]
    base = names.pop(spec.u)
    adj[u1] = set(side)
    adj[u2] = set(nbrs - side)
    for w in nbrs:
        adj[w].discard(spec.u)
        adj[w].add(u1 if w in side else u2)
    names[u1], names[u2] = base + "'", base + "''"
    return Graph(adj, names)


def dhgo_compose(g1: Graph, x1: int, side: Iterable[int], g2: Graph,
                 e2: tuple[int, int]) -> Graph:
    """Split ``x1`` (``x1'`` takes ``side``), delete ``e2 = (x2, y2)``, then
    identify ``x1'`` with ``x2`` and ``x1''`` with ``y2``."""
    _check_edge(g2, e2, "e2")
    split = vertex_split(g1, SplitSpec(x1, side))
    u1, u2 = g1.max_vertex() + 1, g1.max_vertex() + 2
    adj, names, off = _union(split, g2.without_edge(*e2))
    _identify(adj, names, u1, e2[0] + off)
    _identify(adj, names, u2, e2[1] + off)
    return Graph(adj, names)


# -- fixture graphs -----------------------------------------------------------

def named_graph(names: Sequence[str], edges: Iterable[tuple[str, str]]) -> Graph:
    index = {s: i for i, s in enumerate(names)}
    return Graph.from_edges(((index[a], index[b]) for a, b in edges), range(len(names)),
                            dict(enumerate(names)))


def gn_vertex_names(n: int) -> list[str]:
    return ["X", "Y", "Z"] + [f"{i}{c}" for i in range(1, n + 1) for c in "ABC"]


def gn_edges(n: int) -> list[tuple[str, str]]:
    edges = [("X", "Y"), ("Y", "Z"), ("1A", "X"), (f"{n}C", "X")]
    for i in range(1, n + 1):
        edges += [(f"{i}B", "X"), (f"{i}A", f"{i}B"), (f"{i}B", f"{i}C"), (f"{i}C", f"{i}A")]
    for j in range(1, n):
        edges += [(f"{j}C", "Z"), (f"{j}C", f"{j + 1}A")]
    for k in range(2, n + 1):
        edges.append((f"{k}A", "Z"))
    return edges


def build_gn(n: int) -> Graph:
    """The 4-chromatic graph ``G_n`` on ``3n + 3`` named vertices."""
    if n < 1:
        raise GraphError("G_n needs n >= 1")
    return named_graph(gn_vertex_names(n), gn_edges(n))


def build_gn_prime(n: int) -> Graph:
    """``G_n`` with ``X`` and ``Z`` identified into the vertex named ``"XZ"``."""
    g = build_gn(n)
    return vertex_identify(g, [(g.vertex_named("X"), g.vertex_named("Z"))])


def build_hexagon_pair() -> tuple[Graph, tuple[int, int]]:
    """The 6-cycle ``v,1,2,w,4,3`` with the distance-3 pair ``(v, w)``."""
    order = ["v", "1", "2", "w", "4", "3"]
    g = named_graph(order, [(order[i], order[(i + 1) % 6]) for i in range(6)])
    return g, (g.vertex_named("v"), g.vertex_named("w"))


def build_triangle_pair() -> tuple[Graph, Graph, MergeSpec]:
    """Two triangles ``x1 y1 z1`` and ``x2 y2 z2`` with the merge of their ``xy`` edges."""
    tri = [("x", "y"), ("y", "z"), ("z", "x")]
    g1 = named_graph(["x1", "y1", "z1"], [(a + "1", b + "1") for a, b in tri])
    g2 = named_graph(["x2", "y2", "z2"], [(a + "2", b + "2") for a, b in tri])
    return g1, g2, MergeSpec((0, 1), (0, 1))


def all_merge_specs(g1: Graph, g2: Graph) -> list[MergeSpec]:
    """Every oriented choice of one edge in each graph."""
    out = []
    for e1 in g1.edges:
        for e2 in g2.edges:
            for ident in ((0, 0), (0, 1), (1, 0), (1, 1)):
                out.append(MergeSpec(e1, e2, ident))
    return out


def nonadjacent_pairs(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in combinations(g.vertices, 2) if not g.has_edge(u, v)]
