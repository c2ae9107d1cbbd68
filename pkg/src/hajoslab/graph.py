"""Simple undirected graphs and the structural queries used throughout the package.

Vertices are opaque non-negative integers.  A graph may carry display names for
its vertices; constructions propagate them so a merged vertex of ``x1`` and
``x2`` can later be found as ``"x1x2"``.
"""

from __future__ import annotations

import math
from collections import deque
from itertools import combinations
from typing import Iterable, Iterator, Mapping

INF = math.inf


class GraphError(ValueError):
    """Invalid vertex, edge or operation argument."""


class CapacityError(RuntimeError):
    """An exact computation was asked to exceed its configured size bound."""


class Graph:
    """Immutable simple graph stored as a vertex -> frozenset(neighbors) map."""

    __slots__ = ("_adj", "_names", "_edges")

    def __init__(self, adjacency: Mapping[int, Iterable[int]] | None = None,
                 names: Mapping[int, str] | None = None):
        adj: dict[int, set[int]] = {}
        for v, nbrs in (adjacency or {}).items():
            adj.setdefault(v, set())
            for u in nbrs:
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                adj[v].add(u)
                adj.setdefault(u, set()).add(v)
        self._adj = {v: frozenset(adj[v]) for v in sorted(adj)}
        self._names = {v: s for v, s in (names or {}).items() if v in self._adj}
        self._edges = None

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = (),
                   names: Mapping[int, str] | None = None) -> Graph:
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls(adj, names)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(combinations(range(n), 2), range(n))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(((i, (i + 1) % n) for i in range(n)), range(n))

    @classmethod
    def path(cls, n: int) -> Graph:
        """Path on ``n`` vertices (``n - 1`` edges)."""
        return cls.from_edges(((i, i + 1) for i in range(n - 1)), range(n))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls.from_edges((), range(n))

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        if self._edges is None:
            self._edges = tuple(sorted((u, v) for u in self._adj for v in self._adj[u] if u < v))
        return self._edges

    @property
    def order(self) -> int:
        return len(self._adj)

    @property
    def size(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    @property
    def names(self) -> dict[int, str]:
        return dict(self._names)

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._adj)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(self.edges) + (-1,) + self.vertices)

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(self._adj)

    def name_of(self, v: int) -> str:
        self.neighbors(v)
        return self._names.get(v, str(v))

    def vertex_named(self, name: str) -> int:
        hits = [v for v in self._adj if self.name_of(v) == name]
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} vertices named {name!r}")
        return hits[0]

    def is_complete(self) -> bool:
        n = self.order
        return all(len(nb) == n - 1 for nb in self._adj.values())

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(self._adj, 2) if v not in self._adj[u]]

    def max_vertex(self) -> int:
        return max(self._adj, default=-1)

    # -- derived graphs --------------------------------------------------

    def without_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) not in graph")
        adj = {w: set(n) for w, n in self._adj.items()}
        adj[u].discard(v)
        adj[v].discard(u)
        return Graph(adj, self._names)

    def with_edge(self, u: int, v: int) -> Graph:
        self.neighbors(u), self.neighbors(v)
        adj = {w: set(n) for w, n in self._adj.items()}
        adj[u].add(v)
        return Graph(adj, self._names)

    def shifted(self, offset: int) -> Graph:
        """Copy with every vertex id ``v`` replaced by ``v + offset``."""
        return Graph({v + offset: [u + offset for u in n] for v, n in self._adj.items()},
                     {v + offset: s for v, s in self._names.items()})

    def relabeled(self, mapping: Mapping[int, int]) -> Graph:
        if len(set(mapping[v] for v in self._adj)) != self.order:
            raise GraphError("relabeling is not injective")
        return Graph({mapping[v]: [mapping[u] for u in n] for v, n in self._adj.items()},
                     {mapping[v]: s for v, s in self._names.items()})

    def compacted(self) -> Graph:
        """Relabel to ``0..n-1`` in increasing id order, dropping names."""
        index = {v: i for i, v in enumerate(self._adj)}
        return Graph({index[v]: [index[u] for u in n] for v, n in self._adj.items()})

    def induced(self, keep: Iterable[int]) -> Graph:
        keep = set(keep)
        return Graph({v: self._adj[v] & keep for v in self._adj if v in keep}, self._names)


def _check(g: Graph, *vs: int) -> None:
    for v in vs:
        if v not in g:
            raise GraphError(f"unknown vertex {v!r}")


def bfs_distances(g: Graph, source: int) -> dict[int, int]:
    _check(g, source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def distance(g: Graph, v: int, w: int) -> int | float:
    """Shortest-path length, or ``INF`` when ``v`` and ``w`` are in different components."""
    _check(g, v, w)
    return bfs_distances(g, v).get(w, INF)


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for v in g:
        if v in seen:
            continue
        comp = set(bfs_distances(g, v))
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def bridges(g: Graph) -> set[tuple[int, int]]:
    """All bridges as ``(u, v)`` with ``u < v`` (iterative low-link search)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found = set()
    counter = 0
    for root in g:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if u in disc:
                    low[v] = min(low[v], disc[u])
                else:
                    disc[u] = low[u] = counter
                    counter += 1
                    stack.append((u, v, iter(g.neighbors(u))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                if parent is not None:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        found.add((min(v, parent), max(v, parent)))
    return found


def is_bridge(g: Graph, u: int, v: int) -> bool:
    _check(g, u, v)
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    return v not in bfs_distances(g.without_edge(u, v), u)


def bipartite_witness(g: Graph) -> tuple[bool, object]:
    """Return ``(True, (A, B))`` with a proper 2-colouring, or ``(False, walk)``.

    The walk is a closed walk of odd length given as a vertex list whose first
    and last entries coincide.
    """
    side: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for root in g:
        if root in side:
            continue
        side[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if u not in side:
                    side[u] = 1 - side[v]
                    parent[u] = v
                    queue.append(u)
                elif side[u] == side[v]:
                    return False, _odd_walk(parent, v, u)
    a = frozenset(v for v, s in side.items() if s == 0)
    return True, (a, frozenset(side) - a)


def _odd_walk(parent, v, u):
    def chain(x):
        out = [x]
        while parent[x] is not None:
            x = parent[x]
            out.append(x)
        return out
    pv, pu = chain(v), chain(u)
    # both chains end at the BFS root; equal depths make the closed walk odd
    return pv + pu[::-1][1:] + [v]


def is_bipartite(g: Graph) -> bool:
    return bipartite_witness(g)[0]


def has_path_of_length(g: Graph, v: int, w: int, length: int) -> bool:
    """Whether a simple path with exactly ``length`` edges joins ``v`` and ``w``."""
    _check(g, v, w)
    if v == w:
        return length == 0

    def extend(x, used, left):
        if left == 1:
            return w in g.neighbors(x)
        for y in g.neighbors(x):
            if y != w and y not in used:
                used.add(y)
                if extend(y, used, left - 1):
                    return True
                used.discard(y)
        return False

    return length >= 1 and extend(v, {v}, length)
