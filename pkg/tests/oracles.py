"""Independent reference implementations used only by the tests.

Nothing here imports the package's homology, isomorphism or graph6 code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import networkx as nx


def all_faces(facets) -> list[tuple[int, ...]]:
    """Every nonempty face of the complex, as sorted tuples."""
    out = set()
    for f in facets:
        f = sorted(f)
        for r in range(1, len(f) + 1):
            out.update(combinations(f, r))
    return sorted(out, key=lambda t: (len(t), t))


def dense_rank(m: list[list[int]]) -> int:
    """Rank over Q by plain Gaussian elimination on a dense Fraction matrix."""
    a = [[Fraction(x) for x in row] for row in m]
    rank, cols = 0, len(a[0]) if a else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c] != 0:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def boundary_matrix(rows, cols) -> list[list[int]]:
    idx = {f: i for i, f in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, f in enumerate(cols):
        for i in range(len(f)):
            m[idx[f[:i] + f[i + 1:]]][j] = (-1) ** i
    return m


def brute_reduced_betti(facets, max_dim: int) -> list[int]:
    """Reduced Betti numbers over Q from dense boundary matrices of the full
    face lattice, with the empty face as the (-1)-cell."""
    faces = all_faces(facets)
    by_dim: dict[int, list[tuple[int, ...]]] = {-1: [()]} if faces else {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)

    def rank(d: int) -> int:
        # boundary from dimension d to d-1
        rows, cols = by_dim.get(d - 1, []), by_dim.get(d, [])
        if not rows or not cols:
            return 0
        return dense_rank(boundary_matrix(rows, cols))

    return [len(by_dim.get(d, [])) - rank(d) - rank(d + 1) for d in range(max_dim + 1)]


def neighborhood_facets(edges, vertices) -> list[set[int]]:
    adj = {v: set() for v in vertices}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return [s for s in adj.values() if s]


def nx_graph(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def nx_graph6(g) -> str:
    """graph6 of ``g`` with vertices taken in sorted order."""
    h = nx.convert_node_labels_to_integers(nx_graph(g), ordering="sorted")
    return nx.to_graph6_bytes(h, header=False).decode().strip()


def brute_chromatic(edges, n: int) -> int:
    """Smallest k admitting a proper colouring, by exhaustive search."""
    from itertools import product
    if n == 0:
        return 0
    for k in range(1, n + 1):
        for col in product(range(k), repeat=n):
            if all(col[u] != col[v] for u, v in edges):
                return k
    return n


def connected_counts_atlas(max_order: int) -> dict[int, int]:
    """Connected graphs per order from the networkx atlas (orders up to 7)."""
    out: dict[int, int] = {}
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if 1 <= n <= max_order and nx.is_connected(h):
            out[n] = out.get(n, 0) + 1
    return out
