"""Exact chromatic number by DSATUR-ordered backtracking."""

from __future__ import annotations

from .graph import CapacityError, Graph

DEFAULT_CAP = 64


def _greedy_clique(adj: dict[int, frozenset[int]]) -> int:
    best = 0
    for v in adj:
        clique = [v]
        cand = set(adj[v])
        while cand:
            u = max(cand, key=lambda x: len(adj[x] & cand))
            clique.append(u)
            cand &= adj[u]
        best = max(best, len(clique))
    return best


def is_colorable(g: Graph, k: int) -> dict[int, int] | None:
    """A proper colouring with colours ``0..k-1``, or None if none exists."""
    adj = g.adjacency()
    if not adj:
        return {}
    if k <= 0:
        return None
    color: dict[int, int] = {}
    # saturation sets: colours already used around each uncoloured vertex
    sat: dict[int, dict[int, int]] = {v: {} for v in adj}

    def pick():
        return max((v for v in adj if v not in color),
                   key=lambda v: (len(sat[v]), len(adj[v])))

    def assign(v, c):
        color[v] = c
        for u in adj[v]:
            if u not in color:
                sat[u][c] = sat[u].get(c, 0) + 1

    def unassign(v, c):
        del color[v]
        for u in adj[v]:
            if u not in color:
                sat[u][c] -= 1
                if not sat[u][c]:
                    del sat[u][c]

    def search(used):
        if len(color) == len(adj):
            return True
        v = pick()
        if len(sat[v]) >= k:
            return False
        # a fresh colour is interchangeable with any other unused one
        for c in range(min(used + 1, k)):
            if c in sat[v]:
                continue
            assign(v, c)
            if search(max(used, c + 1)):
                return True
            unassign(v, c)
        return False

    return dict(color) if search(0) else None


def chromatic_number(g: Graph, limit: int | None = None, cap: int = DEFAULT_CAP) -> int | None:
    """Exact chromatic number, or None when it exceeds ``limit``.

    Raises CapacityError for graphs with more than ``cap`` vertices rather than
    returning an approximation.
    """
    if g.order > cap:
        raise CapacityError(f"graph has {g.order} vertices; exact colouring cap is {cap}")
    if g.order == 0:
        return 0
    if g.size == 0:
        return 1
    k = max(2, _greedy_clique(g.adjacency()))
    top = max(g.degree(v) for v in g) + 1
    while k <= top:
        if limit is not None and k > limit:
            return None
        if is_colorable(g, k) is not None:
            return k
        k += 1
    raise AssertionError("Brooks bound violated")  # pragma: no cover
