"""Canonical labeling by colour refinement and individualization search.

The search tree is fully determined by labeling-invariant choices, and the
canonical labeling is the leaf with the smallest relabeled adjacency.
Automorphisms found between equivalent leaves prune sibling subtrees.
"""

from __future__ import annotations

from collections import deque

from .graph import Graph
from .graphio import to_graph6


class _Partition:
    """Ordered partition of ``0..n-1``; a cell is named by its first position.

    ``lab`` lists vertices by position, ``pos`` inverts it, ``cell[v]`` is the
    start of v's cell and ``end[s]`` is one past the last position of cell ``s``.
    """

    __slots__ = ("lab", "pos", "cell", "end", "ncells")

    def __init__(self, lab, pos, cell, end, ncells):
        self.lab, self.pos, self.cell, self.end, self.ncells = lab, pos, cell, end, ncells

    @classmethod
    def unit(cls, n: int) -> _Partition:
        end = [0] * (n + 1)
        end[0] = n
        return cls(list(range(n)), list(range(n)), [0] * n, end, 1)

    def copy(self) -> _Partition:
        return _Partition(self.lab[:], self.pos[:], self.cell[:], self.end[:], self.ncells)

    def discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def first_nontrivial(self) -> int:
        s = 0
        n = len(self.lab)
        while s < n:
            if self.end[s] - s > 1:
                return s
            s = self.end[s]
        return -1

    def individualize(self, v: int) -> int:
        """Split ``v`` off as a singleton at the end of its cell; return that cell."""
        lab, pos = self.lab, self.pos
        s = self.cell[v]
        e = self.end[s]
        last = e - 1
        u = lab[last]
        lab[pos[v]], lab[last] = u, v
        pos[u], pos[v] = pos[v], last
        self.end[s] = last
        self.end[last] = e
        self.cell[v] = last
        self.ncells += 1
        return last

    def refine(self, nbrs: list[list[int]], splitters: list[int]) -> None:
        """Coarsest equitable refinement, driven by a queue of splitter cells.

        Fragments of a split cell are ordered by their neighbour count in the
        splitter, so the result depends only on the ordered partition.
        """
        lab, pos, cell, end = self.lab, self.pos, self.cell, self.end
        queue = deque(splitters)
        queued = set(splitters)
        n = len(lab)
        while queue and self.ncells < n:
            w = queue.popleft()
            queued.discard(w)
            count: dict[int, int] = {}
            for x in lab[w:end[w]]:
                for y in nbrs[x]:
                    count[y] = count.get(y, 0) + 1
            bycell: dict[int, list[int]] = {}
            for y in count:
                bycell.setdefault(cell[y], []).append(y)
            for s in sorted(bycell):
                e = end[s]
                size = e - s
                if size == 1:
                    continue
                touched = bycell[s]
                touched.sort(key=count.__getitem__)
                t = len(touched)
                if t == size and count[touched[0]] == count[touched[-1]]:
                    continue
                # move touched vertices into the tail [e - t, e), ordered by count
                lo = e - t
                tail = set(touched)
                free = [q for q in range(lo, e) if lab[q] not in tail]
                for y in touched:
                    if pos[y] < lo:
                        q = free.pop()
                        u = lab[q]
                        lab[pos[y]], pos[u] = u, pos[y]
                for i, y in enumerate(touched):
                    lab[lo + i] = y
                    pos[y] = lo + i
                starts = [s] if t < size else []
                prev = None
                for i, y in enumerate(touched):
                    c = count[y]
                    if c != prev:
                        starts.append(lo + i)
                        prev = c
                    cell[y] = starts[-1]
                bounds = starts + [e]
                for a, b in zip(bounds, bounds[1:]):
                    end[a] = b
                self.ncells += len(starts) - 1
                if s in queued:
                    new = starts[1:]
                else:
                    big = max(starts, key=lambda a: (end[a] - a, -a))
                    new = [a for a in starts if a != big]
                for a in new:
                    queue.append(a)
                    queued.add(a)


class _Find:
    def __init__(self, n):
        self.parent = list(range(n))

    def __call__(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self(a)] = self(b)


class _Search:
    def __init__(self, nbrs: list[list[int]]):
        self.nbrs = nbrs
        self.n = len(nbrs)
        self.best = None      # (certificate, perm, path)
        self.first = None
        self.autos: list[list[int]] = []

    def certificate(self, perm):
        rows = [0] * self.n
        for v, nb in enumerate(self.nbrs):
            r = 0
            for u in nb:
                r |= 1 << perm[u]
            rows[perm[v]] = r
        return tuple(rows)

    def leaf(self, perm, path):
        """Record a leaf; return the depth to backtrack to if it proves an automorphism."""
        cert = self.certificate(perm)
        if self.first is None:
            self.first = self.best = (cert, perm, path)
            return None
        for ref_cert, ref_perm, ref_path in (self.first, self.best):
            if cert == ref_cert:
                inv = [0] * self.n
                for v, p in enumerate(ref_perm):
                    inv[p] = v
                auto = [inv[perm[v]] for v in range(self.n)]
                if any(a != v for v, a in enumerate(auto)):
                    self.autos.append(auto)
                common = 0
                while common < len(path) and path[common] == ref_path[common]:
                    common += 1
                return common
        if cert < self.best[0]:
            self.best = (cert, perm, path)
        return None

    def orbit_find(self, prefix):
        find = _Find(self.n)
        for auto in self.autos:
            if all(auto[p] == p for p in prefix):
                for v, a in enumerate(auto):
                    if a != v:
                        find.union(v, a)
        return find

    def run(self, part: _Partition, prefix):
        if part.discrete():
            return self.leaf(part.pos, prefix)
        depth = len(prefix)
        target = part.first_nontrivial()
        cell = sorted(part.lab[target:part.end[target]])
        explored = []
        for v in cell:
            if explored:
                find = self.orbit_find(prefix)
                if any(find(v) == find(u) for u in explored):
                    continue
            explored.append(v)
            child = part.copy()
            child.refine(self.nbrs, [child.individualize(v)])
            jump = self.run(child, prefix + [v])
            # the subtree just left is an automorphic image of an explored one
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_labeling(g: Graph) -> dict[int, int]:
    """Map each vertex id to its canonical position ``0..n-1``."""
    verts = g.vertices
    if not verts:
        return {}
    index = {v: i for i, v in enumerate(verts)}
    nbrs = [[index[u] for u in g.neighbors(v)] for v in verts]
    search = _Search(nbrs)
    root = _Partition.unit(len(verts))
    root.refine(nbrs, [0])
    search.run(root, [])
    perm = search.best[1]
    return {v: perm[i] for i, v in enumerate(verts)}


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonically relabeled graph; equal iff isomorphic."""
    return to_graph6(g.relabeled(canonical_labeling(g))).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.size != h.size:
        return False
    return canonical_form(g) == canonical_form(h)
