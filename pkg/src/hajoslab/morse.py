"""Acyclic matchings on face posets and the fiberwise (patchwork) construction.

Faces are frozensets of vertex ids.  A :class:`FacePoset` may omit a *base*
subcomplex: faces inside it are treated as one unmatched block sitting below
everything else, which lets huge neighbourhood simplices stay implicit.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable

from .complex import SimplicialComplex, f_vector

class MatchingError(ValueError):
    pass


class FacePoset:
    """Faces ordered by inclusion; covers join faces differing by one vertex."""

    def __init__(self, faces: Iterable[Iterable[int]], base: SimplicialComplex | None = None):
        self.faces = frozenset(frozenset(f) for f in faces)
        self.base = base
        if base is not None:
            inside = [f for f in self.faces if f and f in base]
            if inside:
                raise MatchingError(f"face {sorted(inside[0])} lies in the base subcomplex")
        for f in self.faces:
            for v in f:
                g = f - {v}
                if g and g not in self.faces and (base is None or g not in base):
                    raise MatchingError(f"face {sorted(f)} is missing {sorted(g)}")

    @classmethod
    def of_complex(cls, k: SimplicialComplex, include_empty: bool = False) -> FacePoset:
        faces: set[frozenset[int]] = set()
        for f in k.facets:
            for s in range(1, len(f) + 1):
                faces.update(frozenset(c) for c in combinations(sorted(f), s))
        if include_empty:
            faces.add(frozenset())
        return cls(faces)

    def __contains__(self, face) -> bool:
        return face in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def boundary(self, face: frozenset) -> list[frozenset]:
        """Faces of the poset covered by ``face``."""
        return [face - {v} for v in face if (face - {v}) in self.faces]

    def is_cover(self, a: frozenset, b: frozenset) -> bool:
        return a in self.faces and b in self.faces and len(b) == len(a) + 1 and a < b

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            out[len(f) - 1] = out.get(len(f) - 1, 0) + 1
        return dict(sorted(out.items()))

    def base_counts(self) -> dict[int, int]:
        if self.base is None:
            return {}
        return {i: c for i, c in enumerate(f_vector(self.base)) if c}


class PartialMatching:
    """Validated set of ``(d(b), b)`` cover pairs."""

    def __init__(self, poset: FacePoset, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]):
        self.poset = poset
        self.up: dict[frozenset, frozenset] = {}
        self.down: dict[frozenset, frozenset] = {}
        for a, b in pairs:
            a, b = frozenset(a), frozenset(b)
            if not poset.is_cover(a, b):
                raise MatchingError(f"{sorted(a)} -> {sorted(b)} is not a cover relation")
            for f in (a, b):
                if f in self.up or f in self.down:
                    raise MatchingError(f"face {sorted(f)} belongs to two pairs")
            self.up[a] = b
            self.down[b] = a

    @property
    def pairs(self) -> list[tuple[frozenset, frozenset]]:
        return sorted(self.up.items(), key=lambda p: (len(p[0]), sorted(p[0])))

    def __len__(self) -> int:
        return len(self.up)

    def is_matched(self, face: frozenset) -> bool:
        return face in self.up or face in self.down


def find_cycle(m: PartialMatching) -> list[frozenset] | None:
    """Return ``[a1, u(a1), a2, u(a2), ...]`` for some alternating cycle, or None.

    Only faces matched upward can sit on such a cycle, so the search runs on
    the digraph ``a -> a'`` for ``a'`` a matched-up face covered by ``u(a)``.
    """
    succ = {a: [c for c in m.poset.boundary(b) if c != a and c in m.up] for a, b in m.up.items()}
    state: dict[frozenset, int] = {}
    for root in sorted(succ, key=lambda f: (len(f), sorted(f))):
        if root in state:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
                path.pop()
            elif state.get(nxt) == 1:
                cyc = path[path.index(nxt):]
                return [x for a in cyc for x in (a, m.up[a])]
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return None


def is_acyclic(m: PartialMatching) -> tuple[bool, list[frozenset] | None]:
    cycle = find_cycle(m)
    return cycle is None, cycle


@dataclass
class CriticalCells:
    cells: dict[int, list[frozenset]]
    base: dict[int, int] = field(default_factory=dict)

    @property
    def counts(self) -> dict[int, int]:
        """Critical cells by dimension among explicitly listed faces."""
        return {d: len(c) for d, c in sorted(self.cells.items())}

    @property
    def total(self) -> dict[int, int]:
        out = dict(self.base)
        for d, c in self.counts.items():
            out[d] = out.get(d, 0) + c
        return dict(sorted(out.items()))

    def euler(self) -> int:
        return sum((-1) ** d * c for d, c in self.total.items())


def critical_cells(m: PartialMatching) -> CriticalCells:
    cycle = find_cycle(m)
    if cycle is not None:
        raise MatchingError(f"matching has a cycle through {sorted(cycle[0])}")
    cells: dict[int, list[frozenset]] = {}
    for f in m.poset.faces:
        if not m.is_matched(f):
            cells.setdefault(len(f) - 1, []).append(f)
    for d in cells:
        cells[d].sort(key=sorted)
    return CriticalCells(cells, m.poset.base_counts())


def pivot_matching(faces: Iterable[frozenset], t: int) -> list[tuple[frozenset, frozenset]]:
    """Pair each face without ``t`` with its union with ``t`` when both are present."""
    faces = set(faces)
    return [(f, f | {t}) for f in faces if t not in f and (f | {t}) in faces]


class TargetPoset:
    """Finite poset given by cover relations; ``leq`` uses the transitive closure."""

    def __init__(self, elements: Iterable[Hashable], covers: Iterable[tuple[Hashable, Hashable]]):
        self.elements = list(dict.fromkeys(elements))
        known = set(self.elements)
        self.covers = list(dict.fromkeys(covers))
        above: dict[Hashable, set] = {e: set() for e in self.elements}
        for a, b in self.covers:
            if a not in known or b not in known:
                raise MatchingError(f"cover {a} < {b} uses an unknown element")
            above[a].add(b)
        self._up: dict[Hashable, set] = {}
        for e in self.elements:
            seen = {e}
            todo = [e]
            while todo:
                for b in above[todo.pop()]:
                    if b not in seen:
                        seen.add(b)
                        todo.append(b)
            self._up[e] = seen
        for a, b in self.covers:
            if a in self._up[b]:
                raise MatchingError(f"cover relations contain a cycle through {a}")

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, a, b) -> bool:
        return b in self._up[a]


@dataclass
class PosetMapFibers:
    """Face labels in a target poset plus one matching per fiber.

    ``bottom`` labels every face of ``poset.base`` implicitly.
    """

    poset: FacePoset
    target: TargetPoset
    labels: dict[frozenset, Hashable]
    matchings: dict[Hashable, list[tuple[frozenset, frozenset]]]
    bottom: Hashable | None = None
    notes: list[str] = field(default_factory=list)

    def label(self, face: frozenset):
        if face in self.labels:
            return self.labels[face]
        if self.poset.base is not None and face in self.poset.base:
            return self.bottom
        raise MatchingError(f"face {sorted(face)} has no label")

    def fiber(self, q) -> list[frozenset]:
        return sorted((f for f, lab in self.labels.items() if lab == q), key=lambda f: (len(f), sorted(f)))

    def unlabeled(self) -> list[frozenset]:
        return [f for f in self.poset.faces if f not in self.labels]

    def order_violation(self) -> tuple[frozenset, frozenset] | None:
        for f in self.poset.faces:
            lf = self.label(f)
            for v in f:
                g = f - {v}
                if not g:
                    continue
                if g not in self.poset and (self.poset.base is None or g not in self.poset.base):
                    continue
                if not self.target.leq(self.label(g), lf):
                    return g, f
        return None

    def to_json_dict(self) -> dict:
        return {
            "labels": [[sorted(f), str(q)] for f, q in sorted(self.labels.items(), key=lambda x: sorted(x[0]))],
            "notes": list(self.notes),
        }


def patchwork_union(fibers: PosetMapFibers) -> PartialMatching:
    """Union of fiber matchings after checking labels and per-fiber acyclicity."""
    missing = fibers.unlabeled()
    if missing:
        raise MatchingError(f"face {sorted(missing[0])} has no label")
    bad = fibers.order_violation()
    if bad is not None:
        g, f = bad
        raise MatchingError(
            f"labels not order-preserving on cover {sorted(g)} < {sorted(f)}: "
            f"{fibers.label(g)} is not below {fibers.label(f)}")
    pairs = []
    for q, ms in fibers.matchings.items():
        for a, b in ms:
            if fibers.label(a) != q or fibers.label(b) != q:
                raise MatchingError(f"pair {sorted(a)} -> {sorted(b)} leaves fiber {q}")
        local = PartialMatching(fibers.poset, ms)
        if find_cycle(local) is not None:
            raise MatchingError(f"fiber {q} matching is not acyclic")
        pairs.extend(ms)
    union = PartialMatching(fibers.poset, pairs)
    # the patchwork theorem guarantees this; recheck it anyway
    cycle = find_cycle(union)
    if cycle is not None:
        raise MatchingError(f"union matching has a cycle through {sorted(cycle[0])}")
    return union


def random_acyclic_matching(poset: FacePoset, rng: random.Random, attempts: int | None = None) -> PartialMatching:
    """Greedy random acyclic matching: add shuffled covers that keep it acyclic."""
    covers = [(g, f) for f in poset.faces for g in poset.boundary(f)]
    covers.sort(key=lambda p: (sorted(p[0]), sorted(p[1])))
    rng.shuffle(covers)
    if attempts is not None:
        covers = covers[:attempts]
    pairs: list[tuple[frozenset, frozenset]] = []
    used: set[frozenset] = set()
    for a, b in covers:
        if a in used or b in used:
            continue
        trial = PartialMatching(poset, pairs + [(a, b)])
        if find_cycle(trial) is None:
            pairs.append((a, b))
            used.update((a, b))
    return PartialMatching(poset, pairs)


def matching_to_json(m: PartialMatching) -> str:
    crit = critical_cells(m)
    return json.dumps({
        "pairs": [[sorted(a), sorted(b)] for a, b in m.pairs],
        "critical": {str(d): [sorted(f) for f in cells] for d, cells in sorted(crit.cells.items())},
        "critical_counts": {str(d): c for d, c in crit.total.items()},
    })


# --- fixtures for the G_n and G_n' families -------------------------------------------


@dataclass
class _Fiber:
    label: str
    pivot: str | None
    explicit: list[tuple[str, ...]] = field(default_factory=list)
    union: list[str] = field(default_factory=list)   # NP(v) generators
    remove: list[tuple[str, ...]] = field(default_factory=list)


def _label_fibers(g, base_names: list[str], specs: list[_Fiber], target: TargetPoset,
                  bottom: str) -> PosetMapFibers:
    byname = {g.name_of(v): v for v in g}

    def ids(names):
        if not all(s in byname for s in names):
            return None
        return frozenset(byname[s] for s in names)

    base = SimplicialComplex([g.neighbors(byname[b]) for b in base_names])
    k = SimplicialComplex(g.neighbors(v) for v in g)
    outside: set[frozenset] = set()
    for f in k.facets:
        if f in base:
            continue
        for s in range(1, len(f) + 1):
            for c in combinations(sorted(f), s):
                fs = frozenset(c)
                if fs not in base:
                    outside.add(fs)
    poset = FacePoset(outside, base)
    labels: dict[frozenset, str] = {}
    notes: list[str] = []
    matchings: dict[str, list] = {}

    def show(face):
        return "{" + ",".join(sorted(g.name_of(v) for v in face)) + "}"

    for spec in specs:
        cand: set[frozenset] = set()
        for names in spec.explicit:
            fs = ids(names)
            if fs is None:
                notes.append(f"{spec.label}: dropped {names} (vertex out of range)")
                continue
            if fs not in outside:
                notes.append(f"{spec.label}: {show(fs)} is not a face outside the base")
                continue
            cand.add(fs)
        for v in spec.union:
            nb = sorted(g.neighbors(byname[v]))
            # the empty face is not part of the poset, so NP(v) and NP(v)>=1 coincide
            for s in range(1, len(nb) + 1):
                cand.update(frozenset(c) for c in combinations(nb, s))
        removed = set()
        for names in spec.remove:
            fs = ids(names)
            if fs is not None:
                removed.add(fs)
                if fs not in labels and fs not in base and fs in outside:
                    notes.append(f"{spec.label}: removed {show(fs)} was not assigned earlier")
        cand -= removed
        fiber = set()
        for fs in cand:
            if fs not in outside:
                continue          # inside the base block
            if fs in labels:
                if spec.explicit:
                    notes.append(f"{spec.label}: {show(fs)} already in fiber {labels[fs]}")
                continue
            labels[fs] = spec.label
            fiber.add(fs)
        pivot = byname.get(spec.pivot) if spec.pivot else None
        matchings[spec.label] = pivot_matching(fiber, pivot) if pivot is not None else []
    return PosetMapFibers(poset, target, labels, matchings, bottom, notes)


def gn_target(n: int) -> TargetPoset:
    elements = (["O", "X"] + [f"Z{k}" for k in range(2, n)] + [f"{j}A" for j in range(1, n)]
                + [f"{j}C" for j in range(2, n + 1)])
    covers = [("O", "1A"), ("1A", "2A"), ("2A", "Z2"), ("Z2", "2C"), ("2C", "Z3"), ("Z3", "3A"),
              ("2A", "X")]
    chain = [f"{j}C" for j in range(2, n - 1)] + [f"{n}C", f"{n - 1}C"]
    covers += list(zip(chain, chain[1:]))
    for j in range(3, n - 1):
        covers += [(f"{j}A", f"Z{j + 1}"), (f"Z{j + 1}", f"{j + 1}A"), (f"{j}C", f"Z{j + 1}")]
    return TargetPoset(elements, covers)


def gn_prime_target(n: int) -> TargetPoset:
    # labels nA and nC also receive faces, so they extend the chain below T
    chain = ["O"] + [f"{j}{s}" for j in range(2, n + 1) for s in "AC"] + ["T"]
    return TargetPoset(chain, zip(chain, chain[1:]))


def build_gn_matching(n: int) -> tuple[FacePoset, PosetMapFibers]:
    """Fiber labels and pivot matchings on ``N(G_n)`` with ``N(X) u N(Z)`` as base."""
    from .constructions import build_gn
    if n < 5:
        raise ValueError("the G_n matching needs n >= 5")
    g = build_gn(n)
    specs = [
        _Fiber("1A", "1A", explicit=[("1A", "1B", "2A"), ("1A", "2A"), ("1B", "2A")]),
        _Fiber("2A", "2A", union=["Y", "1C", "2C", "2B"],
               remove=[("1A", "1B", "2A"), ("1A", "2A"), ("1B", "2A"), ("1A", "1B"), ("2A", "3A"),
                       ("1A",), ("1B",), ("2A",), ("2B",), ("2C",), ("3A",)]),
        _Fiber("X", "X", union=["1B", "1A", f"{n}B", f"{n}C"]),
        _Fiber("Z2", "Z", explicit=[("2B", "2C", "Z"), ("2B", "2C"), ("2C", "Z")]),
        _Fiber("2C", "2C", union=["2A", "3A"],
               remove=[("2B", "2C", "Z"), ("2B", "2C"), ("2B", "Z"), ("1C", "2C"), ("2C", "3C"),
                       ("2C", "Z")]),
    ]
    for j in range(3, n - 1):
        specs.append(_Fiber(f"{j}C", f"{j}C", union=[f"{j + 1}A"],
                            remove=[(f"{j}C", "Z"), (f"{j}C", f"{j + 1}C")]))
    for k in range(3, n):
        specs.append(_Fiber(f"Z{k}", "Z", explicit=[(f"{k}A", f"{k}B", "Z"), (f"{k}A", f"{k}B")]))
    for k in range(3, n):
        specs.append(_Fiber(f"{k}A", f"{k}A", union=[f"{k}C", f"{k}B"],
                            remove=[(f"{k}A", f"{k}B", "Z"), (f"{k}A", f"{k}B"), (f"{k}B", "Z"),
                                    (f"{k}A", "Z"), (f"{k}A", f"{k + 1}A")]))
    m1 = f"{n - 1}C"
    specs.append(_Fiber(f"{n}C", f"{n}C",
                        explicit=[(m1, f"{n}B", f"{n}C"), (m1, f"{n}C"), (m1, f"{n}B")]))
    specs.append(_Fiber(m1, m1, union=[f"{n}A"],
                        remove=[(m1, f"{n}B", f"{n}C"), (m1, f"{n}B"), (m1, f"{n}C"), (m1, "Z"),
                                (f"{n}B", f"{n}C")]))
    fibers = _label_fibers(g, ["X", "Z"], specs, gn_target(n), "O")
    return fibers.poset, fibers


def build_gn_prime_matching(n: int) -> tuple[FacePoset, PosetMapFibers]:
    """Fiber labels and pivot matchings on ``N(G_n')`` with ``N(XZ)`` as base."""
    from .constructions import build_gn_prime
    if n < 5:
        raise ValueError("the G_n' matching needs n >= 5")
    g = build_gn_prime(n)
    specs = [
        _Fiber("2A", "2A", union=["1C", "2B", "2C"]),
        _Fiber("2C", "2C", explicit=[
            ("1C", "2B", "2C", "XZ"), ("2C", "3B", "3C", "XZ"), ("1A", "1C", "XZ"), ("1B", "1C", "XZ"),
            ("1C", "2B", "XZ"), ("2C", "3C", "XZ"), ("2B", "2C", "XZ"), ("2C", "3B", "XZ"),
            ("3B", "3C", "XZ"), ("3A", "3C", "XZ"), ("1C", "2C", "XZ"), ("1C", "XZ"), ("3B", "XZ"),
            ("3C", "XZ")]),
    ]
    for k in range(3, n + 1):
        a, b, a1 = f"{k}A", f"{k}B", f"{k + 1}A"
        specs.append(_Fiber(a, a, explicit=[(a, b, a1, "XZ"), (b, a1, "XZ"), (a, a1, "XZ"),
                                            (a1, "XZ"), (a, b, "XZ")]))
    for k in range(3, n + 1):
        c, b1, c1 = f"{k}C", f"{k + 1}B", f"{k + 1}C"
        specs.append(_Fiber(c, c, explicit=[(c, b1, c1, "XZ"), (b1, c1, "XZ"), (c, c1, "XZ"),
                                            (c, b1, "XZ"), (b1, "XZ"), (c1, "XZ")]))
    specs.append(_Fiber("T", None, explicit=[(f"{k}A", f"{k}C", "XZ") for k in range(4, n + 1)]))
    fibers = _label_fibers(g, ["XZ"], specs, gn_prime_target(n), "O")
    return fibers.poset, fibers
