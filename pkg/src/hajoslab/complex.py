"""Neighborhood complexes, face enumeration and reduced Betti numbers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .graph import CapacityError, Graph
from .linalg import gf2_rank, rational_rank

DEFAULT_FACE_CAP = 5_000_000
FIELDS = ("gf2", "q")


class SimplicialComplex:
    """A complex given by its facets over a ground set of vertex ids.

    Facets are pruned to the inclusion-maximal ones.  Ground-set vertices that
    lie in no facet are kept as singleton facets, so they count as isolated
    points.
    """

    __slots__ = ("facets", "vertices")

    def __init__(self, facets: Iterable[Iterable[int]], vertices: Iterable[int] = ()):
        sets = {frozenset(f) for f in facets}
        sets.discard(frozenset())
        covered = set().union(*sets) if sets else set()
        for v in vertices:
            if v not in covered:
                sets.add(frozenset((v,)))
        kept: list[frozenset[int]] = []
        for f in sorted(sets, key=len, reverse=True):
            if not any(f <= g for g in kept):
                kept.append(f)
        self.facets = tuple(sorted(kept, key=lambda f: (len(f), sorted(f))))
        self.vertices = frozenset().union(*self.facets) if self.facets else frozenset()

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def __contains__(self, face) -> bool:
        face = frozenset(face)
        return any(face <= f for f in self.facets)

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets)"

    def to_json_dict(self) -> dict:
        return {"vertices": sorted(self.vertices), "facets": [sorted(f) for f in self.facets]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, obj: dict) -> SimplicialComplex:
        return cls(obj["facets"], obj.get("vertices", ()))


def neighborhood_complex(g: Graph) -> SimplicialComplex:
    """Facets are the open neighbourhoods ``N(v)``; isolated vertices stay as points."""
    return SimplicialComplex((g.neighbors(v) for v in g), g.vertices)


def induced_facet_complex(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    return SimplicialComplex(facets)


@dataclass
class FaceTable:
    """Sorted ``i``-faces for ``i <= dimension`` with their positions."""

    faces: list[list[tuple[int, ...]]]

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    def counts(self) -> list[int]:
        return [len(f) for f in self.faces]

    def index(self, i: int) -> dict[tuple[int, ...], int]:
        return {f: k for k, f in enumerate(self.faces[i])}


def faces_up_to(k: SimplicialComplex, d: int, cap: int = DEFAULT_FACE_CAP) -> FaceTable:
    total = 0
    out = []
    for i in range(d + 1):
        level: set[tuple[int, ...]] = set()
        for f in k.facets:
            if len(f) > i:
                level.update(combinations(sorted(f), i + 1))
                if total + len(level) > cap:
                    raise CapacityError(f"more than {cap} faces up to dimension {d}")
        total += len(level)
        out.append(sorted(level))
    return FaceTable(out)


def f_vector(k: SimplicialComplex, big: int = 12) -> list[int]:
    """Face counts ``f_0, f_1, ...`` of the whole complex (empty face excluded).

    Facets with more than ``big`` vertices are counted by inclusion-exclusion;
    faces of the remaining facets are enumerated and kept only when they lie in
    no large facet.
    """
    large = [f for f in k.facets if len(f) > big]
    small = [f for f in k.facets if len(f) <= big]
    if len(large) > 16:
        raise CapacityError(f"{len(large)} facets above {big} vertices")
    counts = [0] * (k.dimension + 2)
    for r in range(1, len(large) + 1):
        sign = 1 if r % 2 else -1
        for group in combinations(large, r):
            common = len(frozenset.intersection(*group))
            for s in range(1, common + 1):
                counts[s - 1] += sign * comb(common, s)
    seen: set[frozenset[int]] = set()
    for f in small:
        for s in range(1, len(f) + 1):
            for face in combinations(sorted(f), s):
                fs = frozenset(face)
                if fs in seen or any(fs <= g for g in large):
                    continue
                seen.add(fs)
                counts[s - 1] += 1
    while counts and counts[-1] == 0:
        counts.pop()
    return counts


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** i * f for i, f in enumerate(f_vector(k)))


def _components(k: SimplicialComplex) -> int:
    parent = {v: v for v in k.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in k.facets:
        it = iter(f)
        root = find(next(it))
        for v in it:
            r = find(v)
            if r != root:
                parent[r] = root
    return sum(1 for v in parent if find(v) == v)


def is_path_connected(k: SimplicialComplex) -> bool:
    return _components(k) == 1


def strong_core(k: SimplicialComplex) -> SimplicialComplex:
    """Repeatedly delete dominated vertices (strong collapses).

    A vertex ``u`` is dominated by ``v != u`` when every facet containing ``u``
    also contains ``v``; deleting ``u`` then preserves the homotopy type.
    """
    facets = [set(f) for f in k.facets]
    changed = True
    while changed:
        changed = False
        verts = sorted(set().union(*facets)) if facets else []
        for u in verts:
            containing = [f for f in facets if u in f]
            common = set.intersection(*containing) - {u}
            if common:
                facets = [f - {u} if u in f else f for f in facets]
                facets = [f for f in facets if f]
                pruned = SimplicialComplex(facets)
                facets = [set(f) for f in pruned.facets]
                changed = True
                break
    return SimplicialComplex(facets)


@dataclass(frozen=True)
class BettiVector:
    field: str
    values: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def to_json_dict(self) -> dict:
        return {"field": self.field, "betti": list(self.values)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def _boundary_rows(faces: Sequence[tuple[int, ...]], index: dict, field: str):
    if field == "gf2":
        for face in faces:
            row = 0
            for j in range(len(face)):
                row |= 1 << index[face[:j] + face[j + 1:]]
            yield row
    else:
        for face in faces:
            yield {index[face[:j] + face[j + 1:]]: (-1) ** j for j in range(len(face))}


def _fan_faces(k: SimplicialComplex, size: int) -> list[tuple[int, ...]]:
    """Faces of ``size`` vertices that contain the smallest vertex of some facet.

    Within one simplex the boundaries of the faces through a fixed apex span
    the boundaries of all its faces, so these rows have the same rank as the
    full boundary matrix.
    """
    out: set[tuple[int, ...]] = set()
    for f in k.facets:
        if len(f) >= size:
            apex, *rest = sorted(f)
            out.update((apex,) + c for c in combinations(rest, size - 1))
    return sorted(out)


def _rank(rows, field: str) -> int:
    return gf2_rank(rows) if field == "gf2" else rational_rank(rows)


def betti_numbers(k: SimplicialComplex, max_dim: int = 1, field: str = "gf2",
                  cap: int = DEFAULT_FACE_CAP, fan: bool = True) -> BettiVector:
    """Reduced Betti numbers ``b_0..b_max_dim`` of ``k`` over GF(2) or Q.

    ``b_i = f_i - rank d_i - rank d_{i+1}`` with ``d_0`` the augmentation.
    ``d_1`` has rank ``f_0 - components`` over any field.  With ``fan=True``
    the top boundary rank uses only faces through each facet's apex (see
    ``_fan_faces``); ``fan=False`` builds the full boundary matrix.
    """
    if field not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}")
    if not k.vertices:
        return BettiVector(field, (0,) * (max_dim + 1))
    table = faces_up_to(k, max_dim, cap)
    f = table.counts()
    ranks = [1, len(table.faces[0]) - _components(k)]
    for i in range(2, max_dim + 2):
        index = table.index(i - 1)
        if i == max_dim + 1:
            rows = _fan_faces(k, i + 1) if fan else faces_up_to(k, i, cap).faces[i]
            if len(rows) > cap:
                raise CapacityError(f"more than {cap} faces in dimension {i}")
        else:
            rows = table.faces[i]
        ranks.append(_rank(_boundary_rows(rows, index, field), field) if rows else 0)
    return BettiVector(field, tuple(f[i] - ranks[i] - ranks[i + 1] for i in range(max_dim + 1)))


def betti1(g: Graph, field: str = "gf2", core: bool = False) -> int:
    """First reduced Betti number of ``N(g)``."""
    k = neighborhood_complex(g)
    if core:
        k = strong_core(k)
    return betti_numbers(k, 1, field)[1]
