"""Hajós-type graph constructions and the homology of neighborhood complexes."""

from __future__ import annotations

from .complex import BettiVector, SimplicialComplex, betti_numbers, neighborhood_complex
from .constructions import (MergeSpec, OreSpec, SplitSpec, build_gn, build_gn_prime, dhgo_compose,
                            hajos_merge, ore_merge, urquhart_compose, vertex_identify, vertex_split)
from .graph import CapacityError, Graph, GraphError

__version__ = "0.1.0"

__all__ = [
    "BettiVector", "CapacityError", "Graph", "GraphError", "MergeSpec", "OreSpec", "SimplicialComplex",
    "SplitSpec", "betti_numbers", "build_gn", "build_gn_prime", "dhgo_compose", "hajos_merge",
    "neighborhood_complex", "ore_merge", "urquhart_compose", "vertex_identify", "vertex_split",
]
