"""JSON construction recipes.

A recipe is an object with a ``steps`` list.  Each step binds the graph it
produces to a name (``"let"``, defaulting to ``"_<index>"``) and later steps
refer to earlier graphs by that name.  The recipe's result is the graph named
by ``"output"``, or the last step's graph.

Sources::

    {"op": "complete", "n": 3}        {"op": "cycle", "n": 5}
    {"op": "path", "n": 4}            {"op": "empty", "n": 2}
    {"op": "graph6", "data": "Dhc"}   {"op": "edges", "n": 3, "edges": [[0, 1]]}
    {"op": "gn", "n": 5}              {"op": "gn_prime", "n": 5}

Operations (``graph``/``graphs`` name earlier steps)::

    {"op": "vid", "graph": "a", "pairs": [[0, 4]]}
    {"op": "merge", "graphs": ["a", "b"], "edge1": [0, 1], "edge2": [0, 1], "identify": [0, 0]}
    {"op": "ore", ...merge fields..., "mu": [[2, 2]]}
    {"op": "split", "graph": "a", "vertex": 0, "side": [1]}
    {"op": "dhgo", "graphs": ["a", "b"], "vertex": 0, "side": [1], "edge2": [0, 1]}
    {"op": "compact", "graph": "a"}

Vertex ids inside a step are those of its input graphs; the second input of
a binary operation keeps its own ids.
"""

from __future__ import annotations

import json
from typing import Any

from .constructions import (MergeSpec, OreSpec, SplitSpec, build_gn, build_gn_prime, dhgo_compose,
                            hajos_merge, ore_merge, vertex_identify, vertex_split)
from .graph import Graph, GraphError
from .graphio import from_graph6


class RecipeError(ValueError):
    pass


def _pair(x, what: str) -> tuple[int, int]:
    if not (isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) for v in x)):
        raise RecipeError(f"{what} must be a pair of integers, got {x!r}")
    return x[0], x[1]


def _int(step: dict, key: str) -> int:
    v = step.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise RecipeError(f"'{key}' must be an integer")
    return v


def _ints(step: dict, key: str) -> list[int]:
    v = step.get(key)
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise RecipeError(f"'{key}' must be a list of integers")
    return v


def _merge_spec(step: dict) -> MergeSpec:
    ident = _pair(step.get("identify", [0, 0]), "identify")
    return MergeSpec(_pair(step.get("edge1"), "edge1"), _pair(step.get("edge2"), "edge2"), ident)


class _Env:
    def __init__(self):
        self.graphs: dict[str, Graph] = {}

    def get(self, name) -> Graph:
        if name not in self.graphs:
            raise RecipeError(f"unknown graph {name!r}; defined so far: {sorted(self.graphs)}")
        return self.graphs[name]

    def two(self, step: dict) -> tuple[Graph, Graph]:
        names = step.get("graphs")
        if not (isinstance(names, list) and len(names) == 2):
            raise RecipeError("'graphs' must name two earlier graphs")
        return self.get(names[0]), self.get(names[1])


def _apply(env: _Env, step: dict) -> Graph:
    op = step.get("op")
    if op == "complete":
        return Graph.complete(_int(step, "n"))
    if op == "cycle":
        return Graph.cycle(_int(step, "n"))
    if op == "path":
        return Graph.path(_int(step, "n"))
    if op == "empty":
        return Graph.empty(_int(step, "n"))
    if op == "graph6":
        return from_graph6(str(step.get("data", "")))
    if op == "edges":
        edges = step.get("edges", [])
        if not isinstance(edges, list):
            raise RecipeError("'edges' must be a list of pairs")
        return Graph.from_edges([_pair(e, "edge") for e in edges], range(_int(step, "n")))
    if op == "gn":
        return build_gn(_int(step, "n"))
    if op == "gn_prime":
        return build_gn_prime(_int(step, "n"))
    if op == "vid":
        pairs = step.get("pairs")
        if not isinstance(pairs, list) or not pairs:
            raise RecipeError("'pairs' must be a nonempty list of pairs")
        return vertex_identify(env.get(step.get("graph")), [_pair(p, "pair") for p in pairs])
    if op == "merge":
        return hajos_merge(*env.two(step), _merge_spec(step))
    if op == "ore":
        mu = step.get("mu", [])
        if not isinstance(mu, list):
            raise RecipeError("'mu' must be a list of pairs")
        return ore_merge(*env.two(step), OreSpec(_merge_spec(step), dict(_pair(p, "mu pair") for p in mu)))
    if op == "split":
        return vertex_split(env.get(step.get("graph")), SplitSpec(_int(step, "vertex"), _ints(step, "side")))
    if op == "dhgo":
        g1, g2 = env.two(step)
        return dhgo_compose(g1, _int(step, "vertex"), _ints(step, "side"), g2,
                            _pair(step.get("edge2"), "edge2"))
    if op == "compact":
        return env.get(step.get("graph")).compacted()
    raise RecipeError(f"unknown op {op!r}")


def _step_lines(text: str) -> list[int]:
    """1-based line of each top-level step object, for error messages."""
    lines, depth, in_steps, in_str, esc, line = [], 0, False, False, False, 1
    key_at = text.find('"steps"')
    for i, ch in enumerate(text):
        if ch == "\n":
            line += 1
        if in_str:
            esc = ch == "\\" and not esc
            if ch == '"' and not esc:
                in_str = False
            continue
        if ch == '"':
            in_str, esc = True, False
        elif ch in "[{":
            depth += 1
            if in_steps and depth == 3 and ch == "{":
                lines.append(line)
            if ch == "[" and depth == 2 and key_at != -1 and i > key_at:
                in_steps = True
        elif ch in "]}":
            if ch == "]" and depth == 2:
                in_steps = False
            depth -= 1
    return lines


def run_recipe(recipe: Any, lines: list[int] | None = None) -> Graph:
    if not isinstance(recipe, dict):
        raise RecipeError("recipe must be a JSON object with a 'steps' list")
    steps = recipe.get("steps")
    if not isinstance(steps, list) or not steps:
        raise RecipeError("recipe has no steps")
    env = _Env()
    last = None
    for i, step in enumerate(steps):
        where = f"step {i}" + (f" (line {lines[i]})" if lines and i < len(lines) else "")
        if not isinstance(step, dict):
            raise RecipeError(f"{where}: each step must be an object")
        try:
            g = _apply(env, step)
        except RecipeError as exc:
            raise RecipeError(f"{where}: {exc}") from None
        except (GraphError, ValueError, KeyError, TypeError) as exc:
            raise RecipeError(f"{where}: {step.get('op')}: {exc}") from None
        last = str(step.get("let", f"_{i}"))
        env.graphs[last] = g
    out = recipe.get("output", last)
    return env.get(out)


def load_recipe(text: str) -> Graph:
    try:
        recipe = json.loads(text)
    except json.JSONDecodeError as exc:
        raise RecipeError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    return run_recipe(recipe, _step_lines(text))
