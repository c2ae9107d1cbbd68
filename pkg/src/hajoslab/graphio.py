"""graph6 and JSON serialization.

Both formats index vertices ``0..n-1`` in increasing vertex-id order, so
writing a graph whose ids are not already ``0..n-1`` compacts it.
"""

from __future__ import annotations

import json
from typing import Iterable

from .graph import Graph, GraphError

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise GraphError("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("order too large for graph6")


def _decode_n(data: str) -> tuple[int, int]:
    """Return ``(n, number of characters consumed)``."""
    if data.startswith("~~"):
        chars, start = data[2:8], 2
    elif data.startswith("~"):
        chars, start = data[1:4], 1
    else:
        return ord(data[0]) - 63, 1
    n = 0
    for c in chars:
        n = (n << 6) | (ord(c) - 63)
    return n, start + len(chars)


def to_graph6(g: Graph) -> str:
    index = {v: i for i, v in enumerate(g.vertices)}
    n = len(index)
    adj = [set() for _ in range(n)]
    for u, v in g.edges:
        adj[index[u]].add(index[v])
        adj[index[v]].add(index[u])
    bits = []
    for j in range(1, n):
        aj = adj[j]
        bits.extend(1 if i in aj else 0 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return _encode_n(n) + body


def from_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    data = text.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    if not data:
        raise GraphError("empty graph6 string")
    if any(not 63 <= ord(c) <= 126 for c in data):
        raise GraphError("graph6 contains characters outside 63..126")
    n, used = _decode_n(data)
    body = data[used:]
    need = n * (n - 1) // 2
    if len(body) != -(-need // 6):
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {-(-need // 6)}")
    bits = "".join(format(ord(c) - 63, "06b") for c in body)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k] == "1":
                edges.append((i, j))
            k += 1
    return Graph.from_edges(edges, range(n))


def read_graph6_lines(lines: Iterable[str]) -> list[Graph]:
    return [from_graph6(line) for line in lines if line.strip()]


def to_json_dict(g: Graph) -> dict:
    index = {v: i for i, v in enumerate(g.vertices)}
    return {"n": len(index), "edges": [[index[u], index[v]] for u, v in g.edges]}


def from_json_dict(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphError(f"bad edge [{u}, {v}] for n={n}")
    return Graph.from_edges(edges, range(n))


def to_json(g: Graph) -> str:
    return json.dumps(to_json_dict(g))


def from_json(text: str) -> Graph:
    return from_json_dict(json.loads(text))


def read_graph(text: str) -> Graph:
    """Parse either JSON or a single graph6 line."""
    text = text.strip()
    if text.startswith("{"):
        return from_json(text)
    return from_graph6(text.splitlines()[0])
