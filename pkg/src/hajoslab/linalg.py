"""Exact matrix ranks for sparse boundary matrices.

GF(2) rows are Python ints used as bitsets.  Rational rows are ``{column:
integer}`` dicts reduced by fraction-free elimination with content division,
which keeps entries small on the 0/±1 matrices this package produces.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable


def gf2_rank(rows: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                break
            row ^= p
    return len(pivots)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {c: x // g for c, x in row.items()}
    return row


def rational_rank(rows: Iterable[dict[int, int]]) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: x for c, x in row.items() if x}
        while row:
            col = min(row)
            p = pivots.get(col)
            if p is None:
                pivots[col] = _primitive(row)
                break
            a, b = p[col], row[col]
            # row <- a*row - b*p, which cancels the leading column exactly
            new = {c: a * x for c, x in row.items()}
            for c, x in p.items():
                v = new.get(c, 0) - b * x
                if v:
                    new[c] = v
                else:
                    new.pop(c, None)
            row = _primitive(new) if new else new
    return len(pivots)
