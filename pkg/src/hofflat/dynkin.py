"""Recognition of the (extended) Dynkin shapes A_m, D_m, Ã_m and D̃_m.

Index conventions: ``A(m)`` and ``D(m)`` have ``m`` vertices, ``ATilde(m)``
and ``DTilde(m)`` have ``m + 1``.  A single vertex is ``A(1)``, an edge is
``A(2)``, a triangle is ``ATilde(2)`` and the four-leaf star is
``DTilde(4)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import networkx as nx

from .errors import Disconnected, Empty

A, D, ATILDE, DTILDE, OTHER = "A", "D", "ATilde", "DTilde", "Other"


@dataclass(frozen=True)
class DynkinShape:
    kind: str
    index: int | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        return self.kind if self.index is None else f"{self.kind}({self.index})"


def recognize_shape(g: nx.Graph) -> DynkinShape:
    n = g.number_of_nodes()
    if n == 0:
        raise Empty("graph has no vertices")
    if not nx.is_connected(g):
        raise Disconnected("graph is not connected")
    deg = dict(g.degree())
    m = g.number_of_edges()
    if m == n:  # unicyclic
        if all(d == 2 for d in deg.values()):
            return DynkinShape(ATILDE, n - 1)
        return DynkinShape(OTHER)
    if m != n - 1:
        return DynkinShape(OTHER)
    # tree
    big = [v for v, d in deg.items() if d >= 3]
    if not big:
        return DynkinShape(A, n)
    if any(deg[v] > 4 for v in big):
        return DynkinShape(OTHER)
    if len(big) == 1:
        c = big[0]
        if deg[c] == 4:
            return DynkinShape(DTILDE, 4) if n == 5 else DynkinShape(OTHER)
        branches = sorted(_branch_length(g, c, u) for u in g[c])
        if branches[:2] == [1, 1]:
            return DynkinShape(D, n)
        return DynkinShape(OTHER)
    if len(big) == 2 and all(deg[v] == 3 for v in big):
        leaves = {v for v, d in deg.items() if d == 1}
        if all(sum(1 for u in g[v] if u in leaves) >= 2 for v in big) and n >= 6:
            return DynkinShape(DTILDE, n - 1)
    return DynkinShape(OTHER)


def _branch_length(g: nx.Graph, centre, start) -> int:
    """Vertices on the path leaving ``centre`` through ``start`` (-1 if it branches)."""
    prev, cur, length = centre, start, 1
    while True:
        nxt = [u for u in g[cur] if u != prev]
        if not nxt:
            return length
        if len(nxt) > 1:
            return -1
        prev, cur, length = cur, nxt[0], length + 1
