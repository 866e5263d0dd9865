"""Special graphs and sum decomposition.

The special graphs live on the slim vertices: ``{x, y}`` is a minus (plus)
edge when the reduced inner product ``A_s(x, y) - |N^f(x, y)|`` is negative
(positive).  The sign does not depend on the norm, so everything here is
combinatorial and exact.  A graph is the sum of the closures of a slim
partition exactly when no special edge crosses the partition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import networkx as nx
import numpy as np

from .errors import NoSlimVertex, NotAPartition
from .graph import HoffmanGraph, induced_closure
from .spectra import b_matrix

Edge = tuple[str, str]


@dataclass(frozen=True)
class SpecialGraphs:
    vertices: tuple[str, ...]
    minus_edges: frozenset[frozenset[str]]
    plus_edges: frozenset[frozenset[str]]

    def _sorted(self, edges) -> list[list[str]]:
        pos = {v: i for i, v in enumerate(self.vertices)}
        pairs = [sorted(e, key=pos.__getitem__) for e in edges]
        return sorted(pairs, key=lambda p: (pos[p[0]], pos[p[1]]))

    @property
    def minus(self) -> list[list[str]]:
        return self._sorted(self.minus_edges)

    @property
    def plus(self) -> list[list[str]]:
        return self._sorted(self.plus_edges)

    def graph(self, which: str = "all") -> nx.Graph:
        """``"minus"``, ``"plus"`` or ``"all"`` as a networkx graph."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        if which in ("minus", "all"):
            g.add_edges_from(tuple(e) for e in self.minus_edges)
        if which in ("plus", "all"):
            g.add_edges_from(tuple(e) for e in self.plus_edges)
        return g

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "minus": self.minus, "plus": self.plus}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def special_graphs(h: HoffmanGraph) -> SpecialGraphs:
    b = b_matrix(h)
    minus, plus = set(), set()
    names = h.slim_names
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if b[i, j] < 0:
                minus.add(frozenset((names[i], names[j])))
            elif b[i, j] > 0:
                plus.add(frozenset((names[i], names[j])))
    return SpecialGraphs(names, frozenset(minus), frozenset(plus))


def is_sum(h: HoffmanGraph, v1: Iterable[str], v2: Iterable[str]) -> bool:
    """Whether ``h`` is the sum of the closures of the slim partition ``{v1, v2}``."""
    v1, v2 = list(v1), list(v2)
    s1, s2 = set(v1), set(v2)
    if not v1 or not v2 or s1 & s2 or s1 | s2 != set(h.slim_names) or len(v1) + len(v2) != h.slim_count:
        raise NotAPartition("the two parts must be non-empty and partition the slim vertices")
    b = b_matrix(h)
    i1 = [h.slim_index(v) for v in v1]
    i2 = [h.slim_index(v) for v in v2]
    return not np.any(b[np.ix_(i1, i2)])


def special_components(h: HoffmanGraph) -> list[list[str]]:
    """Vertex sets of the connected components of the special graph, by least slim index."""
    pos = {v: i for i, v in enumerate(h.slim_names)}
    comps = [sorted(c, key=pos.__getitem__) for c in nx.connected_components(special_graphs(h).graph())]
    return sorted(comps, key=lambda c: pos[c[0]])


def indecomposable_components(h: HoffmanGraph) -> list[HoffmanGraph]:
    if h.slim_count == 0:
        raise NoSlimVertex("the graph has no slim vertex")
    return [induced_closure(h, c) for c in special_components(h)]


def is_indecomposable(h: HoffmanGraph) -> bool:
    return h.slim_count > 0 and len(special_components(h)) == 1


def recombine(parts: list[HoffmanGraph]) -> HoffmanGraph:
    """Glue closures back together; shared fat vertices are identified by name.

    Slim--slim edges between different parts are restored from the sum
    condition: two slim vertices from different parts are adjacent iff they
    have a common fat neighbour.
    """
    slim: list[str] = []
    fat: list[str] = []
    for p in parts:
        slim += [v for v in p.slim_names if v not in slim]
        fat += [f for f in p.fat_names if f not in fat]
    si = {v: i for i, v in enumerate(slim)}
    fi = {f: j for j, f in enumerate(fat)}
    adj = np.zeros((len(slim), len(slim)), dtype=bool)
    inc = np.zeros((len(slim), len(fat)), dtype=bool)
    owner = {}
    for k, p in enumerate(parts):
        idx = [si[v] for v in p.slim_names]
        adj[np.ix_(idx, idx)] |= p.slim_adj
        inc[np.ix_(idx, [fi[f] for f in p.fat_names])] |= p.slim_fat
        for v in p.slim_names:
            owner[v] = k
    common = inc.astype(int) @ inc.astype(int).T
    for a in range(len(slim)):
        for b in range(len(slim)):
            if a != b and owner[slim[a]] != owner[slim[b]] and common[a, b]:
                adj[a, b] = True
    return HoffmanGraph.from_matrices(slim, fat, adj, inc)
