"""Hoffman graph data model, validation, subgraphs, isomorphism and ``.hg`` I/O.

A Hoffman graph has *slim* and *fat* vertices; fat vertices are pairwise
non-adjacent and each has at least one slim neighbour.  Only slim--slim
adjacency and the slim--fat incidence are stored, so fat--fat edges cannot
be represented at all.

The ``.hg`` text format is line based::

    # comment
    slim x
    fat f1
    edge x f1
"""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateVertexName,
    EmptyAttachment,
    FatFatEdge,
    FatWithoutSlimNeighbor,
    ParseError,
    SelfLoop,
    UnknownVertex,
)

NAME_RE = re.compile(r"^[A-Za-z0-9_.-]+$")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=bool, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GraphPredicateReport:
    is_fat: bool
    is_slim: bool
    slim_count: int
    fat_count: int


@dataclass(frozen=True, eq=False)
class HoffmanGraph:
    """Immutable Hoffman graph.

    Matrices index vertices in the order of ``slim_names`` / ``fat_names``.
    Use :func:`validate` or :meth:`from_matrices` to build one; the bare
    constructor does not check the invariants.
    """

    slim_names: tuple[str, ...]
    fat_names: tuple[str, ...]
    slim_adj: np.ndarray
    slim_fat: np.ndarray

    def __post_init__(self) -> None:
        s, f = len(self.slim_names), len(self.fat_names)
        object.__setattr__(self, "slim_names", tuple(self.slim_names))
        object.__setattr__(self, "fat_names", tuple(self.fat_names))
        object.__setattr__(self, "slim_adj", _frozen(np.reshape(self.slim_adj, (s, s))))
        object.__setattr__(self, "slim_fat", _frozen(np.reshape(self.slim_fat, (s, f))))

    @classmethod
    def from_matrices(
        cls,
        slim_names: Sequence[str],
        fat_names: Sequence[str],
        slim_adj,
        slim_fat,
    ) -> "HoffmanGraph":
        """Build a graph from matrices and check every invariant."""
        g = cls(tuple(slim_names), tuple(fat_names), slim_adj, slim_fat)
        _check_invariants(g)
        return g

    # -- basic queries -------------------------------------------------
    @property
    def slim_count(self) -> int:
        return len(self.slim_names)

    @property
    def fat_count(self) -> int:
        return len(self.fat_names)

    @property
    def is_fat(self) -> bool:
        return bool(self.slim_fat.any(axis=1).all()) if self.slim_count else True

    @property
    def is_slim(self) -> bool:
        return self.fat_count == 0

    def report(self) -> GraphPredicateReport:
        return GraphPredicateReport(self.is_fat, self.is_slim, self.slim_count, self.fat_count)

    def slim_index(self, name: str) -> int:
        try:
            return self.slim_names.index(name)
        except ValueError:
            raise UnknownVertex(f"{name!r} is not a slim vertex") from None

    def fat_index(self, name: str) -> int:
        try:
            return self.fat_names.index(name)
        except ValueError:
            raise UnknownVertex(f"{name!r} is not a fat vertex") from None

    def fat_neighbors(self, x: str) -> list[str]:
        row = self.slim_fat[self.slim_index(x)]
        return [self.fat_names[j] for j in np.flatnonzero(row)]

    def slim_neighbors(self, v: str) -> list[str]:
        if v in self.slim_names:
            col = self.slim_adj[self.slim_index(v)]
        else:
            col = self.slim_fat[:, self.fat_index(v)]
        return [self.slim_names[i] for i in np.flatnonzero(col)]

    def fat_degrees(self) -> np.ndarray:
        """``|N^f(x)|`` for every slim vertex, in slim order."""
        return self.slim_fat.sum(axis=1).astype(int)

    def common_fat_counts(self) -> np.ndarray:
        """Integer matrix ``C C^T``: common fat neighbours of slim pairs."""
        c = self.slim_fat.astype(np.int64)
        return c @ c.T

    def edges(self) -> list[tuple[str, str]]:
        out = []
        s = self.slim_count
        for i in range(s):
            for j in range(i + 1, s):
                if self.slim_adj[i, j]:
                    out.append((self.slim_names[i], self.slim_names[j]))
        for i, j in zip(*np.nonzero(self.slim_fat)):
            out.append((self.slim_names[i], self.fat_names[j]))
        return out

    # -- equality: same names, same order, same matrices ---------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HoffmanGraph):
            return NotImplemented
        return (
            self.slim_names == other.slim_names
            and self.fat_names == other.fat_names
            and np.array_equal(self.slim_adj, other.slim_adj)
            and np.array_equal(self.slim_fat, other.slim_fat)
        )

    def __hash__(self) -> int:
        return hash((self.slim_names, self.fat_names, self.slim_adj.tobytes(), self.slim_fat.tobytes()))

    def __repr__(self) -> str:
        return f"HoffmanGraph(slim={list(self.slim_names)}, fat={list(self.fat_names)}, edges={len(self.edges())})"


def _check_invariants(g: HoffmanGraph) -> None:
    names = g.slim_names + g.fat_names
    seen: set[str] = set()
    for n in names:
        if n in seen:
            raise DuplicateVertexName(f"vertex name {n!r} used twice")
        seen.add(n)
    a = g.slim_adj
    for i in np.flatnonzero(np.diag(a)):
        raise SelfLoop(f"self-loop at {g.slim_names[i]!r}")
    if not np.array_equal(a, a.T):
        i, j = np.argwhere(a != a.T)[0]
        raise ValueError(f"slim adjacency not symmetric at ({g.slim_names[i]!r}, {g.slim_names[j]!r})")
    lonely = [g.fat_names[j] for j in np.flatnonzero(~g.slim_fat.any(axis=0))]
    if lonely:
        raise FatWithoutSlimNeighbor(f"fat vertices without slim neighbour: {lonely}")


def validate(raw: Mapping) -> HoffmanGraph:
    """Turn a raw description ``{"slim": [...], "fat": [...], "edges": [...]}`` into a graph.

    Vertex order is the input order.  Raises the specific
    :mod:`hofflat.errors` class naming the offending vertices.
    """
    slim = [str(x) for x in raw.get("slim", [])]
    fat = [str(x) for x in raw.get("fat", [])]
    seen: set[str] = set()
    for n in slim + fat:
        if n in seen:
            raise DuplicateVertexName(f"vertex name {n!r} used twice")
        seen.add(n)
    si = {n: i for i, n in enumerate(slim)}
    fi = {n: i for i, n in enumerate(fat)}
    adj = np.zeros((len(slim), len(slim)), dtype=bool)
    inc = np.zeros((len(slim), len(fat)), dtype=bool)
    for e in raw.get("edges", []):
        a, b = (str(v) for v in e)
        for v in (a, b):
            if v not in si and v not in fi:
                raise UnknownVertex(f"edge ({a}, {b}) mentions unknown vertex {v!r}")
        if a == b:
            raise SelfLoop(f"self-loop at {a!r}")
        if a in fi and b in fi:
            raise FatFatEdge(f"fat vertices {a!r} and {b!r} are adjacent")
        if a in si and b in si:
            adj[si[a], si[b]] = adj[si[b], si[a]] = True
        elif a in si:
            inc[si[a], fi[b]] = True
        else:
            inc[si[b], fi[a]] = True
    return HoffmanGraph.from_matrices(slim, fat, adj, inc)


def to_raw(h: HoffmanGraph) -> dict:
    return {"slim": list(h.slim_names), "fat": list(h.fat_names), "edges": [list(e) for e in h.edges()]}


def slim_graph(n: int, edges: Iterable[tuple[int, int]] = (), prefix: str = "v") -> HoffmanGraph:
    """Convenience constructor for a slim graph on ``v0 .. v{n-1}``."""
    names = [f"{prefix}{i}" for i in range(n)]
    return validate({"slim": names, "fat": [], "edges": [(names[a], names[b]) for a, b in edges]})


# ---------------------------------------------------------------------------
# subgraphs


def induced_subgraph(h: HoffmanGraph, slim: Iterable[str], fat: Iterable[str]) -> HoffmanGraph:
    """Induced subgraph on the given vertices, keeping ``h``'s vertex order."""
    slim, fat = set(slim), set(fat)
    for v in slim:
        h.slim_index(v)
    for v in fat:
        h.fat_index(v)
    si = [i for i, n in enumerate(h.slim_names) if n in slim]
    fi = [j for j, n in enumerate(h.fat_names) if n in fat]
    return HoffmanGraph.from_matrices(
        [h.slim_names[i] for i in si],
        [h.fat_names[j] for j in fi],
        h.slim_adj[np.ix_(si, si)],
        h.slim_fat[np.ix_(si, fi)],
    )


def induced_closure(h: HoffmanGraph, slim: Iterable[str]) -> HoffmanGraph:
    """The subgraph induced on ``S`` together with all fat neighbours of ``S``."""
    slim = list(slim)
    for v in slim:
        if v not in h.slim_names:
            raise UnknownVertex(f"{v!r} is not a slim vertex of the graph")
    idx = [h.slim_names.index(v) for v in slim]
    fat_mask = h.slim_fat[idx].any(axis=0) if idx else np.zeros(h.fat_count, dtype=bool)
    return induced_subgraph(h, slim, [h.fat_names[j] for j in np.flatnonzero(fat_mask)])


def fresh_fat_name(h: HoffmanGraph) -> str:
    used = set(h.slim_names) | set(h.fat_names)
    k = h.fat_count
    while f"f{k}" in used:
        k += 1
    return f"f{k}"


def attach_fat(h: HoffmanGraph, slim: Iterable[str], name: str | None = None) -> HoffmanGraph:
    """Return ``h`` plus one new fat vertex adjacent exactly to ``slim``."""
    slim = list(slim)
    if not slim:
        raise EmptyAttachment("a fat vertex needs at least one slim neighbour")
    col = np.zeros((h.slim_count, 1), dtype=bool)
    for v in slim:
        col[h.slim_index(v), 0] = True
    name = name or fresh_fat_name(h)
    return HoffmanGraph.from_matrices(
        h.slim_names, h.fat_names + (name,), h.slim_adj, np.hstack([h.slim_fat, col])
    )


def rename(h: HoffmanGraph, mapping: Mapping[str, str]) -> HoffmanGraph:
    return HoffmanGraph.from_matrices(
        [mapping.get(n, n) for n in h.slim_names],
        [mapping.get(n, n) for n in h.fat_names],
        h.slim_adj,
        h.slim_fat,
    )


def permute(h: HoffmanGraph, slim_order: Sequence[int], fat_order: Sequence[int]) -> HoffmanGraph:
    """Reorder vertices (names travel with their rows)."""
    so, fo = list(slim_order), list(fat_order)
    return HoffmanGraph.from_matrices(
        [h.slim_names[i] for i in so],
        [h.fat_names[j] for j in fo],
        h.slim_adj[np.ix_(so, so)],
        h.slim_fat[np.ix_(so, fo)],
    )


def disjoint_union(h1: HoffmanGraph, h2: HoffmanGraph) -> HoffmanGraph:
    s1, s2 = h1.slim_count, h2.slim_count
    adj = np.zeros((s1 + s2, s1 + s2), dtype=bool)
    adj[:s1, :s1] = h1.slim_adj
    adj[s1:, s1:] = h2.slim_adj
    inc = np.zeros((s1 + s2, h1.fat_count + h2.fat_count), dtype=bool)
    inc[:s1, : h1.fat_count] = h1.slim_fat
    inc[s1:, h1.fat_count :] = h2.slim_fat
    return HoffmanGraph.from_matrices(
        h1.slim_names + h2.slim_names, h1.fat_names + h2.fat_names, adj, inc
    )


# ---------------------------------------------------------------------------
# isomorphism


def _combined(h: HoffmanGraph) -> tuple[np.ndarray, list[int]]:
    s, f = h.slim_count, h.fat_count
    m = np.zeros((s + f, s + f), dtype=bool)
    m[:s, :s] = h.slim_adj
    m[:s, s:] = h.slim_fat
    m[s:, :s] = h.slim_fat.T
    return m, [0] * s + [1] * f


def _refined_colors(adj: np.ndarray, labels: list[int]) -> list[int]:
    """Colour refinement starting from (label, degree, fat-degree)."""
    n = len(labels)
    lab = np.array(labels, dtype=int)
    deg_s = adj[:, lab == 0].sum(axis=1) if n else np.zeros(0, int)
    deg_f = adj[:, lab == 1].sum(axis=1) if n else np.zeros(0, int)
    colors = [(labels[i], int(deg_s[i]), int(deg_f[i])) for i in range(n)]
    nbrs = [np.flatnonzero(adj[i]) for i in range(n)]
    ids = {c: k for k, c in enumerate(sorted(set(colors)))}
    current = [ids[c] for c in colors]
    while True:
        new = [(current[i], tuple(sorted(current[j] for j in nbrs[i]))) for i in range(n)]
        ids = {c: k for k, c in enumerate(sorted(set(new)))}
        if len(ids) == len(set(current)):
            return current
        current = [ids[c] for c in new]


def find_isomorphism(h1: HoffmanGraph, h2: HoffmanGraph) -> dict[str, str] | None:
    """A label-preserving isomorphism ``h1 -> h2`` as a name map, or ``None``."""
    if h1.slim_count != h2.slim_count or h1.fat_count != h2.fat_count:
        return None
    a1, l1 = _combined(h1)
    a2, l2 = _combined(h2)
    if a1.sum() != a2.sum():
        return None
    # refine both graphs jointly so colour ids are comparable
    n = len(l1)
    joint = np.zeros((2 * n, 2 * n), dtype=bool)
    joint[:n, :n], joint[n:, n:] = a1, a2
    colors = _refined_colors(joint, l1 + l2)
    c1, c2 = colors[:n], colors[n:]
    if sorted(c1) != sorted(c2):
        return None
    # most constrained first: small colour classes, then connectivity
    class_size = {c: c1.count(c) for c in c1}
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        def key(v):
            linked = sum(1 for u in order if a1[v, u])
            return (-linked, class_size[c1[v]], v)
        v = min(remaining, key=key)
        order.append(v)
        remaining.discard(v)
    cands = {v: [w for w in range(n) if c2[w] == c1[v]] for v in range(n)}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in cands[v]:
            if w in used:
                continue
            if all(a1[v, u] == a2[w, mapping[u]] for u in order[:k]):
                mapping[v] = w
                used.add(w)
                if extend(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    if not extend(0):
        return None
    names1 = h1.slim_names + h1.fat_names
    names2 = h2.slim_names + h2.fat_names
    return {names1[v]: names2[w] for v, w in mapping.items()}


def are_isomorphic(h1: HoffmanGraph, h2: HoffmanGraph) -> bool:
    return find_isomorphism(h1, h2) is not None


def is_isomorphism(h1: HoffmanGraph, h2: HoffmanGraph, mapping: Mapping[str, str]) -> bool:
    """Check that ``mapping`` is a label-preserving bijection preserving all edges."""
    if set(mapping) != set(h1.slim_names) | set(h1.fat_names):
        return False
    if sorted(mapping[x] for x in h1.slim_names) != sorted(h2.slim_names):
        return False
    if sorted(mapping[x] for x in h1.fat_names) != sorted(h2.fat_names):
        return False
    e1 = {frozenset((mapping[a], mapping[b])) for a, b in h1.edges()}
    e2 = {frozenset(e) for e in h2.edges()}
    return e1 == e2


# ---------------------------------------------------------------------------
# .hg text format


def parse_hg(text: str) -> HoffmanGraph:
    slim: list[str] = []
    fat: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        for a in args:
            if not NAME_RE.match(a):
                raise ParseError(f"line {lineno}: bad vertex name {a!r}")
        if kind in ("slim", "fat") and len(args) == 1:
            (slim if kind == "slim" else fat).append(args[0])
        elif kind == "edge" and len(args) == 2:
            edges.append((args[0], args[1]))
        else:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
    return validate({"slim": slim, "fat": fat, "edges": edges})


def to_hg(h: HoffmanGraph) -> str:
    lines = [f"slim {n}" for n in h.slim_names]
    lines += [f"fat {n}" for n in h.fat_names]
    lines += [f"edge {a} {b}" for a, b in sorted(tuple(sorted(e)) for e in h.edges())]
    return "\n".join(lines) + "\n"


def read_hg(path: str) -> HoffmanGraph:
    """Read a ``.hg`` file; ``"-"`` means standard input."""
    if path == "-":
        return parse_hg(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse_hg(fh.read())


def write_hg(h: HoffmanGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_hg(h))
