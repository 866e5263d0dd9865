"""Exhaustive small fat Hoffman graphs with smallest eigenvalue at least -3.

Slim skeletons come from the networkx graph atlas (all graphs on up to 7
vertices, one per isomorphism class).  Fat vertices are multisets of
nonempty slim neighbourhoods.  Two graphs on different skeletons are never
isomorphic, so deduplication happens per skeleton with the canonical code

    min over slim permutations p of (adjacency bits under p, sorted fat columns under p)

Sorting the columns is the minimum over all fat permutations, so this is
the full slim x fat permutation scan.  Only permutations that minimise the
adjacency part can reach the minimum, which keeps the scan short.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Iterator

import networkx as nx
import numpy as np

from .errors import BoundsTooLarge
from .graph import HoffmanGraph, are_isomorphic, induced_closure, to_hg
from .spectra import min_eig_at_least

FILTERS = ("fat", "indecomposable", "saturated")
DEFAULT_MAX = 5
HARD_CAP = 7


def thread_count() -> int:
    raw = os.environ.get("HOFFLAT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _skeletons(max_slim: int) -> list[nx.Graph]:
    return [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= max_slim]


def _adj_code(adj: np.ndarray, p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    return tuple(int(adj[p[i], p[j]]) for i in range(n) for j in range(i + 1, n))


def _best_perms(adj: np.ndarray) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Least adjacency code and every slim permutation attaining it."""
    best, perms = None, []
    for p in permutations(range(len(adj))):
        c = _adj_code(adj, p)
        if best is None or c < best:
            best, perms = c, [p]
        elif c == best:
            perms.append(p)
    return best, perms


def _passes(h: HoffmanGraph, filters: frozenset[str]) -> bool:
    if "fat" in filters and not h.is_fat:
        return False
    if "indecomposable" in filters:
        from .decomposition import is_indecomposable

        if not is_indecomposable(h):
            return False
    if "saturated" in filters:
        from .saturation import is_saturated

        if not is_saturated(h, 3):
            return False
    return True


def _skeleton_graphs(adj_list: list[list[int]], max_fat: int, filters: frozenset[str]) -> list[tuple]:
    adj0 = np.array(adj_list, dtype=bool).reshape(len(adj_list), len(adj_list))
    s = len(adj0)
    code, perms = _best_perms(adj0)
    # relabel so the skeleton itself is in canonical position
    p0 = perms[0]
    adj = adj0[np.ix_(p0, p0)]
    _, perms = _best_perms(adj)
    cols = [tuple(int(b) for b in format(k, f"0{s}b")) for k in range(1, 2**s)]
    names = [f"v{i}" for i in range(s)]
    out = {}
    for f in range(max_fat + 1):
        for multiset in combinations_with_replacement(cols, f):
            inc = np.array(multiset, dtype=bool).T.reshape(s, f)
            if "fat" in filters and not inc.any(axis=1).all():
                continue
            h = HoffmanGraph.from_matrices(names, [f"f{j}" for j in range(f)], adj, inc)
            if not min_eig_at_least(h, 3):
                continue
            key = min(tuple(sorted(tuple(c[q] for q in p) for c in multiset)) for p in perms)
            if key in out:
                continue
            if not _passes(h, filters):
                out[key] = None
                continue
            fats = [f"f{j}" for j in range(f)]
            canon = np.array(key, dtype=bool).T.reshape(s, f)
            out[key] = (s, f, code, key, HoffmanGraph.from_matrices(names, fats, adj, canon))
    return [v for v in out.values() if v is not None]


def enumerate_graphs(
    max_slim: int,
    max_fat: int,
    filters: Iterable[str] = (),
    allow_large: bool = False,
    threads: int | None = None,
) -> Iterator[HoffmanGraph]:
    """All isomorphism classes within the bounds that have ``lambda_min >= -3``.

    ``filters`` is any subset of ``{"fat", "indecomposable", "saturated"}``.
    Bounds above 5 need ``allow_large``; above 7 they are refused.  Output
    is ordered by slim count, fat count and canonical code.
    """
    filters = frozenset(filters)
    unknown = filters - set(FILTERS)
    if unknown:
        raise ValueError(f"unknown filter(s): {sorted(unknown)}")
    if max_slim > HARD_CAP or max_fat > HARD_CAP:
        raise BoundsTooLarge(f"bounds are capped at {HARD_CAP} x {HARD_CAP}")
    if (max_slim > DEFAULT_MAX or max_fat > DEFAULT_MAX) and not allow_large:
        raise BoundsTooLarge(f"bounds above {DEFAULT_MAX} need allow_large=True")
    if max_slim < 1 or max_fat < 0:
        return iter(())
    jobs = [nx.to_numpy_array(g, dtype=int).astype(int).tolist() for g in _skeletons(max_slim)]
    threads = threads or thread_count()
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_skeleton_graphs, jobs, [max_fat] * len(jobs), [filters] * len(jobs)))
    else:
        parts = [_skeleton_graphs(j, max_fat, filters) for j in jobs]
    rows = sorted((r for part in parts for r in part), key=lambda r: r[:4])
    return iter([r[4] for r in rows])


def dumps_stream(graphs: Iterable[HoffmanGraph]) -> str:
    """``.hg`` blocks separated by ``---`` lines."""
    return "---\n".join(to_hg(h) for h in graphs)


def parse_stream(text: str) -> list[HoffmanGraph]:
    from .graph import parse_hg

    blocks, cur = [], []
    for line in text.splitlines():
        if line.strip() == "---":
            blocks.append("\n".join(cur))
            cur = []
        else:
            cur.append(line)
    blocks.append("\n".join(cur))
    return [parse_hg(b) for b in blocks if any(l.strip() and not l.strip().startswith("#") for l in b.splitlines())]


# ---------------------------------------------------------------------------
# corpus verification


CHECKS = (
    "entry_bounds",
    "fat_isolation",
    "trichotomy",
    "minus_connected",
    "column_signs",
    "injectivity",
    "degree_bounds",
    "shape",
)


@dataclass
class CorpusReport:
    graphs: int = 0
    checked: dict[str, int] = field(default_factory=lambda: {c: 0 for c in CHECKS})
    skipped: dict[str, int] = field(default_factory=lambda: {c: 0 for c in CHECKS})
    classes: dict[str, int] = field(default_factory=dict)
    shapes: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "graphs": self.graphs,
            "ok": self.ok,
            "checked": self.checked,
            "skipped": self.skipped,
            "classes": dict(sorted(self.classes.items())),
            "shapes": dict(sorted(self.shapes.items())),
            "violations": self.violations,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def summary(self) -> str:
        lines = [f"graphs: {self.graphs}", f"violations: {len(self.violations)}"]
        for c in CHECKS:
            lines.append(f"  {c:16s} checked {self.checked[c]:5d}  skipped {self.skipped[c]:5d}")
        lines.append("classes: " + ", ".join(f"{k} x{v}" for k, v in sorted(self.classes.items())))
        lines.append("shapes: " + ", ".join(f"{k} x{v}" for k, v in sorted(self.shapes.items())))
        for v in self.violations:
            lines.append(f"VIOLATION {v['check']}: {v['detail']}")
        return "\n".join(lines)


def _a3tilde_subgraphs() -> list[HoffmanGraph]:
    from itertools import combinations

    from .families import family_a3tilde

    base = family_a3tilde()
    return [induced_closure(base, c) for k in range(1, 5) for c in combinations(base.slim_names, k)]


def verify_corpus(stream: Iterable[HoffmanGraph]) -> CorpusReport:
    """Check the structural properties on every graph, gating each on its hypotheses.

    Fat graphs with ``lambda_min >= -3`` get the entry bound and the
    isolation of vertices with ``t`` fat neighbours when ``lambda_min >= -t``;
    indecomposable ones get the trichotomy; saturated ones with an embedding
    in a standard lattice get the remaining checks.
    """
    from .decomposition import is_indecomposable, special_graphs
    from .dynkin import recognize_shape
    from .lattice import classify_with_embedding
    from .representation import is_injective, reduced_gram
    from .saturation import is_saturated

    report = CorpusReport()
    a3t_parts = None

    for h in stream:
        report.graphs += 1
        hg = to_hg(h)

        def fail(check: str, detail: str) -> None:
            report.violations.append({"check": check, "detail": detail, "graph": hg})

        base_ok = h.is_fat and min_eig_at_least(h, 3)
        if not base_ok:
            for c in CHECKS:
                report.skipped[c] += 1
            continue
        g = reduced_gram(h, 3).entries
        off = g - np.diag(np.diag(g))
        report.checked["entry_bounds"] += 1
        if np.any(np.abs(off) > 1):
            fail("entry_bounds", "reduced inner product outside {-1, 0, 1}")

        report.checked["fat_isolation"] += 1
        sg = special_graphs(h)
        full = sg.graph("all")
        deg = h.fat_degrees()
        for t in (1, 2, 3):
            if not min_eig_at_least(h, t):
                continue
            for i in np.flatnonzero(deg >= t):
                x = h.slim_names[i]
                if deg[i] > t or full.degree(x) != 0:
                    fail("fat_isolation", f"{x} has {deg[i]} fat neighbours but is not isolated at t = {t}")

        indec = is_indecomposable(h)
        if not indec:
            for c in CHECKS[2:]:
                report.skipped[c] += 1
            continue
        cls, rep = classify_with_embedding(h)
        report.checked["trichotomy"] += 1
        label = cls.kind if cls.kind in ("H3", "Unknown") else str(cls)
        report.classes[label] = report.classes.get(label, 0) + 1
        top = int(deg.max())
        if top >= 3:
            if cls.kind != "H3":
                fail("trichotomy", f"a slim vertex has {top} fat neighbours but the class is {cls}")
        elif top == 2:
            if cls.kind != "Standard":
                fail("trichotomy", f"some slim vertex has two fat neighbours but the class is {cls}")
        elif cls.kind not in ("A", "D", "E"):
            fail("trichotomy", f"every slim vertex has one fat neighbour but the class is {cls}")

        standard = rep is not None and rep.kind == "Standard" and cls.kind != "H3"
        saturated = h.slim_count <= 16 and bool(is_saturated(h, 3))
        if not (standard and saturated):
            for c in CHECKS[3:]:
                report.skipped[c] += 1
            continue

        minus = sg.graph("minus")
        report.checked["minus_connected"] += 1
        if not nx.is_connected(minus):
            fail("minus_connected", "the minus special graph is disconnected")

        report.checked["column_signs"] += 1
        mat = rep.matrix()
        for j in range(mat.shape[1]):
            col = mat[:, j]
            if col.any() and not (np.any(col == 1) and np.any(col == -1)):
                fail("column_signs", f"coordinate {j} is used with a single sign")

        report.checked["injectivity"] += 1
        if not is_injective(rep):
            if a3t_parts is None:
                a3t_parts = _a3tilde_subgraphs()
            if not any(are_isomorphic(h, p) for p in a3t_parts):
                fail("injectivity", "representation is not injective and the graph is not an exceptional one")

        shape = recognize_shape(minus) if nx.is_connected(minus) else None
        report.checked["degree_bounds"] += 1
        mdeg = dict(minus.degree())
        for x, d in mdeg.items():
            if d > 4:
                fail("degree_bounds", f"{x} has minus degree {d} > 4")
            elif d == 4 and (shape is None or (shape.kind, shape.index) != ("DTilde", 4)):
                fail("degree_bounds", f"{x} has minus degree 4 but the shape is {shape}")
            elif d == 3 and sum(1 for u in minus[x] if mdeg[u] == 1) < 2:
                fail("degree_bounds", f"{x} has minus degree 3 with fewer than two leaf neighbours")
            i = h.slim_index(x)
            if deg[i] == 2:
                for f in h.fat_neighbors(x):
                    shared = set(minus[x]) & set(h.slim_neighbors(f))
                    if len(shared) > 2:
                        fail("degree_bounds", f"{x} has {len(shared)} minus neighbours on {f}")

        report.checked["shape"] += 1
        name = str(shape) if shape is not None else "disconnected"
        report.shapes[name] = report.shapes.get(name, 0) + 1
        if shape is None or shape.kind not in ("A", "D", "ATilde", "DTilde"):
            fail("shape", f"minus special graph has shape {name}")
    return report
