"""Constructors for the example graphs, each with its certificate data."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import BadParameters, UnsupportedT
from .graph import HoffmanGraph, validate
from .representation import E8_DOUBLED, STANDARD, VectorRep


def family_ht(t: int) -> HoffmanGraph:
    """One slim vertex ``x`` with ``t`` fat neighbours ``f1..ft``."""
    if t not in (1, 2, 3):
        raise UnsupportedT(f"t must be 1, 2 or 3, got {t}")
    fats = [f"f{i}" for i in range(1, t + 1)]
    return validate({"slim": ["x"], "fat": fats, "edges": [("x", f) for f in fats]})


def family_a3tilde() -> HoffmanGraph:
    """Slim ``0..3`` on Z/4, fat ``f0..f3``; ``f_j`` is adjacent to ``j`` and ``j+1``."""
    slim = [str(i) for i in range(4)]
    fat = [f"f{j}" for j in range(4)]
    edges = [("0", "2"), ("1", "3")]
    edges += [(str(i), f"f{j}") for i in range(4) for j in range(4) if i in (j, (j + 1) % 4)]
    return validate({"slim": slim, "fat": fat, "edges": edges})


def _check_an(ns: Sequence[int]) -> list[int]:
    ns = [int(x) for x in ns]
    if not ns:
        raise BadParameters("need at least one parameter")
    if any(x < 1 for x in ns):
        raise BadParameters(f"parameters must be positive, got {ns}")
    k = len(ns)
    bad = [i + 1 for i in range(1, k - 1) if ns[i] < 2]
    if bad:
        raise BadParameters(f"n_i >= 2 is required for 1 < i < k; violated at i = {bad}")
    return ns


def an_breakpoints(ns: Sequence[int]) -> list[int]:
    """Partial sums ``m_0 = 0, m_1, ..., m_k``."""
    m = [0]
    for x in ns:
        m.append(m[-1] + x)
    return m


def family_an(ns: Sequence[int]) -> tuple[HoffmanGraph, VectorRep]:
    """The graph whose minus special graph is the path ``A_{m_k + 1}``, with its explicit ``psi``.

    Slim ``v0..v{m_k}`` are cut into blocks ``[m_{j-1}, m_j]``.  Inside a
    block non-consecutive vertices are adjacent and all share ``f_j``;
    ``f0`` and ``f_{k+1}`` cap the two ends, and ``v_{m_j - 1} ~ v_{m_j + 1}``
    for ``1 <= j < k``.
    """
    ns = _check_an(ns)
    k = len(ns)
    m = an_breakpoints(ns)
    top = m[k]
    slim = [f"v{i}" for i in range(top + 1)]
    fat = [f"f{j}" for j in range(k + 2)]
    edges = []
    for j in range(1, k + 1):
        for i in range(m[j - 1], m[j] + 1):
            for i2 in range(i + 2, m[j] + 1):
                edges.append((slim[i], slim[i2]))
            edges.append((slim[i], fat[j]))
    for j in range(1, k):
        edges.append((slim[m[j] - 1], slim[m[j] + 1]))
    edges += [(slim[0], fat[0]), (slim[top], fat[k + 1])]
    h = validate({"slim": slim, "fat": fat, "edges": edges})

    ell = [m[j] - j for j in range(k + 1)]
    width = ell[k] + 1
    vectors = {}
    for i in range(top + 1):
        v = [0] * width
        if i in m:
            j = m.index(i)
            v[ell[j]] = (-1) ** j
        else:
            j = max(jj for jj in range(k) if m[jj] < i)
            v[i - j] += (-1) ** j
            v[i - j - 1] -= (-1) ** j
        vectors[slim[i]] = tuple(v)
    return h, VectorRep(STANDARD, vectors, 1, tuple(slim))


def identify_fat(h: HoffmanGraph, keep: str, drop: str) -> HoffmanGraph:
    """Merge fat vertex ``drop`` into ``keep`` without changing the reduced Gram.

    Slim vertices that start sharing a fat neighbour only through the merge
    are joined by an edge, which offsets the extra common fat neighbour.
    """
    a, b = h.fat_index(keep), h.fat_index(drop)
    na, nb = h.slim_fat[:, a], h.slim_fat[:, b]
    adj = np.array(h.slim_adj)
    for x in np.flatnonzero(na & ~nb):
        for y in np.flatnonzero(nb & ~na):
            if adj[x, y]:
                raise BadParameters(f"{h.slim_names[x]} and {h.slim_names[y]} are already adjacent")
            adj[x, y] = adj[y, x] = True
    inc = np.array(h.slim_fat)
    inc[:, a] = na | nb
    inc = np.delete(inc, b, axis=1)
    fats = [f for f in h.fat_names if f != drop]
    return HoffmanGraph.from_matrices(h.slim_names, fats, adj, inc)


def family_a5() -> tuple[HoffmanGraph, HoffmanGraph]:
    """Two non-isomorphic graphs sharing the special graphs of ``family_an((1, 2, 1))``."""
    base, _ = family_an((1, 2, 1))
    out = []
    for other in ("f0", "f1"):
        g = identify_fat(base, other, "f4")
        adj = np.array(g.slim_adj)
        for x, y in (("v0", "v2"), ("v2", "v4")):
            i, j = g.slim_index(x), g.slim_index(y)
            adj[i, j] = adj[j, i] = True
        out.append(HoffmanGraph.from_matrices(g.slim_names, g.fat_names, adj, g.slim_fat))
    return out[0], out[1]


def me8_roots() -> tuple[tuple[int, ...], list[tuple[tuple[int, ...], tuple[int, ...]]]]:
    """``alpha`` and the 28 pairs ``(beta_i, alpha - beta_i)`` in doubled coordinates."""
    from .lattice import e8_root_system

    roots = e8_root_system().roots
    alpha = roots[0]
    alpha_arr = np.array(alpha)
    level = [r for r in roots if int(np.dot(alpha_arr, r)) == 4]
    pairs = {}
    for b in level:
        c = tuple(int(x) for x in alpha_arr - np.array(b))
        key = min(b, c)
        pairs[key] = (key, max(b, c))
    return alpha, [pairs[k] for k in sorted(pairs)]


def family_me8() -> tuple[HoffmanGraph, VectorRep]:
    """57 roots (``alpha`` and its 56 neighbours at inner product 1) with 29 fat vertices."""
    alpha, pairs = me8_roots()
    names = ["a"] + [f"b{i}" for i in range(1, 29)] + [f"c{i}" for i in range(1, 29)]
    vecs = [alpha] + [p[0] for p in pairs] + [p[1] for p in pairs]
    fat = [f"f{i}" for i in range(29)]
    edges = [("a", "f0")]
    for i in range(1, 29):
        edges += [(f"b{i}", f"f{i}"), (f"c{i}", f"f{i}")]
    arr = np.array(vecs, dtype=np.int64)
    ip = arr @ arr.T
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            if ip[i, j] == 4:
                edges.append((names[i], names[j]))
    h = validate({"slim": names, "fat": fat, "edges": edges})
    return h, VectorRep(E8_DOUBLED, dict(zip(names, vecs)), 4, tuple(names))
