"""Eigenvalues of Hoffman graphs, clique expansion and the limit construction.

The eigenvalues of a Hoffman graph are those of ``B = A_s - C C^T`` where
``A_s`` is the slim adjacency matrix and ``C`` the slim--fat incidence.
Thresholds ``lambda_min >= -m`` are decided exactly (rational LDL^T of
``B + mI``); the floating value comes from a cyclic Jacobi iteration.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import (
    HypothesisViolated,
    NoFatVertex,
    NonPositiveCliqueSize,
    NoSlimVertex,
    UnknownFatVertex,
)
from .exact import is_psd
from .graph import HoffmanGraph

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def b_matrix(h: HoffmanGraph) -> np.ndarray:
    """Integer matrix ``A_s - C C^T``."""
    return h.slim_adj.astype(np.int64) - h.common_fat_counts()


# ---------------------------------------------------------------------------
# Jacobi eigenvalues


def _round_robin(n: int) -> list[list[tuple[int, int]]]:
    """Pairings for a parallel cyclic sweep: every pair occurs exactly once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a >= 0 and b >= 0:
                pairs.append((min(a, b), max(a, b)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues (ascending) of a real symmetric matrix by cyclic Jacobi.

    Each sweep visits every off-diagonal pair once, in round-robin order so
    that the disjoint rotations of a round are applied together.  Stops
    when the off-diagonal Frobenius norm drops below ``tol`` (relative to
    the matrix scale, floored at 1) or after ``max_sweeps`` sweeps.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    if n == 1:
        return a.diagonal().copy()
    scale = max(1.0, float(np.abs(a).max()))
    rounds = [(np.array([p for p, _ in r]), np.array([q for _, q in r])) for r in _round_robin(n)]
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, float((a * a).sum() - (a.diagonal() ** 2).sum())))
        if off < tol * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p].copy(), a[q].copy()
            a[p] = c[:, None] * rp - s[:, None] * rq
            a[q] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    return np.sort(a.diagonal())


def lambda_min(h: HoffmanGraph) -> float:
    if h.slim_count == 0:
        raise NoSlimVertex("the graph has no slim vertex")
    return float(jacobi_eigenvalues(b_matrix(h))[0])


def min_eig_at_least(h: HoffmanGraph, m: int) -> bool:
    """Exact decision of ``lambda_min(h) >= -m`` (PSD test of ``B + mI``)."""
    if h.slim_count == 0:
        return True
    return is_psd(b_matrix(h) + int(m) * np.eye(h.slim_count, dtype=np.int64))


# ---------------------------------------------------------------------------
# clique expansion and limit tables


def expand_fat_to_cliques(h: HoffmanGraph, fats: Sequence[tuple[str, int]]) -> HoffmanGraph:
    """Replace each listed fat vertex ``f`` by a slim ``n``-clique joined to ``N(f)``.

    Clique vertices are named ``<f>.k0 .. <f>.k{n-1}`` and appended after the
    existing slim vertices, in the order of ``fats``.
    """
    seen = set()
    for f, n in fats:
        if f not in h.fat_names or f in seen:
            raise UnknownFatVertex(f"{f!r} is not a (distinct) fat vertex of the graph")
        if int(n) < 1:
            raise NonPositiveCliqueSize(f"clique size for {f!r} must be >= 1, got {n}")
        seen.add(f)
    if not fats:
        return h
    s = h.slim_count
    new_names: list[str] = []
    blocks: list[tuple[int, int, int]] = []  # (fat index, start, size)
    used = set(h.slim_names) | set(h.fat_names)
    for f, n in fats:
        start = s + len(new_names)
        for i in range(int(n)):
            name = f"{f}.k{i}"
            while name in used:
                name += "_"
            used.add(name)
            new_names.append(name)
        blocks.append((h.fat_index(f), start, int(n)))
    total = s + len(new_names)
    adj = np.zeros((total, total), dtype=bool)
    adj[:s, :s] = h.slim_adj
    for j, start, n in blocks:
        nbrs = np.flatnonzero(h.slim_fat[:, j])
        blk = slice(start, start + n)
        adj[blk, blk] = True
        adj[nbrs, blk] = True
        adj[blk, nbrs] = True
    np.fill_diagonal(adj, False)
    removed = {j for j, _, _ in blocks}
    keep = [j for j in range(h.fat_count) if j not in removed]
    inc = np.zeros((total, len(keep)), dtype=bool)
    inc[:s] = h.slim_fat[:, keep]
    return HoffmanGraph.from_matrices(
        h.slim_names + tuple(new_names), [h.fat_names[j] for j in keep], adj, inc
    )


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    lambda_min_gamma_n: float
    gap: float

    def to_json(self) -> dict:
        return {"n": self.n, "lambda_min": _sig12(self.lambda_min_gamma_n), "gap": _sig12(self.gap)}


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def limit_table(h: HoffmanGraph, n_max: int) -> list[ConvergenceRow]:
    """``lambda_min`` of the slim graphs obtained by blowing every fat vertex up to an n-clique."""
    if h.fat_count == 0:
        raise NoFatVertex("limit tables need at least one fat vertex")
    target = lambda_min(h)
    rows = []
    for n in range(1, int(n_max) + 1):
        gamma = expand_fat_to_cliques(h, [(f, n) for f in h.fat_names])
        lam = lambda_min(gamma)
        rows.append(ConvergenceRow(n, lam, lam - target))
    return rows


def limit_table_json(rows: Sequence[ConvergenceRow]) -> str:
    return json.dumps([r.to_json() for r in rows])


# ---------------------------------------------------------------------------
# collapsing a clique back into a fat vertex


def orientation_matrix(k: int) -> np.ndarray:
    """``k x C(k,2)`` matrix with ``B B^T = kI - J`` (pairs ``i<j`` oriented ``i -> j``)."""
    pairs = list(combinations(range(k), 2))
    b = np.zeros((k, len(pairs)))
    for col, (i, j) in enumerate(pairs):
        b[i, col] = 1.0
        b[j, col] = -1.0
    return b


def collapse_clique_representation(p1, p2, p3, m: float, tol: float = 1e-9) -> np.ndarray:
    """Turn a norm-``m`` representation into one of the clique-collapsed graph.

    ``p1``, ``p2``, ``p3`` hold (as rows) the vectors of the vertex classes
    ``V1`` (everything else), ``V2`` (slim vertices complete to the clique)
    and ``V3`` (the slim clique).  The returned rows are, in order, ``V1``,
    ``V2`` and the new fat vertex; they represent the collapsed graph with
    norm ``m + eps2**2 * |V2|``.

    Rows of ``p1`` with norm 1 are fat vertices.  They receive no share of
    the extra norm so that they keep norm 1.
    """
    p3 = np.atleast_2d(np.asarray(p3, dtype=float))
    d = p3.shape[1]
    p1 = np.asarray(p1, dtype=float).reshape(-1, d)
    p2 = np.asarray(p2, dtype=float).reshape(-1, d)
    m = float(m)
    if not m > 1:
        raise HypothesisViolated(f"norm must exceed 1, got {m}")
    k1, k2, k3 = len(p1), len(p2), len(p3)
    if k3 == 0:
        raise HypothesisViolated("V3 must be non-empty")

    def close(x, y):
        return np.allclose(x, y, atol=tol, rtol=0)

    g11 = p1 @ p1.T
    fat_rows = np.array([close(g11[i, i], 1.0) for i in range(k1)], dtype=bool)
    if not all(close(g11[i, i], 1.0) or close(g11[i, i], m) for i in range(k1)):
        raise HypothesisViolated("V1 vectors must have norm 1 (fat) or m (slim)")
    if not close(np.diag(p2 @ p2.T), m) or not close(np.diag(p3 @ p3.T), m):
        raise HypothesisViolated("(i) V2 and V3 must be slim (norm m)")
    if not close(p1 @ p3.T, 0.0):
        raise HypothesisViolated("(ii) edges between V1 and V3")
    if not close(p2 @ p3.T, 1.0):
        raise HypothesisViolated("(iii) V2 not complete to V3")
    g33 = p3 @ p3.T
    if not close(g33 - np.diag(np.diag(g33)), 1.0 - np.eye(k3)):
        raise HypothesisViolated("(iv) V3 is not a clique")

    u = p3.sum(axis=0) / math.sqrt(k3 * (k3 + m - 1))
    eps1 = 1.0 - math.sqrt(k3 / (k3 + m - 1))
    eps2 = math.sqrt((m - 1) / (k3 + m - 1))
    b = orientation_matrix(k2)
    ncol = d + k1 + b.shape[1]
    out = np.zeros((k1 + k2 + 1, ncol))
    out[:k1, :d] = p1
    pad = np.where(fat_rows, 0.0, eps2 * math.sqrt(k2))
    out[np.arange(k1), d + np.arange(k1)] = pad
    out[k1 : k1 + k2, :d] = p2 + eps1 * u[None, :]
    out[k1 : k1 + k2, d + k1 :] = eps2 * b
    out[k1 + k2, :d] = u
    return out


def collapsed_norm(m: float, n_v2: int, n_v3: int) -> float:
    """``m + (m-1)|V2| / (|V3| + m - 1)``."""
    return m + (m - 1) * n_v2 / (n_v3 + m - 1)
