"""Reduced Gram matrices, representations and integral embedding searches.

A representation of norm ``m`` maps every vertex to a real vector with
slim norm ``m``, fat norm 1, inner product 1 on edges and 0 otherwise.  The
reduced representation keeps only slim vertices after projecting away the
fat directions; its Gram matrix is ``B + mI``.

For norm 3 and fat graphs, two integral models are searched:

* the standard lattice ``Z^N``: every vector is ``0``, ``±e_i`` or
  ``±e_i ± e_j``;
* the ``E8`` root system in doubled coordinates (all inner products are
  divided by ``4``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    EigenvalueTooSmall,
    NotARepresentation,
    UnsupportedDiagonal,
    UnsupportedOffDiagonal,
)
from .exact import ldlt
from .graph import HoffmanGraph
from .spectra import b_matrix, min_eig_at_least

STANDARD = "Standard"
E8_DOUBLED = "E8Doubled"


@dataclass(frozen=True, eq=False)
class ReducedGram:
    """Gram matrix ``B + mI`` of a reduced representation of norm ``m``."""

    m: int
    names: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        e = np.array(self.entries, dtype=np.int64, copy=True)
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "names", tuple(self.names))

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedGram):
            return NotImplemented
        return self.m == other.m and self.names == other.names and np.array_equal(self.entries, other.entries)

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class VectorRep:
    """Integer vectors for slim vertices; inner products are divided by ``scale``."""

    kind: str
    vectors: Mapping[str, tuple[int, ...]]
    scale: int = 1
    names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.names:
            object.__setattr__(self, "names", tuple(self.vectors))

    def matrix(self) -> np.ndarray:
        return np.array([self.vectors[n] for n in self.names], dtype=np.int64).reshape(len(self.names), -1)

    def gram(self) -> np.ndarray:
        """Scaled Gram matrix; exact because every entry is divisible by the scale."""
        v = self.matrix()
        g = v @ v.T
        if np.any(g % self.scale):
            raise ValueError("inner products are not multiples of the scale")
        return g // self.scale

    def to_json(self) -> dict:
        return {"kind": self.kind, "scale": self.scale, "vectors": {n: list(map(int, self.vectors[n])) for n in self.names}}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    @classmethod
    def from_json(cls, data: Mapping) -> "VectorRep":
        vecs = {str(k): tuple(int(x) for x in v) for k, v in data["vectors"].items()}
        return cls(str(data["kind"]), vecs, int(data["scale"]), tuple(vecs))


@dataclass(frozen=True)
class RealRep:
    """Real vectors (rows) for the listed vertices."""

    names: tuple[str, ...]
    vectors: np.ndarray

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T

    def __getitem__(self, name: str) -> np.ndarray:
        return self.vectors[self.names.index(name)]


# ---------------------------------------------------------------------------


def reduced_gram(h: HoffmanGraph, m: int) -> ReducedGram:
    return ReducedGram(int(m), h.slim_names, b_matrix(h) + int(m) * np.eye(h.slim_count, dtype=np.int64))


def representation_gram(h: HoffmanGraph, m: float) -> np.ndarray:
    """The Gram matrix a representation of norm ``m`` must have (slim rows first)."""
    s, f = h.slim_count, h.fat_count
    g = np.zeros((s + f, s + f))
    g[:s, :s] = h.slim_adj
    g[:s, s:] = h.slim_fat
    g[s:, :s] = h.slim_fat.T
    g[np.arange(s), np.arange(s)] = m
    g[np.arange(s, s + f), np.arange(s, s + f)] = 1.0
    return g


def gram_factor(gram) -> np.ndarray:
    """Rows ``psi`` with ``psi psi^T = gram`` from the exact pivoted LDL^T.

    Raises ``ValueError`` when ``gram`` is not PSD.
    """
    fac = ldlt(gram)
    if not fac.psd:
        raise ValueError("matrix is not positive semidefinite")
    n, r = len(fac.perm), fac.rank
    out = np.zeros((n, r))
    roots = [math.sqrt(float(d)) for d in fac.diag]
    for k in range(n):
        for j in range(min(k + 1, r)):
            out[fac.perm[k], j] = float(fac.lower[k][j]) * roots[j]
    return out


def build_representation(h: HoffmanGraph, m: int) -> RealRep:
    """A representation of norm ``m``: slim ``psi(s) (+) sum e_f``, fat ``e_f``."""
    if not min_eig_at_least(h, m):
        raise EigenvalueTooSmall(f"smallest eigenvalue is below -{m}")
    psi = gram_factor(reduced_gram(h, m).entries) if h.slim_count else np.zeros((0, 0))
    r, s, f = psi.shape[1], h.slim_count, h.fat_count
    vec = np.zeros((s + f, r + f))
    vec[:s, :r] = psi
    vec[:s, r:] = h.slim_fat
    vec[s:, r:] = np.eye(f)
    rep = RealRep(h.slim_names + h.fat_names, vec)
    err = np.abs(rep.gram() - representation_gram(h, m)).max(initial=0.0)
    assert err < 1e-9, err
    return rep


def reduce_representation(phi: RealRep, h: HoffmanGraph, m: int, tol: float = 1e-9) -> RealRep:
    """Project slim vectors onto the orthogonal complement of the fat vectors."""
    order = [phi.names.index(n) for n in h.slim_names + h.fat_names]
    vec = np.asarray(phi.vectors, dtype=float)[order]
    want = representation_gram(h, m)
    diff = np.abs(vec @ vec.T - want)
    if diff.size and diff.max() > tol:
        i, j = np.unravel_index(int(diff.argmax()), diff.shape)
        names = h.slim_names + h.fat_names
        raise NotARepresentation(
            f"Gram entry ({names[i]}, {names[j]}) is {float((vec @ vec.T)[i, j]):.6g}, expected {want[i, j]:g}"
        )
    s = h.slim_count
    slim, fat = vec[:s], vec[s:]
    if len(fat) == 0:
        psi = slim.copy()
    elif _is_coordinate_frame(fat):
        # fat vectors are distinct unit coordinate vectors: just drop those axes
        psi = slim.copy()
        psi[:, np.argmax(np.abs(fat), axis=1)] = 0.0
    else:
        q, _ = np.linalg.qr(fat.T)
        psi = slim - (slim @ q) @ q.T
    out = RealRep(h.slim_names, psi)
    target = reduced_gram(h, m).entries
    if s and np.abs(out.gram() - target).max() > tol:
        raise NotARepresentation("projected Gram does not match the reduced Gram")
    return out


def _is_coordinate_frame(fat: np.ndarray) -> bool:
    nz = fat != 0
    if not np.all(nz.sum(axis=1) == 1):
        return False
    cols = np.argmax(nz, axis=1)
    return len(set(cols.tolist())) == len(cols) and bool(np.all(np.abs(fat[nz]) == 1.0))


# ---------------------------------------------------------------------------
# embedding searches


def _special_degrees(g: np.ndarray) -> np.ndarray:
    off = g.copy()
    np.fill_diagonal(off, 0)
    return (off != 0).sum(axis=1)


def search_order(g: np.ndarray) -> list[int]:
    """Vertices by descending special-graph degree, preferring ones linked to earlier picks."""
    n = len(g)
    deg = _special_degrees(g)
    order: list[int] = []
    links = np.zeros(n, dtype=int)
    left = set(range(n))
    while left:
        v = min(left, key=lambda i: (-links[i], -deg[i], i))
        order.append(v)
        left.discard(v)
        links += (g[v] != 0).astype(int)
    return order


def _as_gram(g) -> tuple[tuple[str, ...], np.ndarray]:
    if isinstance(g, ReducedGram):
        return g.names, np.asarray(g.entries, dtype=np.int64)
    a = np.asarray(g, dtype=np.int64)
    return tuple(f"v{i}" for i in range(len(a))), a


def find_standard_embedding(g) -> VectorRep | None:
    """Embed a norm-3 reduced Gram of a fat graph into ``Z^N``, ``N = 2n``.

    Returns ``None`` when no embedding exists (after exhausting the search).
    """
    names, a = _as_gram(g)
    n = len(a)
    diag = np.diag(a)
    if np.any((diag < 0) | (diag > 2)):
        raise UnsupportedDiagonal(f"diagonal entries must lie in {{0,1,2}}, got {sorted(set(diag.tolist()))}")
    off = a - np.diag(diag)
    if np.any(np.abs(off) > 1):
        raise UnsupportedOffDiagonal("off-diagonal entries must lie in {-1,0,1}")
    if n == 0:
        return VectorRep(STANDARD, {}, 1, ())
    if not ldlt(a).psd:
        return None
    order = search_order(a)
    dim = 2 * n
    placed: dict[int, tuple[tuple[int, int], ...]] = {}

    def dot(u, w) -> int:
        du = dict(u)
        return sum(s * du.get(i, 0) for i, s in w)

    def candidates(v: int, used: int):
        norm = int(a[v, v])
        if norm == 0:
            yield ()
            return
        anchor = next((w for w in order if w in placed and a[v, w] != 0), None)
        if norm == 1:
            coords = range(used) if anchor is None else [i for i, _ in placed[anchor]]
            for i in sorted(coords):
                yield ((i, 1),)
                yield ((i, -1),)
            if anchor is None and used < dim:
                yield ((used, 1),)
            return
        pairs: list[tuple[tuple[int, int], ...]] = []
        firsts = range(used) if anchor is None else sorted(i for i, _ in placed[anchor])
        for i in firsts:
            for j in range(used):
                if j == i:
                    continue
                lo, hi = min(i, j), max(i, j)
                for si in (1, -1):
                    for sj in (1, -1):
                        pairs.append(((lo, si if lo == i else sj), (hi, sj if lo == i else si)))
            if used < dim:
                pairs.append(((i, 1), (used, 1)))
                pairs.append(((i, -1), (used, 1)))
        for c in sorted(set(pairs)):
            yield c
        if anchor is None and used + 1 < dim:
            yield ((used, 1), (used + 1, 1))

    def extend(k: int, used: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for cand in candidates(v, used):
            if all(dot(cand, placed[w]) == a[v, w] for w in placed):
                placed[v] = cand
                top = max((i for i, _ in cand), default=-1) + 1
                if extend(k + 1, max(used, top)):
                    return True
                del placed[v]
        return False

    if not extend(0, 0):
        return None
    width = max((i for vec in placed.values() for i, _ in vec), default=-1) + 1
    vectors = {}
    for v in range(n):
        row = [0] * width
        for i, s in placed[v]:
            row[i] = s
        vectors[names[v]] = tuple(row)
    return VectorRep(STANDARD, vectors, 1, names)


def _orbit_representatives(roots: np.ndarray, ip: np.ndarray, first: int) -> dict[int, int]:
    """Least root for each inner product value with ``roots[first]``.

    The stabiliser of a root in W(E8) is transitive on each such level set.
    """
    reps: dict[int, int] = {}
    for r in range(len(roots)):
        reps.setdefault(int(ip[first, r]), r)
    return reps


def find_e8_embedding(g) -> VectorRep | None:
    """Embed a reduced Gram with constant diagonal 2 into the E8 root system."""
    from .lattice import e8_inner_products, e8_root_system

    names, a = _as_gram(g)
    n = len(a)
    if np.any(np.diag(a) != 2):
        raise UnsupportedDiagonal("every diagonal entry must equal 2")
    if n == 0:
        return VectorRep(E8_DOUBLED, {}, 4, ())
    fac = ldlt(a)
    if not fac.psd or fac.rank > 8:
        return None
    roots = np.array(e8_root_system().roots, dtype=np.int64)
    ip = e8_inner_products()
    want = 4 * a
    order = search_order(a)
    reps = _orbit_representatives(roots, ip, 0)
    assign: dict[int, int] = {}

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        if k == 0:
            cand = [0]
        elif k == 1:
            w = order[0]
            r = reps.get(int(want[v, w]))
            cand = [] if r is None else [r]
        else:
            mask = np.ones(len(roots), dtype=bool)
            for w, rw in assign.items():
                mask &= ip[rw] == want[v, w]
            cand = np.flatnonzero(mask).tolist()
        for r in cand:
            assign[v] = r
            if extend(k + 1):
                return True
            del assign[v]
        return False

    if not extend(0):
        return None
    return VectorRep(E8_DOUBLED, {names[v]: tuple(int(x) for x in roots[assign[v]]) for v in range(n)}, 4, names)


def is_injective(rep: VectorRep) -> bool:
    vs = [rep.vectors[n] for n in rep.names]
    return len(set(vs)) == len(vs)
