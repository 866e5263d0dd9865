"""Lattice invariants and the classification of ``Lambda^red(H, 3)``.

Invariants are computed exactly from embedded integer generators: a basis
by integer row reduction, the discriminant as the determinant of the basis
Gram matrix, and the minimal norm by Fincke--Pohst enumeration.

Invariant table used for recognition::

    Z^n    rank n  disc 1    min 1
    A_n    rank n  disc n+1  min 2
    D_n    rank n  disc 4    min 2   (n >= 4)
    E6/7/8 rank    disc 3/2/1, min 2
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import EigenvalueTooSmall, EmptyRepresentation, NotFat, NotIndecomposable
from .exact import det_bareiss, ldlt
from .graph import HoffmanGraph
from .representation import (
    VectorRep,
    find_e8_embedding,
    find_standard_embedding,
    reduced_gram,
)
from .spectra import min_eig_at_least

# ---------------------------------------------------------------------------
# E8


@dataclass(frozen=True)
class E8RootSystem:
    """The 240 roots of E8 in doubled coordinates (doubled norm 8)."""

    roots: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.roots)


@lru_cache(maxsize=None)
def e8_root_system() -> E8RootSystem:
    roots = set()
    for i in range(8):
        for j in range(i + 1, 8):
            for si, sj in product((2, -2), repeat=2):
                v = [0] * 8
                v[i], v[j] = si, sj
                roots.add(tuple(v))
    for signs in product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.add(signs)
    return E8RootSystem(tuple(sorted(roots)))


@lru_cache(maxsize=None)
def e8_inner_products() -> np.ndarray:
    """Doubled inner products (``4 x`` the real ones) between all roots."""
    r = np.array(e8_root_system().roots, dtype=np.int64)
    ip = r @ r.T
    ip.flags.writeable = False
    return ip


# ---------------------------------------------------------------------------
# bases and determinants


def integer_row_basis(gens: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the Z-span of integer row vectors (echelon form via gcd steps)."""
    rows = [list(map(int, r)) for r in gens if any(r)]
    if not rows:
        return []
    ncol = len(rows[0])
    top = 0
    for col in range(ncol):
        while True:
            live = [i for i in range(top, len(rows)) if rows[i][col] != 0]
            if not live:
                break
            piv = min(live, key=lambda i: (abs(rows[i][col]), i))
            rows[top], rows[piv] = rows[piv], rows[top]
            done = True
            for i in range(top + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // rows[top][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
                    if rows[i][col]:
                        done = False
            if done:
                if rows[top][col] < 0:
                    rows[top] = [-a for a in rows[top]]
                top += 1
                break
        rows = rows[:top] + [r for r in rows[top:] if any(r)]
        if top == len(rows):
            break
    return rows[:top]


# ---------------------------------------------------------------------------
# shortest vectors


def _int_range(center: Fraction, radius_sq: Fraction) -> range:
    """Integers ``x`` with ``(x - center)**2 <= radius_sq``."""
    if radius_sq < 0:
        return range(0)
    r = math.sqrt(float(radius_sq))
    lo = math.floor(float(center) - r) - 1
    hi = math.ceil(float(center) + r) + 1
    xs = [x for x in range(lo, hi + 1) if (x - center) ** 2 <= radius_sq]
    return range(xs[0], xs[-1] + 1) if xs else range(0)


def shortest_vector_norm(gram, bound: Fraction | None = None) -> Fraction | None:
    """Minimal norm of a nonzero vector of the lattice with positive definite ``gram``.

    Fincke--Pohst enumeration over the exact LDL^T; the search radius starts
    at the smallest diagonal entry (or ``bound``) and shrinks whenever a
    shorter vector turns up.
    """
    g = [[Fraction(x) for x in row] for row in gram]
    n = len(g)
    if n == 0:
        return None
    fac = ldlt(g)
    if not fac.psd or fac.rank < n:
        raise ValueError("Gram matrix must be positive definite")
    # coordinates are taken in pivot order; a permutation is a change of basis
    L, d = fac.lower, fac.diag
    best = min(g[i][i] for i in range(n)) if bound is None else Fraction(bound)
    x = [0] * n

    def enum(i: int, partial: Fraction) -> None:
        nonlocal best
        c = -sum((L[j][i] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _int_range(c, (best - partial) / d[i]):
            x[i] = xi
            p = partial + d[i] * (xi - c) ** 2
            if p > best:
                continue
            if i > 0:
                enum(i - 1, p)
            elif p < best and any(x):
                best = p
        x[i] = 0

    enum(n - 1, Fraction(0))
    return best


# ---------------------------------------------------------------------------
# invariants and classification


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    discriminant: Fraction | int
    min_norm: Fraction | int | None

    def __iter__(self):
        return iter((self.rank, self.discriminant, self.min_norm))


def _plain(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def gram_invariants(gram) -> LatticeInvariants:
    """Invariants of the lattice with (positive definite) basis Gram ``gram``."""
    g = [[Fraction(v) for v in row] for row in gram]
    rank = len(g)
    if rank == 0:
        return LatticeInvariants(0, 1, None)
    den = math.lcm(*(x.denominator for row in g for x in row))
    disc = Fraction(det_bareiss([[int(x * den) for x in row] for row in g]), den**rank)
    return LatticeInvariants(rank, _plain(disc), _plain(shortest_vector_norm(g)))


def lattice_invariants(rep: VectorRep) -> LatticeInvariants:
    """Rank, discriminant and minimal norm of the lattice spanned by ``rep``."""
    if not rep.names:
        raise EmptyRepresentation("representation has no vectors")
    basis = integer_row_basis([rep.vectors[n] for n in rep.names])
    if not basis:
        return LatticeInvariants(0, 1, None)
    b = np.array(basis, dtype=object)
    gram = [[Fraction(int(x), rep.scale) for x in row] for row in (b @ b.T).tolist()]
    return gram_invariants(gram)


def dual_gram(gram) -> list[list[Fraction]]:
    from .exact import inverse

    return inverse(gram)


@dataclass(frozen=True)
class LatticeClass:
    kind: str  # Standard | A | D | E | H3 | Unknown
    n: int | None
    rank: int
    discriminant: int | Fraction
    min_norm: int | Fraction | None

    def to_json(self) -> dict:
        def enc(x):
            return str(x) if isinstance(x, Fraction) else x

        return {
            "kind": self.kind,
            "n": self.n,
            "rank": self.rank,
            "discriminant": enc(self.discriminant),
            "min_norm": enc(self.min_norm),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self) -> str:
        if self.kind == "H3":
            return "H(3) (single slim vertex with three fat neighbours)"
        if self.kind == "Standard":
            return f"Z^{self.n}"
        if self.kind in ("A", "D", "E"):
            return f"{self.kind}{self.n}"
        return f"Unknown(rank={self.rank}, disc={self.discriminant}, min={self.min_norm})"


def recognize(inv: LatticeInvariants, e8: bool = False) -> LatticeClass:
    """Name a lattice from its invariants (irreducible cases only)."""
    rank, disc, mn = inv
    if mn == 1 and disc == 1:
        return LatticeClass("Standard", rank, rank, disc, mn)
    if mn == 2:
        if e8 and (rank, disc) in ((6, 3), (7, 2), (8, 1)):
            return LatticeClass("E", rank, rank, disc, mn)
        if disc == rank + 1:
            return LatticeClass("A", rank, rank, disc, mn)
        if disc == 4 and rank >= 4:
            return LatticeClass("D", rank, rank, disc, mn)
    return LatticeClass("Unknown", None, rank, disc, mn)


def classify_with_embedding(h: HoffmanGraph) -> tuple[LatticeClass, VectorRep | None]:
    """Classify ``Lambda^red(h, 3)`` and return the embedding used (if any)."""
    from .decomposition import indecomposable_components
    from .families import family_ht
    from .graph import are_isomorphic

    if not h.is_fat:
        raise NotFat("every slim vertex needs a fat neighbour")
    if not min_eig_at_least(h, 3):
        raise EigenvalueTooSmall("smallest eigenvalue is below -3")
    if len(indecomposable_components(h)) != 1:
        raise NotIndecomposable("the special graph is disconnected")
    if np.any(h.fat_degrees() >= 3):
        if are_isomorphic(h, family_ht(3)):
            return LatticeClass("H3", 0, 0, 1, None), VectorRep("Standard", {h.slim_names[0]: ()}, 1)
        return LatticeClass("Unknown", None, 0, 1, None), None
    g = reduced_gram(h, 3)
    rep = find_standard_embedding(g)
    if rep is not None:
        return recognize(lattice_invariants(rep)), rep
    if np.all(np.diag(g.entries) == 2):
        rep = find_e8_embedding(g)
        if rep is not None:
            return recognize(lattice_invariants(rep), e8=True), rep
    return LatticeClass("Unknown", None, 0, 0, None), None


def classify_reduced_lattice(h: HoffmanGraph) -> LatticeClass:
    return classify_with_embedding(h)[0]
