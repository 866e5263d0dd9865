"""Exact rational linear algebra on small integer/rational matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np


def _to_fraction_rows(m) -> list[list[Fraction]]:
    return [[Fraction(int(x)) if not isinstance(x, Fraction) else x for x in row] for row in np.asarray(m, dtype=object).tolist()]


@dataclass(frozen=True)
class LDLT:
    """Pivoted factorisation ``A[perm][:, perm] = L diag(d) L^T``.

    Only the first ``rank`` pivots are meaningful; the trailing block was
    found to be identically zero (or the matrix is not PSD, see ``psd``).
    """

    psd: bool
    perm: tuple[int, ...]
    lower: tuple[tuple[Fraction, ...], ...]
    diag: tuple[Fraction, ...]
    rank: int


def ldlt(a: Sequence[Sequence]) -> LDLT:
    """Rational LDL^T with symmetric (largest-diagonal) pivoting.

    Stops early with ``psd=False`` as soon as a negative pivot, or a zero
    pivot with a non-zero residual row, shows ``a`` is not positive
    semidefinite.  Input entries may be ints or Fractions.
    """
    work = _to_fraction_rows(a)
    n = len(work)
    perm = list(range(n))
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag: list[Fraction] = []
    for k in range(n):
        p = max(range(k, n), key=lambda i: (work[i][i], -i))
        piv = work[p][p]
        if piv < 0:
            return LDLT(False, tuple(perm), tuple(map(tuple, lower)), tuple(diag), k)
        if p != k:
            work[k], work[p] = work[p], work[k]
            for row in work:
                row[k], row[p] = row[p], row[k]
            lower[k], lower[p] = lower[p], lower[k]
            perm[k], perm[p] = perm[p], perm[k]
        if piv == 0:
            # every remaining diagonal entry is <= 0, hence 0: PSD iff block vanishes
            ok = all(work[i][j] == 0 for i in range(k, n) for j in range(k, n))
            return LDLT(ok, tuple(perm), tuple(map(tuple, lower)), tuple(diag), k)
        lower[k][k] = Fraction(1)
        diag.append(piv)
        col = [work[i][k] / piv for i in range(k + 1, n)]
        for off, i in enumerate(range(k + 1, n)):
            lower[i][k] = col[off]
            wik = work[i][k]
            if wik == 0:
                continue
            ri = work[i]
            rk = work[k]
            c = col[off]
            for j in range(k + 1, i + 1):
                ri[j] -= c * rk[j]
                if j != i:
                    work[j][i] = ri[j]
    return LDLT(True, tuple(perm), tuple(map(tuple, lower)), tuple(diag), n)


def is_psd(a) -> bool:
    return ldlt(a).psd


def det_bareiss(a) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    m = [[int(x) for x in row] for row in np.asarray(a, dtype=object).tolist()]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a) -> list[list[Fraction]]:
    """Exact inverse by Gauss--Jordan; raises ``ZeroDivisionError`` if singular."""
    m = _to_fraction_rows(a)
    n = len(m)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for k in range(n):
        p = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        aug[k], aug[p] = aug[p], aug[k]
        pv = aug[k][k]
        aug[k] = [x / pv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [row[n:] for row in aug]
