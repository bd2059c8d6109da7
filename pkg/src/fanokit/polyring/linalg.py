"""Exact rank and linear solving over Q and F_p.

Over Q, rows are scaled to integers and reduced by fraction-free (Bareiss)
elimination.  Over F_p the reduction is ordinary Gaussian elimination on
``int64`` numpy arrays, which is exact while ``p < 2**31`` (products stay below
``2**62``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fields import (
    DEFAULT_PRIME,
    QQ,
    GF,
    PrimeField,
    PrimeFieldElement,
    RationalField,
    lcm_of_denominators,
)

_NUMPY_PRIME_LIMIT = 1 << 31


@dataclass(frozen=True)
class Matrix:
    """A dense matrix whose raw entries live in ``field``."""

    rows: tuple
    ncols: int
    field: RationalField | PrimeField

    @property
    def shape(self):
        return (len(self.rows), self.ncols)

    def to_lists(self):
        return [list(r) for r in self.rows]


def _infer_field(rows):
    kind = None
    for row in rows:
        for x in row:
            if isinstance(x, PrimeFieldElement):
                k = ("p", x.p)
            elif isinstance(x, (int, Fraction)) and not isinstance(x, bool):
                k = ("q", 0)
            else:
                raise TypeError(f"unsupported scalar {x!r}")
            if kind is None:
                kind = k
            elif kind != k:
                raise TypeError("matrix mixes scalar kinds")
    if kind is None or kind[0] == "q":
        return QQ
    return GF(kind[1])


def rank(M) -> int:
    """Exact rank of a ``Matrix`` or of a nested list of scalars.

    A nested list may hold ints/Fractions (rationals) or ``PrimeFieldElement``
    values of a single modulus; mixing kinds raises ``TypeError``.
    """
    if isinstance(M, Matrix):
        rows, field = [list(r) for r in M.rows], M.field
    else:
        rows = [list(r) for r in M]
        field = _infer_field(rows)
        if isinstance(field, PrimeField):
            rows = [[int(x) for x in r] for r in rows]
    if not rows or not rows[0]:
        return 0
    if isinstance(field, PrimeField):
        return rank_mod_p(rows, field.p)
    return rank_rational(rows)


def rank_rational(rows) -> int:
    """Rank over Q.

    A mod-p rank is a lower bound for the rational rank of an integer matrix, so
    a full rank mod a large prime settles the question without big integers.
    """
    int_rows = _integer_rows(rows)
    if not int_rows or not int_rows[0]:
        return 0
    full = min(len(int_rows), len(int_rows[0]))
    if rank_mod_p(int_rows, DEFAULT_PRIME) == full:
        return full
    return bareiss_rank(int_rows)


def _integer_rows(rows):
    out = []
    for row in rows:
        scale = lcm_of_denominators(row)
        out.append([int(Fraction(x) * scale) for x in row])
    return out


def bareiss_rank(rows) -> int:
    """Fraction-free elimination on an integer matrix; returns the rank."""
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        pivot_row = a[r]
        p = pivot_row[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * pivot_row[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = p * row[j] // prev
            row[c] = 0
        prev = p
        r += 1
    return r


def rank_mod_p(rows, p: int) -> int:
    if not rows or not rows[0]:
        return 0
    if p >= _NUMPY_PRIME_LIMIT:
        return _rank_mod_p_python([[x % p for x in r] for r in rows], p)
    a = np.array([[int(x) % p for x in r] for r in rows], dtype=np.int64)
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        hit = np.flatnonzero(below)
        if hit.size:
            idx = r + 1 + hit
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], a[r, c:])) % p
        r += 1
    return r


def _rank_mod_p_python(a, p):
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(r + 1, nrows):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    return r


def solve_rational(A, b):
    """Solve the square nonsingular system ``A x = b`` exactly over Q."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(A, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]
