"""Matrices of Laurent polynomials: determinants and gcds of maximal minors."""
from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Sequence

from .polys import CoeffRing, LaurentPoly, _dexact_div, _dmul, _dnorm, canonicalize, poly_gcd

__all__ = [
    "PolyMatrix",
    "MinorExplosionError",
    "det_polymatrix",
    "det_bareiss",
    "det_cofactor",
    "gcd_of_maximal_minors",
    "MAX_MINORS",
]

MAX_MINORS = 10**6


class MinorExplosionError(ValueError):
    pass


class PolyMatrix:
    """Dense row-major matrix with entries in R[t, t^-1]."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: CoeffRing, rows: int, cols: int, entries: Sequence[LaurentPoly]):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        for e in entries:
            if e.ring != ring:
                raise ValueError("all entries must share the matrix ring")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, ring: CoeffRing, rows: Sequence[Sequence], cols: int | None = None) -> PolyMatrix:
        """Build from nested lists of LaurentPoly, ints or display strings."""
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (cols or 0)
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for e in r:
                if isinstance(e, LaurentPoly):
                    flat.append(e)
                elif isinstance(e, str):
                    flat.append(LaurentPoly.parse(ring, e))
                else:
                    flat.append(LaurentPoly.constant(ring, e))
        return cls(ring, len(rows), ncols, flat)

    @classmethod
    def zeros(cls, ring: CoeffRing, rows: int, cols: int) -> PolyMatrix:
        z = LaurentPoly(ring)
        return cls(ring, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, ring: CoeffRing, n: int) -> PolyMatrix:
        one, z = LaurentPoly.constant(ring, 1), LaurentPoly(ring)
        return cls(ring, n, n, [one if i == j else z for i in range(n) for j in range(n)])

    def __getitem__(self, ij) -> LaurentPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[LaurentPoly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.ring, self.rows, self.cols, self.entries) == (other.ring, other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> PolyMatrix:
        return PolyMatrix(self.ring, self.rows, self.cols, [-a for a in self.entries])

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + (-other)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = LaurentPoly(self.ring)
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    if r[k] and other.entries[k * other.cols + j]:
                        acc = acc + r[k] * other.entries[k * other.cols + j]
                out.append(acc)
        return PolyMatrix(self.ring, self.rows, other.cols, out)

    def scale(self, c: LaurentPoly) -> PolyMatrix:
        return PolyMatrix(self.ring, self.rows, self.cols, [c * a for a in self.entries])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(self.ring, len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def delete_columns(self, cols: Sequence[int]) -> PolyMatrix:
        drop = set(cols)
        keep = [j for j in range(self.cols) if j not in drop]
        return self.submatrix(range(self.rows), keep)

    @staticmethod
    def block(ring: CoeffRing, blocks: Sequence[Sequence[PolyMatrix]], n: int) -> PolyMatrix:
        """Assemble from a grid of n x n blocks."""
        nbr = len(blocks)
        nbc = len(blocks[0]) if blocks else 0
        out = []
        for bi in range(nbr):
            for i in range(n):
                for bj in range(nbc):
                    out.extend(blocks[bi][bj].row(i))
        return PolyMatrix(ring, nbr * n, nbc * n, out)

    def __str__(self):
        cells = [[str(e) for e in self.row(i)] for i in range(self.rows)]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"PolyMatrix({self.ring!r}, {self.rows}x{self.cols})"


def _require_square(m: PolyMatrix):
    if m.rows != m.cols:
        raise ValueError(f"determinant of a non-square {m.rows}x{m.cols} matrix")


def _shifted_rows(m: PolyMatrix) -> tuple[list[list[list]], int]:
    """Rows as dense ordinary polynomials after multiplying row i by t^-(its lowest exponent)."""
    ring = m.ring
    total = 0
    dense = []
    for i in range(m.rows):
        row = m.row(i)
        nz = [e.val for e in row if e.coeffs]
        lo = min(nz) if nz else 0
        total += lo
        dense.append([[0] * (e.val - lo) + list(e.coeffs) if e.coeffs else [] for e in row])
    return dense, total


def det_bareiss(m: PolyMatrix) -> LaurentPoly:
    """Fraction-free (Bareiss) elimination over R[t].

    The pivot in each column is the nonzero entry of least degree; every
    division by the previous pivot is exact.
    """
    _require_square(m)
    ring = m.ring
    n = m.rows
    if n == 0:
        return LaurentPoly.constant(ring, 1)
    a, shift = _shifted_rows(m)
    sign = 1
    prev = [1]
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if a[i][k] and (piv is None or len(a[i][k]) < len(a[piv][k])):
                piv = i
        if piv is None:
            return LaurentPoly(ring)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                x = _dmul(rowi[j], akk, ring) if rowi[j] else []
                if aik and rowk[j]:
                    y = _dmul(aik, rowk[j], ring)
                    if x:
                        if len(x) < len(y):
                            x = x + [0] * (len(y) - len(x))
                        for idx, c in enumerate(y):
                            x[idx] -= c
                        x = _dnorm(x, ring)
                    else:
                        x = _dnorm([-c for c in y], ring)
                if x and prev != [1]:
                    q = _dexact_div(x, prev, ring)
                    if q is None:
                        raise ArithmeticError("inexact Bareiss division; ring is not an integral domain?")
                    x = q
                rowi[j] = x
            rowi[k] = []
        prev = akk
    d = a[n - 1][n - 1]
    if sign < 0:
        d = _dnorm([-c for c in d], ring)
    return LaurentPoly._raw(ring, d, shift)


def det_cofactor(m: PolyMatrix) -> LaurentPoly:
    """Laplace expansion along the first row."""
    _require_square(m)
    ring = m.ring
    n = m.rows
    if n == 0:
        return LaurentPoly.constant(ring, 1)
    if n == 1:
        return m.entries[0]
    total = LaurentPoly(ring)
    for j in range(n):
        e = m[0, j]
        if not e:
            continue
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = e * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_polymatrix(m: PolyMatrix) -> LaurentPoly:
    """Exact determinant; cofactor expansion below 5x5, Bareiss otherwise."""
    _require_square(m)
    if m.rows < 5:
        return det_cofactor(m)
    return det_bareiss(m)


def gcd_of_maximal_minors(m: PolyMatrix, minor_size: int) -> LaurentPoly:
    """Canonical gcd of det(m restricted to rows I) over all row sets I of size minor_size."""
    if m.cols != minor_size:
        raise ValueError(f"matrix has {m.cols} columns, expected {minor_size}")
    if m.rows < minor_size:
        raise ValueError(f"matrix has {m.rows} rows, fewer than {minor_size}")
    if m.rows == minor_size:
        return canonicalize(det_polymatrix(m))
    count = comb(m.rows, minor_size)
    if count > MAX_MINORS:
        raise MinorExplosionError(f"{count} minors of size {minor_size} exceed the limit {MAX_MINORS}")
    g = LaurentPoly(m.ring)
    cols = range(m.cols)
    for rows in combinations(range(m.rows), minor_size):
        d = det_polymatrix(m.submatrix(rows, cols))
        if d:
            g = poly_gcd(g, d)
            if g.is_unit():
                break
    return g
