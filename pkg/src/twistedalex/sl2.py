"""The finite group SL(2, F_p) with elements numbered lexicographically."""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .polys import is_prime

__all__ = ["SL2", "sl2_group", "has_common_eigenvector"]

# multiplication tables are built for groups up to this order (p <= 13)
TABLE_LIMIT = 2500


class SL2:
    """Elements are ints indexing the matrices (a, b, c, d), ad - bc = 1,
    sorted lexicographically by (a, b, c, d).
    """

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.elements: list[tuple[int, int, int, int]] = [
            (a, b, c, d) for a, b, c, d in product(range(p), repeat=4) if (a * d - b * c) % p == 1
        ]
        self.order = len(self.elements)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.identity = self.index[(1, 0, 0, 1)]
        self.inv = [self.index[(d, -b % p, -c % p, a)] for a, b, c, d in self.elements]
        self._table: list[list[int]] | None = None
        if self.order <= TABLE_LIMIT:
            self._table = self._build_table()
        self._classes: list[int] | None = None
        self._class_members: list[list[int]] | None = None
        self._to_min: dict[int, list[int]] = {}

    def _build_table(self) -> list[list[int]]:
        p = self.p
        e = np.array(self.elements, dtype=np.int64)
        a, b, c, d = (e[:, k] for k in range(4))
        pa = (np.outer(a, a) + np.outer(b, c)) % p
        pb = (np.outer(a, b) + np.outer(b, d)) % p
        pc = (np.outer(c, a) + np.outer(d, c)) % p
        pd = (np.outer(c, b) + np.outer(d, d)) % p
        code = ((pa * p + pb) * p + pc) * p + pd
        lookup = np.full(p**4, -1, dtype=np.int64)
        codes = ((a * p + b) * p + c) * p + d
        lookup[codes] = np.arange(self.order)
        return lookup[code].tolist()

    @property
    def table(self) -> list[list[int]] | None:
        return self._table

    def mul(self, x: int, y: int) -> int:
        if self._table is not None:
            return self._table[x][y]
        p = self.p
        a, b, c, d = self.elements[x]
        e, f, g, h = self.elements[y]
        return self.index[((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)]

    def matrix(self, x: int) -> tuple[tuple[int, int], tuple[int, int]]:
        a, b, c, d = self.elements[x]
        return ((a, b), (c, d))

    def from_matrix(self, m) -> int:
        p = self.p
        return self.index[(m[0][0] % p, m[0][1] % p, m[1][0] % p, m[1][1] % p)]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self.inv[g])

    def word(self, values, letters) -> int:
        """Evaluate a word of signed generator indices at the assigned values."""
        out = self.identity
        inv = self.inv
        for g in letters:
            out = self.mul(out, values[g - 1] if g > 0 else inv[values[-g - 1]])
        return out

    def _compute_classes(self):
        cls = [-1] * self.order
        members: list[list[int]] = []
        for x in range(self.order):
            if cls[x] >= 0:
                continue
            orbit = sorted({self.conj(g, x) for g in range(self.order)})
            for y in orbit:
                cls[y] = len(members)
            members.append(orbit)
        self._classes, self._class_members = cls, members

    def conjugacy_class(self, x: int) -> list[int]:
        """Sorted members of the conjugacy class of x."""
        if self._classes is None:
            self._compute_classes()
        return self._class_members[self._classes[x]]

    def class_count(self) -> int:
        if self._classes is None:
            self._compute_classes()
        return len(self._class_members)

    def conjugators_to_min(self, x: int) -> list[int]:
        """All g with g x g^-1 equal to the smallest element of x's class."""
        hit = self._to_min.get(x)
        if hit is None:
            target = self.conjugacy_class(x)[0]
            hit = [g for g in range(self.order) if self.conj(g, x) == target]
            self._to_min[x] = hit
        return hit

    def orbit_key(self, values) -> tuple[int, ...]:
        """Smallest image tuple among all simultaneous conjugates of ``values``."""
        best = None
        for g in self.conjugators_to_min(values[0]):
            gi = self.inv[g]
            key = tuple(self.mul(self.mul(g, v), gi) for v in values)
            if best is None or key < best:
                best = key
        return best

    def commute(self, x: int, y: int) -> bool:
        return self.mul(x, y) == self.mul(y, x)


@lru_cache(maxsize=8)
def sl2_group(p: int) -> SL2:
    return SL2(p)


# -- eigenvectors over F_{p^2} ----------------------------------------------------


def _quadratic_extension(p: int):
    """Multiplication on pairs (a, b) = a + b*s in F_{p^2}."""
    if p == 2:
        # s^2 = s + 1
        def mul(x, y):
            a, b = x
            c, d = y
            bd = b * d
            return ((a * c + bd) % 2, (a * d + b * c + bd) % 2)
        return mul
    nonres = next(n for n in range(2, p) if pow(n, (p - 1) // 2, p) == p - 1)

    def mul(x, y):
        a, b = x
        c, d = y
        return ((a * c + nonres * b * d) % p, (a * d + b * c) % p)

    return mul


def has_common_eigenvector(mats, p: int) -> bool:
    """True iff the 2x2 matrices over F_p share an eigenvector over F_{p^2}."""
    mul = _quadratic_extension(p)

    def sub(x, y):
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def scal(c, x):
        return (c * x[0] % p, c * x[1] % p)

    zero, one = (0, 0), (1, 0)
    lines = [(one, (a, b)) for a in range(p) for b in range(p)] + [(zero, one)]
    for v0, v1 in lines:
        for (a, b), (c, d) in mats:
            w0 = (scal(a, v0)[0] + scal(b, v1)[0], scal(a, v0)[1] + scal(b, v1)[1])
            w1 = (scal(c, v0)[0] + scal(d, v1)[0], scal(c, v0)[1] + scal(d, v1)[1])
            if sub(mul(w0, v1), mul(w1, v0)) != zero:
                break
        else:
            return True
    return False
