"""Twisted Alexander polynomials of presentations with a linear representation.

For a presentation < x_1..x_u | r_1..r_v >, an abelianization
alpha: x_i -> t^(w_i) and a representation rho into GL(n, R), the map
Phi = rho (x) alpha sends the group ring Z[F_u] to n x n matrices over
R[t, t^-1].  The Alexander matrix has (i, j) block Phi(d r_i / d x_j).
Dropping block column j and taking the gcd of the maximal minors gives
the numerator; the denominator is det Phi(x_j - 1).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Sequence

from .group_ring import GroupRingElem, fox_derivative
from .polymatrix import PolyMatrix, det_polymatrix, gcd_of_maximal_minors
from .polys import CoeffRing, LaurentPoly, canonicalize, exact_quotient, poly_gcd
from .presentations import AbelianizationMap, Presentation, load_presentation, validate_abelianization

__all__ = [
    "Representation",
    "RepresentationError",
    "NoInvertibleColumn",
    "TwistedAlexPoly",
    "phi_block",
    "alexander_matrix",
    "choose_column",
    "twisted_alexander",
    "classical_alexander",
    "trivial_representation",
    "parse_representation",
    "load_representation",
    "format_representation",
]

Matrix = tuple[tuple, ...]


class RepresentationError(ValueError):
    pass


class NoInvertibleColumn(ValueError):
    """det Phi(x_j - 1) vanishes for every generator, so Delta is undefined."""


# -- small scalar matrices -------------------------------------------------


def mat_mul(a: Matrix, b: Matrix, ring: CoeffRing) -> Matrix:
    n = len(a)
    m = len(b[0])
    return tuple(
        tuple(ring(sum(a[i][k] * b[k][j] for k in range(len(b)))) for j in range(m)) for i in range(n)
    )


def mat_identity(n: int, ring: CoeffRing) -> Matrix:
    return tuple(tuple(ring(1 if i == j else 0) for j in range(n)) for i in range(n))


def mat_det(a: Matrix, ring: CoeffRing):
    n = len(a)
    if n == 1:
        return ring(a[0][0])
    if n == 2:
        return ring(a[0][0] * a[1][1] - a[0][1] * a[1][0])
    return sum(
        (-1) ** j * a[0][j] * mat_det(tuple(r[:j] + r[j + 1:] for r in a[1:]), ring) for j in range(n)
    ) if ring.p is None else ring(
        sum((-1) ** j * a[0][j] * mat_det(tuple(r[:j] + r[j + 1:] for r in a[1:]), ring) for j in range(n))
    )


def mat_inv(a: Matrix, ring: CoeffRing) -> Matrix:
    """Inverse by Gauss-Jordan; raises RepresentationError if not invertible over the ring."""
    n = len(a)
    if ring.p is not None:
        p = ring.p
        m = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise RepresentationError("matrix is singular")
            m[c], m[piv] = m[piv], m[c]
            inv = pow(m[c][c], -1, p)
            m[c] = [x * inv % p for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [(x - f * y) % p for x, y in zip(m[r], m[c])]
        return tuple(tuple(row[n:]) for row in m)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise RepresentationError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    try:
        return tuple(tuple(ring(x) for x in row[n:]) for row in m)
    except ValueError:
        raise RepresentationError("matrix is not invertible over the integers") from None


class Representation:
    """Images of the generators as invertible n x n matrices over a ring.

    Relators are checked by :meth:`check` (or by passing ``presentation``
    to the constructor).
    """

    __slots__ = ("ring", "dim", "images", "inverses", "special_linear", "_hash")

    def __init__(
        self,
        ring: CoeffRing,
        images: Sequence[Sequence[Sequence[int]]],
        presentation: Presentation | None = None,
        special_linear: bool = False,
    ):
        imgs = tuple(tuple(tuple(ring(x) for x in row) for row in m) for m in images)
        if not imgs:
            raise RepresentationError("no generator images")
        n = len(imgs[0])
        for k, m in enumerate(imgs, start=1):
            if len(m) != n or any(len(row) != n for row in m):
                raise RepresentationError(f"image of generator {k} is not {n}x{n}")
        self.ring = ring
        self.dim = n
        self.images = imgs
        self.inverses = tuple(mat_inv(m, ring) for m in imgs)
        self.special_linear = special_linear
        self._hash = None
        if special_linear:
            for k, m in enumerate(imgs, start=1):
                if mat_det(m, ring) != 1:
                    raise RepresentationError(f"image of generator {k} does not have determinant 1")
        if presentation is not None:
            self.check(presentation)

    def __len__(self):
        return len(self.images)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.ring == other.ring and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.images))
        return self._hash

    def __repr__(self):
        return f"Representation({self.ring!r}, {list(map(list, self.images))})"

    def evaluate(self, w) -> Matrix:
        """The matrix of a word (product of letter images, left to right)."""
        out = mat_identity(self.dim, self.ring)
        for g in w:
            m = self.images[g - 1] if g > 0 else self.inverses[-g - 1]
            out = mat_mul(out, m, self.ring)
        return out

    def check(self, presentation: Presentation) -> None:
        """Raise RepresentationError unless every relator maps to the identity."""
        if len(self.images) != presentation.ngens:
            raise RepresentationError(
                f"{len(self.images)} images for {presentation.ngens} generators"
            )
        ident = mat_identity(self.dim, self.ring)
        for i, r in enumerate(presentation.relators, start=1):
            if self.evaluate(r) != ident:
                raise RepresentationError(f"relator {i} ({presentation.format_word(r)}) is not sent to the identity")

    def satisfies(self, presentation: Presentation) -> bool:
        try:
            self.check(presentation)
        except RepresentationError:
            return False
        return True

    def compose(self, images_as_words: Sequence, ring: CoeffRing | None = None) -> Representation:
        """The representation g_i -> self(word_i), i.e. this one precomposed with a homomorphism."""
        return Representation(self.ring, [self.evaluate(w) for w in images_as_words],
                              special_linear=self.special_linear)


def trivial_representation(ring: CoeffRing, ngens: int, dim: int = 1) -> Representation:
    ident = mat_identity(dim, ring)
    return Representation(ring, [ident] * ngens)


# -- Phi and the Alexander matrix ----------------------------------------------


def phi_block(e: GroupRingElem, rep: Representation, a: AbelianizationMap) -> PolyMatrix:
    """Image of a group-ring element: sum of c * t^alpha(w) * rho(w)."""
    ring, n = rep.ring, rep.dim
    acc = [[{} for _ in range(n)] for _ in range(n)]
    for w, c in e.items():
        if w.max_index() > len(rep.images):
            raise IndexError("word uses a generator outside the representation")
        k = a.degree(w)
        m = rep.evaluate(w)
        for i in range(n):
            for j in range(n):
                if m[i][j]:
                    cell = acc[i][j]
                    cell[k] = cell.get(k, 0) + c * m[i][j]
    return PolyMatrix(ring, n, n, [LaurentPoly.from_dict(ring, acc[i][j]) for i in range(n) for j in range(n)])


@lru_cache(maxsize=64)
def _jacobian(relators: tuple, ngens: int):
    return tuple(tuple(fox_derivative(r, j, ngens) for j in range(1, ngens + 1)) for r in relators)


def alexander_matrix(p: Presentation, rep: Representation, a: AbelianizationMap) -> PolyMatrix:
    """The nv x nu matrix whose (i, j) block is Phi(d r_i / d x_j)."""
    if len(rep.images) != p.ngens or len(a.weights) != p.ngens:
        raise ValueError("representation / abelianization do not match the presentation")
    jac = _jacobian(p.relators, p.ngens)
    blocks = [[phi_block(d, rep, a) for d in row] for row in jac]
    if not blocks:
        return PolyMatrix.zeros(rep.ring, 0, rep.dim * p.ngens)
    return PolyMatrix.block(rep.ring, blocks, rep.dim)


def generator_denominator(p: Presentation, rep: Representation, a: AbelianizationMap, j: int) -> LaurentPoly:
    """det Phi(x_j - 1)."""
    e = GroupRingElem.word((j,)) - GroupRingElem.one()
    return det_polymatrix(phi_block(e, rep, a))


def choose_column(p: Presentation, rep: Representation, a: AbelianizationMap) -> int:
    """Smallest j with det Phi(x_j - 1) != 0."""
    for j in range(1, p.ngens + 1):
        if generator_denominator(p, rep, a, j):
            return j
    raise NoInvertibleColumn("det Phi(x_j - 1) = 0 for every generator")


@dataclass(frozen=True)
class TwistedAlexPoly:
    """Numerator and denominator, each in canonical form.

    ``deficient`` marks presentations with fewer than n(u-1) relator rows,
    for which the numerator is set to 0.
    """

    numerator: LaurentPoly
    denominator: LaurentPoly
    column_used: int
    deficient: bool = False

    def reduced(self) -> TwistedAlexPoly:
        """Cancel the common factor of numerator and denominator (fields only)."""
        if not self.numerator:
            return self
        g = poly_gcd(self.numerator, self.denominator)
        return TwistedAlexPoly(
            canonicalize(exact_quotient(self.numerator, g)),
            canonicalize(exact_quotient(self.denominator, g)),
            self.column_used,
            self.deficient,
        )

    def as_dict(self) -> dict:
        return {
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "column": self.column_used,
            "deficient": self.deficient,
        }

    def __str__(self):
        return f"({self.numerator}) / ({self.denominator})"


def twisted_alexander(
    p: Presentation,
    rep: Representation,
    a: AbelianizationMap | None = None,
    j: int | None = None,
    check: bool = True,
    matrix: PolyMatrix | None = None,
) -> TwistedAlexPoly:
    """Twisted Alexander polynomial with column j removed (default: first valid column)."""
    if a is None:
        a = p.abelianization()
    if check:
        res = validate_abelianization(p, a)
        if not res:
            raise ValueError(f"invalid abelianization: {res}")
        rep.check(p)
    if j is None:
        j = choose_column(p, rep, a)
        denom = generator_denominator(p, rep, a, j)
    else:
        if not 1 <= j <= p.ngens:
            raise IndexError(f"column {j} out of range 1..{p.ngens}")
        denom = generator_denominator(p, rep, a, j)
        if not denom:
            raise NoInvertibleColumn(f"det Phi(x_{j} - 1) = 0")
    n = rep.dim
    size = n * (p.ngens - 1)
    if n * p.nrels < size:
        return TwistedAlexPoly(LaurentPoly(rep.ring), canonicalize(denom), j, deficient=True)
    m = matrix if matrix is not None else alexander_matrix(p, rep, a)
    mj = m.delete_columns(range(n * (j - 1), n * j))
    num = gcd_of_maximal_minors(mj, size)
    return TwistedAlexPoly(canonicalize(num), canonicalize(denom), j)


def classical_alexander(p: Presentation) -> LaurentPoly:
    """Numerator for the trivial 1-dimensional representation over ZZ."""
    zz = CoeffRing.integers()
    rep = trivial_representation(zz, p.ngens)
    return twisted_alexander(p, rep, AbelianizationMap.ones(p.ngens)).numerator


# -- representation files --------------------------------------------------------

_REP_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*?)\s*$")


def parse_representation(text: str, presentation: Presentation | None = None, base: Path | None = None
                         ) -> tuple[Representation, Presentation]:
    """Parse a representation file.

    Header lines ``presentation: <knot id or path>`` and ``prime: <p>``
    (omit for integer matrices), then one line per generator::

        x1: 1 1; 0 1
    """
    headers: dict[str, str] = {}
    mats: dict[str, list[list[int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _REP_LINE.match(line)
        if not m:
            raise RepresentationError(f"line {lineno}: expected 'key: value'")
        key, value = m.group(1), m.group(2)
        if key in ("presentation", "prime", "ring"):
            headers[key] = value
            continue
        try:
            rows = [[int(x) for x in r.split()] for r in value.split(";")]
        except ValueError:
            raise RepresentationError(f"line {lineno}: matrix entries must be integers") from None
        if key in mats:
            raise RepresentationError(f"line {lineno}: generator {key} given twice")
        mats[key] = rows
    if presentation is None:
        if "presentation" not in headers:
            raise RepresentationError("representation file names no presentation")
        target = headers["presentation"]
        if base is not None and (base / target).is_file():
            target = str(base / target)
        presentation = load_presentation(target)
    if "prime" in headers:
        ring = CoeffRing.prime_field(int(headers["prime"]))
    elif headers.get("ring", "integers") == "integers":
        ring = CoeffRing.integers()
    else:
        ring = CoeffRing.rationals()
    missing = [g for g in presentation.generator_names if g not in mats]
    if missing:
        raise RepresentationError(f"no image for generator(s) {', '.join(missing)}")
    extra = [g for g in mats if g not in presentation.generator_names]
    if extra:
        raise RepresentationError(f"unknown generator(s) {', '.join(extra)}")
    rep = Representation(ring, [mats[g] for g in presentation.generator_names], presentation)
    return rep, presentation


def load_representation(path, presentation: Presentation | None = None) -> tuple[Representation, Presentation]:
    path = Path(path)
    return parse_representation(path.read_text(encoding="utf-8"), presentation, base=path.parent)


def format_representation(rep: Representation, presentation: Presentation) -> str:
    lines = []
    if presentation.name:
        lines.append(f"presentation: {presentation.name}")
    if rep.ring.p is not None:
        lines.append(f"prime: {rep.ring.p}")
    for name, m in zip(presentation.generator_names, rep.images):
        lines.append(f"{name}: " + "; ".join(" ".join(str(x) for x in row) for row in m))
    return "\n".join(lines) + "\n"
