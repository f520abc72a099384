"""Exact coefficient rings and one-variable Laurent polynomials.

A :class:`LaurentPoly` is stored densely as its lowest exponent ``val``
and a coefficient tuple ``coeffs`` (lowest first, both ends nonzero).
The zero polynomial has ``coeffs == ()``.

Most of the arithmetic lives in the ``_d*`` helpers, which work on plain
lists of ring elements representing ordinary polynomials.  They are
shared with :mod:`twistedalex.polymatrix`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Mapping, Sequence

__all__ = [
    "CoeffRing",
    "LaurentPoly",
    "poly_divmod",
    "poly_gcd",
    "divides_up_to_units",
    "canonicalize",
    "unit_equivalent",
    "is_prime",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class CoeffRing:
    """One of: the prime field F_p, the integers, or the rationals."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind not in ("prime", "integers", "rationals"):
            raise ValueError(f"unknown ring kind {kind!r}")
        if kind == "prime":
            if p is None or not is_prime(p):
                raise ValueError(f"{p} is not prime")
        else:
            p = None
        self.kind = kind
        self.p = p

    @classmethod
    def prime_field(cls, p: int) -> CoeffRing:
        return cls("prime", p)

    @classmethod
    def integers(cls) -> CoeffRing:
        return cls("integers")

    @classmethod
    def rationals(cls) -> CoeffRing:
        return cls("rationals")

    @property
    def is_field(self) -> bool:
        return self.kind != "integers"

    def __eq__(self, other):
        return isinstance(other, CoeffRing) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        if self.kind == "prime":
            return f"GF({self.p})"
        return "ZZ" if self.kind == "integers" else "QQ"

    def __call__(self, x):
        """Coerce an int (or Fraction, for QQ) into the ring."""
        if self.p is not None:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if self.kind == "integers":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            return int(x)
        return Fraction(x)

    def inv(self, x):
        if self.p is not None:
            if x % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, -1, self.p)
        if self.kind == "rationals":
            return 1 / Fraction(x)
        if x in (1, -1):
            return x
        raise ZeroDivisionError(f"{x} is not a unit in ZZ")

    def is_unit(self, x) -> bool:
        if self.p is not None:
            return x % self.p != 0
        if self.kind == "rationals":
            return x != 0
        return x in (1, -1)

    def exact_div(self, a, b):
        """a / b, raising ArithmeticError unless the quotient lies in the ring."""
        if self.p is not None:
            return a * self.inv(b) % self.p
        if self.kind == "rationals":
            return Fraction(a) / b
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q

    def normal_unit(self, lead):
        """The unit u with u*lead in normal form (1 over a field, positive over ZZ)."""
        if self.is_field:
            return self.inv(lead)
        return -1 if lead < 0 else 1

    def fmt(self, x) -> str:
        return str(x)


# ---------------------------------------------------------------------------
# dense helpers: lists of coefficients, lowest degree first


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _dnorm(a, ring: CoeffRing) -> list:
    p = ring.p
    if p is not None:
        return _trim([x % p for x in a])
    return _trim(list(a))


def _dadd(a, b, ring) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _dnorm(out, ring)


def _dsub(a, b, ring) -> list:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return _dnorm(out, ring)


def _dmul(a, b, ring) -> list:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a, j):
                out[i] += x * y
    return _dnorm(out, ring)


def _dscale(a, c, ring) -> list:
    return _dnorm([x * c for x in a], ring)


def _ddivmod(a, b, ring) -> tuple[list, list]:
    """Long division; needs an invertible leading coefficient of b."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lc_inv = ring.inv(b[-1])
    r = list(a)
    db = len(b) - 1
    if len(r) <= db:
        return [], r
    q = [0] * (len(r) - db)
    p = ring.p
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * lc_inv
        if p is not None:
            c %= p
        if not c:
            continue
        q[k - db] = c
        for i, y in enumerate(b):
            r[k - db + i] -= c * y
        if p is not None:
            for i in range(k - db, k + 1):
                r[i] %= p
    return _dnorm(q, ring), _dnorm(r[:db], ring)


def _dexact_div(a, b, ring):
    """The quotient a / b if b divides a exactly, else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    db = len(b) - 1
    if len(a) <= db:
        return None
    if ring.p is not None or ring.kind == "rationals":
        q, r = _ddivmod(a, b, ring)
        return None if r else q
    r = list(a)
    lc = b[-1]
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c, rem = divmod(r[k], lc)
        if rem:
            return None
        if c:
            q[k - db] = c
            for i, y in enumerate(b):
                r[k - db + i] -= c * y
    if any(r[:db]):
        return None
    return _trim(q)


def _content(a) -> int:
    return reduce(gcd, a, 0)


def _dprimitive(a) -> list:
    c = _content(a)
    if c == 0:
        return []
    if a[-1] < 0:
        c = -c
    return [x // c for x in a]


def _dpseudo_rem(a, b) -> list:
    """Pseudo-remainder of a by b over ZZ."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lc for x in r]
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        _trim(r)
    return r


def _dgcd(a, b, ring) -> list:
    """A gcd of two ordinary polynomials, in normal form (monic / positive primitive)."""
    if ring.is_field:
        while b:
            a, b = b, _ddivmod(a, b, ring)[1]
        if not a:
            return []
        return _dscale(a, ring.inv(a[-1]), ring)
    # ZZ: content times gcd of primitive parts, by a primitive remainder sequence
    if not a or not b:
        a = a or b
        return [-x for x in a] if a and a[-1] < 0 else list(a)
    c = gcd(_content(a), _content(b))
    a, b = _dprimitive(a), _dprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _dpseudo_rem(a, b)
        a, b = b, _dprimitive(r) if r else []
    return [x * c for x in _dprimitive(a)]


# ---------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*(?=t))?)?(t(?:\^(-?\d+))?)?")


class LaurentPoly:
    """A Laurent polynomial in t over a :class:`CoeffRing`."""

    __slots__ = ("ring", "val", "coeffs", "_hash")

    def __init__(self, ring: CoeffRing, coeffs: Sequence = (), val: int = 0):
        c = _dnorm([ring(x) for x in coeffs], ring)
        lo = 0
        while lo < len(c) and not c[lo]:
            lo += 1
        self.ring = ring
        self.coeffs = tuple(c[lo:])
        self.val = val + lo if self.coeffs else 0
        self._hash = None

    @classmethod
    def _raw(cls, ring, coeffs: list, val: int) -> LaurentPoly:
        # coeffs already normalized and trimmed at the top
        lo = 0
        while lo < len(coeffs) and not coeffs[lo]:
            lo += 1
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = tuple(coeffs[lo:])
        obj.val = val + lo if obj.coeffs else 0
        obj._hash = None
        return obj

    @classmethod
    def from_dict(cls, ring: CoeffRing, terms: Mapping[int, object]) -> LaurentPoly:
        terms = {k: ring(v) for k, v in terms.items()}
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return cls(ring)
        lo, hi = min(terms), max(terms)
        return cls(ring, [terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    @classmethod
    def constant(cls, ring: CoeffRing, c) -> LaurentPoly:
        return cls(ring, [c])

    @classmethod
    def monomial(cls, ring: CoeffRing, k: int = 1, c=1) -> LaurentPoly:
        return cls(ring, [c], k)

    @classmethod
    def parse(cls, ring: CoeffRing, text: str) -> LaurentPoly:
        """Parse the display format, e.g. ``1 + t + 3*t^2`` or ``2*t^-1 - 5``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        terms: dict[int, object] = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"bad polynomial {text!r} at position {pos}")
            if pos > 0 and not m.group(1):
                raise ValueError(f"missing operator in {text!r} at position {pos}")
            coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                coef = -coef
            if m.group(3):
                k = int(m.group(4)) if m.group(4) else 1
            else:
                k = 0
            terms[k] = terms.get(k, 0) + coef
            pos = m.end()
        return cls.from_dict(ring, terms)

    # -- basic properties -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self) -> int | None:
        """Highest exponent (None for zero)."""
        return self.val + len(self.coeffs) - 1 if self.coeffs else None

    @property
    def span(self) -> int:
        """Highest minus lowest exponent; -1 for zero."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self):
        return self.coeffs[-1] if self.coeffs else self.ring(0)

    def terms(self) -> dict[int, object]:
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c}

    def coefficient(self, k: int):
        i = k - self.val
        if self.coeffs and 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ring(0)

    def is_unit(self) -> bool:
        """True iff this is eps * t^k with eps a ring unit."""
        return len(self.coeffs) == 1 and self.ring.is_unit(self.coeffs[0])

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by t^k."""
        return LaurentPoly._raw(self.ring, list(self.coeffs), self.val + k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self.ring, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self.val == other.val and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.val, self.coeffs))
        return self._hash

    def sort_key(self):
        """Total order used for deterministic output (by degree, then coefficients)."""
        return (len(self.coeffs), self.val, tuple(self.coeffs))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.ring, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def _aligned(self, other):
        lo = min(self.val, other.val)
        a = [0] * (self.val - lo) + list(self.coeffs)
        b = [0] * (other.val - lo) + list(other.coeffs)
        return a, b, lo

    def __add__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        a, b, lo = self._aligned(other)
        return LaurentPoly._raw(self.ring, _dadd(a, b, self.ring), lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.ring, _dnorm([-x for x in self.coeffs], self.ring), self.val)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return LaurentPoly._raw(self.ring, _dmul(self.coeffs, other.coeffs, self.ring), self.val + other.val)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit")
            m = -n
            return LaurentPoly.monomial(self.ring, -self.val * m, self.ring.inv(self.coeffs[0]) ** m)
        out = LaurentPoly.constant(self.ring, 1)
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        return poly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._coerce(other))[1]

    def __call__(self, x):
        """Evaluate at a nonzero ring element."""
        r = self.ring
        acc = r(0)
        for c in reversed(self.coeffs):
            acc = r(acc * x + c)
        if self.val >= 0:
            return r(acc * r(x) ** self.val)
        return r(acc * r.inv(r(x)) ** -self.val)

    # -- display ------------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for k, c in self.terms().items():
            neg = self.ring.p is None and c < 0
            mag = -c if neg else c
            if k == 0:
                mono = str(mag)
            else:
                t = "t" if k == 1 else f"t^{k}"
                mono = t if mag == 1 else f"{mag}*{t}"
            if not out:
                out.append(("-" if neg else "") + mono)
            else:
                out.append((" - " if neg else " + ") + mono)
        return "".join(out)

    def __repr__(self):
        return f"LaurentPoly({self.ring!r}, {str(self)!r})"


# ---------------------------------------------------------------------------


def _check_same_ring(a: LaurentPoly, b: LaurentPoly):
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: {a.ring} vs {b.ring}")


def poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Division with remainder of the shifted ordinary polynomials.

    With a = t^sa A and b = t^sb B, returns (t^(sa-sb) Q, t^sa R) where
    A = Q B + R, so that a = q b + r exactly.
    """
    _check_same_ring(a, b)
    ring = a.ring
    if not b.coeffs:
        raise ZeroDivisionError("polynomial division by zero")
    if not ring.is_field and not ring.is_unit(b.coeffs[-1]):
        raise ArithmeticError("division over ZZ needs a divisor with leading coefficient +-1")
    if not a.coeffs:
        return a, a
    q, r = _ddivmod(list(a.coeffs), list(b.coeffs), ring)
    return LaurentPoly._raw(ring, q, a.val - b.val), LaurentPoly._raw(ring, r, a.val)


def canonicalize(a: LaurentPoly) -> LaurentPoly:
    """Representative of the class of ``a`` modulo units eps * t^k.

    Lowest exponent 0 and leading coefficient 1 (fields) or positive (ZZ).
    """
    if not a.coeffs:
        return a
    u = a.ring.normal_unit(a.coeffs[-1])
    if u == 1:
        return a if a.val == 0 else LaurentPoly._raw(a.ring, list(a.coeffs), 0)
    return LaurentPoly._raw(a.ring, _dscale(a.coeffs, u, a.ring), 0)


def unit_equivalent(a: LaurentPoly, b: LaurentPoly) -> bool:
    _check_same_ring(a, b)
    return canonicalize(a) == canonicalize(b)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """A gcd in canonical form; over ZZ it includes the gcd of the contents."""
    _check_same_ring(a, b)
    ring = a.ring
    if not a.coeffs:
        return canonicalize(b)
    if not b.coeffs:
        return canonicalize(a)
    g = _dgcd(list(a.coeffs), list(b.coeffs), ring)
    return canonicalize(LaurentPoly._raw(ring, g, 0))


def divides_up_to_units(d: LaurentPoly, a: LaurentPoly) -> bool:
    """True iff a = q d for some Laurent polynomial q."""
    _check_same_ring(d, a)
    if not d.coeffs:
        return not a.coeffs
    if not a.coeffs:
        return True
    return _dexact_div(list(a.coeffs), list(d.coeffs), d.ring) is not None


def exact_quotient(a: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """a / d as a Laurent polynomial; raises ArithmeticError if d does not divide a."""
    _check_same_ring(d, a)
    if not a.coeffs:
        return a
    q = _dexact_div(list(a.coeffs), list(d.coeffs), d.ring)
    if q is None:
        raise ArithmeticError(f"{d} does not divide {a}")
    return LaurentPoly._raw(a.ring, q, a.val - d.val)
