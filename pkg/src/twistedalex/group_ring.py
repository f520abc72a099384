"""The integral group ring of a free group and Fox free differential calculus."""
from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping

from .presentations import Word, free_reduce

__all__ = ["GroupRingElem", "ring_add", "ring_mul", "fox_derivative", "fox_jacobian"]


class GroupRingElem:
    """A finite Z-linear combination of reduced free-group words.

    Stored as a dict ``{Word: nonzero int}``; two elements are equal iff
    their dicts are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, int] | Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            acc[free_reduce(w)] += c
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def word(cls, w, coeff: int = 1) -> GroupRingElem:
        return cls([(w, coeff)])

    @classmethod
    def one(cls) -> GroupRingElem:
        return cls.word(Word())

    @classmethod
    def zero(cls) -> GroupRingElem:
        return cls()

    @property
    def terms(self) -> dict[Word, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElem.word(Word(), other) if other else GroupRingElem()
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: GroupRingElem) -> GroupRingElem:
        if isinstance(other, int):
            other = GroupRingElem.word(Word(), other)
        acc = dict(self._terms)
        for w, c in other._terms.items():
            acc[w] = acc.get(w, 0) + c
        return GroupRingElem(acc)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElem:
        return GroupRingElem({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: GroupRingElem) -> GroupRingElem:
        if isinstance(other, int):
            other = GroupRingElem.word(Word(), other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> GroupRingElem:
        if isinstance(other, int):
            return GroupRingElem({w: c * other for w, c in self._terms.items()})
        if isinstance(other, Word):
            other = GroupRingElem.word(other)
        acc: dict[Word, int] = defaultdict(int)
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                acc[u * v] += a * b
        return GroupRingElem(acc)

    def __rmul__(self, other) -> GroupRingElem:
        if isinstance(other, int):
            return self * other
        if isinstance(other, Word):
            return GroupRingElem.word(other) * self
        return NotImplemented

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in sorted(self._terms.items(), key=lambda kv: (len(kv[0]), tuple(kv[0]))):
            mono = " ".join(f"x{abs(g)}" + ("" if g > 0 else "^-1") for g in w) or "1"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}" if w else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def ring_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a + b


def ring_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a * b


def fox_derivative(w, j: int, ngens: int | None = None) -> GroupRingElem:
    """Fox derivative of the word ``w`` with respect to generator ``x_j``.

    One pass from left to right: a letter ``x_j`` at position k contributes
    ``+prefix`` and a letter ``x_j^-1`` contributes ``-prefix x_j^-1``,
    where prefix is the part of the word before position k.
    """
    if j < 1 or (ngens is not None and j > ngens):
        raise IndexError(f"generator index {j} out of range")
    w = free_reduce(w)
    acc: dict[Word, int] = defaultdict(int)
    prefix: list[int] = []
    for g in w:
        if g == j:
            acc[free_reduce(prefix)] += 1
        elif g == -j:
            acc[free_reduce(prefix + [g])] -= 1
        prefix.append(g)
    return GroupRingElem(acc)


def fox_jacobian(relators, ngens: int) -> list[list[GroupRingElem]]:
    """Matrix of Fox derivatives, one row per relator and one column per generator."""
    return [[fox_derivative(r, j, ngens) for j in range(1, ngens + 1)] for r in relators]
