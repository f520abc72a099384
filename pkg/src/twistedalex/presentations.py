"""Free-group words, finite presentations and their text format.

Words are tuples of nonzero signed integers: ``+i`` is the generator
``x_i`` and ``-i`` its inverse, with generators numbered from 1.

The text format is::

    # comment
    name: 4_1
    alpha: 1 1 1 1
    < x1, x2, x3, x4 | x4 x2 x4^-1 x1^-1, x1 x2 x1^-1 x3^-1, ... >

A word is a whitespace separated list of ``name``, ``name^-1`` or
``name^k`` for any nonzero integer ``k``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "Word",
    "Presentation",
    "AbelianizationMap",
    "PresentationSyntaxError",
    "free_reduce",
    "parse_presentation",
    "parse_word",
    "format_word",
    "validate_abelianization",
    "AbelianizationCheck",
    "load_presentation",
    "bundled_knots",
    "bundled_path",
]


class Word(tuple):
    """An element of the free group, stored letter by letter.

    The constructor does not reduce; use :func:`free_reduce` or multiply,
    which always reduces.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(letters)
        if any(g == 0 for g in letters):
            raise ValueError("generator index 0 is not allowed (indices are 1-based)")
        return super().__new__(cls, letters)

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return free_reduce(tuple(self) + tuple(other))

    def __rmul__(self, other):
        return NotImplemented

    def __add__(self, other):
        return NotImplemented

    def inverse(self) -> Word:
        return Word(-g for g in reversed(self))

    @property
    def letters(self) -> list[tuple[int, int]]:
        """The word as (generator index, exponent) pairs."""
        return [(abs(g), 1 if g > 0 else -1) for g in self]

    def is_reduced(self) -> bool:
        return all(a != -b for a, b in zip(self, self[1:]))

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for g in self:
            sums[abs(g) - 1] += 1 if g > 0 else -1
        return sums

    def max_index(self) -> int:
        return max((abs(g) for g in self), default=0)

    def __repr__(self):
        return f"Word({list(self)})"


def free_reduce(w: Sequence[int]) -> Word:
    """Cancel adjacent inverse pairs until none remain (not cyclically)."""
    out: list[int] = []
    for g in w:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return Word(out)


def format_word(w: Sequence[int], names: Sequence[str] | None = None) -> str:
    """Render a word in the input syntax; the empty word is ``1``."""
    if not w:
        return "1"
    names = names or [f"x{i}" for i in range(1, max(abs(g) for g in w) + 1)]
    return " ".join(names[abs(g) - 1] + ("" if g > 0 else "^-1") for g in w)


@dataclass(frozen=True)
class Presentation:
    """A finite presentation < x_1..x_u | r_1..r_v > with reduced relators."""

    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]
    name: str | None = None
    alpha: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        names = tuple(self.generator_names)
        if not names:
            raise ValueError("a presentation needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator name")
        rels = tuple(free_reduce(r) for r in self.relators)
        for i, r in enumerate(rels):
            if not r:
                raise ValueError(f"relator {i + 1} is empty after free reduction")
            if r.max_index() > len(names):
                raise ValueError(f"relator {i + 1} uses a generator index above {len(names)}")
        object.__setattr__(self, "generator_names", names)
        object.__setattr__(self, "relators", rels)
        if self.alpha is not None:
            object.__setattr__(self, "alpha", tuple(self.alpha))

    @property
    def ngens(self) -> int:
        return len(self.generator_names)

    @property
    def nrels(self) -> int:
        return len(self.relators)

    def generator_index(self, name: str) -> int:
        try:
            return self.generator_names.index(name) + 1
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def format_word(self, w: Sequence[int]) -> str:
        return format_word(w, self.generator_names)

    def serialize(self) -> str:
        lines = []
        if self.name is not None:
            lines.append(f"name: {self.name}")
        if self.alpha is not None:
            lines.append("alpha: " + " ".join(str(a) for a in self.alpha))
        rels = ", ".join(self.format_word(r) for r in self.relators)
        lines.append(f"< {', '.join(self.generator_names)} | {rels} >")
        return "\n".join(lines) + "\n"

    def abelianization(self) -> AbelianizationMap:
        """The map stored in the ``alpha:`` header, or all ones."""
        return AbelianizationMap(self.alpha if self.alpha is not None else (1,) * self.ngens)

    def __str__(self):
        return self.serialize().strip()


@dataclass(frozen=True)
class AbelianizationMap:
    """Exponent of t assigned to each generator."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def __len__(self):
        return len(self.weights)

    def degree(self, w: Sequence[int]) -> int:
        return sum(self.weights[g - 1] if g > 0 else -self.weights[-g - 1] for g in w)

    @classmethod
    def ones(cls, ngens: int) -> AbelianizationMap:
        return cls((1,) * ngens)


@dataclass(frozen=True)
class AbelianizationCheck:
    accepted: bool
    relator: int | None = None  # 1-based index of a relator with nonzero degree
    degree: int | None = None
    weight_gcd: int | None = None

    def __bool__(self):
        return self.accepted


def validate_abelianization(p: Presentation, a: AbelianizationMap) -> AbelianizationCheck:
    """Check that the weights kill every relator and generate Z."""
    if len(a.weights) != p.ngens:
        raise ValueError(f"{len(a.weights)} weights for {p.ngens} generators")
    for i, r in enumerate(p.relators, start=1):
        deg = a.degree(r)
        if deg != 0:
            return AbelianizationCheck(False, relator=i, degree=deg)
    g = 0
    for w in a.weights:
        g = gcd(g, w)
    if g != 1:
        return AbelianizationCheck(False, weight_gcd=g)
    return AbelianizationCheck(True, weight_gcd=1)


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<punct>[<>|,])|(?P<letter>[A-Za-z_][A-Za-z0-9_]*(?:\^[+-]?\d+)?)"
)
_HEADER = re.compile(r"^\s*([A-Za-z_]+)\s*:\s*(.*?)\s*$")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _tokenize(lines: list[tuple[int, str]]):
    for lineno, text in lines:
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise PresentationSyntaxError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
            if m.lastgroup != "ws":
                yield m.group(), lineno, pos + 1
            pos = m.end()


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation text format, with optional headers."""
    headers: dict[str, str] = {}
    body: list[tuple[int, str]] = []
    started = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not started:
            if not line.strip():
                continue
            m = _HEADER.match(line)
            if m and "<" not in line:
                key = m.group(1).lower()
                if key not in ("name", "alpha"):
                    raise PresentationSyntaxError(f"unknown header {key!r}", lineno, 1)
                headers[key] = m.group(2)
                continue
            started = True
        body.append((lineno, line))
    if not body:
        raise PresentationSyntaxError("no presentation found", 1, 1)

    tokens = list(_tokenize(body))
    last = (tokens[-1][1], tokens[-1][2]) if tokens else (body[-1][0], 1)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def expect(tok):
        nonlocal pos
        t = peek()
        if t is None:
            raise PresentationSyntaxError(f"expected {tok!r} but input ended", *last)
        if t[0] != tok:
            raise PresentationSyntaxError(f"expected {tok!r}, found {t[0]!r}", t[1], t[2])
        pos += 1

    expect("<")
    names: list[str] = []
    while True:
        t = peek()
        if t is None:
            raise PresentationSyntaxError("unterminated generator list", *last)
        if t[0] in "<>|,":
            raise PresentationSyntaxError(f"expected a generator name, found {t[0]!r}", t[1], t[2])
        if "^" in t[0]:
            raise PresentationSyntaxError(f"generator name cannot carry an exponent: {t[0]!r}", t[1], t[2])
        if t[0] in names:
            raise PresentationSyntaxError(f"duplicate generator name {t[0]!r}", t[1], t[2])
        names.append(t[0])
        pos += 1
        t = peek()
        if t is not None and t[0] == ",":
            pos += 1
            continue
        break
    expect("|")

    index = {n: i + 1 for i, n in enumerate(names)}
    relators: list[Word] = []
    t = peek()
    if t is not None and t[0] == ">":
        pos += 1
    else:
        while True:
            start = peek()
            letters: list[int] = []
            while (t := peek()) is not None and t[0] not in "<>|,":
                letters.extend(_expand_letter(t, index))
                pos += 1
            if not letters:
                where = (start[1], start[2]) if start else last
                raise PresentationSyntaxError("empty relator", *where)
            w = free_reduce(letters)
            if not w:
                raise PresentationSyntaxError(
                    f"relator {len(relators) + 1} is empty after free reduction", start[1], start[2]
                )
            relators.append(w)
            t = peek()
            if t is not None and t[0] == ",":
                pos += 1
                continue
            expect(">")
            break
    if pos != len(tokens):
        t = tokens[pos]
        raise PresentationSyntaxError(f"trailing input {t[0]!r}", t[1], t[2])

    alpha = None
    if "alpha" in headers:
        try:
            alpha = tuple(int(x) for x in headers["alpha"].split())
        except ValueError:
            raise PresentationSyntaxError("alpha header must list integers", 1, 1) from None
        if len(alpha) != len(names):
            raise ValueError(f"alpha header has {len(alpha)} weights for {len(names)} generators")
    return Presentation(tuple(names), tuple(relators), name=headers.get("name"), alpha=alpha)


def _expand_letter(tok, index: dict[str, int]) -> list[int]:
    text, line, col = tok
    name, _, exp = text.partition("^")
    if name not in index:
        raise PresentationSyntaxError(f"unknown generator {name!r}", line, col)
    k = int(exp) if exp else 1
    if k == 0:
        raise PresentationSyntaxError("exponent 0 is not allowed", line, col)
    g = index[name]
    return [g if k > 0 else -g] * abs(k)


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a single word over the given generator names (``1`` is the identity)."""
    index = {n: i + 1 for i, n in enumerate(names)}
    if text.strip() in ("1", ""):
        return Word()
    letters: list[int] = []
    for tok in _tokenize([(1, text)]):
        if tok[0] in "<>|,":
            raise PresentationSyntaxError(f"unexpected {tok[0]!r} in word", tok[1], tok[2])
        letters.extend(_expand_letter(tok, index))
    return free_reduce(letters)


_DATA = "twistedalex.data"


def bundled_knots() -> list[str]:
    """Names of the bundled knot presentations."""
    files = resources.files(_DATA).iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".pres"))


def bundled_path(filename: str) -> Path:
    return Path(str(resources.files(_DATA).joinpath(filename)))


def load_presentation(name_or_path: str | Path) -> Presentation:
    """Load a presentation from a file path or a bundled knot name like ``"4_1"``."""
    path = Path(name_or_path)
    if not path.is_file():
        stem = path.name[:-5] if path.name.endswith(".pres") else path.name
        if stem not in bundled_knots():
            raise FileNotFoundError(f"no presentation file or bundled knot named {str(name_or_path)!r}")
        path = bundled_path(f"{stem}.pres")
    return parse_presentation(path.read_text(encoding="utf-8"))
