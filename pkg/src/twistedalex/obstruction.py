"""Ruling out surjections between knot groups.

If phi: G -> G' is onto and rho' is a representation of G', the twisted
polynomial numerator of G' for rho' divides that of G for rho' o phi.  So
a numerator of the target census that divides no numerator of the source
census shows there is no surjection.  The classical Alexander polynomial
gives the same test with the trivial representation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .polys import LaurentPoly, divides_up_to_units
from .presentations import Presentation, Word, load_presentation, parse_word
from .rep_search import RepCensus, SearchOptions, enumerate_sl2_reps, numerator_census
from .twisted import Representation, classical_alexander, mat_identity

__all__ = [
    "HomCandidate",
    "HomVerification",
    "ObstructionReport",
    "verify_homomorphism",
    "classical_screening",
    "surjection_obstruction",
    "find_witnesses",
    "parse_hom",
    "load_hom",
    "sl2_battery",
]


@dataclass(frozen=True)
class HomCandidate:
    """A map on generators: source generator i goes to ``images[i-1]``, a target word."""

    source: Presentation
    target: Presentation
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise ValueError(f"{len(self.images)} images for {self.source.ngens} source generators")
        for w in self.images:
            if w.max_index() > self.target.ngens:
                raise ValueError("image word references an unknown target generator")

    def apply(self, w) -> Word:
        """Image of a source word, freely reduced."""
        letters: list[int] = []
        for g in w:
            img = self.images[abs(g) - 1]
            letters.extend(img if g > 0 else img.inverse())
        return Word(letters) * Word()

    def format(self) -> str:
        lines = []
        if self.source.name:
            lines.append(f"source: {self.source.name}")
        if self.target.name:
            lines.append(f"target: {self.target.name}")
        for name, w in zip(self.source.generator_names, self.images):
            lines.append(f"{name} -> {self.target.format_word(w)}")
        return "\n".join(lines) + "\n"


@dataclass
class HomVerification:
    """Outcome of the relator checks.  Passing is necessary, not sufficient."""

    passed: bool
    battery_size: int
    covers_all_generators: bool
    missing_generators: list[str]
    # (relator index, "abelianization") or (relator index, battery index)
    failures: list[tuple[int, object]] = field(default_factory=list)
    relator_images: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "check": "necessary condition only: relator images vanish in the abelianization and under every battery representation",
            "battery_size": self.battery_size,
            "covers_all_generators": self.covers_all_generators,
            "missing_generators": self.missing_generators,
            "failures": [{"relator": r, "witness": w} for r, w in self.failures],
            "relator_images": self.relator_images,
        }


def verify_homomorphism(h: HomCandidate, battery: Sequence[Representation], stop_at_first: bool = False
                        ) -> HomVerification:
    """Check that every source relator maps to something trivial in the abelianization
    and under each battery representation of the target.
    """
    alpha = h.target.abelianization()
    failures: list[tuple[int, object]] = []
    images = []
    for i, r in enumerate(h.source.relators, start=1):
        w = h.apply(r)
        images.append(h.target.format_word(w))
        if alpha.degree(w) != 0:
            failures.append((i, "abelianization"))
            if stop_at_first:
                break
        for k, rep in enumerate(battery):
            if rep.evaluate(w) != mat_identity(rep.dim, rep.ring):
                failures.append((i, k))
                if stop_at_first:
                    break
        if failures and stop_at_first:
            break
    used = {abs(g) for w in h.images for g in w}
    missing = [n for j, n in enumerate(h.target.generator_names, start=1) if j not in used]
    return HomVerification(
        passed=not failures,
        battery_size=len(battery),
        covers_all_generators=not missing,
        missing_generators=missing,
        failures=failures,
        relator_images=images,
    )


def classical_screening(source: Presentation, target: Presentation) -> bool:
    """True iff the target's Alexander polynomial divides the source's."""
    return divides_up_to_units(classical_alexander(target), classical_alexander(source))


def find_witnesses(source: RepCensus, target: RepCensus) -> list[LaurentPoly]:
    """Target numerators dividing no source numerator, in sorted order."""
    src = list(source.multiplicities)
    return [q for q in target.distinct_numerators if not any(divides_up_to_units(q, s) for s in src)]


@dataclass
class ObstructionReport:
    source: str
    target: str
    prime: int
    filter: str
    classical_divisible: bool
    witness_polynomial: LaurentPoly | None
    witnesses: list[LaurentPoly]
    source_census: RepCensus
    target_census: RepCensus

    @property
    def verdict(self) -> str:
        if not self.classical_divisible or self.witness_polynomial is not None:
            return "no-surjection"
        return "inconclusive"

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "prime": self.prime,
            "filter": self.filter,
            "classical_divisible": self.classical_divisible,
            "witness_polynomial": str(self.witness_polynomial) if self.witness_polynomial is not None else None,
            "witnesses": [str(q) for q in self.witnesses],
            "verdict": self.verdict,
            "source_representations": self.source_census.representations_found,
            "source_distinct_numerators": len(self.source_census),
            "source_skipped": self.source_census.skipped,
            "target_representations": self.target_census.representations_found,
            "target_distinct_numerators": len(self.target_census),
            "target_skipped": self.target_census.skipped,
        }

    def table(self) -> str:
        rows = [
            ("source", self.source),
            ("target", self.target),
            ("prime", str(self.prime)),
            ("filter", self.filter),
            ("classical divisible", "yes" if self.classical_divisible else "no"),
            ("source reps / numerators",
             f"{self.source_census.representations_found} / {len(self.source_census)}"),
            ("target reps / numerators",
             f"{self.target_census.representations_found} / {len(self.target_census)}"),
            ("witness", str(self.witness_polynomial) if self.witness_polynomial is not None else "-"),
            ("verdict", self.verdict),
        ]
        width = max(len(k) for k, _ in rows)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def surjection_obstruction(
    source: Presentation,
    target: Presentation,
    p: int | None = None,
    opts: SearchOptions | None = None,
) -> ObstructionReport:
    """Try to rule out a surjection source -> target with SL(2, F_p) censuses."""
    if opts is None:
        opts = SearchOptions(p)
    elif p is not None and p != opts.prime:
        opts = SearchOptions(p, opts.filter, opts.dedup_level, opts.parallel_width, opts.node_budget)
    classical = classical_screening(source, target)
    target_census = numerator_census(target, opts)
    source_census = numerator_census(source, opts)
    witnesses = find_witnesses(source_census, target_census)
    return ObstructionReport(
        source=source.name or "source",
        target=target.name or "target",
        prime=opts.prime,
        filter=opts.filter,
        classical_divisible=classical,
        witness_polynomial=witnesses[0] if witnesses else None,
        witnesses=witnesses,
        source_census=source_census,
        target_census=target_census,
    )


def sl2_battery(target: Presentation, prime: int) -> list[Representation]:
    """Every representation of the target into SL(2, F_p)."""
    return list(enumerate_sl2_reps(target, SearchOptions(prime)))


# -- homomorphism files ------------------------------------------------------------

_MAP_LINE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*->\s*(.*?)\s*$")
_HDR_LINE = re.compile(r"^\s*(source|target)\s*:\s*(.*?)\s*$")


def _resolve(ref: str, base: Path | None) -> Presentation:
    if base is not None and (base / ref).is_file():
        return load_presentation(base / ref)
    return load_presentation(ref)


def parse_hom(text: str, source: Presentation | None = None, target: Presentation | None = None,
              base: Path | None = None) -> HomCandidate:
    """Parse ``y_i -> word`` lines, with optional ``source:`` / ``target:`` headers."""
    headers: dict[str, str] = {}
    maps: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _HDR_LINE.match(line)
        if m:
            headers[m.group(1)] = m.group(2)
            continue
        m = _MAP_LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'generator -> word'")
        if m.group(1) in maps:
            raise ValueError(f"line {lineno}: generator {m.group(1)} mapped twice")
        maps[m.group(1)] = m.group(2)
    if source is None:
        if "source" not in headers:
            raise ValueError("homomorphism file names no source presentation")
        source = _resolve(headers["source"], base)
    if target is None:
        if "target" not in headers:
            raise ValueError("homomorphism file names no target presentation")
        target = _resolve(headers["target"], base)
    missing = [g for g in source.generator_names if g not in maps]
    if missing:
        raise ValueError(f"no image for source generator(s) {', '.join(missing)}")
    extra = [g for g in maps if g not in source.generator_names]
    if extra:
        raise ValueError(f"unknown source generator(s) {', '.join(extra)}")
    images = []
    for g in source.generator_names:
        try:
            images.append(parse_word(maps[g], target.generator_names))
        except ValueError as exc:
            raise ValueError(f"image of {g}: {exc}") from None
    return HomCandidate(source, target, tuple(images))


def load_hom(path, source: Presentation | None = None, target: Presentation | None = None) -> HomCandidate:
    path = Path(path)
    return parse_hom(path.read_text(encoding="utf-8"), source, target, base=path.parent)
