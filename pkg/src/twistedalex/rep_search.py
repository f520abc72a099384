"""Enumerate homomorphisms from a finitely presented group to SL(2, F_p).

The search follows a static plan computed from the relator shapes alone:

* a relator in which exactly one generator is still unassigned, and in
  which that generator occurs exactly once, determines it;
* a relator whose generators are all assigned is checked;
* otherwise the generator whose choice forces the most others is
  searched.  When a conjugation relator ``w x_a w^-1 x_b^-1`` ties it to
  an already assigned generator, only that generator's conjugacy class
  is searched.

Every emitted assignment satisfies all relators, so each homomorphism is
produced exactly once, in lexicographic order of the searched values.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .polys import CoeffRing, LaurentPoly, is_prime
from .presentations import AbelianizationMap, Presentation
from .sl2 import SL2, has_common_eigenvector, sl2_group
from .twisted import NoInvertibleColumn, Representation, twisted_alexander

__all__ = [
    "SearchOptions",
    "SearchBudgetExceeded",
    "RepCensus",
    "search_plan",
    "enumerate_sl2_reps",
    "enumerate_sl2_images",
    "brute_force_sl2_images",
    "numerator_census",
    "FILTERS",
]

FILTERS = ("all", "nonabelian-image", "irreducible")


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchOptions:
    prime: int
    filter: str = "all"
    dedup_level: str = "by-polynomial"
    parallel_width: int = 1
    node_budget: int | None = None

    def __post_init__(self):
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.filter not in FILTERS:
            raise ValueError(f"unknown filter {self.filter!r}")
        if self.dedup_level not in ("none", "by-polynomial"):
            raise ValueError(f"unknown dedup level {self.dedup_level!r}")
        if self.parallel_width < 1:
            raise ValueError("parallel_width must be at least 1")


# -- planning --------------------------------------------------------------


@dataclass(frozen=True)
class _Choose:
    gen: int
    like: int | None  # search only the conjugacy class of this generator's value


@dataclass(frozen=True)
class _Derive:
    gen: int
    exponent: int
    before: tuple[int, ...]
    after: tuple[int, ...]


@dataclass(frozen=True)
class _Check:
    relator: tuple[int, ...]


def _conjugate_pairs(relators) -> list[tuple[int, int]]:
    """Generator pairs (a, b) with x_a conjugate to x_b, from relators w x_a w^-1 x_b^-1."""
    pairs = []
    for r in relators:
        n = len(r)
        if n < 2 or n % 2:
            continue
        m = (n - 2) // 2
        for rot in range(n):
            c = r[rot:] + r[:rot]
            for word in (c, tuple(-g for g in reversed(c))):
                w, a, winv, b = word[:m], word[m], word[m + 1:2 * m + 1], word[-1]
                if winv == tuple(-g for g in reversed(w)) and (a > 0) == (b < 0):
                    pairs.append((abs(a), abs(b)))
    return pairs


def _propagate(relators, assigned: set[int], used: set[int]) -> list:
    steps = []
    progress = True
    while progress:
        progress = False
        for i, r in enumerate(relators):
            if i in used:
                continue
            free = {abs(g) for g in r} - assigned
            if not free:
                steps.append(_Check(tuple(r)))
                used.add(i)
            elif len(free) == 1:
                (gen,) = free
                pos = [k for k, g in enumerate(r) if abs(g) == gen]
                if len(pos) == 1:
                    k = pos[0]
                    steps.append(_Derive(gen, 1 if r[k] > 0 else -1, tuple(r[:k]), tuple(r[k + 1:])))
                    assigned.add(gen)
                    used.add(i)
                    progress = True
    return steps


def search_plan(p: Presentation) -> list:
    """Static order of choose / derive / check steps for a presentation."""
    relators = [tuple(r) for r in p.relators]
    u = p.ngens
    parent = list(range(u + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in _conjugate_pairs(relators):
        parent[find(a)] = find(b)

    assigned: set[int] = set()
    used: set[int] = set()
    steps = _propagate(relators, assigned, used)
    while len(assigned) < u:
        best, best_gain = None, -1
        for g in range(1, u + 1):
            if g in assigned:
                continue
            trial = set(assigned) | {g}
            _propagate(relators, trial, set(used))
            if len(trial) > best_gain:
                best, best_gain = g, len(trial)
        like = next((h for h in sorted(assigned) if find(h) == find(best)), None)
        steps.append(_Choose(best, like))
        assigned.add(best)
        steps.extend(_propagate(relators, assigned, used))
    for i, r in enumerate(relators):
        if i not in used:
            steps.append(_Check(r))
    return steps


# -- execution --------------------------------------------------------------


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise SearchBudgetExceeded(f"search exceeded the budget of {self.limit} nodes")


def _run(group: SL2, steps, ngens: int, budget: _Budget, first_domain=None) -> Iterator[tuple[int, ...]]:
    values = [0] * ngens
    inv = group.inv
    mul = group.mul
    ident = group.identity
    nsteps = len(steps)

    def prod(letters):
        out = ident
        for g in letters:
            out = mul(out, values[g - 1] if g > 0 else inv[values[-g - 1]])
        return out

    def rec(k, first):
        while k < nsteps:
            s = steps[k]
            if isinstance(s, _Derive):
                # before * x^e * after = 1  =>  x^e = before^-1 after^-1
                x = mul(inv[prod(s.before)], inv[prod(s.after)])
                values[s.gen - 1] = x if s.exponent > 0 else inv[x]
            elif isinstance(s, _Check):
                if prod(s.relator) != ident:
                    return
            else:
                if first and first_domain is not None:
                    domain = first_domain
                elif s.like is not None:
                    domain = group.conjugacy_class(values[s.like - 1])
                else:
                    domain = range(group.order)
                for x in domain:
                    budget.tick()
                    values[s.gen - 1] = x
                    yield from rec(k + 1, False)
                return
            k += 1
        yield tuple(values)

    yield from rec(0, True)


def _first_choose(steps) -> _Choose | None:
    return next((s for s in steps if isinstance(s, _Choose)), None)


def _satisfies(group: SL2, p: Presentation, values) -> bool:
    return all(group.word(values, r) == group.identity for r in p.relators)


def _keep(group: SL2, values, flt: str) -> bool:
    if flt == "all":
        return True
    distinct = sorted(set(values))
    nonabelian = any(
        not group.commute(x, y) for i, x in enumerate(distinct) for y in distinct[i + 1:]
    )
    if flt == "nonabelian-image":
        return nonabelian
    if not nonabelian:
        return False
    return not has_common_eigenvector([group.matrix(x) for x in distinct], group.p)


def _slice_images(p: Presentation, prime: int, budget_limit, domain) -> list[tuple[int, ...]]:
    group = sl2_group(prime)
    steps = search_plan(p)
    return list(_run(group, steps, p.ngens, _Budget(budget_limit), domain))


def _split(seq, parts: int) -> list[list[int]]:
    seq = list(seq)
    size = -(-len(seq) // parts) if seq else 1
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def enumerate_sl2_images(p: Presentation, opts: SearchOptions) -> Iterator[tuple[int, ...]]:
    """Homomorphisms as tuples of element indices of :func:`sl2_group` (unfiltered).

    Every tuple is re-checked against all relators before it is yielded.
    """
    group = sl2_group(opts.prime)
    steps = search_plan(p)
    first = _first_choose(steps)
    if opts.parallel_width > 1 and first is not None and first.like is None:
        chunks = _split(range(group.order), opts.parallel_width)
        with ProcessPoolExecutor(max_workers=opts.parallel_width) as pool:
            futures = [pool.submit(_slice_images, p, opts.prime, opts.node_budget, c) for c in chunks]
            results = (v for f in futures for v in f.result())
            for values in results:
                if not _satisfies(group, p, values):
                    raise AssertionError(f"search produced a non-homomorphism {values}")
                yield values
        return
    for values in _run(group, steps, p.ngens, _Budget(opts.node_budget)):
        if not _satisfies(group, p, values):
            raise AssertionError(f"search produced a non-homomorphism {values}")
        yield values


def _to_rep(group: SL2, values) -> Representation:
    ring = CoeffRing.prime_field(group.p)
    return Representation(ring, [group.matrix(v) for v in values], special_linear=True)


def enumerate_sl2_reps(p: Presentation, opts: SearchOptions) -> Iterator[Representation]:
    """All homomorphisms to SL(2, F_p) passing ``opts.filter``, as representations."""
    group = sl2_group(opts.prime)
    for values in enumerate_sl2_images(p, opts):
        if _keep(group, values, opts.filter):
            yield _to_rep(group, values)


def brute_force_sl2_images(p: Presentation, prime: int) -> Iterator[tuple[int, ...]]:
    """Every generator assignment checked against every relator.  Reference only."""
    from itertools import product

    group = sl2_group(prime)
    for values in product(range(group.order), repeat=p.ngens):
        if _satisfies(group, p, values):
            yield values


# -- census -----------------------------------------------------------------------


@dataclass
class RepCensus:
    """Distinct canonical numerators over all representations passing the filter."""

    prime: int
    filter: str
    enumerated: int = 0
    representations_found: int = 0
    skipped: int = 0
    multiplicities: Counter = field(default_factory=Counter)
    presentation: str | None = None

    @property
    def distinct_numerators(self) -> list[LaurentPoly]:
        return sorted(self.multiplicities, key=LaurentPoly.sort_key)

    def __len__(self):
        return len(self.multiplicities)

    def as_dict(self) -> dict:
        polys = self.distinct_numerators
        return {
            "presentation": self.presentation,
            "prime": self.prime,
            "filter": self.filter,
            "enumerated": self.enumerated,
            "representations": self.representations_found,
            "skipped": self.skipped,
            "distinct": len(polys),
            "polynomials": [str(q) for q in polys],
            "multiplicities": [self.multiplicities[q] for q in polys],
        }


def _census_of_images(p: Presentation, prime: int, flt: str, images) -> RepCensus:
    group = sl2_group(prime)
    alpha = p.abelianization()
    census = RepCensus(prime, flt, presentation=p.name)
    cache: dict[tuple[int, ...], LaurentPoly | None] = {}
    for values in images:
        census.enumerated += 1
        if not _keep(group, values, flt):
            continue
        census.representations_found += 1
        key = group.orbit_key(values)
        if key not in cache:
            try:
                cache[key] = twisted_alexander(p, _to_rep(group, values), alpha, check=False).numerator
            except NoInvertibleColumn:
                cache[key] = None
        num = cache[key]
        if num is None:
            census.skipped += 1
        else:
            census.multiplicities[num] += 1
    return census


def _census_slice(p: Presentation, prime: int, flt: str, budget_limit, domain) -> RepCensus:
    group = sl2_group(prime)
    steps = search_plan(p)
    return _census_of_images(p, prime, flt, _run(group, steps, p.ngens, _Budget(budget_limit), domain))


def numerator_census(p: Presentation, opts: SearchOptions) -> RepCensus:
    """Run the search and collect canonical twisted-Alexander numerators.

    Numerators are cached per simultaneous-conjugacy orbit; conjugating a
    representation does not change its polynomial.
    """
    if p.alpha is not None and len(p.alpha) != p.ngens:
        raise ValueError("abelianization does not match the presentation")
    group = sl2_group(opts.prime)
    steps = search_plan(p)
    first = _first_choose(steps)
    if opts.parallel_width > 1 and first is not None and first.like is None:
        chunks = _split(range(group.order), opts.parallel_width)
        with ProcessPoolExecutor(max_workers=opts.parallel_width) as pool:
            futures = [
                pool.submit(_census_slice, p, opts.prime, opts.filter, opts.node_budget, c) for c in chunks
            ]
            parts = [f.result() for f in futures]
        census = RepCensus(opts.prime, opts.filter, presentation=p.name)
        for part in parts:
            census.enumerated += part.enumerated
            census.representations_found += part.representations_found
            census.skipped += part.skipped
            census.multiplicities.update(part.multiplicities)
        return census
    images = enumerate_sl2_images(p, SearchOptions(opts.prime, node_budget=opts.node_budget))
    return _census_of_images(p, opts.prime, opts.filter, images)
