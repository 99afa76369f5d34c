"""Exhaustive enumeration on small instances, used as ground truth.

Nothing here calls the augmenting-path machinery: every answer comes from
looping over subsets with the members' independence predicates. Instances
beyond the :class:`EnumerationBudget` are refused, never truncated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .assignment import COVERING, PACKING, PARTITIONING, Assignment
from .errors import BudgetExceeded
from .family import MatroidFamily
from .matroids import Matroid


@dataclass(frozen=True)
class EnumerationBudget:
    max_elements: int = 8
    max_members: int = 4
    max_lattice_elements: int = 7
    timeout: float | None = None  # seconds per enumeration

    def check(self, family: MatroidFamily, lattice: bool = False) -> None:
        limit = self.max_lattice_elements if lattice else self.max_elements
        if len(family.ground) > limit:
            raise BudgetExceeded(f"{len(family.ground)} elements exceed the budget of {limit}")
        if len(family) > self.max_members:
            raise BudgetExceeded(f"{len(family)} members exceed the budget of {self.max_members}")


DEFAULT_BUDGET = EnumerationBudget()


class _Clock:
    def __init__(self, budget: EnumerationBudget):
        self.deadline = None if budget.timeout is None else time.monotonic() + budget.timeout
        self.calls = 0

    def tick(self) -> None:
        self.calls += 1
        if self.deadline is not None and self.calls % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("enumeration timed out")


def subsets(elements) -> Iterator[frozenset]:
    """All subsets, smallest first, each size in lexicographic order of ``elements``."""
    elements = tuple(elements)
    for k in range(len(elements) + 1):
        for c in combinations(elements, k):
            yield frozenset(c)


def independent_sets(m: Matroid, within=None) -> list:
    pool = m.ground.elements if within is None else m.ground.sort(within)
    return [s for s in subsets(pool) if m._independent(s)]


def bases(m: Matroid, within=None) -> list:
    sets = independent_sets(m, within)
    top = max(len(s) for s in sets)
    return [s for s in sets if len(s) == top]


def _brute_rank(m: Matroid, x) -> int:
    return max(len(s) for s in independent_sets(m, x))


class _Member:
    """Bases of one member, from which its rank and spanning sets are read off."""

    def __init__(self, m: Matroid):
        self.bases = bases(m)
        self.rank = len(self.bases[0])

    def rank_of(self, x: frozenset) -> int:
        return max(len(b & x) for b in self.bases)

    def spans(self, s: frozenset) -> bool:
        return any(b <= s for b in self.bases)


# ---------------------------------------------------------------------------
# Coverings, packings, partitionings
# ---------------------------------------------------------------------------


def iter_coverings(family: MatroidFamily, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Every tuple of independent sets whose union is the ground set."""
    budget.check(family)
    clock = _Clock(budget)
    full = family.ground.full
    k = len(family)
    choices = [independent_sets(m) for m in family.members]

    def rec(i, chosen, covered):
        clock.tick()
        if i == k:
            if covered == full:
                yield Assignment(tuple(chosen), COVERING)
            return
        missing = full - covered
        # later members together must still be able to cover what is missing
        room = sum(max(len(s & missing) for s in choices[j]) for j in range(i, k))
        if room < len(missing):
            return
        for s in choices[i]:
            yield from rec(i + 1, chosen + [s], covered | s)

    yield from rec(0, [], frozenset())


def iter_packings(family: MatroidFamily, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Every tuple of pairwise disjoint spanning sets."""
    budget.check(family)
    clock = _Clock(budget)
    full = family.ground.full
    k = len(family)
    members = [_Member(m) for m in family.members]

    def rec(i, chosen, used):
        clock.tick()
        if i == k:
            yield Assignment(tuple(chosen), PACKING)
            return
        free = full - used
        if any(members[j].rank_of(free) < members[j].rank for j in range(i, k)):
            return
        for s in subsets(family.ground.sort(free)):
            if members[i].spans(s):
                yield from rec(i + 1, chosen + [s], used | s)

    yield from rec(0, [], frozenset())


def iter_partitionings(family: MatroidFamily, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Every tuple of bases that partitions the ground set."""
    budget.check(family)
    clock = _Clock(budget)
    full = family.ground.full
    k = len(family)
    members = [_Member(m) for m in family.members]
    if sum(m.rank for m in members) != len(full):
        return
    all_bases = [m.bases for m in members]

    def rec(i, chosen, used):
        clock.tick()
        if i == k:
            if used == full:
                yield Assignment(tuple(chosen), PARTITIONING)
            return
        for b in all_bases[i]:
            if not (b & used):
                yield from rec(i + 1, chosen + [b], used | b)

    yield from rec(0, [], frozenset())


def brute_coverings(family, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    return list(iter_coverings(family, budget))


def brute_packings(family, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    return list(iter_packings(family, budget))


def brute_partitionings(family, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    return list(iter_partitionings(family, budget))


def has_covering(family, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    return next(iter_coverings(family, budget), None) is not None


def has_packing(family, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    return next(iter_packings(family, budget), None) is not None


def has_partitioning(family, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    return next(iter_partitionings(family, budget), None) is not None


# ---------------------------------------------------------------------------
# Tight sets and cowaves
# ---------------------------------------------------------------------------


def _disjoint_coverings(family: MatroidFamily, x: frozenset, clock: _Clock):
    """Every way to hand each element of ``x`` to one member, keeping parts independent."""
    order = family.ground.sort(x)
    k = len(family)

    def rec(t, parts):
        clock.tick()
        if t == len(order):
            yield tuple(parts)
            return
        e = order[t]
        for i in range(k):
            grown = parts[i] | {e}
            if family.members[i]._independent(grown):
                parts[i] = grown
                yield from rec(t + 1, parts)
                parts[i] = grown - {e}

    yield from rec(0, [frozenset()] * k)


def brute_is_tight(family: MatroidFamily, x, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """``X`` is coverable and every covering of the restriction to ``X`` spans ``X`` everywhere.

    A covering with a non-spanning part can be thinned to a disjoint one whose
    part is still non-spanning, so scanning disjoint coverings decides the
    definition exactly.
    """
    budget.check(family, lattice=True)
    x = family.ground.subset(x)
    clock = _Clock(budget)
    ranks = [_brute_rank(m, x) for m in family.members]
    found = False
    for parts in _disjoint_coverings(family, x, clock):
        found = True
        for m, part, r in zip(family.members, parts, ranks):
            if len(part) != r:  # parts are independent, so spanning X means |part| = r(X)
                return False
    return found


def tight_sets(family: MatroidFamily, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    budget.check(family, lattice=True)
    return [x for x in subsets(family.elements) if brute_is_tight(family, x, budget)]


def brute_largest_tight(family: MatroidFamily, budget: EnumerationBudget = DEFAULT_BUDGET) -> frozenset:
    return frozenset().union(*tight_sets(family, budget))


def brute_is_cowave(family: MatroidFamily, w, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    """The family contracted onto ``W`` has a covering."""
    w = family.ground.subset(w)
    return has_covering(family.contract_onto(w), budget)


def cowaves(family: MatroidFamily, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    budget.check(family, lattice=True)
    return [w for w in subsets(family.elements) if brute_is_cowave(family, w, budget)]


# ---------------------------------------------------------------------------
# Matroid axioms
# ---------------------------------------------------------------------------


def axiom_violations(m: Matroid, budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """Check the independence axioms directly; return a description of each failure."""
    if len(m.ground) > budget.max_elements:
        raise BudgetExceeded(f"{len(m.ground)} elements exceed the budget of {budget.max_elements}")
    problems = []
    indep = set(independent_sets(m))
    if frozenset() not in indep:
        problems.append("the empty set is dependent")
    for s in indep:
        for e in s:
            if s - {e} not in indep:
                problems.append(f"not hereditary: {sorted(map(repr, s))} minus {e!r}")
                break
    for a in indep:
        for b in indep:
            if len(a) < len(b) and not any(a | {x} in indep for x in b - a):
                problems.append(
                    f"augmentation fails for {sorted(map(repr, a))} and {sorted(map(repr, b))}"
                )
    return problems


# ---------------------------------------------------------------------------
# Feasible families
# ---------------------------------------------------------------------------


def brute_feasible(family: MatroidFamily, pairs, budget: EnumerationBudget = DEFAULT_BUDGET) -> tuple:
    """Whether some covering and some packing fit between the pairs ``(I_i, S_i)``.

    A compatible covering can always be thinned to one in which every
    element lies in exactly one part (the owner of its ``I`` if any), so
    single-owner assignments are scanned; packings are scanned directly.
    """
    budget.check(family)
    clock = _Clock(budget)
    pairs = [(frozenset(i), frozenset(s)) for i, s in pairs]
    k = len(family)
    full = family.ground.full
    owner = {e: i for i, (ii, _) in enumerate(pairs) for e in ii}
    order = family.ground.elements

    def cover(t, parts):
        clock.tick()
        if t == len(order):
            return True
        e = order[t]
        options = [owner[e]] if e in owner else [i for i in range(k) if e in pairs[i][1]]
        for i in options:
            grown = parts[i] | {e}
            if family.members[i]._independent(grown):
                parts[i] = grown
                if cover(t + 1, parts):
                    return True
                parts[i] = grown - {e}
        return False

    members = [_Member(m) for m in family.members]

    def pack(i, used):
        clock.tick()
        if i == k:
            return True
        ii, si = pairs[i]
        if ii & used:
            return False
        pool = family.ground.sort(si - used - ii)
        for extra in subsets(pool):
            p = ii | extra
            if members[i].spans(p) and pack(i + 1, used | p):
                return True
        return False

    has_cover = all(i <= s <= full for i, s in pairs) and cover(0, [frozenset()] * k)
    return has_cover, pack(0, frozenset())
