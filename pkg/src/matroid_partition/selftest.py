"""Randomised self-check: algorithms against the brute-force oracle.

Each trial draws one seeded random family and runs every applicable check
on it. The report counts runs and failures per check and lists each failure
with its trial number; it contains no timings, so equal arguments give
identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import combinations

from . import brute
from .assignment import Assignment, verify
from .errors import MatroidError
from .family import MatroidFamily, Role
from .feasible import (
    cospan_element,
    cover_element,
    eliminate_largest_tight,
    make_feasible,
    normalize,
    packing_feasible,
    seed,
    span_element,
    with_witnesses,
)
from .generators import random_family, random_pairs
from .partitioner import reduce_to_three, synthesize_partition
from .tight import is_tight, largest_tight_set
from .union import find_covering

CHECKS = (
    "covering-oracle",
    "packing-oracle",
    "partition-oracle",
    "theorem-instance",
    "tight-agreement",
    "tight-largest",
    "lattice-closure",
    "reduction-equivalence",
    "role-invariance",
    "feasibility-preservation",
)

# fault names accepted by the hidden --inject-fault option
FAULTS = ("covering", "tight")


@dataclass
class SelftestReport:
    seed: int
    max_elements: int
    trials: int
    runs: dict = field(default_factory=lambda: {c: 0 for c in CHECKS})
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        failed = {c: 0 for c in CHECKS}
        for f in self.failures:
            failed[f["check"]] += 1
        return {
            "seed": self.seed,
            "max_elements": self.max_elements,
            "trials": self.trials,
            "checks": {c: {"run": self.runs[c], "failed": failed[c]} for c in CHECKS},
            "failures": self.failures,
            "ok": self.ok,
        }


class _Oracles:
    """The algorithms under test, optionally corrupted for fault injection."""

    def __init__(self, faults):
        self.faults = frozenset(faults)
        unknown = self.faults - set(FAULTS)
        if unknown:
            raise ValueError(f"unknown fault {sorted(unknown)}")

    def covers(self, family) -> bool:
        found = isinstance(find_covering(family), Assignment)
        return (not found) if "covering" in self.faults else found

    def tight(self, family, x) -> bool:
        found = is_tight(family, x) is not None
        return (not found) if ("tight" in self.faults and x) else found


def _flip_role(family: MatroidFamily, i: int) -> MatroidFamily:
    roles = list(family.roles)
    roles[i] = roles[i].flipped()
    return MatroidFamily(family.ground, family.members, tuple(roles))


def _with_role(family: MatroidFamily, i: int, role: Role) -> MatroidFamily:
    roles = list(family.roles)
    roles[i] = role
    return MatroidFamily(family.ground, family.members, tuple(roles))


def run_selftest(max_elements: int = 7, trials: int = 500, seed_value: int = 0,
                 faults=()) -> SelftestReport:
    rng = random.Random(seed_value)
    oracles = _Oracles(faults)
    report = SelftestReport(seed_value, max_elements, trials)
    for t in range(trials):
        family = random_family(rng, max_elements=max(0, max_elements), max_members=4)
        _trial(rng, t, family, oracles, report)
    return report


def _trial(rng, t, family, oracles, report) -> None:
    def check(name, fn):
        report.runs[name] += 1
        try:
            problem = fn()
        except MatroidError as ex:
            problem = f"{type(ex).__name__}: {ex}"
        if problem:
            report.failures.append({"trial": t, "check": name, "detail": problem,
                                    "family": repr(family)})

    n, k = len(family.ground), len(family)
    facts = {}

    def covering_oracle():
        facts["cover"] = brute.has_covering(family)
        got = oracles.covers(family)
        if got != facts["cover"]:
            return f"find_covering says {got}, enumeration says {facts['cover']}"

    def packing_oracle():
        facts["pack"] = brute.has_packing(family)
        got = isinstance(packing_feasible(seed(family)), Assignment)
        if got != facts["pack"]:
            return f"packing_feasible says {got}, enumeration says {facts['pack']}"

    def partition_oracle():
        facts["part"] = brute.has_partitioning(family)
        out = synthesize_partition(family)
        facts["synth"] = out
        got = isinstance(out, Assignment)
        if got and not verify(family, out).valid:
            return "synthesized partitioning fails verification"
        if not got and out.check():
            return "absence certificate fails its own check"
        if got != facts["part"]:
            return f"synthesize_partition says {got}, enumeration says {facts['part']}"

    check("covering-oracle", covering_oracle)
    check("packing-oracle", packing_oracle)
    check("partition-oracle", partition_oracle)
    if {"cover", "pack", "part"} <= facts.keys():
        check("theorem-instance", lambda: None if (facts["cover"] and facts["pack"]) == facts["part"]
              else "covering and packing exist but no partitioning (or the reverse)")

    if n <= 6 and k <= 3:
        _tight_checks(family, oracles, check, facts.get("cover"))
    if k >= 1 and n * k <= 8:
        check("reduction-equivalence", lambda: _reduction_check(family))
    if k >= 1:
        i = rng.randrange(k)
        check("role-invariance", lambda: _role_check(family, i))
    out = facts.get("synth")
    if isinstance(out, Assignment) and n > 0:
        check("feasibility-preservation", lambda: _preservation_check(rng, family, out))


def _tight_checks(family, oracles, check, coverable) -> None:
    sets = list(brute.subsets(family.elements))
    truth = {}

    def agreement():
        for x in sets:
            truth[x] = brute.brute_is_tight(family, x)
            if oracles.tight(family, x) != truth[x]:
                return f"rank-sum test and enumeration disagree on {family.ground.sort(x)!r}"

    check("tight-agreement", agreement)
    if len(truth) != len(sets):
        return
    if not coverable:
        return  # tight sets form a lattice only inside a coverable family
    tight = [x for x in sets if truth[x]]
    union = frozenset().union(*tight)
    check("tight-largest", lambda: None if largest_tight_set(family).X == union
          else "largest_tight_set differs from the union of all tight sets")

    def closure():
        for a, b in combinations(tight, 2):
            if not truth[a | b]:
                return "union of two tight sets is not tight"
        if tight and not truth[union]:
            return "union of all tight sets is not tight"

    check("lattice-closure", closure)


def _reduction_check(family) -> str | None:
    reduced, rmap = reduce_to_three(family)
    budget = brute.EnumerationBudget(max_elements=max(8, len(reduced.ground)))
    for name, fn in (("covering", brute.has_covering), ("packing", brute.has_packing),
                     ("partitioning", brute.has_partitioning)):
        if fn(family) != fn(reduced, budget):
            return f"reduction changes existence of a {name}"
    direct = isinstance(synthesize_partition(family), Assignment)
    via = isinstance(synthesize_partition(family, use_reduction=True), Assignment)
    if direct != via:
        return "synthesis with and without the reduction disagree"


def _role_check(family, i) -> str | None:
    a = isinstance(synthesize_partition(family), Assignment)
    b = isinstance(synthesize_partition(_flip_role(family, i)), Assignment)
    if a != b:
        return f"flipping the role of member {i} changed the outcome"


def _preservation_check(rng, family, partition: Assignment) -> str | None:
    pairs = random_pairs(rng, family, partition.parts if rng.random() < 0.5 else None)
    try:
        start = make_feasible(family, pairs)
    except MatroidError:
        return None  # structurally invalid draw: nothing to preserve
    has_cover, has_pack = brute.brute_feasible(family, pairs)
    if not (has_cover and has_pack):
        return None
    start = with_witnesses(start)
    e = rng.choice(family.elements)
    j = rng.randrange(len(family))
    steps = {
        "cover_element": lambda: cover_element(start, e),
        "span_element": lambda: span_element(
            replace(start, family=_with_role(family, j, Role.FINITARY)), e, j),
        "cospan_element": lambda: cospan_element(
            replace(start, family=_with_role(family, j, Role.COFINITARY)), e, j),
        "eliminate_largest_tight": lambda: eliminate_largest_tight(start),
        "normalize": lambda: normalize(start),
    }
    for name, step in steps.items():
        out = step()
        if not out.is_extension_of(start):
            return f"{name} did not return an extension"
        if not all(brute.brute_feasible(family, out.pairs)):
            return f"{name} returned an infeasible family"
    return None
