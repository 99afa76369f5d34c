"""Coverings, packings and partitionings, and the predicate that checks them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError
from .family import MatroidFamily

COVERING = "covering"
PACKING = "packing"
PARTITIONING = "partitioning"
MODES = (COVERING, PACKING, PARTITIONING)


@dataclass(frozen=True)
class Assignment:
    """One subset of the ground set per family member."""

    parts: tuple
    mode: str = COVERING

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown assignment mode {self.mode!r}")
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i: int) -> frozenset:
        return self.parts[i]

    def union(self) -> frozenset:
        return frozenset().union(*self.parts)

    def as_mode(self, mode: str) -> "Assignment":
        return Assignment(self.parts, mode)

    def sorted_parts(self, family: MatroidFamily) -> list:
        return [family.ground.sort(p) for p in self.parts]


@dataclass
class VerificationReport:
    mode: str
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def verify(family: MatroidFamily, assignment: Assignment, mode: str | None = None) -> VerificationReport:
    """Check ``assignment`` against the invariants of ``mode`` and list every violation."""
    mode = assignment.mode if mode is None else mode
    if mode not in MODES:
        raise InputError(f"unknown assignment mode {mode!r}")
    report = VerificationReport(mode)
    bad = report.violations
    parts = assignment.parts
    if len(parts) != len(family):
        bad.append(f"expected {len(family)} parts, got {len(parts)}")
        return report
    ground = family.ground
    for i, part in enumerate(parts):
        stray = part - ground.full
        if stray:
            bad.append(f"part {i} contains unknown elements {sorted(map(repr, stray))}")
    if bad:
        return report

    need_indep = mode in (COVERING, PARTITIONING)
    need_span = mode in (PACKING, PARTITIONING)
    for i, (m, part) in enumerate(zip(family.members, parts)):
        if need_indep and not m.indep(part):
            bad.append(f"part {i} is not independent in member {i}")
        if need_span and not m.is_spanning(part):
            bad.append(f"part {i} is not spanning in member {i}")
    if mode in (COVERING, PARTITIONING):
        missing = ground.full - assignment.union()
        if missing:
            bad.append(f"uncovered elements {ground.sort(missing)!r}")
    if mode in (PACKING, PARTITIONING):
        seen: dict = {}
        for i, part in enumerate(parts):
            for e in ground.sort(part):
                if e in seen:
                    bad.append(f"element {e!r} lies in parts {seen[e]} and {i}")
                else:
                    seen[e] = i
    return report


def disjoint(parts: Iterable[frozenset]) -> bool:
    seen: set = set()
    for p in parts:
        if seen & p:
            return False
        seen |= p
    return True
