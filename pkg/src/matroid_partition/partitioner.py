"""Base partitionings from a packing and a covering.

:func:`synthesize_partition` walks the ground set in canonical order and, for
each element, extends a feasible family so that the element is covered, is
spanned by ``I_i`` in every finitary member, is co-spanned by ``E \\ S_i`` in
every cofinitary member, and no ``S_i`` meets another member's ``I_j``. Once
every element has been handled ``I_i = S_i`` is a base of ``M_i`` and the
``I_i`` partition ``E``.

:func:`reduce_to_three` rewrites any family as an equivalent three-member
family on ``E x K``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

from . import matroids as mt
from .assignment import COVERING, PARTITIONING, Assignment, verify
from .brute import DEFAULT_BUDGET, EnumerationBudget, brute_coverings, brute_packings
from .errors import ConsistencyError, PreconditionError
from .family import MatroidFamily, Role
from .feasible import (
    FeasibleFamily,
    Unpackable,
    cospan_element,
    cover_element,
    covering_feasible,
    normalize,
    packing_feasible,
    seed,
    span_element,
)
from .matroids import GroundSet
from .union import Uncoverable

__all__ = [
    "Absent",
    "Assignment",
    "ReductionMap",
    "ShortcutReport",
    "finite_shortcut_check",
    "reduce_to_three",
    "synthesize_partition",
    "verify",
]


@dataclass(frozen=True)
class Absent:
    """No partitioning exists; ``certificate`` says why."""

    certificate: Uncoverable | Unpackable
    family: MatroidFamily = field(compare=False, repr=False)
    reduced: bool = False

    @property
    def kind(self) -> str:
        return self.certificate.kind

    def check(self) -> list:
        return self.certificate.check(self.family)


# ---------------------------------------------------------------------------
# Reduction to three members
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ReductionMap:
    """Element ``e`` of the source becomes the pairs ``(e, i)``, one per member ``i``.

    Member 0 of the reduced family carries the finitary members on their
    slices, member 1 the cofinitary ones, and member 2 has the single
    circuit ``{e} x K`` for each ``e``.
    """

    source: MatroidFamily
    reduced: MatroidFamily
    finitary: frozenset

    def carrier(self, i: int) -> int:
        return 0 if i in self.finitary else 1

    def forward(self, a: Assignment) -> Assignment:
        src = self.source
        k = len(src)
        carried = [frozenset(), frozenset()]
        for i, part in enumerate(a.parts):
            carried[self.carrier(i)] |= frozenset((e, i) for e in part)
        third = set()
        for e in src.elements:
            holders = [i for i in range(k) if e in a.parts[i]]
            if a.mode == COVERING:
                # the covering needs (e, i_e) free for some part holding e
                third |= {(e, i) for i in range(k) if i != holders[0]}
            else:
                # packings and partitionings must stay disjoint from the slices used
                third |= {(e, i) for i in range(k) if i not in holders}
        out = Assignment((carried[0], carried[1], frozenset(third)), a.mode)
        report = verify(self.reduced, out)
        if not report.valid:
            raise ConsistencyError("forward translation failed: " + "; ".join(report.violations))
        return out

    def backward(self, a: Assignment) -> Assignment:
        src = self.source
        parts = []
        for i in range(len(src)):
            carrier = a.parts[self.carrier(i)]
            parts.append(frozenset(e for e in src.elements if (e, i) in carrier))
        out = Assignment(tuple(parts), a.mode)
        report = verify(src, out)
        if not report.valid:
            raise ConsistencyError("backward translation failed: " + "; ".join(report.violations))
        return out


def reduce_to_three(family: MatroidFamily) -> tuple:
    k = len(family)
    elements = family.elements
    ground = GroundSet((e, i) for e in elements for i in range(k))
    fin = frozenset(family.finitary())

    def carrier(indices):
        parts = []
        for i in range(k):
            if i in indices:
                parts.append(mt.relabel(family.members[i], {e: (e, i) for e in elements}))
            else:
                parts.append(mt.zero([(e, i) for e in elements]))
        return mt.direct_sum(parts)

    cofin = frozenset(range(k)) - fin
    circuits = mt.direct_sum(
        [mt.dual(mt.uniform([(e, i) for i in range(k)], 1)) for e in elements]
    )
    reduced = MatroidFamily(
        ground,
        (carrier(fin), carrier(cofin), circuits),
        (Role.FINITARY, Role.COFINITARY, Role.COFINITARY),
    )
    return reduced, ReductionMap(family, reduced, fin)


# ---------------------------------------------------------------------------
# Synthesis
# ---------------------------------------------------------------------------


def _step_checks(family: MatroidFamily, prev: FeasibleFamily, nxt: FeasibleFamily, e) -> None:
    if not nxt.is_extension_of(prev):
        raise ConsistencyError(f"step for {e!r} revoked an earlier decision")
    if e not in nxt.covered():
        raise ConsistencyError(f"{e!r} is not covered after its step")
    full = family.ground.full
    for i, (m, role) in enumerate(zip(family.members, family.roles)):
        if role is Role.FINITARY and not m.spans(nxt.I[i], e):
            raise ConsistencyError(f"I_{i} does not span {e!r}")
        if role is Role.COFINITARY:
            dual_rank = lambda z: len(z) + m.rank(full - z) - m.rank()  # noqa: E731
            rest = full - nxt.S[i]
            if e not in rest and dual_rank(rest | {e}) != dual_rank(rest):
                raise ConsistencyError(f"E \\ S_{i} does not co-span {e!r}")
    covered = nxt.covered()
    for i, s in enumerate(nxt.S):
        if s & (covered - nxt.I[i]):
            raise ConsistencyError(f"S_{i} meets another member's I_j")


def synthesize_partition(
    family: MatroidFamily,
    use_reduction: bool = False,
    on_step: Callable[[object, FeasibleFamily], None] | None = None,
):
    """A base partitioning (an :class:`Assignment`) or :class:`Absent` with a certificate."""
    if use_reduction and len(family) > 0:
        # with no members E x K is empty, so the reduced family would lose the elements
        reduced, rmap = reduce_to_three(family)
        out = synthesize_partition(reduced, on_step=on_step)
        if isinstance(out, Absent):
            return replace(out, reduced=True)
        return _final(family, rmap.backward(out))

    if len(family) == 0 and family.elements:
        # no member can hold anything, so there is not even a seed family
        return _absent(family, Uncoverable(frozenset(), family.elements[0]))
    start = seed(family)
    cover = covering_feasible(start)
    if isinstance(cover, Uncoverable):
        return _absent(family, cover)
    pack = packing_feasible(start)
    if isinstance(pack, Unpackable):
        return _absent(pack.family, pack)
    cur = replace(start, covering=cover, packing=pack)

    for e in family.elements:
        nxt = cover_element(cur, e)
        for i in family.finitary():
            nxt = span_element(nxt, e, i)
        for i in family.cofinitary():
            nxt = cospan_element(nxt, e, i)
        nxt = normalize(nxt)
        _step_checks(family, cur, nxt, e)
        if on_step is not None:
            on_step(e, nxt)
        cur = nxt

    if cur.I != cur.S:
        raise ConsistencyError("I_i and S_i differ after the last element")
    return _final(family, Assignment(cur.I, PARTITIONING))


def _absent(family: MatroidFamily, cert) -> Absent:
    out = Absent(cert, family)
    problems = out.check()
    if problems:
        raise ConsistencyError(f"{cert.kind} certificate failed: " + "; ".join(problems))
    return out


def _final(family: MatroidFamily, a: Assignment) -> Assignment:
    report = verify(family, a, PARTITIONING)
    if not report.valid:
        raise ConsistencyError("synthesized partitioning failed: " + "; ".join(report.violations))
    return a.as_mode(PARTITIONING)


# ---------------------------------------------------------------------------
# Finite sanity check
# ---------------------------------------------------------------------------


@dataclass
class ShortcutReport:
    coverings: int
    packings: int
    violations: list

    @property
    def valid(self) -> bool:
        return not self.violations


def finite_shortcut_check(family: MatroidFamily, budget: EnumerationBudget = DEFAULT_BUDGET) -> ShortcutReport:
    """Check by enumeration that every packing and every covering is a partitioning.

    On a finite ground set this holds as soon as both exist: the members'
    ranks then sum to ``|E|`` from both sides.
    """
    coverings = brute_coverings(family, budget)
    packings = brute_packings(family, budget)
    if not coverings or not packings:
        raise PreconditionError("the family needs both a covering and a packing")
    violations = []
    for a in coverings + packings:
        report = verify(family, a, PARTITIONING)
        if not report.valid:
            parts = a.sorted_parts(family)
            violations.append(f"{a.mode} {parts!r} is not a partitioning")
    return ShortcutReport(len(coverings), len(packings), violations)
