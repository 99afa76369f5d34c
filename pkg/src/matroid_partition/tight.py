"""Tight sets and cowaves of a matroid family.

``X`` is tight when the restricted family has a covering and every covering
of it has only spanning parts. With finite ground sets this is the same as
"coverable and the members' ranks on ``X`` sum to ``|X|``", which is the
test used here; :mod:`matroid_partition.brute` keeps the literal definition
for cross-checking.

Largest tight set. Fix one disjoint covering ``(R_i)`` and its exchange
digraph. ``X`` is tight exactly when every ``R_i & X`` is a basis of ``X``,
i.e. when ``X`` is closed under the digraph's arcs and contains no element
with an arc into a member vertex. The largest tight set is therefore the set
of elements from which no member vertex can be reached.

Largest cowave. ``W`` is a cowave when ``E \\ W`` minimises
``g(Z) = sum_i r_i(Z) - |Z|`` over its supersets; the largest cowave is the
complement of the smallest global minimiser of ``g``, which is the set of
elements reachable from the uncovered ones after a maximum partial covering.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import matroids as mt
from .assignment import COVERING, Assignment, verify
from .errors import ConsistencyError, PreconditionError
from .family import MatroidFamily
from .matroids import Element
from .union import (
    MemberVertex,
    Uncoverable,
    _out_arcs,
    coverable_forcing,
    find_covering,
    max_partial_covering,
)


@dataclass(frozen=True)
class TightCertificate:
    X: frozenset
    covering: Assignment  # disjoint covering of the family restricted to X
    ranks: tuple

    def check(self, family: MatroidFamily) -> list:
        problems = []
        x = self.X
        if len(self.covering) != len(family):
            return ["witness covering has the wrong number of parts"]
        if self.covering.union() != x:
            problems.append("witness covering does not cover X exactly")
        seen = 0
        for i, (m, part) in enumerate(zip(family.members, self.covering.parts)):
            seen += len(part)
            if not m.indep(part):
                problems.append(f"witness part {i} is dependent")
            elif m.rank(part) != m.rank(x):
                problems.append(f"witness part {i} does not span X")
            if m.rank(x) != self.ranks[i]:
                problems.append(f"rank table entry {i} is wrong")
        if seen != len(x):
            problems.append("witness parts overlap")
        if sum(self.ranks) != len(x):
            problems.append("rank sum differs from |X|")
        return problems


@dataclass(frozen=True)
class SpanningTightSet:
    """A tight set together with an element it spans in the listed members."""

    tight: TightCertificate
    element: Element
    members: tuple

    @property
    def X(self) -> frozenset:
        return self.tight.X


@dataclass(frozen=True)
class CowaveWitness:
    W: frozenset
    covering: Assignment  # covering of the family contracted onto W


class CloneOf:
    """Fresh identifier for a parallel copy of ``element``."""

    __slots__ = ("element",)

    def __init__(self, element):
        self.element = element

    def __eq__(self, other):
        return isinstance(other, CloneOf) and other.element == self.element

    def __hash__(self):
        return hash(("CloneOf", self.element))

    def __repr__(self):
        return f"{self.element!r}^"


def _certify(family: MatroidFamily, x: frozenset, covering: Assignment) -> TightCertificate:
    ranks = tuple(m.rank(x) for m in family.members)
    cert = TightCertificate(x, covering, ranks)
    problems = cert.check(family)
    if problems:
        raise ConsistencyError("tight certificate failed: " + "; ".join(problems))
    return cert


def is_tight(family: MatroidFamily, x):
    x = family.ground.subset(x)
    ranks = tuple(m.rank(x) for m in family.members)
    if sum(ranks) != len(x):
        return None
    out = find_covering(family.restrict(x))
    if isinstance(out, Uncoverable):
        return None
    return _certify(family, x, out)


def _reaching_members(family: MatroidFamily, parts) -> frozenset:
    """Elements with a directed path to some member vertex."""
    into: dict = {x: [] for x in family.elements}
    reached = set()
    for x in family.elements:
        for target, _ in _out_arcs(family, parts, x):
            if isinstance(target, MemberVertex):
                reached.add(x)
            else:
                into[target].append(x)
    frontier = deque(reached)
    while frontier:
        y = frontier.popleft()
        for x in into[y]:
            if x not in reached:
                reached.add(x)
                frontier.append(x)
    return frozenset(reached)


def _reachable_from(family: MatroidFamily, parts, sources) -> frozenset:
    reached = set(sources)
    frontier = deque(sources)
    while frontier:
        x = frontier.popleft()
        for target, _ in _out_arcs(family, parts, x):
            if not isinstance(target, MemberVertex) and target not in reached:
                reached.add(target)
                frontier.append(target)
    return frozenset(reached)


def largest_tight_set(family: MatroidFamily, method: str = "reachability") -> TightCertificate:
    """The union of all tight sets, which is itself tight."""
    cover = find_covering(family)
    if isinstance(cover, Uncoverable):
        raise PreconditionError("tight sets form a lattice only for coverable families")
    if method == "reachability":
        t = family.ground.full - _reaching_members(family, cover.parts)
        return _certify(family, t, Assignment(tuple(p & t for p in cover.parts), COVERING))
    if method == "clone":
        t = frozenset(x for x in family.elements if not _clone_coverable(family, x))
        cert = is_tight(family, t)
        if cert is None:
            raise ConsistencyError("clone test produced a non-tight set")
        return cert
    raise ValueError(f"unknown method {method!r}")


def _clone_coverable(family: MatroidFamily, x) -> bool:
    hat = CloneOf(x)
    while hat in family.ground:
        hat = CloneOf(hat)
    cloned = MatroidFamily(
        mt.GroundSet(family.elements + (hat,)),
        tuple(mt.parallel_clone(m, x, hat) for m in family.members),
        family.roles,
    )
    return not isinstance(find_covering(cloned), Uncoverable)


def is_cowave(family: MatroidFamily, w):
    w = family.ground.subset(w)
    out = find_covering(family.contract_onto(w))
    if isinstance(out, Uncoverable):
        return None
    return CowaveWitness(w, out)


def largest_cowave(family: MatroidFamily) -> CowaveWitness:
    parts, uncovered = max_partial_covering(family)
    w = family.ground.full - _reachable_from(family, parts, uncovered)
    witness = is_cowave(family, w)
    if witness is None:
        raise ConsistencyError("largest cowave candidate is not a cowave")
    return witness


def largest_cowave_avoiding(family: MatroidFamily, e: Element) -> CowaveWitness:
    """Union of all cowaves missing ``e``: the largest cowave of ``family / e``."""
    if e not in family.ground:
        raise PreconditionError(f"unknown element {e!r}")
    w = largest_cowave(family.contract({e})).W
    witness = is_cowave(family, w)
    if witness is None:
        raise ConsistencyError("cowave of the contraction is not a cowave of the family")
    return witness


def one_more_cover(family: MatroidFamily, e: Element):
    """A covering of the whole family, or a tight ``X`` missing ``e`` that spans ``e`` everywhere."""
    if e not in family.ground:
        raise PreconditionError(f"unknown element {e!r}")
    rest = family.ground.full - {e}
    if isinstance(find_covering(family.restrict(rest)), Uncoverable):
        raise PreconditionError("the ground set minus e must be coverable")
    out = find_covering(family)
    if isinstance(out, Assignment):
        return out
    w = largest_cowave_avoiding(family, e).W
    x = rest - w
    cert = is_tight(family, x)
    if cert is None:
        raise ConsistencyError("complement of the largest cowave is not tight")
    for i, m in enumerate(family.members):
        if not m.spans(x, e):
            raise ConsistencyError(f"tight obstruction does not span {e!r} in member {i}")
    return SpanningTightSet(cert, e, tuple(family.indices))


def never_in_cover(family: MatroidFamily, e: Element, j: int):
    """A tight ``X`` with ``e`` in ``span_j(X) \\ X`` if no covering puts ``e`` in part ``j``."""
    if isinstance(find_covering(family), Uncoverable):
        raise PreconditionError("family must admit a covering")
    if coverable_forcing(family, e, j) is not None:
        return None
    others = [i for i in family.indices if i != j]
    forced = family.declare_loops({e}, others)
    out = one_more_cover(forced, e)
    if isinstance(out, Assignment):
        raise ConsistencyError("forced family became coverable")
    x = out.X
    cert = is_tight(family, x)
    if cert is None or e in x or not family.members[j].spans(x, e):
        raise ConsistencyError("never_in_cover witness failed re-verification")
    return SpanningTightSet(cert, e, (j,))


def extend_covering_through_tight(family: MatroidFamily, x, q: Assignment) -> Assignment:
    """Extend a covering ``q`` of tight ``x`` to a covering of the whole family."""
    x = family.ground.subset(x)
    if is_tight(family, x) is None:
        raise PreconditionError("X is not tight")
    if len(q) != len(family) or q.union() != x:
        raise PreconditionError("Q must cover exactly X")
    for i, (m, part) in enumerate(zip(family.members, q.parts)):
        if not m.indep(part):
            raise PreconditionError(f"part {i} of Q is dependent")
    rest = find_covering(family.contract(x))
    if isinstance(rest, Uncoverable):
        raise PreconditionError("family admits no covering")
    out = Assignment(tuple(a | b for a, b in zip(q.parts, rest.parts)), COVERING)
    if not verify(family, out):
        raise ConsistencyError("extended covering failed verification")
    return out
