"""Augmenting paths for matroid union.

Given pairwise disjoint independent sets ``(I_i)`` and an uncovered element
``e``, :func:`augment` either re-arranges the sets so that they also cover
``e`` (a :class:`Primal` outcome) or returns a set ``X`` such that every
``I_i & X`` spans ``X + e`` (a :class:`DualWitness`). Iterating it over the
ground set gives :func:`find_covering`.

On a finite ground set a dual witness settles the question: the ranks of
``X`` add up to ``|X|`` while every member spans ``e`` from ``X``, so the
members' total rank on ``X + e`` is ``|X| < |X + e|`` and ``X + e`` has no
covering at all.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .assignment import COVERING, Assignment, disjoint
from .errors import ConsistencyError, PreconditionError
from .family import MatroidFamily
from .matroids import Element, Matroid


@dataclass(frozen=True)
class MemberVertex:
    """The digraph vertex standing for family member ``index``."""

    index: int

    def __repr__(self) -> str:
        return f"K{self.index}"


@dataclass(frozen=True)
class ExchangeDigraph:
    elements: tuple
    members: int
    arcs: tuple  # (source, target, member index) in source order, then member index

    def successors(self, x) -> list:
        return [t for s, t, _ in self.arcs if s == x]

    def arc_set(self) -> set:
        return {(s, t) for s, t, _ in self.arcs}


@dataclass(frozen=True)
class Primal:
    """Exchanged family ``parts``; member ``k`` gained ``f`` and ``parts[k] - f`` spans as before."""

    parts: tuple
    k: int
    f: Element
    path: tuple


@dataclass(frozen=True)
class DualWitness:
    X: frozenset
    element: Element


@dataclass(frozen=True)
class Uncoverable:
    """``X + element`` has no covering: rank sum on ``X`` is ``|X|`` and all members span ``element``."""

    X: frozenset
    element: Element

    kind = "uncoverable"

    def check(self, family: MatroidFamily) -> list:
        problems = []
        if self.element in self.X:
            problems.append("element lies inside X")
        if family.rank_sum(self.X) != len(self.X):
            problems.append("rank sum on X differs from |X|")
        for i, m in enumerate(family.members):
            if not m.spans(self.X, self.element):
                problems.append(f"member {i} does not span the element from X")
        return problems


def _check_disjoint_family(family: MatroidFamily, parts: Sequence[frozenset]) -> None:
    if len(parts) != len(family):
        raise PreconditionError("one independent set per member is required")
    for i, (m, part) in enumerate(zip(family.members, parts)):
        if not part <= family.ground.full:
            raise PreconditionError(f"part {i} leaves the ground set")
        if not m.indep(part):
            raise PreconditionError(f"part {i} is not independent")
    if not disjoint(parts):
        raise PreconditionError("parts must be pairwise disjoint")


def _out_arcs(family: MatroidFamily, parts: Sequence[frozenset], x):
    """Arcs leaving element ``x`` as ``(target, member)`` in member order."""
    ground = family.ground
    for i, m in enumerate(family.members):
        part = parts[i]
        if x in part or m.is_loop(x):
            # a loop's circuit is {x}: no arc at all
            continue
        if m.indep(part | {x}):
            yield MemberVertex(i), i
        else:
            for y in ground.sort(m.circuit(x, part)):
                if y != x:
                    yield y, i


def build_exchange_digraph(family: MatroidFamily, parts: Sequence[frozenset]) -> ExchangeDigraph:
    parts = tuple(frozenset(p) for p in parts)
    _check_disjoint_family(family, parts)
    arcs = []
    for x in family.elements:
        for target, i in _out_arcs(family, parts, x):
            arcs.append((x, target, i))
    return ExchangeDigraph(family.elements, len(family), tuple(arcs))


def simultaneous_exchange(m: Matroid, independent, adds: Sequence, removes: Sequence) -> frozenset:
    """Swap ``adds[t]`` in for ``removes[t]`` all at once, keeping the span.

    Requires ``removes[t]`` to lie on the fundamental circuit of ``adds[t]``
    but on no circuit of an earlier ``adds[s]``.
    """
    independent = frozenset(independent)
    if len(adds) != len(removes):
        raise PreconditionError("adds and removes must pair up")
    if not m.indep(independent):
        raise PreconditionError("exchange base set is dependent")
    circuits = []
    for e, f in zip(adds, removes):
        if e in independent or m.indep(independent | {e}):
            raise PreconditionError(f"{e!r} is not in span(I) \\ I")
        c = m.circuit(e, independent)
        if f not in c or f == e:
            raise PreconditionError(f"{f!r} is not on the fundamental circuit of {e!r}")
        if any(f in earlier for earlier in circuits):
            raise PreconditionError(f"{f!r} lies on an earlier circuit (jumping arc)")
        circuits.append(c)
    result = (independent | frozenset(adds)) - frozenset(removes)
    r = m.rank(independent)
    if not (m.indep(result) and len(result) == r and m.rank(result | independent) == r):
        raise ConsistencyError("simultaneous exchange changed the span")
    return result


def augment(family: MatroidFamily, parts: Sequence[frozenset], e: Element, check: bool = True):
    """Shortest augmenting path from ``e``, or the reachable set as a dual witness.

    Breadth-first search expands arcs lazily in (member, canonical element)
    order and keeps the first predecessor found, so the path is a
    deterministic shortest one; being shortest it has no jumping arcs.
    """
    parts = tuple(frozenset(p) for p in parts)
    if check:
        _check_disjoint_family(family, parts)
    if e not in family.ground:
        raise PreconditionError(f"unknown element {e!r}")
    if any(e in p for p in parts):
        raise PreconditionError(f"{e!r} is already covered")

    pred: dict = {e: None}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for target, i in _out_arcs(family, parts, x):
            if isinstance(target, MemberVertex):
                outcome = _exchange_along(family, parts, pred, x, i)
                if check:
                    _verify_primal(family, parts, e, outcome)
                return outcome
            if target not in pred:
                pred[target] = (x, i)
                queue.append(target)

    witness = DualWitness(frozenset(pred) - {e}, e)
    if check:
        _verify_dual(family, parts, witness)
    return witness


def _exchange_along(family, parts, pred, last, k) -> Primal:
    path = [last]
    via = []
    while pred[path[-1]] is not None:
        prev, i = pred[path[-1]]
        via.append(i)
        path.append(prev)
    path.reverse()
    via.reverse()
    # arc path[t] -> path[t+1] was produced by member via[t], owner of path[t+1]
    adds: dict = {}
    removes: dict = {}
    for t, i in enumerate(via):
        adds.setdefault(i, []).append(path[t])
        removes.setdefault(i, []).append(path[t + 1])
    new_parts = list(parts)
    for i in adds:
        new_parts[i] = simultaneous_exchange(family.members[i], parts[i], adds[i], removes[i])
    new_parts[k] = new_parts[k] | {last}
    return Primal(tuple(new_parts), k, last, tuple(path) + (MemberVertex(k),))


def _verify_primal(family: MatroidFamily, parts, e, outcome: Primal) -> None:
    new = outcome.parts
    k, f = outcome.k, outcome.f
    problems = []
    if not disjoint(new):
        problems.append("parts overlap")
    if frozenset().union(*new) != frozenset().union(*parts) | {e}:
        problems.append("union is not the old union plus e")
    for i, (m, old, cur) in enumerate(zip(family.members, parts, new)):
        if not m.indep(cur):
            problems.append(f"part {i} dependent")
            continue
        if i == k:
            if f not in cur or len(cur) != len(old) + 1:
                problems.append("member k did not grow by f")
            cur = cur - {f}
        elif len(cur) != len(old):
            problems.append(f"part {i} changed size")
        r = m.rank(old)
        if m.rank(cur) != r or m.rank(cur | old) != r:
            problems.append(f"span of part {i} changed")
    if problems:
        raise ConsistencyError("augmenting path certificate failed: " + "; ".join(problems))


def _verify_dual(family: MatroidFamily, parts, witness: DualWitness) -> None:
    x = witness.X
    if not x <= frozenset().union(*parts):
        raise ConsistencyError("dual witness leaves the covered set")
    target = x | {witness.element}
    for i, (m, part) in enumerate(zip(family.members, parts)):
        inside = part & x
        if m.rank(target) != len(inside):
            raise ConsistencyError(f"dual witness: member {i} does not span X + e from I_i & X")


def max_partial_covering(family: MatroidFamily, order=None):
    """Disjoint independent sets of maximum total size, plus the elements left over.

    Elements are offered one at a time; one that cannot be augmented now can
    never be, since the union of the members is itself a matroid.
    """
    parts = tuple(frozenset() for _ in family.members)
    uncovered = []
    for e in family.elements if order is None else order:
        out = augment(family, parts, e, check=False)
        if isinstance(out, Primal):
            parts = out.parts
        else:
            uncovered.append(e)
    return parts, uncovered


def find_covering(family: MatroidFamily):
    """A disjoint covering of the family, or an :class:`Uncoverable` certificate."""
    parts = tuple(frozenset() for _ in family.members)
    for e in family.elements:
        out = augment(family, parts, e)
        if isinstance(out, DualWitness):
            cert = Uncoverable(out.X, e)
            problems = cert.check(family)
            if problems:
                raise ConsistencyError("uncoverability certificate failed: " + "; ".join(problems))
            return cert
        parts = out.parts
    return Assignment(parts, COVERING)


def coverable_forcing(family: MatroidFamily, e: Element, j: int):
    """A covering with ``e`` in part ``j``, or ``None`` if no covering does that."""
    if e not in family.ground:
        raise PreconditionError(f"unknown element {e!r}")
    if j not in family.indices:
        raise PreconditionError(f"no member {j}")
    others = [i for i in family.indices if i != j]
    forced = family.declare_loops({e}, others)
    out = find_covering(forced)
    if isinstance(out, Uncoverable):
        return None
    assert e in out.parts[j]
    return out
