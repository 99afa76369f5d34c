"""Feasible families ``(<I_i, S_i>)`` and the steps that extend them.

A family of pairs is feasible when some covering and some packing both fit
between ``I_i`` and ``S_i`` member-wise. Every value produced here carries
both witnesses (a compatible covering and a compatible packing), so later
steps re-check them instead of searching again.

Packing questions are turned into covering questions: for two members by
plain duality, in general through the auxiliary family on ``E x K``
(:func:`hat_family`).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import matroids as mt
from .assignment import COVERING, PACKING, Assignment, verify
from .errors import ConsistencyError, FeasibilityError, PreconditionError
from .family import MatroidFamily, Role
from .matroids import Element, GroundSet, Matroid
from .tight import (
    TightCertificate,
    extend_covering_through_tight,
    largest_tight_set,
    never_in_cover,
)
from .union import Uncoverable, coverable_forcing, find_covering


@dataclass(frozen=True, eq=False)
class FeasibleFamily:
    family: MatroidFamily
    I: tuple
    S: tuple
    covering: Assignment | None = None
    packing: Assignment | None = None

    @property
    def pairs(self) -> list:
        return list(zip(self.I, self.S))

    def covered(self) -> frozenset:
        return frozenset().union(*self.I)

    def same_pairs(self, other: "FeasibleFamily") -> bool:
        return self.I == other.I and self.S == other.S

    def is_extension_of(self, other: "FeasibleFamily") -> bool:
        return all(
            i0 <= i1 <= s1 <= s0 for i0, s0, i1, s1 in zip(other.I, other.S, self.I, self.S)
        )


@dataclass(frozen=True)
class Unpackable:
    """No compatible packing: the covering problem it was translated to has no solution."""

    route: str
    certificate: Uncoverable
    family: MatroidFamily = field(compare=False, repr=False, default=None)

    kind = "unpackable"

    def check(self, family: MatroidFamily | None = None) -> list:
        """Problems with the certificate, checked against the covering family it is about."""
        target = self.family if family is None else family
        return self.certificate.check(target)


def make_feasible(family: MatroidFamily, pairs: Sequence, covering=None, packing=None) -> FeasibleFamily:
    """Validate the four structural conditions on ``pairs``.

    Whether a compatible covering or packing exists is a separate question
    (:func:`covering_feasible`, :func:`packing_feasible`).
    """
    pairs = list(pairs)
    if len(pairs) != len(family):
        raise FeasibilityError("one pair per member", detail=f"got {len(pairs)}")
    full = family.ground.full
    ins, ss = [], []
    for i, (ii, si) in enumerate(pairs):
        ii, si = frozenset(ii), frozenset(si)
        if not (ii <= si <= full):
            raise FeasibilityError("I_i ⊆ S_i ⊆ E", i)
        m = family.members[i]
        if not m.indep(ii):
            raise FeasibilityError("I_i independent", i)
        if not m.is_spanning(si):
            raise FeasibilityError("S_i spanning", i)
        ins.append(ii)
        ss.append(si)
    seen: set = set()
    for i, ii in enumerate(ins):
        if seen & ii:
            raise FeasibilityError("I_i pairwise disjoint", i)
        seen |= ii
    if frozenset().union(*ss) != full:
        raise FeasibilityError("union of S_i is E")
    return FeasibleFamily(family, tuple(ins), tuple(ss), covering, packing)


def seed(family: MatroidFamily) -> FeasibleFamily:
    """``I_i = {}`` and ``S_i = E`` for every member."""
    full = family.ground.full
    return make_feasible(family, [(frozenset(), full)] * len(family))


def _compatible(ff: FeasibleFamily, a: Assignment | None, mode: str) -> bool:
    if a is None or len(a) != len(ff.I):
        return False
    if not all(i <= p <= s for i, p, s in zip(ff.I, a.parts, ff.S)):
        return False
    return verify(ff.family, a, mode).valid


def quotient(ff: FeasibleFamily) -> MatroidFamily:
    """Contract ``I_i``, delete the other ``I_j``, declare elements outside ``S_i`` loops."""
    family = ff.family
    covered = ff.covered()
    rest = family.ground.full - covered
    members = []
    for i, m in enumerate(family.members):
        others = covered - ff.I[i]
        members.append(mt.declare_loops(mt.minor(m, ff.I[i], others), rest - ff.S[i]))
    return MatroidFamily(family.ground.restrict(rest), tuple(members), family.roles)


def lift_covering(ff: FeasibleFamily, cover: Assignment) -> Assignment:
    """Quotient covering ``(R_i)`` to the compatible covering ``(R_i | I_i)``."""
    return Assignment(tuple(r | i for r, i in zip(cover.parts, ff.I)), COVERING)


def lower_covering(ff: FeasibleFamily, cover: Assignment) -> Assignment:
    """Compatible covering to a quotient covering: drop every ``I_j``."""
    covered = ff.covered()
    return Assignment(tuple(r - covered for r in cover.parts), COVERING)



def covering_feasible(ff: FeasibleFamily):
    """A compatible covering, or the :class:`Uncoverable` certificate of the quotient."""
    if _compatible(ff, ff.covering, COVERING):
        return ff.covering
    out = find_covering(quotient(ff))
    if isinstance(out, Uncoverable):
        return out
    lifted = lift_covering(ff, out)
    if not _compatible(ff, lifted, COVERING):
        raise ConsistencyError("lifted quotient covering is not compatible")
    return lifted


# ---------------------------------------------------------------------------
# Packings via duality
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HatFamily:
    """Family on ``E x K``: duals on their own slice plus one transversal member.

    Member ``i < |K|`` is the dual of ``M_i`` copied onto ``E x {i}`` with
    every other pair a loop; member ``|K|`` accepts a set iff it meets each
    ``{e} x K`` at most once.
    """

    source: MatroidFamily
    family: MatroidFamily

    @property
    def k(self) -> int:
        return len(self.source)

    def encode(self, ff: FeasibleFamily) -> FeasibleFamily:
        k = self.k
        full = self.source.ground.full
        pairs = [
            (_slot(full - s, i), _slot(full - ii, i)) for i, (ii, s) in enumerate(zip(ff.I, ff.S))
        ]
        pairs.append((frozenset(), self.family.ground.full))
        hat_packing = hat_covering = None
        if ff.covering is not None:
            r = ff.covering.parts
            parts = [_slot(full - r[i], i) for i in range(k)]
            owner = {}
            for e in self.source.elements:
                owner[e] = next(i for i in range(k) if e in r[i])
            parts.append(frozenset((e, owner[e]) for e in self.source.elements))
            hat_packing = Assignment(tuple(parts), PACKING)
        if ff.packing is not None:
            p = ff.packing.parts
            parts = [_slot(full - p[i], i) for i in range(k)]
            parts.append(frozenset().union(*(_slot(p[i], i) for i in range(k))))
            hat_covering = Assignment(tuple(parts), COVERING)
        return make_feasible(self.family, pairs, hat_covering, hat_packing)

    def decode(self, hat_ff: FeasibleFamily) -> FeasibleFamily:
        k = self.k
        elements = self.source.elements
        pairs = []
        for i in range(k):
            pairs.append(
                (
                    frozenset(e for e in elements if (e, i) not in hat_ff.S[i]),
                    frozenset(e for e in elements if (e, i) not in hat_ff.I[i]),
                )
            )
        covering = packing = None
        if hat_ff.packing is not None:
            hp = hat_ff.packing.parts
            covering = Assignment(
                tuple(frozenset(e for e in elements if (e, i) not in hp[i]) for i in range(k)),
                COVERING,
            )
        if hat_ff.covering is not None:
            hc = hat_ff.covering.parts
            packing = Assignment(
                tuple(frozenset(e for e in elements if (e, i) not in hc[i]) for i in range(k)),
                PACKING,
            )
        return make_feasible(self.source, pairs, covering, packing)

    def hat_covering_to_packing(self, cover: Assignment) -> Assignment:
        elements = self.source.elements
        return Assignment(
            tuple(
                frozenset(e for e in elements if (e, i) not in cover.parts[i])
                for i in range(self.k)
            ),
            PACKING,
        )


def _slot(subset: Iterable, i: int) -> frozenset:
    return frozenset((e, i) for e in subset)


def hat_family(family: MatroidFamily) -> HatFamily:
    k = len(family)
    elements = family.elements
    ground = GroundSet((e, i) for e in elements for i in range(k))
    members = []
    for i, m in enumerate(family.members):
        copy = mt.relabel(mt.dual(m), {e: (e, i) for e in elements})
        elsewhere = mt.zero([(e, j) for e in elements for j in range(k) if j != i])
        members.append(mt.direct_sum([copy, elsewhere]))
    members.append(mt.partition([([(e, i) for i in range(k)], 1) for e in elements]))
    roles = [r.flipped() for r in family.roles] + [Role.FINITARY]
    return HatFamily(family, MatroidFamily(ground, tuple(members), tuple(roles)))


def _dual_pairs(ff: FeasibleFamily) -> list:
    full = ff.family.ground.full
    return [(full - s, full - i) for i, s in zip(ff.I, ff.S)]


def _complement(a: Assignment | None, full: frozenset, mode: str) -> Assignment | None:
    if a is None:
        return None
    return Assignment(tuple(full - p for p in a.parts), mode)


def _dual_feasible(ff: FeasibleFamily) -> FeasibleFamily:
    """The two-member dual encoding ``<E \\ S_i, E \\ I_i>`` on the dual family."""
    full = ff.family.ground.full
    return make_feasible(
        ff.family.dual(),
        _dual_pairs(ff),
        covering=_complement(ff.packing, full, COVERING),
        packing=_complement(ff.covering, full, PACKING),
    )


def _packing_by_dual(ff: FeasibleFamily):
    full = ff.family.ground.full
    dual_ff = _dual_feasible(replace(ff, covering=None, packing=None))
    out = covering_feasible(dual_ff)
    if isinstance(out, Uncoverable):
        return Unpackable("dual", out, quotient(dual_ff))
    return _complement(out, full, PACKING)


def _packing_by_hat(ff: FeasibleFamily):
    hat = hat_family(ff.family)
    hat_ff = hat.encode(replace(ff, covering=None, packing=None))
    out = covering_feasible(hat_ff)
    if isinstance(out, Uncoverable):
        return Unpackable("hat", out, quotient(hat_ff))
    return hat.hat_covering_to_packing(out)


def packing_feasible(ff: FeasibleFamily, route: str | None = None, cross_check: bool = False):
    """A compatible packing, or an :class:`Unpackable` certificate.

    ``route`` is ``"dual"`` (two members only) or ``"hat"``; by default the
    dual route is taken whenever it applies.
    """
    if route is None and _compatible(ff, ff.packing, PACKING):
        return ff.packing
    if route is None:
        route = "dual" if len(ff.family) == 2 else "hat"
    if route == "dual" and len(ff.family) != 2:
        raise PreconditionError("the dual route needs exactly two members")
    out = _packing_by_dual(ff) if route == "dual" else _packing_by_hat(ff)
    if isinstance(out, Assignment) and not _compatible(ff, out, PACKING):
        raise ConsistencyError(f"packing from the {route} route is not compatible")
    if cross_check and len(ff.family) == 2:
        other = _packing_by_hat(ff) if route == "dual" else _packing_by_dual(ff)
        if isinstance(other, Assignment) != isinstance(out, Assignment):
            raise ConsistencyError("dual and hat routes disagree on packing feasibility")
        if isinstance(other, Assignment) and not _compatible(ff, other, PACKING):
            raise ConsistencyError("cross-check packing is not compatible")
    return out


def with_witnesses(ff: FeasibleFamily) -> FeasibleFamily:
    """Attach both witnesses, or raise :class:`PreconditionError` if ``ff`` is infeasible."""
    cover = covering_feasible(ff)
    if not isinstance(cover, Assignment):
        raise PreconditionError("family is not covering-feasible")
    pack = packing_feasible(ff)
    if not isinstance(pack, Assignment):
        raise PreconditionError("family is not packing-feasible")
    if cover is ff.covering and pack is ff.packing:
        return ff
    return replace(ff, covering=cover, packing=pack)


def _checked(ff: FeasibleFamily, origin: FeasibleFamily, what: str) -> FeasibleFamily:
    if not ff.is_extension_of(origin):
        raise ConsistencyError(f"{what}: result is not an extension")
    if not _compatible(ff, ff.covering, COVERING):
        raise ConsistencyError(f"{what}: covering witness failed")
    if not _compatible(ff, ff.packing, PACKING):
        raise ConsistencyError(f"{what}: packing witness failed")
    return ff


# ---------------------------------------------------------------------------
# Extension steps
# ---------------------------------------------------------------------------


def normalize(ff: FeasibleFamily) -> FeasibleFamily:
    """Shrink each ``S_i`` to avoid the other members' ``I_j``."""
    ff = with_witnesses(ff)
    covered = ff.covered()
    new_s = tuple(s - (covered - i) for i, s in zip(ff.I, ff.S))
    if new_s == ff.S:
        return ff
    cover = Assignment(
        tuple(r - (covered - i) for r, i in zip(ff.covering.parts, ff.I)), COVERING
    )
    out = make_feasible(ff.family, list(zip(ff.I, new_s)), cover, ff.packing)
    return _checked(out, ff, "normalize")


def eliminate_tight(ff: FeasibleFamily, cert: TightCertificate) -> FeasibleFamily:
    """Move a tight set of the quotient into the ``I_i`` along its covering."""
    ff = with_witnesses(ff)
    x = cert.X
    if not x:
        return ff
    q = quotient(ff)
    new_i = tuple(i | r for i, r in zip(ff.I, cert.covering.parts))
    extended = extend_covering_through_tight(q, x, cert.covering)
    cover = lift_covering(ff, extended)
    pack = Assignment(
        tuple((p - x) | i for p, i in zip(ff.packing.parts, new_i)), PACKING
    )
    out = make_feasible(ff.family, list(zip(new_i, ff.S)), cover, pack)
    for i, (m, s) in enumerate(zip(ff.family.members, ff.S)):
        if m.rank(new_i[i] | (x & s)) != len(new_i[i]):
            raise ConsistencyError(f"eliminate: new I_{i} does not span X & S_{i}")
    return _checked(out, ff, "eliminate")


def eliminate_largest_tight(ff: FeasibleFamily) -> FeasibleFamily:
    """Absorb the largest tight set of the quotient; afterwards the quotient has none."""
    ff = with_witnesses(ff)
    cert = largest_tight_set(quotient(ff))
    if not cert.X:
        return ff
    out = eliminate_tight(ff, cert)
    if largest_tight_set(quotient(out)).X:
        raise ConsistencyError("a non-empty tight set survived elimination")
    return out


def _add_to_i(ff: FeasibleFamily, e: Element, j: int, cover, pack) -> FeasibleFamily:
    new_i = list(ff.I)
    new_i[j] = new_i[j] | {e}
    return make_feasible(ff.family, list(zip(new_i, ff.S)), cover, pack)


def cover_element(ff: FeasibleFamily, e: Element) -> FeasibleFamily:
    """Extend so that ``e`` lies in some ``I_i``; the ``S_i`` stay fixed."""
    family = ff.family
    if e not in family.ground:
        raise PreconditionError(f"unknown element {e!r}")
    start = with_witnesses(ff)
    if e in start.covered():
        return start
    cur = eliminate_largest_tight(start)
    if e in cur.covered():
        return _checked(cur, start, "cover_element")
    members = family.members
    pack = [m.extend(i, p) for m, i, p in zip(members, cur.I, cur.packing.parts)]
    j = next((i for i, p in enumerate(pack) if e in p), None)
    if j is None:
        q = quotient(cur)
        j = next((i for i in family.indices if not q.members[i].is_loop(e)), None)
        if j is None:
            raise ConsistencyError(f"{e!r} is a loop of every quotient member")
        circuit = members[j].circuit(e, pack[j])
        f = next(x for x in family.ground.sort(circuit) if x != e and x not in cur.I[j])
        pack[j] = (pack[j] - {f}) | {e}
    packing = Assignment(tuple(pack), PACKING)
    trial = _add_to_i(cur, e, j, None, packing)
    cover = covering_feasible(trial)
    if not isinstance(cover, Assignment):
        raise ConsistencyError(f"adding {e!r} to I_{j} broke covering-feasibility")
    return _checked(replace(trial, covering=cover), start, "cover_element")


def span_element(ff: FeasibleFamily, e: Element, j: int) -> FeasibleFamily:
    """Extend ``I_j`` until it spans ``e`` in member ``j``; the ``S_i`` stay fixed.

    Keeps a compatible packing ``P`` and a set ``I`` inside ``P_j \\ I_j``
    with ``I_j | I`` spanning ``e``, and shrinks ``I`` every round: either its
    first element can join ``I_j`` directly, or a tight set of the quotient
    blocks it and absorbing that set leaves a strictly smaller ``I``.
    """
    family = ff.family
    if e not in family.ground:
        raise PreconditionError(f"unknown element {e!r}")
    if family.roles[j] is not Role.FINITARY:
        raise PreconditionError(f"member {j} is not tagged finitary")
    m = family.members[j]
    start = with_witnesses(ff)
    if m.spans(start.I[j], e):
        return start
    cur = start
    pj = cur.packing.parts[j]
    basis = m.extend(cur.I[j], pj)
    if e in basis:
        todo = frozenset({e})
    else:
        todo = (m.circuit(e, basis) - {e}) - cur.I[j]

    while todo:
        f = family.ground.sort(todo)[0]
        q = quotient(cur)
        forced = coverable_forcing(q, f, j)
        if forced is not None:
            cur = _add_to_i(cur, f, j, lift_covering(cur, forced), cur.packing)
            todo = todo - {f}
            continue
        block = never_in_cover(q, f, j)
        if block is None or f in block.X or not q.members[j].spans(block.X, f):
            raise ConsistencyError(f"no tight obstruction found for {f!r}")
        nxt = eliminate_tight(cur, block.tight)
        base = nxt.I[j]
        smaller = frozenset()
        for x in family.ground.sort(todo - block.X):
            if m.indep(base | smaller | {x}):
                smaller = smaller | {x}
        if len(smaller) >= len(todo):
            raise ConsistencyError("span_element descent did not shrink")
        if not m.spans(base | smaller, e):
            raise ConsistencyError("span_element lost the span of e")
        cur, todo = nxt, smaller

    if not m.spans(cur.I[j], e):
        raise ConsistencyError(f"I_{j} does not span {e!r} after the descent")
    return _checked(cur, start, "span_element")


def _cospans(m: Matroid, y: frozenset, e: Element) -> bool:
    """Whether ``y`` spans ``e`` in the dual of ``m``."""
    if e in y:
        return True
    full = m.ground.full

    def dual_rank(z):
        return len(z) + m.rank(full - z) - m.rank()

    return dual_rank(y | {e}) == dual_rank(y)


def _cospan_dual(ff: FeasibleFamily, e: Element, j: int) -> FeasibleFamily:
    full = ff.family.ground.full
    out = span_element(_dual_feasible(ff), e, j)
    return make_feasible(
        ff.family,
        _dual_pairs(out),
        covering=_complement(out.packing, full, COVERING),
        packing=_complement(out.covering, full, PACKING),
    )


def _cospan_hat(ff: FeasibleFamily, e: Element, j: int) -> FeasibleFamily:
    hat = hat_family(ff.family)
    out = span_element(hat.encode(ff), (e, j), j)
    return hat.decode(out)


def cospan_element(ff: FeasibleFamily, e: Element, j: int, route: str | None = None,
                   cross_check: bool = False) -> FeasibleFamily:
    """Shrink ``S_j`` until ``E \\ S_j`` spans ``e`` in the dual of member ``j``."""
    family = ff.family
    if e not in family.ground:
        raise PreconditionError(f"unknown element {e!r}")
    if family.roles[j] is not Role.COFINITARY:
        raise PreconditionError(f"member {j} is not tagged cofinitary")
    m = family.members[j]
    start = with_witnesses(ff)
    full = family.ground.full
    if _cospans(m, full - start.S[j], e):
        return start
    if route is None:
        route = "dual" if len(family) == 2 else "hat"
    if route == "dual" and len(family) != 2:
        raise PreconditionError("the dual route needs exactly two members")
    run = _cospan_dual if route == "dual" else _cospan_hat
    out = run(start, e, j)
    if out.I != start.I or not _cospans(m, full - out.S[j], e):
        raise ConsistencyError(f"cospan_element via {route} missed its goal")
    _checked(out, start, "cospan_element")
    if cross_check and len(family) == 2:
        other = (_cospan_hat if route == "dual" else _cospan_dual)(start, e, j)
        if other.I != start.I or not _cospans(m, full - other.S[j], e):
            raise ConsistencyError("cross-check route missed its goal")
        _checked(other, start, "cospan_element cross-check")
    return out
