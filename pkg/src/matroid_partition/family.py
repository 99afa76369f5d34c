"""Indexed families of matroids on a common ground set."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import matroids as mt
from .errors import InputError
from .matroids import GroundSet, Matroid


class Role(str, enum.Enum):
    """Which extension step handles a member: span (finitary) or cospan (cofinitary).

    Every finite matroid is both, so the tag only selects a code path.
    """

    FINITARY = "finitary"
    COFINITARY = "cofinitary"

    def flipped(self) -> "Role":
        return Role.COFINITARY if self is Role.FINITARY else Role.FINITARY


@dataclass(frozen=True, eq=False)
class MatroidFamily:
    ground: GroundSet
    members: tuple
    roles: tuple

    def __post_init__(self):
        if len(self.members) != len(self.roles):
            raise InputError("one role is required per family member")
        for i, m in enumerate(self.members):
            if m.ground.full != self.ground.full:
                raise InputError(f"member {i} is not on the common ground set")
        for i, role in enumerate(self.roles):
            if not isinstance(role, Role):
                raise InputError(f"member {i} has no valid role tag")

    @classmethod
    def of(cls, members: Sequence[Matroid], roles=None, ground=None) -> "MatroidFamily":
        members = tuple(members)
        if ground is None:
            if not members:
                raise InputError("an empty family needs an explicit ground set")
            ground = members[0].ground
        elif not isinstance(ground, GroundSet):
            ground = GroundSet(ground)
        if roles is None:
            roles = (Role.FINITARY,) * len(members)
        roles = tuple(Role(r) for r in roles)
        return cls(ground, members, roles)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> Matroid:
        return self.members[i]

    @property
    def indices(self) -> range:
        return range(len(self.members))

    @property
    def elements(self) -> tuple:
        return self.ground.elements

    def finitary(self) -> list:
        return [i for i, r in enumerate(self.roles) if r is Role.FINITARY]

    def cofinitary(self) -> list:
        return [i for i, r in enumerate(self.roles) if r is Role.COFINITARY]

    def map(self, fn: Callable[[int, Matroid], Matroid], ground=None, roles=None) -> "MatroidFamily":
        members = tuple(fn(i, m) for i, m in enumerate(self.members))
        return MatroidFamily(
            self.ground if ground is None else ground,
            members,
            self.roles if roles is None else tuple(roles),
        )

    def replace(self, i: int, member: Matroid) -> "MatroidFamily":
        members = list(self.members)
        members[i] = member
        return MatroidFamily(self.ground, tuple(members), self.roles)

    # family minors, applied member-wise
    def restrict(self, x: Iterable) -> "MatroidFamily":
        x = self.ground.subset(x)
        rest = self.ground.full - x
        return self.map(lambda i, m: mt.minor(m, (), rest), ground=self.ground.restrict(x))

    def contract(self, x: Iterable) -> "MatroidFamily":
        x = self.ground.subset(x)
        return self.map(
            lambda i, m: mt.minor(m, x, ()), ground=self.ground.restrict(self.ground.full - x)
        )

    def contract_onto(self, w: Iterable) -> "MatroidFamily":
        w = self.ground.subset(w)
        rest = self.ground.full - w
        return self.map(lambda i, m: mt.minor(m, rest, ()), ground=self.ground.restrict(w))

    def declare_loops(self, x: Iterable, indices: Iterable[int]) -> "MatroidFamily":
        targets = set(indices)
        return self.map(lambda i, m: mt.declare_loops(m, x) if i in targets else m)

    def dual(self) -> "MatroidFamily":
        return self.map(lambda i, m: mt.dual(m), roles=[r.flipped() for r in self.roles])

    def rank_sum(self, x) -> int:
        x = frozenset(x)
        return sum(m.rank(x) for m in self.members)

    def __repr__(self) -> str:
        kinds = ", ".join(f"{m.kind}:{r.value}" for m, r in zip(self.members, self.roles))
        return f"MatroidFamily(|E|={len(self.ground)}, [{kinds}])"
