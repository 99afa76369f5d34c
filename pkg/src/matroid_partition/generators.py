"""Seeded random matroids and families for the test-suite and ``selftest``.

Uniformly random families rarely admit a partitioning, so
:func:`random_family` mixes in *planted* families: split ``E`` into blocks
and build each member around its block as a base. Every generator takes a
:class:`random.Random` and is deterministic given its state.
"""

from __future__ import annotations

import random
from typing import Sequence

from . import matroids as mt
from .family import MatroidFamily, Role
from .matroids import Matroid

KINDS = ("uniform", "graphic", "partition", "linear_gf2", "free", "zero", "dual", "minor")
BASIC_KINDS = ("uniform", "graphic", "partition", "linear_gf2")


def element_names(n: int) -> list:
    return [f"e{i}" for i in range(n)]


def _fresh(elements: Sequence, count: int, tag: str) -> list:
    taken = set(elements)
    out = []
    i = 0
    while len(out) < count:
        name = f"{tag}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


# ---------------------------------------------------------------------------
# Unconstrained random matroids
# ---------------------------------------------------------------------------


def random_graphic(rng: random.Random, elements: Sequence, vertices: int | None = None) -> Matroid:
    n = rng.randint(1, 4) if vertices is None else vertices
    vs = [f"v{i}" for i in range(n)]
    edges = {e: (rng.choice(vs), rng.choice(vs)) for e in elements}
    return mt.graphic(vs, edges, ground=list(elements))


def random_partition(rng: random.Random, elements: Sequence) -> Matroid:
    groups: dict = {}
    nblocks = rng.randint(1, max(1, len(elements)))
    for e in elements:
        groups.setdefault(rng.randrange(nblocks), []).append(e)
    blocks = [(g, rng.randint(0, len(g))) for _, g in sorted(groups.items())]
    return mt.partition(blocks, ground=list(elements))


def random_linear(rng: random.Random, elements: Sequence, dim: int | None = None) -> Matroid:
    d = rng.randint(1, 4) if dim is None else dim
    columns = {e: [rng.randint(0, 1) for _ in range(d)] for e in elements}
    return mt.linear_gf2(columns, ground=list(elements))


def random_matroid(rng: random.Random, elements: Sequence, kind: str | None = None, depth: int = 0) -> Matroid:
    elements = list(elements)
    kinds = KINDS if depth == 0 else BASIC_KINDS
    kind = rng.choice(kinds) if kind is None else kind
    if kind == "uniform":
        return mt.uniform(elements, rng.randint(0, len(elements)))
    if kind == "graphic":
        return random_graphic(rng, elements)
    if kind == "partition":
        return random_partition(rng, elements)
    if kind == "linear_gf2":
        return random_linear(rng, elements)
    if kind == "free":
        return mt.free(elements)
    if kind == "zero":
        return mt.zero(elements)
    if kind == "dual":
        return mt.dual(random_matroid(rng, elements, depth=depth + 1))
    if kind == "minor":
        extra = _fresh(elements, rng.randint(1, 2), "x")
        inner = random_matroid(rng, elements + extra, depth=depth + 1)
        cut = rng.randint(0, len(extra))
        return mt.minor(inner, extra[:cut], extra[cut:])
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Matroids with a prescribed base
# ---------------------------------------------------------------------------


def planted_matroid(rng: random.Random, elements: Sequence, base, kind: str | None = None,
                    depth: int = 0) -> Matroid:
    """A random matroid on ``elements`` in which ``base`` is a base."""
    elements = list(elements)
    base = [e for e in elements if e in set(base)]
    rest = [e for e in elements if e not in set(base)]
    options = ["uniform", "graphic", "partition", "linear_gf2"]
    if depth == 0:
        options += ["dual", "minor"]
    if not rest:
        options.append("free")
    if not base:
        options.append("zero")
    kind = rng.choice(options) if kind is None else kind
    r = len(base)
    if kind == "uniform":
        return mt.uniform(elements, r)
    if kind == "free":
        return mt.free(elements)
    if kind == "zero":
        return mt.zero(elements)
    if kind == "graphic":
        vs = [f"v{i}" for i in range(r + 1)]
        edges = {}
        for t, e in enumerate(base):
            # a random tree: vertex t+1 hangs off an earlier vertex
            edges[e] = (vs[rng.randint(0, t)], vs[t + 1])
        for e in rest:
            edges[e] = (rng.choice(vs), rng.choice(vs))
        return mt.graphic(vs, edges, ground=elements)
    if kind == "partition":
        groups: dict = {}
        nblocks = rng.randint(1, max(1, len(elements)))
        for e in elements:
            groups.setdefault(rng.randrange(nblocks), []).append(e)
        blocks = [(g, len(set(g) & set(base))) for _, g in sorted(groups.items())]
        return mt.partition(blocks, ground=elements)
    if kind == "linear_gf2":
        d = max(r, 1)
        columns = {}
        for t, e in enumerate(base):
            columns[e] = [1 if s == t else 0 for s in range(d)]
        for e in rest:
            columns[e] = [rng.randint(0, 1) if r else 0 for _ in range(d)]
        return mt.linear_gf2(columns, ground=elements)
    if kind == "dual":
        return mt.dual(planted_matroid(rng, elements, rest, depth=depth + 1))
    if kind == "minor":
        z = _fresh(elements, 2, "x")
        inner = planted_matroid(rng, elements + z, base + z[:1], depth=depth + 1)
        return mt.minor(inner, z[:1], z[1:])
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def random_roles(rng: random.Random, k: int) -> list:
    return [rng.choice((Role.FINITARY, Role.COFINITARY)) for _ in range(k)]


def random_family(rng: random.Random, max_elements: int = 8, max_members: int = 4,
                  planted: float = 0.5, min_members: int = 1, n: int | None = None,
                  k: int | None = None) -> MatroidFamily:
    """A family with random kinds and role tags; with probability ``planted`` it has a partitioning."""
    n = rng.randint(0, max_elements) if n is None else n
    k = rng.randint(min_members, max_members) if k is None else k
    elements = element_names(n)
    if rng.random() < planted and k > 0:
        owner = {e: rng.randrange(k) for e in elements}
        members = [
            planted_matroid(rng, elements, [e for e in elements if owner[e] == i]) for i in range(k)
        ]
    else:
        members = [random_matroid(rng, elements) for _ in range(k)]
    return MatroidFamily.of(members, random_roles(rng, k), ground=elements)


def random_connected_graph(rng: random.Random, vertices: int, edges: int) -> MatroidFamily:
    """Two copies of the cycle matroid of a random connected multigraph (no self-loops)."""
    vs = [f"v{i}" for i in range(vertices)]
    names = element_names(edges)
    ends = {}
    for t in range(1, vertices):
        ends[names[t - 1]] = (vs[rng.randrange(t)], vs[t])
    for e in names[vertices - 1:]:
        u, v = rng.sample(vs, 2)
        ends[e] = (u, v)
    m = mt.graphic(vs, ends, ground=names)
    return MatroidFamily.of([m, m], [Role.FINITARY, Role.FINITARY], ground=names)


def random_bipartite(rng: random.Random, side: int, edges: int):
    """Random bipartite multigraph; returns ``(family, ends)`` for the matching instance.

    The family is ``(M_0, M_1*)`` where ``M_s`` lets each vertex of side
    ``s`` hold at most one edge; a partitioning of it puts a perfect
    matching in its first part.
    """
    left = [f"a{i}" for i in range(side)]
    right = [f"b{i}" for i in range(side)]
    names = element_names(edges)
    ends = {e: (rng.choice(left), rng.choice(right)) for e in names}
    return matching_family(left, right, ends), ends


def matching_family(left: Sequence, right: Sequence, ends: dict) -> MatroidFamily:
    names = list(ends)

    def side(vertices, pick):
        blocks = [([e for e in names if pick(ends[e]) == v], 1) for v in vertices]
        return mt.partition([b for b in blocks if b[0]], ground=names)

    m0 = side(left, lambda uv: uv[0])
    m1 = side(right, lambda uv: uv[1])
    return MatroidFamily.of([m0, mt.dual(m1)], [Role.FINITARY, Role.COFINITARY], ground=names)


def random_pairs(rng: random.Random, family: MatroidFamily, partition=None) -> list:
    """Random sandwich pairs ``(I_i, S_i)`` meeting the structural conditions.

    With a base partitioning ``partition`` at hand the pairs are drawn
    around it (``I_i`` inside ``B_i`` inside ``S_i``), which makes them
    feasible; otherwise they are drawn freely and may be infeasible.
    """
    elements = list(family.elements)
    k = len(family)
    ins, ss = [], []
    used: set = set()
    for i, m in enumerate(family.members):
        if partition is not None:
            pool = [e for e in elements if e in partition[i]]
        else:
            pool = [e for e in elements if e not in used]
        ii = frozenset()
        for e in pool:
            if rng.random() < 0.4 and m.indep(ii | {e}):
                ii = ii | {e}
        used |= ii
        ins.append(ii)
    for i, m in enumerate(family.members):
        if partition is not None:
            s = set(partition[i])
        else:
            s = set(m.extend(ins[i], [e for e in elements if e not in used or e in ins[i]]))
        s |= {e for e in elements if rng.random() < 0.5 and not any(e in ins[j] for j in range(k) if j != i)}
        ss.append(frozenset(s) | ins[i])
    missing = set(elements) - frozenset().union(*ss) if ss else set(elements)
    for e in missing:
        options = [i for i in range(k) if not any(e in ins[j] for j in range(k) if j != i)]
        if options:
            i = rng.choice(options)
            ss[i] = ss[i] | {e}
    return list(zip(ins, ss))
