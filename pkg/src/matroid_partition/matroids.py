"""Independence oracles on finite ground sets.

Every matroid here is an immutable object answering ``indep(S)``; rank,
span, fundamental circuits and greedy bases are derived from that single
predicate. Some kinds override ``rank`` with a closed formula, which the
test-suite checks against :meth:`Matroid.greedy_rank`.

Subsets are plain ``frozenset`` objects. The ground set order is the
canonical order used for every greedy choice, so all derived queries are
deterministic.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InputError, PreconditionError

Element = Hashable


class GroundSet:
    """An ordered collection of distinct element identifiers."""

    __slots__ = ("elements", "_index", "_full")

    def __init__(self, elements: Iterable[Element]):
        elements = tuple(elements)
        index: dict = {}
        for pos, e in enumerate(elements):
            if e in index:
                raise InputError(f"duplicate element identifier {e!r}")
            index[e] = pos
        self.elements = elements
        self._index = index
        self._full = frozenset(elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, GroundSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"GroundSet({list(self.elements)!r})"

    @property
    def full(self) -> frozenset:
        return self._full

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise InputError(f"unknown element {e!r}") from None

    def sort(self, subset: Iterable[Element]) -> list:
        """Elements of ``subset`` listed in canonical order."""
        return sorted(subset, key=self._index.__getitem__)

    def subset(self, items: Iterable[Element]) -> frozenset:
        """Validate ``items`` against the ground set and freeze them."""
        s = frozenset(items)
        unknown = s - self._full
        if unknown:
            raise InputError(f"unknown element(s) {sorted(map(repr, unknown))}")
        return s

    def restrict(self, subset: Iterable[Element]) -> "GroundSet":
        """The sub-ground set on ``subset``, keeping canonical order."""
        keep = frozenset(subset)
        return GroundSet(e for e in self.elements if e in keep)


def _as_ground(ground) -> GroundSet:
    return ground if isinstance(ground, GroundSet) else GroundSet(ground)


class Matroid:
    """Base class: subclasses implement ``_independent``.

    Queries are memoised per instance. The caches only ever store values that
    are pure functions of the argument, so sharing an oracle across threads
    is safe.
    """

    kind = "abstract"

    def __init__(self, ground):
        self.ground = _as_ground(ground)
        self._indep_cache: dict = {}
        self._rank_cache: dict = {}

    # -- primitive ----------------------------------------------------------
    def _independent(self, s: frozenset) -> bool:
        raise NotImplementedError

    def indep(self, s) -> bool:
        if not isinstance(s, frozenset):
            s = frozenset(s)
        try:
            return self._indep_cache[s]
        except KeyError:
            value = self._indep_cache[s] = bool(self._independent(s))
            return value

    # -- derived ------------------------------------------------------------
    def _rank(self, x: frozenset) -> int:
        return len(self.extend(frozenset(), x))

    def rank(self, x=None) -> int:
        x = self.ground.full if x is None else frozenset(x)
        try:
            return self._rank_cache[x]
        except KeyError:
            value = self._rank_cache[x] = self._rank(x)
            return value

    def greedy_rank(self, x) -> int:
        """Rank through the independence predicate alone (no fast path)."""
        return len(Matroid.extend(self, frozenset(), frozenset(x)))

    def extend(self, base: frozenset, within) -> frozenset:
        """Greedily extend independent ``base`` to a maximal independent subset of ``within``."""
        within = frozenset(within)
        current = frozenset(base)
        for x in self.ground.elements:
            if x in within and x not in current:
                candidate = current | {x}
                if self.indep(candidate):
                    current = candidate
        return current

    def span(self, x) -> frozenset:
        x = frozenset(x)
        basis = self.extend(frozenset(), x)
        return x | frozenset(
            e for e in self.ground.elements if e not in x and not self.indep(basis | {e})
        )

    def spans(self, x, e) -> bool:
        x = frozenset(x)
        if e in x:
            return True
        return self.rank(x | {e}) == self.rank(x)

    def circuit(self, e: Element, independent: frozenset) -> frozenset:
        """The unique circuit inside ``independent + e`` (caller checks preconditions)."""
        current = frozenset(independent) | {e}
        for x in self.ground.elements:
            if x in current and x != e:
                smaller = current - {x}
                if not self.indep(smaller):
                    current = smaller
        return current

    def is_loop(self, e: Element) -> bool:
        return not self.indep(frozenset((e,)))

    def is_spanning(self, s) -> bool:
        return self.rank(s) == self.rank()

    def is_base(self, s) -> bool:
        s = frozenset(s)
        return self.indep(s) and len(s) == self.rank()

    def base(self) -> frozenset:
        return self.extend(frozenset(), self.ground.full)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} on {len(self.ground)} elements>"


# ---------------------------------------------------------------------------
# Concrete kinds
# ---------------------------------------------------------------------------


class Uniform(Matroid):
    kind = "uniform"

    def __init__(self, ground, r: int):
        super().__init__(ground)
        if r < 0:
            raise InputError("uniform rank must be non-negative")
        self.r = r

    def _independent(self, s):
        return len(s) <= self.r

    def _rank(self, x):
        return min(self.r, len(x))


class Free(Matroid):
    kind = "free"

    def _independent(self, s):
        return True

    def _rank(self, x):
        return len(x)


class Zero(Matroid):
    kind = "zero"

    def _independent(self, s):
        return not s

    def _rank(self, x):
        return 0


class Graphic(Matroid):
    """Cycle matroid of a multigraph; an edge with equal endpoints is a loop."""

    kind = "graphic"

    def __init__(self, vertices: Sequence, edges: Mapping, ground=None):
        if ground is None:
            ground = list(edges)
        super().__init__(ground)
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise InputError("duplicate vertex in graphic matroid")
        if set(edges) != set(self.ground.full):
            raise InputError("graphic matroid edges must match its ground set")
        ends = {}
        for e, pair in edges.items():
            u, v = pair
            if u not in vset or v not in vset:
                raise InputError(f"edge {e!r} has an endpoint outside the vertex list")
            ends[e] = (u, v)
        self.edges = ends

    def _forest_size(self, x) -> int:
        parent: dict = {}

        def find(v):
            root = v
            while parent.get(root, root) != root:
                root = parent[root]
            while parent.get(v, v) != root:
                parent[v], v = root, parent[v]
            return root

        merged = 0
        for e in x:
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                merged += 1
        return merged

    def _independent(self, s):
        return self._forest_size(s) == len(s)

    def _rank(self, x):
        return self._forest_size(x)


class Partition(Matroid):
    """Blocks with capacities; a set is independent if it respects every capacity."""

    kind = "partition"

    def __init__(self, blocks: Sequence, ground=None):
        block_list = []
        seen: dict = {}
        for b, (elements, capacity) in enumerate(blocks):
            elements = tuple(elements)
            if capacity < 0:
                raise InputError("partition capacity must be non-negative")
            for e in elements:
                if e in seen:
                    raise InputError(f"element {e!r} appears in two partition blocks")
                seen[e] = b
            block_list.append((elements, capacity))
        if ground is None:
            ground = [e for elements, _ in block_list for e in elements]
        super().__init__(ground)
        if set(seen) != set(self.ground.full):
            raise InputError("partition blocks must cover the ground set exactly")
        self.blocks = tuple(block_list)
        self._block_of = seen

    def _counts(self, x):
        counts = [0] * len(self.blocks)
        for e in x:
            counts[self._block_of[e]] += 1
        return counts

    def _independent(self, s):
        return all(c <= cap for c, (_, cap) in zip(self._counts(s), self.blocks))

    def _rank(self, x):
        return sum(min(c, cap) for c, (_, cap) in zip(self._counts(x), self.blocks))


def _gf2_rank(vectors: Iterable[int]) -> int:
    pivots: dict = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


class LinearGF2(Matroid):
    """Column matroid of a 0/1 matrix over GF(2)."""

    kind = "linear_gf2"

    def __init__(self, columns: Mapping, ground=None):
        if ground is None:
            ground = list(columns)
        super().__init__(ground)
        if set(columns) != set(self.ground.full):
            raise InputError("linear_gf2 columns must match the ground set")
        lengths = {len(col) for col in columns.values()}
        if len(lengths) > 1:
            raise InputError("linear_gf2 columns must all have the same length")
        packed = {}
        for e, col in columns.items():
            value = 0
            for bit in col:
                if bit not in (0, 1):
                    raise InputError(f"column of {e!r} has a non-binary entry {bit!r}")
                value = (value << 1) | bit
            packed[e] = value
        self.columns = {e: tuple(col) for e, col in columns.items()}
        self._packed = packed

    def _independent(self, s):
        return _gf2_rank(self._packed[e] for e in s) == len(s)

    def _rank(self, x):
        return _gf2_rank(self._packed[e] for e in x)


class Dual(Matroid):
    """S is independent in the dual iff the complement of S spans the inner matroid."""

    kind = "dual"

    def __init__(self, inner: Matroid):
        super().__init__(inner.ground)
        self.inner = inner

    def _independent(self, s):
        return self.inner.rank(self.ground.full - s) == self.inner.rank()

    def _rank(self, x):
        return len(x) + self.inner.rank(self.ground.full - x) - self.inner.rank()


class Minor(Matroid):
    """``(inner / contract) \\ delete``.

    The contraction uses one fixed basis of ``contract``, chosen greedily when
    the minor is built; the resulting independent sets do not depend on it.
    """

    kind = "minor"

    def __init__(self, inner: Matroid, contract=(), delete=()):
        c = inner.ground.subset(contract)
        d = inner.ground.subset(delete)
        if c & d:
            raise InputError("contract and delete sets of a minor must be disjoint")
        super().__init__(inner.ground.restrict(inner.ground.full - c - d))
        self.inner = inner
        self.contracted = c
        self.deleted = d
        self.contract_basis = inner.extend(frozenset(), c)

    def _independent(self, s):
        return self.inner.indep(s | self.contract_basis)

    def _rank(self, x):
        return self.inner.rank(x | self.contracted) - len(self.contract_basis)


class Looped(Matroid):
    """``inner`` with every element of ``loops`` declared a loop."""

    kind = "looped"

    def __init__(self, inner: Matroid, loops=()):
        super().__init__(inner.ground)
        self.inner = inner
        self.loops = inner.ground.subset(loops)

    def _independent(self, s):
        return not (s & self.loops) and self.inner.indep(s)

    def _rank(self, x):
        return self.inner.rank(x - self.loops)


class DirectSum(Matroid):
    kind = "direct_sum"

    def __init__(self, parts: Sequence[Matroid]):
        parts = tuple(parts)
        owner: dict = {}
        order = []
        for p, part in enumerate(parts):
            for e in part.ground:
                if e in owner:
                    raise InputError(f"direct sum parts overlap in element {e!r}")
                owner[e] = p
                order.append(e)
        super().__init__(order)
        self.parts = parts
        self._owner = owner

    def _split(self, s):
        pieces = [set() for _ in self.parts]
        for e in s:
            pieces[self._owner[e]].add(e)
        return pieces

    def _independent(self, s):
        return all(part.indep(piece) for part, piece in zip(self.parts, self._split(s)))

    def _rank(self, x):
        return sum(part.rank(piece) for part, piece in zip(self.parts, self._split(x)))


class ParallelClone(Matroid):
    """``inner`` plus a fresh element parallel to ``original`` (a loop if it is one)."""

    kind = "parallel_clone"

    def __init__(self, inner: Matroid, original: Element, clone: Element):
        if original not in inner.ground:
            raise InputError(f"cannot clone unknown element {original!r}")
        if clone in inner.ground:
            raise InputError(f"clone identifier {clone!r} already in the ground set")
        super().__init__(inner.ground.elements + (clone,))
        self.inner = inner
        self.original = original
        self.clone = clone

    def _independent(self, s):
        if self.clone not in s:
            return self.inner.indep(s)
        if self.original in s:
            return False
        return self.inner.indep((s - {self.clone}) | {self.original})

    def _rank(self, x):
        if self.clone not in x:
            return self.inner.rank(x)
        return self.inner.rank((x - {self.clone}) | {self.original})


class Relabeled(Matroid):
    """An isomorphic copy of ``inner`` under an injective renaming of elements."""

    kind = "relabeled"

    def __init__(self, inner: Matroid, mapping: Mapping):
        if set(mapping) != set(inner.ground.full):
            raise InputError("relabeling must be defined on the whole ground set")
        super().__init__(mapping[e] for e in inner.ground)
        self.inner = inner
        self.mapping = dict(mapping)
        self._back = {v: k for k, v in self.mapping.items()}

    def _pull(self, s):
        back = self._back
        return frozenset(back[e] for e in s)

    def _independent(self, s):
        return self.inner.indep(self._pull(s))

    def _rank(self, x):
        return self.inner.rank(self._pull(x))


# ---------------------------------------------------------------------------
# Constructors and validated queries
# ---------------------------------------------------------------------------


def uniform(elements, r: int) -> Uniform:
    return Uniform(elements, r)


def free(elements) -> Free:
    return Free(elements)


def zero(elements) -> Zero:
    return Zero(elements)


def graphic(vertices, edges, ground=None) -> Graphic:
    return Graphic(vertices, edges, ground)


def partition(blocks, ground=None) -> Partition:
    return Partition(blocks, ground)


def linear_gf2(columns, ground=None) -> LinearGF2:
    return LinearGF2(columns, ground)


def dual(m: Matroid) -> Dual:
    return Dual(m)


def minor(m: Matroid, contract=(), delete=()) -> Minor:
    return Minor(m, contract, delete)


def restrict(m: Matroid, x) -> Minor:
    x = m.ground.subset(x)
    return Minor(m, (), m.ground.full - x)


def delete(m: Matroid, x) -> Minor:
    return Minor(m, (), x)


def contract(m: Matroid, x) -> Minor:
    return Minor(m, x, ())


def contract_onto(m: Matroid, x) -> Minor:
    x = m.ground.subset(x)
    return Minor(m, m.ground.full - x, ())


def declare_loops(m: Matroid, x) -> Looped:
    return Looped(m, x)


def direct_sum(parts: Sequence[Matroid]) -> DirectSum:
    return DirectSum(parts)


def parallel_clone(m: Matroid, x: Element, x_hat: Element) -> ParallelClone:
    return ParallelClone(m, x, x_hat)


def relabel(m: Matroid, mapping: Mapping) -> Relabeled:
    return Relabeled(m, mapping)


def is_independent(m: Matroid, s) -> bool:
    return m.indep(m.ground.subset(s))


def rank(m: Matroid, x) -> int:
    return m.rank(m.ground.subset(x))


def span(m: Matroid, x) -> frozenset:
    return m.span(m.ground.subset(x))


def fundamental_circuit(m: Matroid, e: Element, independent) -> frozenset:
    independent = m.ground.subset(independent)
    m.ground.index(e)
    if not m.indep(independent):
        raise PreconditionError("fundamental_circuit needs an independent set")
    if e in independent:
        raise PreconditionError(f"{e!r} already lies in the independent set")
    if m.indep(independent | {e}):
        raise PreconditionError(f"{e!r} is not spanned by the independent set")
    return m.circuit(e, independent)


def extend_to_base_within(m: Matroid, independent, within) -> frozenset:
    independent = m.ground.subset(independent)
    within = m.ground.subset(within)
    if not independent <= within:
        raise PreconditionError("the independent set must lie inside the target set")
    if not m.indep(independent):
        raise PreconditionError("cannot extend a dependent set")
    return m.extend(independent, within)
