import random

import pytest
from helpers import fam, looped_free, u12_double, u12_free, u13_double, u23_u13

from matroid_partition import brute
from matroid_partition import matroids as mt
from matroid_partition.assignment import Assignment, verify
from matroid_partition.errors import InputError, PreconditionError
from matroid_partition.generators import random_family
from matroid_partition.tight import (
    SpanningTightSet,
    is_cowave,
    is_tight,
    largest_cowave,
    largest_cowave_avoiding,
    never_in_cover,
    one_more_cover,
    largest_tight_set,
    extend_covering_through_tight,
)
from matroid_partition.union import Uncoverable, find_covering


def fs(*xs):
    return frozenset(xs)


def free_free(elements):
    return fam(mt.free(list(elements)), mt.free(list(elements)))


# -- is_tight -------------------------------------------------------------------


def test_is_tight_examples():
    cert = is_tight(u12_double(), {"a", "b"})
    assert cert is not None and cert.ranks == (1, 1) and cert.check(u12_double()) == []
    assert is_tight(u12_free(), {"a", "b"}) is None
    empty = is_tight(u13_double(), set())
    assert empty is not None and empty.X == frozenset()


def test_is_tight_unknown_element():
    with pytest.raises(InputError):
        is_tight(u12_double(), {"z"})


def test_rank_sum_without_covering_is_not_tight():
    # ranks on {a,b} sum to 2, but b is a loop everywhere and can never be covered
    m = mt.declare_loops(mt.free(["a", "b"]), {"b"})
    family = fam(m, m)
    assert family.rank_sum({"a", "b"}) == 2
    assert is_tight(family, {"a", "b"}) is None
    assert not brute.brute_is_tight(family, {"a", "b"})


# -- largest tight set ----------------------------------------------------------


@pytest.mark.parametrize("method", ["reachability", "clone"])
def test_largest_tight_examples(method):
    assert largest_tight_set(u12_double(), method).X == fs("a", "b")
    assert largest_tight_set(u12_free(), method).X == frozenset()
    assert largest_tight_set(u23_u13(), method).X == fs("a", "b", "c")


def test_largest_tight_requires_covering():
    with pytest.raises(PreconditionError):
        largest_tight_set(u13_double())


def test_largest_tight_methods_agree_with_enumeration():
    rng = random.Random(11)
    checked = 0
    while checked < 120:
        family = random_family(rng, max_elements=6, max_members=3)
        if isinstance(find_covering(family), Uncoverable):
            continue
        checked += 1
        a = largest_tight_set(family)
        b = largest_tight_set(family, "clone")
        assert a.X == b.X == brute.brute_largest_tight(family)
        assert a.check(family) == []


def test_tight_sets_of_tight_family_are_disjoint_bases():
    family = u23_u13()
    for cover in brute.brute_coverings(family):
        for m, part in zip(family.members, cover.parts):
            assert m.indep(part) and len(part) == m.rank()


# -- cowaves --------------------------------------------------------------------


def test_is_cowave_examples():
    assert is_cowave(u13_double(), set()) is not None
    assert is_cowave(u13_double(), {"c"}) is None
    w = is_cowave(free_free("a"), {"a"})
    assert w is not None and w.covering == Assignment((fs("a"), frozenset()))


def test_largest_cowave_avoiding_examples():
    assert largest_cowave_avoiding(free_free("ab"), "a").W == fs("b")
    assert largest_cowave_avoiding(u13_double(), "c").W == frozenset()
    assert largest_cowave_avoiding(fam(mt.free(["e"])), "e").W == frozenset()


def test_cowaves_agree_with_enumeration():
    rng = random.Random(13)
    for _ in range(120):
        family = random_family(rng, max_elements=6, max_members=3)
        waves = brute.cowaves(family)
        assert largest_cowave(family).W == frozenset().union(*waves)
        for w in brute.subsets(family.elements):
            assert (is_cowave(family, w) is not None) == (w in waves)
        if family.elements:
            e = rng.choice(family.elements)
            avoiding = frozenset().union(*(w for w in waves if e not in w))
            assert largest_cowave_avoiding(family, e).W == avoiding


# -- one_more_cover / never_in_cover --------------------------------------------


def test_one_more_cover_examples():
    assert one_more_cover(u12_double(), "b") == Assignment((fs("a"), fs("b")))
    out = one_more_cover(u13_double(), "c")
    assert isinstance(out, SpanningTightSet) and out.X == fs("a", "b")
    assert out.tight.check(u13_double()) == []
    assert one_more_cover(free_free("a"), "a") == Assignment((fs("a"), frozenset()))


def test_one_more_cover_precondition():
    with pytest.raises(PreconditionError):
        one_more_cover(fam(mt.zero(["a", "b"])), "b")


def test_one_more_cover_dichotomy():
    rng = random.Random(17)
    seen = set()
    for _ in range(200):
        family = random_family(rng, max_elements=7, max_members=3)
        if not family.elements:
            continue
        e = rng.choice(family.elements)
        rest = family.ground.full - {e}
        if not brute.has_covering(family.restrict(rest)):
            continue
        out = one_more_cover(family, e)
        coverable = brute.has_covering(family)
        assert isinstance(out, Assignment) == coverable
        if isinstance(out, Assignment):
            assert verify(family, out)
            seen.add("cover")
        else:
            assert e not in out.X and brute.brute_is_tight(family, out.X)
            assert all(m.spans(out.X, e) for m in family.members)
            seen.add("tight")
    assert seen == {"cover", "tight"}


def test_never_in_cover_examples():
    out = never_in_cover(looped_free(), "b", 0)
    assert out is not None and out.X == frozenset()
    assert never_in_cover(u12_double(), "a", 0) is None
    assert never_in_cover(fam(mt.free(["a"])), "a", 0) is None


def test_never_in_cover_requires_covering():
    with pytest.raises(PreconditionError):
        never_in_cover(u13_double(), "a", 0)


def test_never_in_cover_agrees_with_enumeration():
    rng = random.Random(19)
    hits = 0
    for _ in range(200):
        family = random_family(rng, max_elements=6, max_members=3)
        if len(family) == 0 or not family.elements or not brute.has_covering(family):
            continue
        e = rng.choice(family.elements)
        j = rng.randrange(len(family))
        never = all(e not in c.parts[j] for c in brute.brute_coverings(family))
        out = never_in_cover(family, e, j)
        assert (out is not None) == never
        if out is not None:
            hits += 1
            assert brute.brute_is_tight(family, out.X)
            assert e not in out.X and family.members[j].spans(out.X, e)
    assert hits > 0


# -- extend_covering_through_tight ----------------------------------------------


def test_extend_through_tight_examples():
    q = Assignment((fs("b"), fs("a")))
    assert extend_covering_through_tight(u12_double(), {"a", "b"}, q) == q
    q = Assignment((fs("a", "b"), fs("c")))
    assert extend_covering_through_tight(u23_u13(), {"a", "b", "c"}, q) == q
    out = extend_covering_through_tight(u12_free(), set(), Assignment((frozenset(), frozenset())))
    assert verify(u12_free(), out)


def test_extend_through_tight_preconditions():
    with pytest.raises(PreconditionError):
        extend_covering_through_tight(u12_free(), {"a", "b"}, Assignment((fs("a"), fs("b"))))
    with pytest.raises(PreconditionError):
        extend_covering_through_tight(u12_double(), {"a", "b"}, Assignment((fs("a"), frozenset())))


def test_extend_through_tight_random():
    rng = random.Random(23)
    done = 0
    for _ in range(300):
        family = random_family(rng, max_elements=6, max_members=3)
        if not brute.has_covering(family):
            continue
        tight = [x for x in brute.tight_sets(family) if x]
        if not tight:
            continue
        x = rng.choice(tight)
        q = rng.choice(brute.brute_coverings(family.restrict(x)))
        out = extend_covering_through_tight(family, x, q)
        assert verify(family, out)
        assert all(part & x == qp for part, qp in zip(out.parts, q.parts))
        done += 1
    assert done > 20
