import random
from dataclasses import replace

import pytest
from helpers import C, F, K4_ELEMENTS, fam, k4, u, u12_double, u13_double, u23_u13

from matroid_partition import brute
from matroid_partition import matroids as mt
from matroid_partition.assignment import COVERING, PACKING, Assignment, verify
from matroid_partition.errors import FeasibilityError, PreconditionError
from matroid_partition.feasible import (
    Unpackable,
    _cospans,
    cospan_element,
    cover_element,
    covering_feasible,
    eliminate_largest_tight,
    eliminate_tight,
    hat_family,
    lift_covering,
    lower_covering,
    make_feasible,
    normalize,
    packing_feasible,
    quotient,
    seed,
    span_element,
    with_witnesses,
)
from matroid_partition.generators import random_family, random_pairs
from matroid_partition.tight import is_tight, largest_tight_set
from matroid_partition.union import Uncoverable

E4 = frozenset(K4_ELEMENTS)


def fs(*xs):
    return frozenset(xs)


def k4_pair(roles=(F, F)):
    g = k4()
    second = g if roles[1] is F else mt.dual(g)
    return fam(g, second, roles=roles)


def assert_feasible(ff):
    assert all(brute.brute_feasible(ff.family, ff.pairs))


# -- make_feasible ----------------------------------------------------------------


def test_seed_is_valid():
    ff = seed(k4_pair())
    assert ff.I == (frozenset(), frozenset()) and ff.S == (E4, E4)


@pytest.mark.parametrize(
    "pairs, condition",
    [
        ([({"a"}, {"a", "b"}), ({"a"}, {"a", "b"})], "I_i pairwise disjoint"),
        ([(set(), {"a"}), (set(), {"a", "b"})], None),
        ([(set(), {"a", "b"})], "one pair per member"),
        ([({"a", "b"}, {"a", "b"}), (set(), {"a", "b"})], "I_i independent"),
        ([({"a"}, {"b"}), (set(), {"a", "b"})], "I_i ⊆ S_i ⊆ E"),
    ],
)
def test_make_feasible_conditions(pairs, condition):
    if condition is None:
        make_feasible(u12_double(), pairs)
        return
    with pytest.raises(FeasibilityError) as info:
        make_feasible(u12_double(), pairs)
    assert info.value.condition == condition


def test_make_feasible_spanning_and_union():
    with pytest.raises(FeasibilityError) as info:
        make_feasible(fam(mt.free(["a", "b"]), u("ab", 1)), [(set(), {"a"}), (set(), {"a", "b"})])
    assert info.value.condition == "S_i spanning" and info.value.index == 0
    with pytest.raises(FeasibilityError) as info:
        make_feasible(u12_double(), [(set(), {"a"}), (set(), {"a"})])
    assert info.value.condition == "union of S_i is E"


# -- quotient ------------------------------------------------------------------------


def test_quotient_of_seed_is_identity():
    family = k4_pair()
    q = quotient(seed(family))
    for a, b in zip(q.members, family.members):
        assert all(a.indep(s) == b.indep(s) for s in brute.subsets(K4_ELEMENTS))


def test_quotient_contracts_own_part():
    ff = make_feasible(k4_pair(), [({"12"}, E4), (set(), E4)])
    q = quotient(ff)
    assert "12" not in q.ground
    assert not q.members[0].indep({"13", "23"})
    assert q.members[1].indep({"13", "23"})


def test_quotient_loops_outside_s():
    ff = make_feasible(k4_pair(), [(set(), E4 - {"14"}), (set(), E4)])
    q = quotient(ff)
    assert q.members[0].is_loop("14") and not q.members[1].is_loop("14")


def test_lift_and_lower_are_inverse():
    rng = random.Random(3)
    done = 0
    for _ in range(200):
        family = random_family(rng, max_elements=6, max_members=3)
        parts = brute.brute_partitionings(family)
        if not parts:
            continue
        pairs = random_pairs(rng, family, rng.choice(parts).parts)
        ff = make_feasible(family, pairs)
        cover = covering_feasible(ff)
        assert isinstance(cover, Assignment)
        low = lower_covering(ff, cover)
        assert verify(quotient(ff), low, COVERING)
        assert lift_covering(ff, low) == cover
        q_cover = brute.brute_coverings(quotient(ff))[0]
        assert lower_covering(ff, lift_covering(ff, q_cover)) == q_cover
        done += 1
    assert done > 30


# -- covering_feasible ----------------------------------------------------------------


def test_covering_feasible_examples():
    assert covering_feasible(seed(u12_double())) == Assignment((fs("a"), fs("b")))
    ff = make_feasible(u12_double(), [({"a"}, {"a", "b"}), ({"b"}, {"a", "b"})])
    assert covering_feasible(ff) == Assignment((fs("a"), fs("b")))
    ff = make_feasible(u13_double(), [({"a"}, set("abc")), ({"b"}, set("abc"))])
    out = covering_feasible(ff)
    assert isinstance(out, Uncoverable) and out.element == "c"


def test_covering_feasible_reuses_witness():
    ff = seed(u12_double())
    w = Assignment((fs("b"), fs("a")))
    assert covering_feasible(replace(ff, covering=w)) is w


# -- hat family -------------------------------------------------------------------------


def test_hat_ground_and_transversal_member():
    hat = hat_family(fam(mt.free(["e"]), mt.free(["e"])))
    g = hat.family
    assert len(g.ground) == 2 and len(g) == 3
    transversal = g.members[2]
    assert transversal.indep({("e", 0)}) and not transversal.indep({("e", 0), ("e", 1)})


def test_hat_dual_of_free_is_loop():
    hat = hat_family(fam(mt.free(["a"]), mt.free(["a"])))
    assert hat.family.members[0].is_loop(("a", 0))
    assert hat.family.members[0].is_loop(("a", 1))


def test_hat_roles_flip():
    hat = hat_family(k4_pair((F, C)))
    assert hat.family.roles == (C, F, F)


@pytest.mark.parametrize("family", [u13_double(), u23_u13(), fam(u("abc", 2), mt.free(list("abc")), u("abc", 1))])
def test_hat_projection(family):
    hat = hat_family(family)
    k = len(family)
    for i, m in enumerate(family.members):
        dual = mt.dual(m)
        member = hat.family.members[i]
        for s in brute.subsets(family.elements):
            assert member.indep({(e, i) for e in s}) == dual.indep(s)
            for j in range(k):
                if j != i:
                    for e in s:
                        assert member.is_loop((e, j))


def test_encode_decode_round_trip():
    rng = random.Random(5)
    for _ in range(60):
        family = random_family(rng, max_elements=5, max_members=3)
        parts = brute.brute_partitionings(family)
        if not parts or len(family) == 0:
            continue
        ff = with_witnesses(make_feasible(family, random_pairs(rng, family, rng.choice(parts).parts)))
        hat = hat_family(family)
        back = hat.decode(hat.encode(ff))
        assert back.same_pairs(ff)
        assert back.covering == ff.covering and back.packing == ff.packing


# -- packing_feasible ------------------------------------------------------------------


def test_packing_k4():
    family = k4_pair()
    out = packing_feasible(seed(family), cross_check=True)
    assert isinstance(out, Assignment) and verify(family, out, PACKING)
    hat = packing_feasible(seed(family), route="hat")
    assert verify(family, hat, PACKING)


def test_packing_free_free_absent():
    family = fam(mt.free(["a"]), mt.free(["a"]))
    for route in ("dual", "hat"):
        out = packing_feasible(seed(family), route=route)
        assert isinstance(out, Unpackable) and out.route == route
        assert out.check() == []


def test_packing_u13_double_exists():
    # two disjoint non-empty subsets of {a,b,c} span U_{1,3} twice
    out = packing_feasible(seed(u13_double()), cross_check=True)
    assert isinstance(out, Assignment) and verify(u13_double(), out, PACKING)


def test_dual_route_needs_two_members():
    with pytest.raises(PreconditionError):
        packing_feasible(seed(fam(mt.free(["a"]))), route="dual")


def test_hat_encoding_soundness():
    rng = random.Random(8)
    seen = set()
    for _ in range(300):
        family = random_family(rng, max_elements=4, max_members=3)
        if len(family) == 0:
            continue
        try:
            ff = make_feasible(family, random_pairs(rng, family))
        except FeasibilityError:
            continue
        _, has_pack = brute.brute_feasible(family, ff.pairs)
        out = packing_feasible(ff, route="hat")
        assert isinstance(out, Assignment) == has_pack
        if isinstance(out, Unpackable):
            assert out.check() == []
        if len(family) == 2:
            assert isinstance(packing_feasible(ff, route="dual"), Assignment) == has_pack
        seen.add(has_pack)
    assert seen == {True, False}


# -- normalize / eliminate ---------------------------------------------------------------


def test_normalize_examples():
    ff = seed(u12_double())
    assert normalize(ff).same_pairs(ff)
    ff = make_feasible(u12_double(), [({"a"}, {"a", "b"}), (set(), {"a", "b"})])
    out = normalize(ff)
    assert out.S == (fs("a", "b"), fs("b"))


def test_eliminate_example():
    family = u23_u13()
    out = eliminate_largest_tight(seed(family))
    assert out.I == (fs("a", "b"), fs("c"))
    assert verify(family, Assignment(out.I), "partitioning")
    assert largest_tight_set(quotient(out)).X == frozenset()


def test_eliminate_without_tight_set_is_identity():
    # with finite ground sets a feasible quotient has a partitioning, so its whole
    # ground set is tight; only an empty quotient has no non-empty tight set
    ff = make_feasible(u12_double(), [({"a"}, {"a", "b"}), ({"b"}, {"a", "b"})])
    assert len(quotient(ff).ground) == 0
    assert eliminate_largest_tight(ff).same_pairs(ff)


def test_feasible_quotient_is_entirely_tight():
    for _, ff in _feasible_instances(43, 40):
        q = quotient(ff)
        assert largest_tight_set(q).X == q.ground.full


def test_eliminate_smaller_tight_set():
    # two copies of U_{1,2} on {a,b} next to a free pair {c,d}: {a,b} is tight, E is not
    m = mt.direct_sum([u("ab", 1), mt.free(["c", "d"])])
    n = mt.direct_sum([u("ab", 1), mt.zero(["c", "d"])])
    family = fam(m, n)
    ff = with_witnesses(seed(family))
    cert = is_tight(quotient(ff), {"a", "b"})
    assert cert is not None
    out = eliminate_tight(ff, cert)
    assert out.covered() == fs("a", "b")
    for i, mi in enumerate(family.members):
        assert mi.span(out.I[i]) >= fs("a", "b")
    assert_feasible(out)


# -- cover / span / cospan ---------------------------------------------------------------


def test_cover_element_examples():
    ff = make_feasible(u12_double(), [({"a"}, {"a", "b"}), (set(), {"a", "b"})])
    assert cover_element(ff, "a").same_pairs(ff)
    out = cover_element(seed(k4_pair()), "12")
    assert "12" in out.covered()
    assert_feasible(out)
    out = cover_element(seed(u12_double()), "a")
    assert sum("a" in i for i in out.I) == 1
    assert_feasible(out)


def test_span_element_examples():
    family = u23_u13()
    out = span_element(seed(family), "a", 0)
    assert family.members[0].spans(out.I[0], "a")
    assert_feasible(out)
    out = span_element(seed(k4_pair()), "12", 1)
    assert k4().spans(out.I[1], "12")
    assert_feasible(out)
    ff = make_feasible(u12_double(), [({"a"}, {"a", "b"}), (set(), {"a", "b"})])
    assert span_element(ff, "b", 0).same_pairs(ff)


def test_span_element_needs_finitary_member():
    with pytest.raises(PreconditionError):
        span_element(seed(k4_pair((F, C))), "12", 1)


@pytest.mark.parametrize("route", ["dual", "hat"])
def test_cospan_element_example(route):
    family = k4_pair((F, C))
    out = cospan_element(seed(family), "12", 1, route=route, cross_check=True)
    assert _cospans(family.members[1], E4 - out.S[1], "12")
    assert out.I == seed(family).I
    assert_feasible(out)


def test_cospan_element_already_cospanned():
    family = k4_pair((F, C))
    ff = make_feasible(family, [(set(), E4), (set(), E4 - {"12", "13", "14"})])
    m = family.members[1]
    assert _cospans(m, fs("12", "13", "14"), "12")
    assert cospan_element(ff, "12", 1).same_pairs(ff)


def test_cospan_element_needs_cofinitary_member():
    with pytest.raises(PreconditionError):
        cospan_element(seed(k4_pair()), "12", 0)


def test_infeasible_input_is_rejected():
    with pytest.raises(PreconditionError):
        cover_element(seed(u13_double()), "a")


# -- preservation over random instances ---------------------------------------------------


def _feasible_instances(seed_value, count, max_elements=6, max_members=3):
    rng = random.Random(seed_value)
    produced = 0
    while produced < count:
        family = random_family(rng, max_elements=max_elements, max_members=max_members)
        if len(family) == 0 or not family.elements:
            continue
        parts = brute.brute_partitionings(family)
        if not parts:
            continue
        partition = rng.choice(parts).parts if rng.random() < 0.7 else None
        try:
            ff = make_feasible(family, random_pairs(rng, family, partition))
        except FeasibilityError:
            continue
        if not all(brute.brute_feasible(family, ff.pairs)):
            continue
        produced += 1
        yield rng, ff


def test_every_step_preserves_feasibility():
    for rng, ff in _feasible_instances(31, 150):
        family = ff.family
        e = rng.choice(family.elements)
        j = rng.randrange(len(family))
        outs = [normalize(ff), eliminate_largest_tight(ff), cover_element(ff, e)]
        if family.roles[j] is F:
            outs.append(span_element(ff, e, j))
            assert family.members[j].spans(outs[-1].I[j], e)
        else:
            outs.append(cospan_element(ff, e, j, cross_check=True))
            assert _cospans(family.members[j], family.ground.full - outs[-1].S[j], e)
        for out in outs:
            assert out.is_extension_of(ff)
            assert_feasible(out)


def test_normalized_s_avoids_other_i():
    for _, ff in _feasible_instances(37, 80):
        out = normalize(ff)
        for i, s in enumerate(out.S):
            for j, ij in enumerate(out.I):
                if i != j:
                    assert not s & ij


def test_eliminated_quotient_has_no_tight_set():
    for _, ff in _feasible_instances(41, 80):
        out = eliminate_largest_tight(ff)
        q = quotient(out)
        assert brute.brute_largest_tight(q) == frozenset()
