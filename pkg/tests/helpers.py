"""Small named instances shared by the test modules."""

from __future__ import annotations

from matroid_partition import matroids as mt
from matroid_partition.family import MatroidFamily, Role

K4_EDGES = {
    "12": ("1", "2"),
    "13": ("1", "3"),
    "14": ("1", "4"),
    "23": ("2", "3"),
    "24": ("2", "4"),
    "34": ("3", "4"),
}
K4_ELEMENTS = list(K4_EDGES)

F, C = Role.FINITARY, Role.COFINITARY


def k4():
    return mt.graphic(["1", "2", "3", "4"], K4_EDGES, ground=K4_ELEMENTS)


def fam(*members, roles=None, ground=None):
    return MatroidFamily.of(members, roles, ground=ground)


def u(elements, r):
    return mt.uniform(list(elements), r)


def k4_double(roles=(F, F)):
    m = k4()
    return fam(m, m, roles=roles)


def u12_double():
    return fam(u("ab", 1), u("ab", 1))


def u13_double():
    return fam(u("abc", 1), u("abc", 1))


def u23_u13():
    return fam(u("abc", 2), u("abc", 1))


def u12_free():
    return fam(u("ab", 1), mt.free(list("ab")))


def looped_free():
    """``M_0`` is free on {a,b} with b declared a loop; ``M_1`` is free."""
    return fam(mt.declare_loops(mt.free(list("ab")), {"b"}), mt.free(list("ab")))


def k22_matching():
    """Bipartite K_{2,2}: e1=x1y1, e2=x1y2, e3=x2y1, e4=x2y2."""
    names = ["e1", "e2", "e3", "e4"]
    ends = {"e1": ("x1", "y1"), "e2": ("x1", "y2"), "e3": ("x2", "y1"), "e4": ("x2", "y2")}
    by_left = mt.partition([(["e1", "e2"], 1), (["e3", "e4"], 1)], ground=names)
    by_right = mt.partition([(["e1", "e3"], 1), (["e2", "e4"], 1)], ground=names)
    return fam(by_left, mt.dual(by_right), roles=(F, C), ground=names), ends


def all_subsets(elements):
    from matroid_partition.brute import subsets

    return list(subsets(elements))


def same_independent_sets(m1, m2) -> bool:
    return m1.ground.full == m2.ground.full and all(
        m1.indep(s) == m2.indep(s) for s in all_subsets(m1.ground.elements)
    )
