"""Matroid union, tight sets, feasible families and base partitionings.

The main entry point is :func:`synthesize_partition`, which returns a base
partitioning of a matroid family or a checkable certificate that none exists.
"""

from .assignment import COVERING, PACKING, PARTITIONING, Assignment, VerificationReport, verify
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    FeasibilityError,
    InputError,
    MatroidError,
    PreconditionError,
)
from .family import MatroidFamily, Role
from .feasible import (
    FeasibleFamily,
    HatFamily,
    Unpackable,
    cospan_element,
    cover_element,
    covering_feasible,
    eliminate_largest_tight,
    hat_family,
    make_feasible,
    normalize,
    packing_feasible,
    quotient,
    span_element,
)
from .matroids import GroundSet, Matroid
from .partitioner import Absent, ReductionMap, finite_shortcut_check, reduce_to_three, synthesize_partition
from .tight import is_cowave, is_tight, largest_cowave, largest_tight_set, never_in_cover, one_more_cover
from .union import DualWitness, Primal, Uncoverable, augment, build_exchange_digraph, find_covering

__all__ = [
    "Absent",
    "Assignment",
    "BudgetExceeded",
    "COVERING",
    "ConsistencyError",
    "DualWitness",
    "FeasibilityError",
    "FeasibleFamily",
    "GroundSet",
    "HatFamily",
    "InputError",
    "Matroid",
    "MatroidError",
    "MatroidFamily",
    "PACKING",
    "PARTITIONING",
    "PreconditionError",
    "Primal",
    "ReductionMap",
    "Role",
    "Uncoverable",
    "Unpackable",
    "VerificationReport",
    "augment",
    "build_exchange_digraph",
    "cospan_element",
    "cover_element",
    "covering_feasible",
    "eliminate_largest_tight",
    "find_covering",
    "finite_shortcut_check",
    "hat_family",
    "is_cowave",
    "is_tight",
    "largest_cowave",
    "largest_tight_set",
    "make_feasible",
    "never_in_cover",
    "normalize",
    "one_more_cover",
    "packing_feasible",
    "quotient",
    "reduce_to_three",
    "span_element",
    "synthesize_partition",
    "verify",
]

__version__ = "0.1.0"
