"""Exact-arithmetic monoids of partial reflections over Weyl groups.

The package builds inverse monoids of partial linear isomorphisms from a
group and a subspace system, classifies their structure (Green's relations,
idempotent-separating congruences, factorizability), and computes their
orders both by closed formulas and by enumeration, cross-checking the two.
"""

from .errors import (
    AmbientMismatchError,
    CapExceededError,
    RefmonoidsError,
    SingularMatrixError,
    SystemViolationError,
    UsageError,
)
from .exactlin import Subspace, intersect, system_closure
from .pperm import (
    FiniteInverseMonoid,
    FiniteSemilattice,
    PartialMap,
    SignedPartialMap,
    compose,
    green_classes,
    inverse,
    is_fundamental,
    mu_congruence,
    munn_semigroup,
)
from .refmon import ReflectionMonoid, build, from_semilattice, order_by_isotropy
from .systems import (
    BTriple,
    SetPartition,
    SubspaceSystem,
    arrangement_system,
    boolean_system,
)
from .weyl import Group, SignedPermElement, WeylType, build_group, weyl_order

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatchError",
    "BTriple",
    "CapExceededError",
    "FiniteInverseMonoid",
    "FiniteSemilattice",
    "Group",
    "PartialMap",
    "ReflectionMonoid",
    "RefmonoidsError",
    "SetPartition",
    "SignedPartialMap",
    "SignedPermElement",
    "SingularMatrixError",
    "Subspace",
    "SubspaceSystem",
    "SystemViolationError",
    "UsageError",
    "WeylType",
    "arrangement_system",
    "boolean_system",
    "build",
    "build_group",
    "compose",
    "from_semilattice",
    "green_classes",
    "intersect",
    "inverse",
    "is_fundamental",
    "mu_congruence",
    "munn_semigroup",
    "order_by_isotropy",
    "system_closure",
    "weyl_order",
]
