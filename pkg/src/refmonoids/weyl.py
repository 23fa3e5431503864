"""Classical Weyl groups as signed permutation groups, plus a rational model
of the hexagonal (rank two, sixfold) group in Q^3.

Types A, B and D are realised on Q^n by coordinate permutations with sign
flips; the hexagonal group avoids irrational cosines by living on the plane
x1+x2+x3=0 inside Q^3, where all twelve of its roots have integer
coordinates.  Elements act on the right: x·g.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import UsageError
from .exactlin import (
    Matrix,
    Subspace,
    Vector,
    apply_matrix,
    identity_matrix,
    mat_mul,
    rref,
    vec,
)

CLASSICAL_FAMILIES = ("A", "B", "D")
TABLE_ONLY_FAMILIES = ("F4", "E6", "E7", "E8")
FAMILIES = CLASSICAL_FAMILIES + ("G2",) + TABLE_ONLY_FAMILIES


@dataclass(frozen=True)
class WeylType:
    """A family letter with a rank, honouring the degenerate conventions
    A(-1)=A0=empty, B0=empty, D0=D1=empty, and D2, D3 defined."""

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}")
        low = {"A": -1, "B": 0, "D": 0}.get(self.family)
        if low is not None and self.rank < low:
            raise UsageError(f"rank {self.rank} too small for family {self.family}")
        fixed = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}
        if self.family in fixed and self.rank != fixed[self.family]:
            raise UsageError(f"family {self.family} has rank {fixed[self.family]}")

    @property
    def ambient_dim(self) -> int:
        if self.family == "A":
            return self.rank + 1
        if self.family in ("B", "D"):
            return self.rank
        if self.family == "G2":
            return 3
        raise UsageError(f"family {self.family} has no realized model")

    def __str__(self) -> str:
        return self.family if self.family in ("G2", "F4", "E6", "E7", "E8") else f"{self.family}{self.rank}"


def weyl_order(family: str, rank: int) -> int:
    """Order of the Weyl group, with the degenerate-rank conventions."""
    import math

    if family == "A":
        return math.factorial(rank + 1) if rank >= 0 else 1
    if family == "B":
        return (1 << rank) * math.factorial(rank) if rank >= 1 else 1
    if family == "D":
        return (1 << (rank - 1)) * math.factorial(rank) if rank >= 2 else 1
    exceptional = {"G2": 12, "F4": 1152, "E6": 51840, "E7": 2903040, "E8": 696729600}
    if family in exceptional:
        return exceptional[family]
    raise UsageError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# group elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPermElement:
    """A signed permutation g(sigma, T): x_i ↦ ±x_{i·sigma}, the sign
    negative exactly when the source index i lies in the flip set T.

    The source-side flip labelling makes the combinatorial orbit and
    stabilizer formulas hold verbatim.  The other natural labelling (signs
    attached to target indices) is ``target_flips``; the classical
    semidirect-product law (sigma,X)(tau,Y) = (sigma tau, X tau △ Y) is an
    identity of target labels and is exercised in the tests.
    """

    sigma: tuple[int, ...]
    flips: frozenset[int]

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def target_flips(self) -> frozenset[int]:
        return frozenset(self.sigma[i - 1] for i in self.flips)

    def compose(self, other: "SignedPermElement") -> "SignedPermElement":
        # left-to-right: x(gh) = (xg)h; source flips combine as S △ U·sigma^-1
        tau = other.sigma
        st = tuple(tau[s - 1] for s in self.sigma)
        pulled = frozenset(
            i for i in range(1, self.n + 1) if self.sigma[i - 1] in other.flips
        )
        return SignedPermElement(st, self.flips ^ pulled)

    def inverse(self) -> "SignedPermElement":
        inv = [0] * self.n
        for i, s in enumerate(self.sigma, start=1):
            inv[s - 1] = i
        return SignedPermElement(tuple(inv), self.target_flips)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.n
        for i, x in enumerate(v, start=1):
            t = self.sigma[i - 1]
            out[t - 1] = -x if i in self.flips else x
        return tuple(out)

    @cached_property
    def matrix(self) -> Matrix:
        rows = []
        for i in range(1, self.n + 1):
            row = [Fraction(0)] * self.n
            t = self.sigma[i - 1]
            row[t - 1] = Fraction(-1 if i in self.flips else 1)
            rows.append(tuple(row))
        return tuple(rows)

    def sort_key(self):
        return (self.sigma, tuple(sorted(self.flips)))

    def __repr__(self) -> str:  # pragma: no cover
        return f"g({self.sigma},{sorted(self.flips)})"


@dataclass(frozen=True)
class MatrixElement:
    """A group element with no combinatorial shorthand: just its matrix."""

    matrix: Matrix

    def compose(self, other: "MatrixElement") -> "MatrixElement":
        return MatrixElement(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "MatrixElement":
        return MatrixElement(_matrix_inverse(self.matrix))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return apply_matrix(v, self.matrix)

    def sort_key(self):
        return self.matrix


def _matrix_inverse(m: Matrix) -> Matrix:
    d = len(m)
    aug = [list(m[i]) + [Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    reduced = rref(aug, 2 * d)
    if len(reduced) != d or any(reduced[i][i] != 1 for i in range(d)):
        raise UsageError("matrix is singular")
    return tuple(tuple(r[d:]) for r in reduced)


# ---------------------------------------------------------------------------
# finite groups with composition tables
# ---------------------------------------------------------------------------


class Group:
    """A finite group of exact linear maps on Q^d with index-based tables."""

    def __init__(self, elements: Iterable, dim: int, name: str = ""):
        self.elements = sorted(elements, key=lambda e: e.sort_key())
        self.dim = dim
        self.name = name
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise UsageError("duplicate group elements")
        n = len(self.elements)
        self.mul_table = [
            [self.index[a.compose(b)] for b in self.elements] for a in self.elements
        ]
        ident = identity_matrix(dim)
        self.identity = next(
            i for i, e in enumerate(self.elements) if e.matrix == ident
        )
        self.inv_table = [0] * n
        for i in range(n):
            self.inv_table[i] = next(
                j for j in range(n) if self.mul_table[i][j] == self.identity
            )

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inv(self, i: int) -> int:
        return self.inv_table[i]

    def apply(self, i: int, v: Sequence[Fraction]) -> Vector:
        return self.elements[i].apply(v)

    def act_space(self, x: Subspace, i: int) -> Subspace:
        g = self.elements[i]
        return Subspace(x.ambient_dim, rref([g.apply(r) for r in x.rows], x.ambient_dim))

    def fixes_pointwise(self, i: int, x: Subspace) -> bool:
        g = self.elements[i]
        return all(g.apply(r) == r for r in x.rows)

    def index_of(self, element) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise UsageError("element does not belong to this group") from None

    def matrices(self) -> tuple[Matrix, ...]:
        return tuple(e.matrix for e in self.elements)

    @classmethod
    def from_generators(cls, gens: Iterable, dim: int, name: str = "") -> "Group":
        gens = list(gens)
        if not gens:
            raise UsageError("a group needs at least one generator")
        elements = set(gens)
        frontier = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = a.compose(g)
                    if c not in elements:
                        elements.add(c)
                        nxt.append(c)
            frontier = nxt
        ident_candidates = [e for e in elements if e.matrix == identity_matrix(dim)]
        if not ident_candidates:
            if isinstance(next(iter(elements)), SignedPermElement):
                elements.add(SignedPermElement(tuple(range(1, dim + 1)), frozenset()))
            else:
                elements.add(MatrixElement(identity_matrix(dim)))
        return cls(elements, dim, name)


# ---------------------------------------------------------------------------
# root systems and reflections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystem:
    roots: tuple[Vector, ...]
    ambient_dim: int

    def positive_representatives(self) -> tuple[Vector, ...]:
        """One root per ± pair, the lexicographically larger one."""
        seen = set()
        out = []
        for r in self.roots:
            neg = tuple(-x for x in r)
            if neg in seen or r in seen:
                continue
            seen.add(r)
            out.append(max(r, neg))
        return tuple(sorted(out))


_G2_POSITIVE = ((1, -1, 0), (0, 1, -1), (1, 0, -1), (2, -1, -1), (-1, 2, -1), (-1, -1, 2))


def roots_of(t: WeylType) -> RootSystem:
    fam, n = t.family, t.ambient_dim
    pos: list[Vector] = []
    if fam == "A":
        pos = [_unit_diff(i, j, n) for i, j in combinations(range(n), 2)]
    elif fam == "B":
        pos = [_unit(i, n) for i in range(n)]
        pos += [_unit_diff(i, j, n) for i, j in combinations(range(n), 2)]
        pos += [_unit_sum(i, j, n) for i, j in combinations(range(n), 2)]
    elif fam == "D":
        pos = [_unit_diff(i, j, n) for i, j in combinations(range(n), 2)]
        pos += [_unit_sum(i, j, n) for i, j in combinations(range(n), 2)]
    elif fam == "G2":
        pos = [vec(r) for r in _G2_POSITIVE]
    else:
        raise UsageError(f"no realized root system for {t}")
    allroots = pos + [tuple(-x for x in r) for r in pos]
    return RootSystem(tuple(sorted(allroots)), n)


def _unit(i: int, n: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def _unit_diff(i: int, j: int, n: int) -> Vector:
    return tuple(Fraction(1 if k == i else -1 if k == j else 0) for k in range(n))


def _unit_sum(i: int, j: int, n: int) -> Vector:
    return tuple(Fraction(1 if k in (i, j) else 0) for k in range(n))


def reflection_matrix(root: Vector) -> Matrix:
    """s_v : x ↦ x - 2(x·v)/(v·v) v, exact over Q."""
    vv = sum(x * x for x in root)
    d = len(root)
    rows = []
    for i in range(d):
        row = [
            Fraction(int(i == j)) - 2 * root[i] * root[j] / vv for j in range(d)
        ]
        rows.append(tuple(row))
    return tuple(rows)


def classical_reflection(root: Vector) -> SignedPermElement:
    """The signed permutation form of s_v for a classical root."""
    n = len(root)
    support = [i + 1 for i, x in enumerate(root) if x != 0]
    if len(support) == 1:
        return SignedPermElement(tuple(range(1, n + 1)), frozenset(support))
    i, j = support
    sigma = list(range(1, n + 1))
    sigma[i - 1], sigma[j - 1] = j, i
    if root[i - 1] == -root[j - 1]:
        return SignedPermElement(tuple(sigma), frozenset())
    return SignedPermElement(tuple(sigma), frozenset(support))


def reflections(t: WeylType) -> tuple[tuple[Vector, object], ...]:
    """One (root, reflection element) pair per ± root pair."""
    system = roots_of(t)
    out = []
    for r in system.positive_representatives():
        if t.family == "G2":
            out.append((r, MatrixElement(reflection_matrix(r))))
        else:
            out.append((r, classical_reflection(r)))
    return tuple(out)


def build_group(t: WeylType) -> Group:
    """Full enumeration of the realized Weyl group, with matrices attached."""
    fam = t.family
    if fam == "A":
        n = t.rank + 1
        if n < 1:
            raise UsageError("A rank below 0 has no coordinate model")
        elems = [
            SignedPermElement(p, frozenset())
            for p in permutations(range(1, n + 1))
        ]
        return Group(elems, n, name=str(t))
    if fam in ("B", "D"):
        n = t.rank
        if n < 1:
            raise UsageError(f"{fam} rank below 1 has no coordinate model")
        elems = []
        for p in permutations(range(1, n + 1)):
            for bits in range(1 << n):
                flips = frozenset(i + 1 for i in range(n) if bits >> i & 1)
                if fam == "D" and len(flips) % 2:
                    continue
                elems.append(SignedPermElement(p, flips))
        return Group(elems, n, name=str(t))
    if fam == "G2":
        gens = [MatrixElement(reflection_matrix(r)) for r, _ in reflections(t)]
        group = Group.from_generators(gens, 3, name="G2")
        if group.order != 12:
            raise UsageError("hexagonal model closure has wrong order")
        return group
    raise UsageError(f"family {fam} has no explicit realization")


def root_span(t: WeylType) -> Subspace:
    system = roots_of(t)
    return Subspace.span(system.roots, system.ambient_dim)


def _has_antipodal_element(t: WeylType) -> bool:
    group = build_group(t)
    span = root_span(t)
    if span.dim == 0:
        return True
    for i in range(group.order):
        if all(group.apply(i, r) == tuple(-x for x in r) for r in span.rows):
            return True
    return False


# Families whose reflectional representation misses the antipodal map have an
# irreducible component among A_n (n>1), D_n (n odd) or E6; the stored flags
# below follow that classifier for the table-only families.  E6 carries no
# central -1 (its longest element acts through the diagram flip).  Realized
# families are always brute-forced; see is_minus_one_type.
_MINUS_ONE_TABLE = {"F4": True, "E6": False, "E7": True, "E8": True}


def is_minus_one_type(types: Iterable[WeylType]) -> bool:
    """Whether every irreducible component admits the antipodal map on its
    reflectional span."""
    for t in types:
        if t.family in _MINUS_ONE_TABLE:
            if not _MINUS_ONE_TABLE[t.family]:
                return False
        elif not _has_antipodal_element(t):
            return False
    return True


def stored_minus_one_flag(t: WeylType) -> bool | None:
    """The classification used for families without an explicit model."""
    return _MINUS_ONE_TABLE.get(t.family)
