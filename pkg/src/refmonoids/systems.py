"""Subspace systems for Weyl groups: the Boolean coordinate lattices and the
intersection lattices of reflection arrangements, parametrized combinatorially
(set partitions for type A, signed triples for types B and D), together with
orbits, stabilizers, and rank counts.

Each arrangement subspace is spanned by one signed indicator vector per
partition block: the block {i,...} with sign data Γ contributes
sum_i (±1)·e_i, the sign negative exactly on Γ.  Complementing Γ inside a
block negates that vector, which is why Γ is only defined per block up to
complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import SystemViolationError, UsageError
from .exactlin import Subspace, intersect
from .weyl import Group, SignedPermElement, WeylType, build_group, reflections, roots_of


# ---------------------------------------------------------------------------
# set partitions (type A)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..n} into disjoint nonempty blocks."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, n: int, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        blk = tuple(sorted(tuple(sorted(b)) for b in blocks))
        flat = [i for b in blk for i in b]
        if sorted(flat) != list(range(1, n + 1)):
            raise UsageError("blocks must partition 1..n")
        return cls(n, blk)

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls.make(n, [(i,) for i in range(1, n + 1)])

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def act(self, sigma: Sequence[int]) -> "SetPartition":
        return SetPartition.make(
            self.n, [tuple(sigma[i - 1] for i in b) for b in self.blocks]
        )

    def refines(self, other: "SetPartition") -> bool:
        cover = {i: b for b in other.blocks for i in b}
        return all(len({cover[i][0] for i in b}) == 1 for b in self.blocks)

    def join(self, other: "SetPartition") -> "SetPartition":
        """Coarsest common coarsening (union-find over both block sets)."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b in self.blocks + other.blocks:
            for i in b[1:]:
                parent[find(b[0])] = find(i)
        groups: dict[int, list[int]] = {}
        for i in range(1, self.n + 1):
            groups.setdefault(find(i), []).append(i)
        return SetPartition.make(self.n, groups.values())

    def meet(self, other: "SetPartition") -> "SetPartition":
        """Finest common refinement (pairwise block intersections)."""
        blocks = []
        for a in self.blocks:
            for b in other.blocks:
                c = sorted(set(a) & set(b))
                if c:
                    blocks.append(c)
        return SetPartition.make(self.n, blocks)


def set_partitions(n: int) -> list[SetPartition]:
    """All partitions of {1..n}, by restricted-growth strings."""
    if n == 0:
        return [SetPartition(0, ())]
    out = []

    def rec(i: int, rgs: list[int], k: int):
        if i == n:
            blocks: dict[int, list[int]] = {}
            for idx, c in enumerate(rgs, start=1):
                blocks.setdefault(c, []).append(idx)
            out.append(SetPartition.make(n, blocks.values()))
            return
        for c in range(k + 1):
            rec(i + 1, rgs + [c], max(k, c + 1))

    rec(0, [], 0)
    return out


def partition_subspace(p: SetPartition) -> Subspace:
    """The subspace of equal coordinates within each block; its dimension is
    the number of blocks."""
    vectors = []
    for b in p.blocks:
        v = [Fraction(0)] * p.n
        for i in b:
            v[i - 1] = Fraction(1)
        vectors.append(v)
    return Subspace.span(vectors, p.n)


# ---------------------------------------------------------------------------
# signed triples (types B and D)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BTriple:
    """A triple (Δ, Γ, Λ): zero coordinates Δ, a partition Λ of the rest, and
    per-block sign data Γ, canonical up to complement within each block."""

    n: int
    delta: tuple[int, ...]
    gamma: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def make(
        cls,
        n: int,
        delta: Iterable[int],
        gamma: Iterable[int],
        blocks: Iterable[Iterable[int]],
    ) -> "BTriple":
        d = tuple(sorted(set(delta)))
        rest = [i for i in range(1, n + 1) if i not in d]
        blk = tuple(sorted(tuple(sorted(b)) for b in blocks))
        flat = [i for b in blk for i in b]
        if sorted(flat) != rest:
            raise UsageError("blocks must partition the complement of delta")
        g = set(gamma)
        if not g <= set(rest):
            raise UsageError("gamma must avoid delta")
        canonical: list[int] = []
        for b in blk:
            inside = tuple(sorted(g & set(b)))
            complement = tuple(sorted(set(b) - g))
            canonical.extend(min(inside, complement))
        return cls(n, d, tuple(sorted(canonical)), blk)

    @property
    def m(self) -> int:
        return len(self.delta)

    @property
    def shape(self) -> tuple[int, tuple[int, ...]]:
        return self.m, tuple(sorted((len(b) for b in self.blocks), reverse=True))

    @property
    def mu_values(self) -> tuple[int, ...]:
        """|Γ ∩ block| per block, in shape order (largest block first)."""
        g = set(self.gamma)
        ordered = sorted(self.blocks, key=lambda b: (-len(b), b))
        return tuple(len(g & set(b)) for b in ordered)

    def act(self, g: SignedPermElement) -> "BTriple":
        """Image triple under g(sigma, T): (Δσ, (T_J △ Γ)σ, Λσ)."""
        sigma = g.sigma
        j = {i for b in self.blocks for i in b}
        tj = {i for i in g.flips if i in j}
        new_gamma = {sigma[i - 1] for i in tj ^ set(self.gamma)}
        return BTriple.make(
            self.n,
            (sigma[i - 1] for i in self.delta),
            new_gamma,
            [tuple(sigma[i - 1] for i in b) for b in self.blocks],
        )


def btriple_subspace(t: BTriple, family: str = "B") -> Subspace:
    """The arrangement subspace of a triple: coordinates vanish on Δ and are
    equal up to sign within each block (negated exactly on Γ)."""
    if family == "D" and t.m == 1:
        raise UsageError("type D admits no triple with |delta| = 1")
    if family not in ("B", "D"):
        raise UsageError(f"unsupported family {family!r}")
    g = set(t.gamma)
    vectors = []
    for b in t.blocks:
        v = [Fraction(0)] * t.n
        for i in b:
            v[i - 1] = Fraction(-1 if i in g else 1)
        vectors.append(v)
    return Subspace.span(vectors, t.n)


def all_btriples(n: int, family: str = "B") -> list[BTriple]:
    out = []
    ground = list(range(1, n + 1))
    for m in range(n + 1):
        if family == "D" and m == 1:
            continue
        for delta in combinations(ground, m):
            rest = [i for i in ground if i not in delta]
            for p in set_partitions(len(rest)):
                blocks = [tuple(rest[i - 1] for i in b) for b in p.blocks]
                for gamma in _gamma_choices(blocks):
                    out.append(BTriple.make(n, delta, gamma, blocks))
    return sorted(set(out), key=lambda t: (t.delta, t.blocks, t.gamma))


def _gamma_choices(blocks: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """All canonical sign patterns: per block, a subset up to complement."""
    choices: list[list[tuple[int, ...]]] = []
    for b in blocks:
        per_block = set()
        for k in range(len(b) + 1):
            for sub in combinations(b, k):
                comp = tuple(sorted(set(b) - set(sub)))
                per_block.add(min(sub, comp))
        choices.append(sorted(per_block))
    out = [()]
    for per_block in choices:
        out = [g + c for g in out for c in per_block]
    return out


# ---------------------------------------------------------------------------
# subspace systems
# ---------------------------------------------------------------------------


class SubspaceSystem:
    """A finite family of subspaces closed under a group action and pairwise
    intersection, with index-based meet/action tables."""

    def __init__(self, group: Group, spaces: Iterable[Subspace], kind: str = "generic", labels=None):
        self.group = group
        self.spaces = tuple(sorted(set(spaces), key=Subspace.sort_key))
        self.kind = kind
        self.index = {x: i for i, x in enumerate(self.spaces)}
        self.labels = dict(labels or {})
        d = group.dim
        if any(x.ambient_dim != d for x in self.spaces):
            raise UsageError("system members live in the wrong ambient space")
        if Subspace.full(d) not in self.index:
            raise SystemViolationError("a system must contain the full space")
        self._act: list[list[int]] | None = None
        self._meet: list[list[int]] | None = None
        self._iso: list[tuple[int, ...]] | None = None

    def __len__(self) -> int:
        return len(self.spaces)

    @property
    def full_index(self) -> int:
        return self.index[Subspace.full(self.group.dim)]

    def act_table(self) -> list[list[int]]:
        if self._act is None:
            table = []
            for x in self.spaces:
                row = []
                for g in range(self.group.order):
                    y = self.group.act_space(x, g)
                    if y not in self.index:
                        raise SystemViolationError(
                            f"system is not invariant: {x} moved outside"
                        )
                    row.append(self.index[y])
                table.append(row)
            self._act = table
        return self._act

    def meet_table(self) -> list[list[int]]:
        if self._meet is None:
            k = len(self.spaces)
            table = [[0] * k for _ in range(k)]
            for i in range(k):
                table[i][i] = i
                for j in range(i + 1, k):
                    z = intersect(self.spaces[i], self.spaces[j])
                    if z not in self.index:
                        raise SystemViolationError(
                            "system is not closed under intersection"
                        )
                    table[i][j] = table[j][i] = self.index[z]
            self._meet = table
        return self._meet

    def isotropy(self, i: int) -> tuple[int, ...]:
        """Indices of group elements fixing the i-th subspace pointwise."""
        if self._iso is None:
            self._iso = [None] * len(self.spaces)  # type: ignore[list-item]
        if self._iso[i] is None:
            x = self.spaces[i]
            self._iso[i] = tuple(
                g for g in range(self.group.order) if self.group.fixes_pointwise(g, x)
            )
        return self._iso[i]

    def validate_axioms(self) -> None:
        self.act_table()
        self.meet_table()

    def rank_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in self.spaces:
            out[x.codim] = out.get(x.codim, 0) + 1
        return out

    def orbits(self) -> list["Orbit"]:
        act = self.act_table()
        seen = [False] * len(self.spaces)
        out = []
        for i in range(len(self.spaces)):
            if seen[i]:
                continue
            members = set()
            stack = [i]
            while stack:
                x = stack.pop()
                if x in members:
                    continue
                members.add(x)
                for g in range(self.group.order):
                    y = act[x][g]
                    if y not in members:
                        stack.append(y)
            for x in members:
                seen[x] = True
            rep = min(members)
            out.append(
                Orbit(
                    representative=rep,
                    members=tuple(sorted(members)),
                    label=self.labels.get(rep, ("rank", self.spaces[rep].codim)),
                )
            )
        return sorted(out, key=lambda o: o.representative)


@dataclass(frozen=True)
class Orbit:
    representative: int
    members: tuple[int, ...]
    label: object

    @property
    def size(self) -> int:
        return len(self.members)


# ---------------------------------------------------------------------------
# the standard systems
# ---------------------------------------------------------------------------


def boolean_system(t: WeylType) -> SubspaceSystem:
    """The 2^n coordinate-subspace lattice for a classical Weyl group."""
    if t.family not in ("A", "B", "D"):
        raise UsageError("Boolean systems are built for classical families only")
    group = build_group(t)
    n = group.dim
    spaces = {}
    for k in range(n + 1):
        for zeros in combinations(range(1, n + 1), k):
            vectors = []
            for j in range(1, n + 1):
                if j not in zeros:
                    v = [Fraction(0)] * n
                    v[j - 1] = Fraction(1)
                    vectors.append(v)
            x = Subspace.span(vectors, n)
            spaces[x] = frozenset(zeros)
    system = SubspaceSystem(group, spaces.keys(), kind=f"boolean-{t.family}")
    system.labels = {
        system.index[x]: ("zeros", tuple(sorted(z))) for x, z in spaces.items()
    }
    return system


def arrangement_system(t: WeylType) -> SubspaceSystem:
    """The intersection lattice of the reflection arrangement, built from its
    combinatorial parametrization (A: partitions; B, D: triples) or, for the
    hexagonal group, from the explicit rational model."""
    fam = t.family
    if fam == "A":
        group = build_group(t)
        n = group.dim
        labeled = {partition_subspace(p): p for p in set_partitions(n)}
        system = SubspaceSystem(group, labeled.keys(), kind="arrangement-A")
        system.labels = {
            system.index[x]: ("shape", p.shape) for x, p in labeled.items()
        }
        return system
    if fam in ("B", "D"):
        group = build_group(t)
        n = group.dim
        labeled: dict[Subspace, BTriple] = {}
        for trip in all_btriples(n, fam):
            labeled[btriple_subspace(trip, fam)] = trip
        system = SubspaceSystem(group, labeled.keys(), kind=f"arrangement-{fam}")
        labels = {}
        for x, trip in labeled.items():
            m, lam = trip.shape
            if fam == "D" and m == 0 and lam and all(l % 2 == 0 for l in lam):
                labels[system.index[x]] = ("shape", m, lam, len(trip.gamma) % 2)
            else:
                labels[system.index[x]] = ("shape", m, lam)
        system.labels = labels
        return system
    if fam == "G2":
        group = build_group(t)
        spaces = {Subspace.full(3)}
        hyperplanes = []
        for root, _ in reflections(t):
            h = Subspace(3, _root_perp(root))
            hyperplanes.append(h)
            spaces.add(h)
        for x, y in combinations(hyperplanes, 2):
            spaces.add(intersect(x, y))
        return SubspaceSystem(group, spaces, kind="arrangement-G2")
    raise UsageError(f"no explicit arrangement model for family {fam}")


def _root_perp(root) -> tuple:
    from .exactlin import nullspace

    return nullspace([root], len(root))


# ---------------------------------------------------------------------------
# stabilizers and isotropy
# ---------------------------------------------------------------------------


def pointwise_isotropy_order(x: Subspace, group: Group) -> int:
    return sum(1 for g in range(group.order) if group.fixes_pointwise(g, x))


def triple_stabilizer_order(t: BTriple) -> int:
    """Closed form 2^(m+p) m! Π δ(μ_i, λ_i) for the count of elements
    fixing Δ setwise, each block setwise, and the sign data up to
    per-block complement."""
    from .orders import delta_mn

    m, lam = t.shape
    p = len(lam)
    value = (1 << (m + p)) * math.factorial(m)
    for mu, l in zip(t.mu_values, lam):
        value *= delta_mn(mu, l)
    return value


def triple_stabilizer_count(t: BTriple, group: Group, even_only: bool = False) -> int:
    """Enumeration oracle for the same condition set; ``even_only`` restricts
    to elements with an even flip set."""
    count = 0
    gset = set(t.gamma)
    for e in group.elements:
        if even_only and len(e.flips) % 2:
            continue
        if _stabilizes_triple(t, e, gset):
            count += 1
    return count


def _stabilizes_triple(t: BTriple, e: SignedPermElement, gset: set[int]) -> bool:
    sigma = e.sigma
    if {sigma[i - 1] for i in t.delta} != set(t.delta):
        return False
    for b in t.blocks:
        bset = set(b)
        if {sigma[i - 1] for i in b} != bset:
            return False
        gi = gset & bset
        ti = {i for i in e.flips if i in bset}
        image = {sigma[i - 1] for i in ti ^ gi}
        if image != gi and image != bset - gi:
            return False
    return True


# ---------------------------------------------------------------------------
# rank counts in closed form
# ---------------------------------------------------------------------------


def stirling_rank_counts(family: str, n: int) -> dict[int, int]:
    """Closed-form census of arrangement subspaces by rank (= codimension).

    The underlying sums are indexed by subspace dimension k: a type-A
    subspace of dimension k corresponds to a partition with k blocks, giving
    S(n,k) of them; types B and D add the choice of the non-zero coordinate
    set of size i, giving sum_i 2^(i-k) C(n,i) S(i,k), with i = n-1 excluded
    in type D.  Rank r translates to dimension n-r.
    """
    from .orders import stirling2

    out: dict[int, int] = {}
    for r in range(n + 1):
        k = n - r
        if family == "A":
            value = stirling2(n, k)
        elif family in ("B", "D"):
            value = 0
            for i in range(k, n + 1):
                if family == "D" and i == n - 1:
                    continue
                value += (1 << (i - k)) * math.comb(n, i) * stirling2(i, k)
        else:
            raise UsageError(f"no closed-form rank counts for family {family}")
        if value:
            out[r] = value
    return out


# ---------------------------------------------------------------------------
# the hexagonal line system
# ---------------------------------------------------------------------------


def hexagon_line_system() -> tuple[Group, SubspaceSystem]:
    """The symmetric-group-of-degree-3 subgroup of the hexagonal model acting
    on the system of all six root lines, the plane they span, the full space
    and the origin.

    This is the smallest system whose monoid separates two behaviours of the
    maximal idempotent-separating congruence: trivial on the unit group, yet
    not the equality relation.
    """
    t = WeylType("G2", 2)
    from .weyl import MatrixElement, reflection_matrix

    gens = [
        MatrixElement(reflection_matrix(r))
        for r in ((Fraction(1), Fraction(-1), Fraction(0)), (Fraction(0), Fraction(1), Fraction(-1)))
    ]
    group = Group.from_generators(gens, 3, name="hexagon-S3")
    lines = [Subspace.span([r], 3) for r in roots_of(t).positive_representatives()]
    plane = Subspace.span(list(roots_of(t).roots), 3)
    spaces = {Subspace.full(3), plane, Subspace.zero(3), *lines}
    return group, SubspaceSystem(group, spaces, kind="hexagon")
