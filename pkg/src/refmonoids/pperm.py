"""Partial bijections and a generic finite inverse-monoid kernel.

Maps compose left to right and act on the right throughout the package:
``x (a*b) = (x a) b``.  The kernel works on any finite monoid presented by
index tables, so the same Green's / congruence machinery serves abstract
monoids, Munn semigroups and the reflection monoids built elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .errors import UsageError


# ---------------------------------------------------------------------------
# partial maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PartialMap:
    """A partial bijection of {1..n}, stored as its sorted graph."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, n: int, mapping: Iterable[tuple[int, int]]) -> "PartialMap":
        pairs = tuple(sorted((int(i), int(j)) for i, j in mapping))
        ground = set(range(1, n + 1))
        sources = [i for i, _ in pairs]
        targets = [j for _, j in pairs]
        if len(set(sources)) != len(pairs) or len(set(targets)) != len(pairs):
            raise UsageError("graph is not a partial bijection")
        if not set(sources) <= ground or not set(targets) <= ground:
            raise UsageError(f"graph leaves the ground set 1..{n}")
        return cls(n, pairs)

    @classmethod
    def identity(cls, n: int) -> "PartialMap":
        return cls(n, tuple((i, i) for i in range(1, n + 1)))

    @classmethod
    def partial_identity(cls, n: int, subset: Iterable[int]) -> "PartialMap":
        return cls(n, tuple((i, i) for i in sorted(set(subset))))

    @classmethod
    def empty(cls, n: int) -> "PartialMap":
        return cls(n, ())

    @classmethod
    def from_permutation(cls, images: Sequence[int]) -> "PartialMap":
        return cls(len(images), tuple((i + 1, images[i]) for i in range(len(images))))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.pairs)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(j for _, j in self.pairs)

    def __call__(self, i: int) -> int | None:
        for a, b in self.pairs:
            if a == i:
                return b
        return None

    def is_idempotent(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def is_unit(self) -> bool:
        return len(self.pairs) == self.n


def compose(a: PartialMap, b: PartialMap) -> PartialMap:
    """x(ab) = (xa)b on {x in dom a : xa in dom b}."""
    if a.n != b.n:
        raise UsageError(f"ground set sizes differ: {a.n} vs {b.n}")
    lookup = dict(b.pairs)
    return PartialMap(
        a.n, tuple(sorted((i, lookup[j]) for i, j in a.pairs if j in lookup))
    )


def inverse(a: PartialMap) -> PartialMap:
    return PartialMap(a.n, tuple(sorted((j, i) for i, j in a.pairs)))


def all_partial_maps(n: int) -> list[PartialMap]:
    """The full symmetric inverse monoid on {1..n}."""
    ground = list(range(1, n + 1))
    out = []
    for k in range(n + 1):
        for dom in combinations(ground, k):
            for img in combinations(ground, k):
                for perm in permutations(img):
                    out.append(PartialMap(n, tuple(sorted(zip(dom, perm)))))
    return out


def monoid_closure(generators: Iterable[PartialMap]) -> frozenset[PartialMap]:
    """Close a set of partial maps of common degree under composition."""
    gens = list(generators)
    elements = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for c in (compose(a, g), compose(g, a)):
                    if c not in elements:
                        elements.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(elements)


# ---------------------------------------------------------------------------
# signed partial maps on {±1..±n}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPartialMap:
    """A partial bijection of {±1..±n} commuting with negation.

    The graph satisfies (i,j) present iff (-i,-j) present, so domains are
    symmetric about 0.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, n: int, mapping: Iterable[tuple[int, int]]) -> "SignedPartialMap":
        graph = {(int(i), int(j)) for i, j in mapping}
        graph |= {(-i, -j) for i, j in graph}
        pairs = tuple(sorted(graph))
        ground = {i for i in range(-n, n + 1) if i != 0}
        sources = [i for i, _ in pairs]
        targets = [j for _, j in pairs]
        if len(set(sources)) != len(pairs) or len(set(targets)) != len(pairs):
            raise UsageError("graph is not a partial bijection")
        if not set(sources) <= ground or not set(targets) <= ground:
            raise UsageError(f"graph leaves the ground set ±1..±{n}")
        return cls(n, pairs)

    @classmethod
    def identity(cls, n: int) -> "SignedPartialMap":
        return cls.make(n, [(i, i) for i in range(1, n + 1)])

    @classmethod
    def partial_identity(cls, n: int, subset: Iterable[int]) -> "SignedPartialMap":
        return cls.make(n, [(i, i) for i in set(subset)])

    @classmethod
    def from_signed_perm(
        cls, sigma: Sequence[int], flips: Iterable[int]
    ) -> "SignedPartialMap":
        """Full signed permutation with source-side flip labels:
        i ↦ -(i·sigma) exactly when i is flagged."""
        flips = set(flips)
        n = len(sigma)
        return cls.make(
            n,
            [
                (i, -sigma[i - 1] if i in flips else sigma[i - 1])
                for i in range(1, n + 1)
            ],
        )

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.pairs)

    @property
    def positive_domain(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.pairs if i > 0)

    def __call__(self, i: int) -> int | None:
        for a, b in self.pairs:
            if a == i:
                return b
        return None

    def is_idempotent(self) -> bool:
        return all(a == b for a, b in self.pairs)

    def is_unit(self) -> bool:
        return len(self.pairs) == 2 * self.n


def compose_signed(a: SignedPartialMap, b: SignedPartialMap) -> SignedPartialMap:
    if a.n != b.n:
        raise UsageError(f"ground set sizes differ: {a.n} vs {b.n}")
    lookup = dict(b.pairs)
    return SignedPartialMap(
        a.n, tuple(sorted((i, lookup[j]) for i, j in a.pairs if j in lookup))
    )


def inverse_signed(a: SignedPartialMap) -> SignedPartialMap:
    return SignedPartialMap(a.n, tuple(sorted((j, i) for i, j in a.pairs)))


def all_signed_partial_maps(n: int) -> list[SignedPartialMap]:
    """The monoid of partial signed permutations of {1..n}."""
    ground = list(range(1, n + 1))
    out = []
    for k in range(n + 1):
        for dom in combinations(ground, k):
            for img in combinations(ground, k):
                for perm in permutations(img):
                    for signs in range(1 << k):
                        pairs = [
                            (dom[t], -perm[t] if signs >> t & 1 else perm[t])
                            for t in range(k)
                        ]
                        out.append(SignedPartialMap.make(n, pairs))
    return out


def sigma_generator(n: int, i: int, subset: Iterable[int]) -> PartialMap:
    """Partial transposition: swaps i, i+1 on the given domain, identity on
    the rest of the domain, undefined elsewhere."""
    y = set(subset)
    if not {i, i + 1} <= y:
        raise UsageError("domain must contain i and i+1")
    return PartialMap.make(
        n, [(a, i + 1 if a == i else i if a == i + 1 else a) for a in y]
    )


def tau_generator(n: int, i: int, subset: Iterable[int]) -> SignedPartialMap:
    """Partial sign flip: acts as (i,-i) on Y ∪ -Y where i ∈ Y."""
    y = set(subset)
    if i not in y:
        raise UsageError("domain must contain i")
    return SignedPartialMap.make(n, [(a, -i if a == i else a) for a in y])


def mu_generator(n: int, i: int, subset: Iterable[int]) -> SignedPartialMap:
    """Partial signed transposition: acts as (i,i+1)(-i,-i-1) on Y ∪ -Y."""
    y = set(subset)
    if not {i, i + 1} <= y:
        raise UsageError("domain must contain i and i+1")
    return SignedPartialMap.make(
        n, [(a, i + 1 if a == i else i if a == i + 1 else a) for a in y]
    )


def signed_monoid_closure(
    generators: Iterable[SignedPartialMap],
) -> frozenset[SignedPartialMap]:
    gens = list(generators)
    elements = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for c in (compose_signed(a, g), compose_signed(g, a)):
                    if c not in elements:
                        elements.add(c)
                        nxt.append(c)
        frontier = nxt
    return frozenset(elements)


# ---------------------------------------------------------------------------
# abstract finite inverse monoids
# ---------------------------------------------------------------------------


class FiniteInverseMonoid:
    """A finite inverse monoid presented by multiplication/inverse tables.

    ``elements`` keeps the original objects for display; all computation is
    index based.
    """

    def __init__(self, elements: Sequence, mul_table, inv_table, unit: int):
        self.elements = list(elements)
        self.mul_table = mul_table
        self.inv_table = inv_table
        self.unit = unit
        self.size = len(self.elements)
        self.idempotents = tuple(
            i for i in range(self.size) if mul_table[i][i] == i
        )

    # -- construction -------------------------------------------------

    @classmethod
    def from_elements(
        cls,
        elements: Iterable,
        mul: Callable,
        validate: bool = True,
    ) -> "FiniteInverseMonoid":
        elems = sorted(set(elements), key=repr)
        index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        table = []
        for a in elems:
            row = []
            for b in elems:
                c = mul(a, b)
                if c not in index:
                    raise UsageError("element list is not closed under product")
                row.append(index[c])
            table.append(row)
        monoid = cls._from_table(elems, table)
        if validate:
            monoid.validate()
        return monoid

    @classmethod
    def from_table(cls, mul_table: Sequence[Sequence[int]], elements=None):
        n = len(mul_table)
        elems = list(elements) if elements is not None else list(range(n))
        return cls._from_table(elems, [list(r) for r in mul_table])

    @classmethod
    def _from_table(cls, elems, table):
        n = len(elems)
        unit = next(
            (
                e
                for e in range(n)
                if all(table[e][x] == x == table[x][e] for x in range(n))
            ),
            None,
        )
        if unit is None:
            raise UsageError("multiplication table has no identity")
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if table[table[a][b]][a] == a and table[table[b][a]][b] == b:
                    if inv[a] is not None and inv[a] != b:
                        raise UsageError(f"element {a} has two inverses")
                    inv[a] = b
            if inv[a] is None:
                raise UsageError(f"element {a} has no inverse")
        return cls(elems, table, inv, unit)

    # -- basic operations ----------------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self.mul_table[i][j]

    def inv(self, i: int) -> int:
        return self.inv_table[i]

    def conjugate(self, x: int, a: int) -> int:
        """a^{-1} x a."""
        return self.mul(self.mul(self.inv(a), x), a)

    def units(self) -> tuple[int, ...]:
        e = self.unit
        return tuple(
            a for a in range(self.size) if self.mul(a, self.inv(a)) == e
        )

    def natural_leq(self, e: int, f: int) -> bool:
        """Idempotent order: e <= f iff ef = e."""
        return self.mul(e, f) == e

    def validate(self) -> None:
        """Inverse-monoid axioms.  Full associativity is cubic, so it is only
        exhausted on small tables; idempotent commutativity (which forces
        uniqueness of inverses in a regular semigroup) is always checked."""
        n = self.size
        if n <= 64:
            for a in range(n):
                for b in range(n):
                    ab = self.mul(a, b)
                    for c in range(n):
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                            raise UsageError("multiplication is not associative")
        for a in range(n):
            b = self.inv(a)
            if self.mul(self.mul(a, b), a) != a or self.mul(self.mul(b, a), b) != b:
                raise UsageError("inverse table is wrong")
        for e in self.idempotents:
            for f in self.idempotents:
                if self.mul(e, f) != self.mul(f, e):
                    raise UsageError("idempotents do not commute")


@dataclass
class GreenClasses:
    """The five Green's partitions, as tuples of frozensets of indices."""

    r: tuple[frozenset[int], ...]
    l: tuple[frozenset[int], ...]
    h: tuple[frozenset[int], ...]
    d: tuple[frozenset[int], ...]
    j: tuple[frozenset[int], ...]

    def counts(self) -> dict[str, int]:
        return {
            "R": len(self.r),
            "L": len(self.l),
            "H": len(self.h),
            "D": len(self.d),
            "J": len(self.j),
        }


def _partition_by(keys: Sequence) -> tuple[tuple[frozenset[int], ...], list[int]]:
    groups: dict = {}
    ids = []
    for i, k in enumerate(keys):
        groups.setdefault(k, []).append(i)
        ids.append(k)
    classes = tuple(
        frozenset(v) for _, v in sorted(groups.items(), key=lambda kv: min(kv[1]))
    )
    return classes, ids


def green_classes(m: FiniteInverseMonoid, ideal_cap: int = 600) -> GreenClasses:
    """Green's relations of a finite inverse monoid.

    R and L come from aa⁻¹ / a⁻¹a, H is their meet and D the join (connected
    components of the R/L incidence).  J is computed from principal two-sided
    ideals of D-class representatives; for finite monoids it coincides with D
    and the ideal computation (quadratic per representative) is skipped above
    ``ideal_cap`` elements.
    """
    n = m.size
    r_key = [m.mul(a, m.inv(a)) for a in range(n)]
    l_key = [m.mul(m.inv(a), a) for a in range(n)]
    r_classes, _ = _partition_by(r_key)
    l_classes, _ = _partition_by(l_key)
    h_classes, _ = _partition_by(list(zip(r_key, l_key)))

    # D = join of R and L: union-find over shared R/L keys.
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    for a in range(n):
        union(("r", r_key[a]), ("l", l_key[a]))
    d_classes, _ = _partition_by([find(("r", r_key[a])) for a in range(n)])

    if n <= ideal_cap:
        ideal_of: dict[int, frozenset[int]] = {}
        for cls in d_classes:
            rep = min(cls)
            ideal_of[rep] = _principal_ideal(m, rep)
        j_key = []
        for a in range(n):
            rep = min(next(c for c in d_classes if a in c))
            j_key.append(ideal_of[rep])
        j_classes, _ = _partition_by(j_key)
    else:
        j_classes = d_classes
    return GreenClasses(r_classes, l_classes, h_classes, d_classes, j_classes)


def _principal_ideal(m: FiniteInverseMonoid, a: int) -> frozenset[int]:
    """M a M, as a set of element indices."""
    seen = {a}
    frontier = [a]
    while frontier:
        nxt = []
        for x in frontier:
            for y in range(m.size):
                for z in (m.mul(y, x), m.mul(x, y)):
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
        frontier = nxt
    return frozenset(seen)


def mu_congruence(m: FiniteInverseMonoid) -> tuple[frozenset[int], ...]:
    """The greatest idempotent-separating congruence: a μ b iff
    a⁻¹ea = b⁻¹eb for every idempotent e."""
    signatures = [
        tuple(m.conjugate(e, a) for e in m.idempotents) for a in range(m.size)
    ]
    classes, _ = _partition_by(signatures)
    return classes


def is_fundamental(m: FiniteInverseMonoid) -> bool:
    return len(mu_congruence(m)) == m.size


def mu_witness(m: FiniteInverseMonoid) -> tuple[int, int] | None:
    """Some pair of distinct μ-related elements, if any."""
    for cls in mu_congruence(m):
        if len(cls) > 1:
            a, b = sorted(cls)[:2]
            return a, b
    return None


# ---------------------------------------------------------------------------
# semilattices and Munn semigroups
# ---------------------------------------------------------------------------


class FiniteSemilattice:
    """A finite meet semilattice with top, given by a meet table."""

    def __init__(self, elements: Sequence, meet_table: Sequence[Sequence[int]], top: int):
        self.elements = list(elements)
        self.meet_table = [list(r) for r in meet_table]
        self.top = top
        self.size = len(self.elements)

    @classmethod
    def from_meet(cls, elements: Sequence, meet: Callable) -> "FiniteSemilattice":
        elems = list(elements)
        index = {e: i for i, e in enumerate(elems)}
        table = [[index[meet(a, b)] for b in elems] for a in elems]
        top = next(
            i
            for i in range(len(elems))
            if all(table[i][j] == j for j in range(len(elems)))
        )
        lattice = cls(elems, table, top)
        lattice.validate()
        return lattice

    @classmethod
    def chain(cls, k: int) -> "FiniteSemilattice":
        return cls(list(range(k)), [[min(i, j) for j in range(k)] for i in range(k)], k - 1)

    @classmethod
    def boolean(cls, atoms: int) -> "FiniteSemilattice":
        subsets = list(range(1 << atoms))
        return cls(subsets, [[a & b for b in subsets] for a in subsets], (1 << atoms) - 1)

    def meet(self, i: int, j: int) -> int:
        return self.meet_table[i][j]

    def leq(self, i: int, j: int) -> bool:
        return self.meet(i, j) == i

    def ideal(self, e: int) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if self.leq(x, e))

    def validate(self) -> None:
        n = self.size
        for i in range(n):
            if self.meet(i, i) != i:
                raise UsageError("meet is not idempotent")
            if self.meet(i, self.top) != i:
                raise UsageError("top is not neutral")
            for j in range(n):
                if self.meet(i, j) != self.meet(j, i):
                    raise UsageError("meet is not commutative")
                for k in range(n):
                    if self.meet(self.meet(i, j), k) != self.meet(i, self.meet(j, k)):
                        raise UsageError("meet is not associative")

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        n = self.size
        return sorted(perm) == list(range(n)) and all(
            perm[self.meet(i, j)] == self.meet(perm[i], perm[j])
            for i in range(n)
            for j in range(n)
        )


def ideal_isomorphisms(
    lattice: FiniteSemilattice, e: int, f: int
) -> list[tuple[tuple[int, int], ...]]:
    """All meet-isomorphisms between the principal ideals of e and f,
    each returned as a graph of (element, image) pairs."""
    a = lattice.ideal(e)
    b = lattice.ideal(f)
    if len(a) != len(b):
        return []
    out = []
    for img in permutations(b):
        assign = dict(zip(a, img))
        if all(
            assign[lattice.meet(x, y)] == lattice.meet(assign[x], assign[y])
            for x in a
            for y in a
        ):
            out.append(tuple(sorted(assign.items())))
    return out


def munn_semigroup(lattice: FiniteSemilattice) -> FiniteInverseMonoid:
    """The inverse monoid of all isomorphisms between principal ideals,
    realised as partial maps on the semilattice's index set {1..size}."""
    maps = set()
    for e in range(lattice.size):
        for f in range(lattice.size):
            for graph in ideal_isomorphisms(lattice, e, f):
                maps.add(
                    PartialMap.make(lattice.size, [(i + 1, j + 1) for i, j in graph])
                )
    return FiniteInverseMonoid.from_elements(maps, compose, validate=True)


def munn_representation(m: FiniteInverseMonoid) -> list[PartialMap]:
    """The fundamental representation: a ↦ (x ↦ a⁻¹xa on the ideal below
    aa⁻¹), realised as partial maps on idempotent positions {1..k}."""
    pos = {e: t + 1 for t, e in enumerate(m.idempotents)}
    out = []
    for a in range(m.size):
        top = m.mul(a, m.inv(a))
        pairs = [
            (pos[e], pos[m.conjugate(e, a)])
            for e in m.idempotents
            if m.natural_leq(e, top)
        ]
        out.append(PartialMap.make(len(m.idempotents), pairs))
    return out


def factorizable_check(elements: Iterable):
    """Whether every element of a sub-inverse-monoid of (signed) partial maps
    is a restriction of one of its own units.  Returns (flag, factorizations)
    where factorizations maps each element to a witness (ε_dom, unit)."""
    elems = list(elements)
    units = [g for g in elems if g.is_unit()]
    witness: dict = {}
    for a in elems:
        if isinstance(a, SignedPartialMap):
            eps = SignedPartialMap.partial_identity(a.n, a.positive_domain)
            mul = compose_signed
        else:
            eps = PartialMap.partial_identity(a.n, a.domain)
            mul = compose
        found = next((g for g in units if mul(eps, g) == a), None)
        if found is None:
            return False, witness
        witness[a] = (eps, found)
    return True, witness
