"""Desk-scale rational polyhedral cones and their face lattices, plus the
comparison homomorphism from a subspace-system monoid onto the monoid
generated by the face lattice and the group acting on it.

Faces are detected by exact supporting functionals: a candidate hyperplane is
spanned by a ray subset, its normal is oriented to keep all rays on one side,
and every face is an intersection of the facets found this way.  Everything
is capped to at most eight extreme rays in ambient dimension at most four.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CapExceededError, UsageError
from .exactlin import Matrix, Subspace, Vector, dot, mat, nullspace, rref
from .pperm import FiniteInverseMonoid, FiniteSemilattice, PartialMap
from .refmon import ReflectionMonoid, build, from_semilattice
from .systems import SubspaceSystem
from .weyl import Group, SignedPermElement, WeylType, build_group

MAX_RAYS = 8
MAX_DIM = 4


@dataclass(frozen=True)
class RationalCone:
    """A full-dimensional cone given by its extreme rays (assumed minimal)."""

    ambient_dim: int
    rays: Matrix

    @classmethod
    def make(cls, rays: Iterable[Iterable], ambient_dim: int) -> "RationalCone":
        rows = mat(rays)
        if any(all(x == 0 for x in r) for r in rows):
            raise UsageError("cone generators must be nonzero")
        return cls(ambient_dim, rows)

    @classmethod
    def simplex(cls, d: int) -> "RationalCone":
        """The cone on the standard basis of Q^d."""
        return cls.make(
            [[Fraction(int(i == j)) for j in range(d)] for i in range(d)], d
        )

    @classmethod
    def square(cls) -> "RationalCone":
        """The cone on a square in Q^3; its face lattice is not Boolean."""
        return cls.make([(1, 1, 1), (1, -1, 1), (-1, -1, 1), (-1, 1, 1)], 3)

    @property
    def is_simplicial(self) -> bool:
        return len(rref(self.rays, self.ambient_dim)) == len(self.rays)


@dataclass(frozen=True)
class Face:
    rays: frozenset[int]
    span: Subspace


class FaceLattice:
    """All faces of a cone, ordered by inclusion of ray sets and closed under
    intersection; bottom is the origin, top the cone itself."""

    def __init__(self, cone: RationalCone, raysets: Iterable[frozenset[int]]):
        self.cone = cone
        sets = sorted(set(raysets), key=lambda s: (len(s), sorted(s)))
        self.faces = [
            Face(s, Subspace.span([cone.rays[i] for i in s], cone.ambient_dim))
            for s in sets
        ]
        self.index = {f.rays: i for i, f in enumerate(self.faces)}
        self.bottom = self.index[frozenset()]
        self.top = self.index[frozenset(range(len(cone.rays)))]

    def __len__(self) -> int:
        return len(self.faces)

    def meet(self, i: int, j: int) -> int:
        key = self.faces[i].rays & self.faces[j].rays
        if key not in self.index:
            raise UsageError("face family is not closed under intersection")
        return self.index[key]

    def to_semilattice(self) -> FiniteSemilattice:
        k = len(self.faces)
        table = [[self.meet(i, j) for j in range(k)] for i in range(k)]
        lattice = FiniteSemilattice([f.rays for f in self.faces], table, self.top)
        lattice.validate()
        return lattice


def _supporting_functionals(cone: RationalCone) -> list[tuple[Vector, frozenset[int]]]:
    """Oriented facet normals with their zero sets."""
    d = cone.ambient_dim
    out: dict[frozenset[int], Vector] = {}
    for size in range(d):
        for subset in combinations(range(len(cone.rays)), size):
            span_rows = rref([cone.rays[i] for i in subset], d)
            if len(span_rows) != d - 1:
                continue
            normals = nullspace(span_rows, d)
            if len(normals) != 1:
                continue
            u = normals[0]
            values = [dot(u, r) for r in cone.rays]
            if all(v <= 0 for v in values):
                u = tuple(-x for x in u)
                values = [-v for v in values]
            if any(v < 0 for v in values):
                continue
            zero = frozenset(i for i, v in enumerate(values) if v == 0)
            out.setdefault(zero, u)
    return sorted(out.items(), key=lambda kv: sorted(kv[0]))


def face_lattice(cone: RationalCone) -> FaceLattice:
    if len(cone.rays) > MAX_RAYS or cone.ambient_dim > MAX_DIM:
        raise CapExceededError(
            f"cones are capped at {MAX_RAYS} rays in dimension {MAX_DIM}"
        )
    d = cone.ambient_dim
    if len(rref(cone.rays, d)) != d:
        raise UsageError("cone must be full-dimensional")
    nrays = len(cone.rays)
    full = frozenset(range(nrays))
    if cone.is_simplicial:
        sets = [frozenset(s) for k in range(nrays + 1) for s in combinations(range(nrays), k)]
        return FaceLattice(cone, sets)
    facets = _supporting_functionals(cone)
    total = [Fraction(0)] * d
    for _, u in facets:
        total = [a + b for a, b in zip(total, u)]
    if any(dot(total, r) <= 0 for r in cone.rays):
        raise UsageError("cone is not strongly convex")
    sets = {full} | {zero for zero, _ in facets}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(sorted(sets, key=sorted), 2):
            c = a & b
            if c not in sets:
                sets.add(c)
                changed = True
    if frozenset() not in sets:
        raise UsageError("cone is not strongly convex")
    return FaceLattice(cone, sets)


def face_functional(cone: RationalCone, lattice: FaceLattice, i: int) -> Vector:
    """A functional vanishing exactly on the rays of the i-th face and
    positive on the others (sum of the normals of the facets above it)."""
    facets = _supporting_functionals(cone)
    target = lattice.faces[i].rays
    if target == frozenset(range(len(cone.rays))):
        return tuple(Fraction(0) for _ in range(cone.ambient_dim))
    total = [Fraction(0)] * cone.ambient_dim
    for zero, u in facets:
        if target <= zero:
            total = [a + b for a, b in zip(total, u)]
    return tuple(total)


def span_face_compatibility(cone: RationalCone):
    """Checks that intersecting the cone with a face's span recovers the face
    (certified by an exact supporting functional), and, for simplicial cones,
    that spans commute with face intersections.  Returns (flag, witnesses);
    for non-simplicial cones the span-intersection identity is reported per
    failing pair rather than folded into the flag."""
    lattice = face_lattice(cone)
    witnesses = []
    ok = True
    for i, face in enumerate(lattice.faces):
        if i == lattice.top:
            continue
        u = face_functional(cone, lattice, i)
        values = [dot(u, r) for r in cone.rays]
        exact = all(
            (v == 0) == (j in face.rays) for j, v in enumerate(values)
        )
        if not exact:
            ok = False
            witnesses.append(("span-trace", face.rays))
    span_pairs_ok = True
    from .exactlin import intersect

    for i, j in combinations(range(len(lattice.faces)), 2):
        meet_span = lattice.faces[lattice.meet(i, j)].span
        span_meet = intersect(lattice.faces[i].span, lattice.faces[j].span)
        if meet_span != span_meet:
            span_pairs_ok = False
            witnesses.append(
                ("span-intersection", lattice.faces[i].rays, lattice.faces[j].rays)
            )
    if cone.is_simplicial and not span_pairs_ok:
        ok = False
    return ok, span_pairs_ok, witnesses


# ---------------------------------------------------------------------------
# group actions and the comparison homomorphism
# ---------------------------------------------------------------------------


def ray_permutations(cone: RationalCone, group: Group) -> list[tuple[int, ...]]:
    """For each group element, the induced permutation of cone rays; errors
    if some ray leaves the ray set (up to positive scaling)."""
    out = []
    for g in range(group.order):
        perm = []
        for r in cone.rays:
            image = group.apply(g, r)
            target = None
            for j, s in enumerate(cone.rays):
                k = next(t for t, x in enumerate(s) if x != 0)
                if s[k] == 0 or image[k] == 0:
                    continue
                c = image[k] / s[k]
                if c > 0 and tuple(c * x for x in s) == image:
                    target = j
                    break
            if target is None:
                raise UsageError("group does not permute the cone's rays")
            perm.append(target)
        out.append(tuple(perm))
    return out


def face_permutations(
    lattice: FaceLattice, ray_perms: Sequence[tuple[int, ...]]
) -> list[tuple[int, ...]]:
    out = []
    for perm in ray_perms:
        images = []
        for face in lattice.faces:
            key = frozenset(perm[i] for i in face.rays)
            if key not in lattice.index:
                raise UsageError("group does not permute the faces")
            images.append(lattice.index[key])
        out.append(tuple(images))
    return out


@dataclass
class RennerModel:
    """The subspace-system monoid of a cone, the face-lattice monoid it maps
    onto, and the comparison map f between them."""

    cone: RationalCone
    group: Group
    lattice: FaceLattice
    semilattice: FiniteSemilattice
    system: SubspaceSystem
    monoid: ReflectionMonoid
    target: FiniteInverseMonoid
    f: tuple[int, ...]
    face_perms: list[tuple[int, ...]]

    @property
    def surjective(self) -> bool:
        return len(set(self.f)) == self.target.size

    @property
    def injective(self) -> bool:
        return len(set(self.f)) == len(self.f)

    def is_homomorphism(self) -> bool:
        m, t, f = self.monoid, self.target, self.f
        return all(
            f[m.mul(a, b)] == t.mul(f[a], f[b])
            for a in range(m.size)
            for b in range(m.size)
        )

    def face_idempotent(self, i: int) -> int:
        """Index in the target monoid of the partial identity on the ideal
        below the i-th face."""
        ideal = self.semilattice.ideal(i)
        pm = PartialMap.make(self.semilattice.size, [(x + 1, x + 1) for x in ideal])
        return self.target.elements.index(pm)

    def unit_in_target(self, g: int) -> int:
        perm = self.face_perms[g]
        pm = PartialMap.make(len(perm), [(i + 1, perm[i] + 1) for i in range(len(perm))])
        return self.target.elements.index(pm)

    def equivariance_check(self) -> bool:
        """e_{τ·g} equals the conjugate of e_τ by g, for every face and
        every group element."""
        for g in range(self.group.order):
            unit = self.unit_in_target(g)
            for i in range(len(self.lattice.faces)):
                moved = self.face_idempotent(self.face_perms[g][i])
                conj = self.target.mul(
                    self.target.mul(self.target.inv(unit), self.face_idempotent(i)),
                    unit,
                )
                if moved != conj:
                    return False
        return True


def renner_model(cone: RationalCone, group: Group) -> RennerModel:
    """Build both monoids for a cone and the map f(ε_X · g) = (Π e_j) · g,
    where X = ∩ span(τ_j) ranges over system members."""
    lattice = face_lattice(cone)
    ray_perms = ray_permutations(cone, group)
    face_perms = face_permutations(lattice, ray_perms)

    from .exactlin import system_closure

    spans = [f.span for f in lattice.faces]
    spaces = system_closure(spans, group.matrices())
    system = SubspaceSystem(group, spaces, kind="cone")
    monoid = build(group, system)

    semilattice = lattice.to_semilattice()
    target = from_semilattice(semilattice, face_perms)
    target_index = {pm: i for i, pm in enumerate(target.elements)}

    images = []
    for a in range(monoid.size):
        x_idx, g = monoid.elements[a]
        x = system.spaces[x_idx]
        above = [i for i, face in enumerate(lattice.faces) if x.leq(face.span)]
        e = lattice.top
        for i in above:
            e = lattice.meet(e, i)
        ideal = semilattice.ideal(e)
        perm = face_perms[g]
        pm = PartialMap.make(
            semilattice.size, [(i + 1, perm[i] + 1) for i in ideal]
        )
        if pm not in target_index:
            raise UsageError("comparison image left the face-lattice monoid")
        images.append(target_index[pm])
    return RennerModel(
        cone=cone,
        group=group,
        lattice=lattice,
        semilattice=semilattice,
        system=system,
        monoid=monoid,
        target=target,
        f=tuple(images),
        face_perms=face_perms,
    )


def simplex_group(d: int) -> Group:
    """Coordinate permutations of Q^d."""
    return build_group(WeylType("A", d - 1))


def square_cone_group() -> Group:
    """Signed permutations of the first two coordinates of Q^3, fixing the
    third; this is the symmetry group of the square cone."""
    elems = []
    for sigma in ((1, 2, 3), (2, 1, 3)):
        for bits in range(4):
            flips = frozenset(i + 1 for i in range(2) if bits >> i & 1)
            elems.append(SignedPermElement(sigma, flips))
    return Group(elems, 3, name="square-cone-symmetries")
