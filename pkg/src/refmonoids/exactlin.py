"""Exact rational linear algebra on canonical subspaces of Q^d.

A subspace is stored as a reduced row echelon basis over
`fractions.Fraction`.  That form is unique per subspace, so structural
equality and hashing coincide with subspace equality; the rest of the
package leans on this for deduplication, orbit closures and lattice meets.
No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import AmbientMismatchError, CapExceededError, SingularMatrixError

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

DEFAULT_CLOSURE_CAP = 100_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


def vec(entries: Iterable) -> Vector:
    return tuple(Fraction(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def rref(rows: Sequence[Sequence[Fraction]], width: int) -> Matrix:
    """Reduced row echelon form: unit pivots, zeros above and below each
    pivot, zero rows dropped, pivot columns strictly increasing."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    row = 0
    for col in range(width):
        src = next((r for r in range(row, len(work)) if work[r][col] != 0), None)
        if src is None:
            continue
        work[row], work[src] = work[src], work[row]
        inv = _ONE / work[row][col]
        work[row] = [x * inv for x in work[row]]
        for r in range(len(work)):
            if r != row and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
        if row == len(work):
            break
    return tuple(tuple(work[i]) for i in range(row))


def nullspace(rows: Sequence[Sequence[Fraction]], width: int) -> Matrix:
    """Canonical basis of ``{v : r·v = 0 for every row r}``."""
    reduced = rref(rows, width)
    pivot_cols = [next(j for j, x in enumerate(r) if x != 0) for r in reduced]
    free_cols = [j for j in range(width) if j not in pivot_cols]
    basis = []
    for j in free_cols:
        v = [_ZERO] * width
        v[j] = _ONE
        for i, pc in enumerate(pivot_cols):
            v[pc] = -reduced[i][j]
        basis.append(v)
    return rref(basis, width)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), _ZERO)


def apply_matrix(v: Sequence[Fraction], m: Matrix) -> Vector:
    """Right action of a matrix on a row vector: (v·m)_j = sum_i v_i m_ij."""
    width = len(m[0])
    out = [_ZERO] * width
    for x, row in zip(v, m):
        if x != 0:
            for j, y in enumerate(row):
                if y != 0:
                    out[j] += x * y
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(apply_matrix(row, b) for row in a)


def identity_matrix(d: int) -> Matrix:
    return tuple(
        tuple(_ONE if i == j else _ZERO for j in range(d)) for i in range(d)
    )


@lru_cache(maxsize=None)
def is_invertible(m: Matrix) -> bool:
    return len(rref(m, len(m))) == len(m) if m else True


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^d in canonical reduced-row-echelon form.

    ``rows`` may be empty (the zero subspace) or square full-rank (the whole
    space); both extremes are ordinary values of this type.
    """

    ambient_dim: int
    rows: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Iterable], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, rref(mat(vectors), ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity_matrix(ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.rows)

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        residue = list(v)
        for row in self.rows:
            pivot = next(j for j, x in enumerate(row) if x != 0)
            if residue[pivot] != 0:
                f = residue[pivot]
                residue = [a - f * b for a, b in zip(residue, row)]
        return all(x == 0 for x in residue)

    def leq(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains_vector(r) for r in self.rows)

    def sort_key(self):
        return (self.codim, self.rows)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        body = "; ".join(",".join(str(x) for x in r) for r in self.rows)
        return f"Subspace({self.ambient_dim}, [{body}])"


def _check_ambient(x: Subspace, y: Subspace) -> None:
    if x.ambient_dim != y.ambient_dim:
        raise AmbientMismatchError(
            f"ambient dimensions differ: {x.ambient_dim} vs {y.ambient_dim}"
        )


@lru_cache(maxsize=None)
def dual(x: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot pairing."""
    return Subspace(x.ambient_dim, nullspace(x.rows, x.ambient_dim))


def intersect(x: Subspace, y: Subspace) -> Subspace:
    _check_ambient(x, y)
    if x == y:
        return x
    constraints = rref(dual(x).rows + dual(y).rows, x.ambient_dim)
    return Subspace(x.ambient_dim, nullspace(constraints, x.ambient_dim))


def span_sum(x: Subspace, y: Subspace) -> Subspace:
    _check_ambient(x, y)
    return Subspace(x.ambient_dim, rref(x.rows + y.rows, x.ambient_dim))


def act(x: Subspace, g: Matrix) -> Subspace:
    """Image of a subspace under an invertible matrix (right action)."""
    if len(g) != x.ambient_dim:
        raise AmbientMismatchError(
            f"matrix size {len(g)} does not match ambient {x.ambient_dim}"
        )
    if not is_invertible(g):
        raise SingularMatrixError("group elements must be invertible")
    return Subspace(x.ambient_dim, rref([apply_matrix(r, g) for r in x.rows], x.ambient_dim))


def expand_group(mats: Iterable[Matrix], cap: int = 100_000) -> tuple[Matrix, ...]:
    """Close a finite set of invertible matrices under multiplication."""
    gens = [mat(m) for m in mats]
    for g in gens:
        if not is_invertible(g):
            raise SingularMatrixError("group elements must be invertible")
    if not gens:
        return ()
    d = len(gens[0])
    elements = {identity_matrix(d)}
    frontier = [identity_matrix(d)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = mat_mul(a, g)
                if c not in elements:
                    elements.add(c)
                    nxt.append(c)
                    if len(elements) > cap:
                        raise CapExceededError(f"group closure exceeded cap {cap}")
        frontier = nxt
    return tuple(sorted(elements))


def system_closure(
    omega: Iterable[Subspace],
    group: Iterable[Matrix],
    cap: int = DEFAULT_CLOSURE_CAP,
) -> tuple[Subspace, ...]:
    """The least family containing ``omega`` and the full space that is closed
    under the group action and under pairwise intersection.

    ``group`` may be given by generators; it is expanded first.  Termination
    is guarded by ``cap``: exceeding it raises rather than truncating.  The
    final fixpoint sweep re-examines every action image and every pairwise
    intersection of the returned family, so each closure is verified against
    the three axioms before it is returned.
    """
    elements = expand_group(group)
    omega = list(omega)
    if omega:
        d = omega[0].ambient_dim
    elif elements:
        d = len(elements[0])
    else:
        raise AmbientMismatchError("cannot infer ambient dimension from empty input")
    spaces = {Subspace.full(d)}
    spaces.update(omega)
    changed = True
    while changed:
        changed = False
        stack = list(spaces)
        while stack:
            x = stack.pop()
            for g in elements:
                y = act(x, g)
                if y not in spaces:
                    spaces.add(y)
                    stack.append(y)
                    if len(spaces) > cap:
                        raise CapExceededError(f"system closure exceeded cap {cap}")
        for x, y in combinations(sorted(spaces, key=Subspace.sort_key), 2):
            z = intersect(x, y)
            if z not in spaces:
                spaces.add(z)
                changed = True
                if len(spaces) > cap:
                    raise CapExceededError(f"system closure exceeded cap {cap}")
    return tuple(sorted(spaces, key=Subspace.sort_key))


def satisfies_system_axioms(
    spaces: Sequence[Subspace], group: Iterable[Matrix]
) -> bool:
    """Post-hoc check of the three system axioms: contains the full space,
    closed under the group action, closed under pairwise intersection."""
    pool = set(spaces)
    if not spaces:
        return False
    d = spaces[0].ambient_dim
    if Subspace.full(d) not in pool:
        return False
    mats = [mat(g) for g in group]
    for x in pool:
        for g in mats:
            if act(x, g) not in pool:
                return False
    return all(intersect(x, y) in pool for x, y in combinations(spaces, 2))
