"""Closed-form order calculators and the exceptional orbit-data pipeline.

Small combinatorial weights first (partitions, Stirling numbers, the b/c/δ/d
coefficients), then the order formulas for Boolean and arrangement monoids.
Every closed form is evaluated in exact rational arithmetic and asserted
integral before it is returned.

Two of the printed arrangement formulas (types B and D) and the printed
type-D Boolean specialization disagree with brute-force enumeration at small
rank; they are kept verbatim under ``*_printed`` names, next to
oracle-consistent variants that the tests certify against enumeration.  The
disagreement itself is surfaced as data by ``order_report`` and never
silently reconciled.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UsageError
from .weyl import weyl_order

EXCEPTIONAL_FAMILIES = ("G2", "F4", "E6", "E7", "E8")


# ---------------------------------------------------------------------------
# combinatorics kernel
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _partitions_bounded(total: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions_bounded(total - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> list[tuple[int, ...]]:
    """Integer partitions of n in reverse-lexicographic order; n = 0 yields
    the empty partition."""
    if n < 0:
        raise UsageError("partitions need a non-negative argument")
    return list(_partitions_bounded(n, n)) if n else [()]


def b_lambda(lam: tuple[int, ...]) -> int:
    """b_λ = Π_i b_i! (i!)^{b_i} with b_i the multiplicity of i in λ."""
    mult: dict[int, int] = {}
    for part in lam:
        if part < 1:
            raise UsageError("partition parts must be positive")
        mult[part] = mult.get(part, 0) + 1
    out = 1
    for i, b in mult.items():
        out *= math.factorial(b) * math.factorial(i) ** b
    return out


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise UsageError("Stirling numbers need non-negative arguments")
    if n == k == 0:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def c_mn(m: int, n: int) -> int:
    """Number of subsets of an n-set splitting evenly across a fixed m-subset:
    Σ_i C(m,i) C(n-m,i)."""
    if m > n:
        raise UsageError("c(m, n) requires m <= n")
    return sum(math.comb(m, i) * math.comb(n - m, i) for i in range(min(m, n - m) + 1))


def delta_mn(m: int, n: int) -> int:
    return math.factorial(m) * math.factorial(n - m) * c_mn(m, n)


def d_lambda(lam: tuple[int, ...]) -> int:
    out = 4 ** len(lam) * b_lambda(lam)
    for part in lam:
        out *= math.factorial(part)
    return out


def _as_integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise UsageError(f"{what} evaluated to the non-integer {x}")
    return x.numerator


# ---------------------------------------------------------------------------
# Boolean monoid orders
# ---------------------------------------------------------------------------


def boolean_order(family: str, n: int) -> int:
    """|W(Φ_n)| Σ_k C(n,k) / |W(Φ_k)| with the degenerate-rank conventions;
    for type A the index n counts coordinates (the group is of rank n-1)."""
    if family not in ("A", "B", "D"):
        raise UsageError("Boolean orders are defined for classical families")
    if n < 1:
        raise UsageError("need n >= 1")
    rank = (lambda k: k - 1) if family == "A" else (lambda k: k)
    total = Fraction(0)
    w = weyl_order(family, rank(n))
    for k in range(n + 1):
        total += Fraction(math.comb(n, k), weyl_order(family, rank(k)))
    return _as_integer(w * total, "Boolean order")


def boolean_order_table(family: str, n: int) -> int:
    """The tabulated specializations: Σ C(n,k)² k! for type A and
    Σ 2^k C(n,k)² k! for type B; the type-D entry is printed with summation
    limits k = 1..n and a 2^(n-1) n! leading term."""
    if family == "A":
        return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))
    if family == "B":
        return sum(
            (1 << k) * math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1)
        )
    if family == "D":
        lead = (1 << (n - 1)) * math.factorial(n)
        return lead + sum(
            (1 << k) * math.comb(n, k) ** 2 * math.factorial(k)
            for k in range(1, n + 1)
        )
    raise UsageError("Boolean orders are defined for classical families")


def boolean_order_d_adjusted(n: int) -> int:
    """The type-D specialization with summation limits k = 0..n-1, which is
    what the general formula expands to; the printed k = 1..n variant
    overcounts (see order_report)."""
    lead = (1 << (n - 1)) * math.factorial(n)
    return lead + sum(
        (1 << k) * math.comb(n, k) ** 2 * math.factorial(k) for k in range(n)
    )


# ---------------------------------------------------------------------------
# arrangement monoid orders, classical
# ---------------------------------------------------------------------------


def arrangement_order_A(n: int) -> int:
    """(n!)² Σ_λ 1/(b_λ λ_1! ... λ_p!) over partitions of n."""
    if n < 1:
        raise UsageError("need n >= 1")
    total = Fraction(0)
    for lam in partitions(n):
        denom = b_lambda(lam)
        for part in lam:
            denom *= math.factorial(part)
        total += Fraction(1, denom)
    return _as_integer(math.factorial(n) ** 2 * total, "type A arrangement order")


def arrangement_order_B_printed(n: int) -> int | Fraction:
    """Literal evaluation of 2^(2n-1) (n!)² Σ 1/(4^m d_λ) over pairs (m, λ)
    with λ a partition of n-m.  Returned verbatim even where it disagrees
    with enumeration."""
    total = Fraction(0)
    for m in range(n + 1):
        for lam in partitions(n - m):
            total += Fraction(1, 4**m * d_lambda(lam))
    value = (1 << (2 * n - 1)) * math.factorial(n) ** 2 * total
    return value.numerator if value.denominator == 1 else value


def arrangement_order_D_printed(n: int) -> int | Fraction:
    """Literal evaluation of 4^(n-1) (n!)² Σ ε(m,λ)/(4^m d_λ) over pairs
    (m, λ), m ≠ 1, with ε = 1 when m = 0 and every part is even, else 2."""
    total = Fraction(0)
    for m in range(n + 1):
        if m == 1:
            continue
        for lam in partitions(n - m):
            eps = 1 if m == 0 and all(p % 2 == 0 for p in lam) else 2
            total += Fraction(eps, 4**m * d_lambda(lam))
    value = 4 ** (n - 1) * math.factorial(n) ** 2 * total
    return value.numerator if value.denominator == 1 else value


def pointwise_isotropy_formula_B(m: int, lam: tuple[int, ...]) -> int:
    """Order of the subgroup fixing a type-B arrangement subspace pointwise:
    free signed permutation on the zero coordinates, free permutation within
    each block, no flips on blocks: 2^m m! Π λ_i!."""
    out = (1 << m) * math.factorial(m)
    for part in lam:
        out *= math.factorial(part)
    return out


def pointwise_isotropy_formula_D(m: int, lam: tuple[int, ...]) -> int:
    """Type-D restriction: the even-flip elements of the type-B fixator,
    which is all of it when m = 0 and half otherwise."""
    b = pointwise_isotropy_formula_B(m, lam)
    return b if m == 0 else b // 2


def orbit_size_A(lam: tuple[int, ...], n: int) -> int:
    return math.factorial(n) // b_lambda(lam)


def orbit_size_B(m: int, lam: tuple[int, ...], n: int) -> int:
    j = n - m
    p = len(lam)
    return (1 << (j - p)) * math.comb(n, j) * math.factorial(j) // b_lambda(lam)


def orbit_size_D_split(lam: tuple[int, ...], n: int) -> int:
    """Each of the two orbits of an all-even shape with no zero coordinates:
    2^(n-p-1) n! / b_λ."""
    p = len(lam)
    return (1 << (n - p - 1)) * math.factorial(n) // b_lambda(lam)


def arrangement_order_B(n: int) -> int:
    """Oracle-consistent type-B order: Σ over shapes of orbit size times the
    index of the pointwise fixator."""
    if n < 1:
        raise UsageError("need n >= 1")
    w = weyl_order("B", n)
    total = 0
    for m in range(n + 1):
        for lam in partitions(n - m):
            total += orbit_size_B(m, lam, n) * (
                w // pointwise_isotropy_formula_B(m, lam)
            )
    return total


def arrangement_order_D(n: int) -> int:
    """Oracle-consistent type-D order; all-even shapes with m = 0 split into
    two orbits but contribute the same total subspace count."""
    if n < 1:
        raise UsageError("need n >= 1")
    w = weyl_order("D", n)
    total = 0
    for m in range(n + 1):
        if m == 1:
            continue
        for lam in partitions(n - m):
            count = orbit_size_B(m, lam, n)
            total += count * (w // pointwise_isotropy_formula_D(m, lam))
    return total


# ---------------------------------------------------------------------------
# exceptional types: embedded orbit data
# ---------------------------------------------------------------------------

# One row per exceptional type: orbits of subspaces of the reflection
# arrangement under the group, written as count followed by the stabilizer
# type (letter, rank digit, optional exponent digit); '.' separates orbits of
# equal rank, ':' separates ranks.  The E8 row is shipped as published, with
# a stray leading 'a' in its first token; parse_orbit_data normalizes "a1a0"
# to "1a0" and records the fact.
ORBIT_DATA: dict[str, str] = {
    "G2": "1a0:3a1.3a1:1g2",
    "F4": "1a0:12a1.12a1:72a12.16a2.16a2.18b2:12b3.12b3.48a1a2.48a1a2:1f4",
    "E6": (
        "1a0:36a1:270a12.120a2:540a13.720a1a2.270a3:1080a12a2.120a22."
        "540a1a3.216a4.45d4:360a1a22.216a1a4.36a5.27d5:1e6"
    ),
    "E7": (
        "1a0:63a1:945a12.336a2:315a13.3780a13.5040a1a2.1260a3:3780a14."
        "15120a12a2.3360a22.1260a1a3.7560a1a3.2016a4.315d4:5040a13a2."
        "10080a1a22.7560a12a3.5040a2a3.6048a1a4.336a5.1008a5.945a1d4."
        "378d5:5040a1a2a3.2016a2a4.1008a1a5.288a6.378a1d5.63d6.28e6:1e7"
    ),
    "E8": (
        "a1a0:120a1:3780a12.1120a2:37800a13.40320a1a2.7560a3:113400a14."
        "302400a12a2.67200a22.151200a1a3.24192a4.3150d4:604800a13a2."
        "403200a1a22.453600a12a3.302400a2a3.241920a1a4.40320a5.37800a1d4."
        "7560d5:604800a12a22.604800a1a2a3.362880a12a4.151200a32.241920a2a4."
        "120960a1a5.34560a6.50400a2d4.45360a1d5.3780d6.1120e6:241920a1a2a4."
        "120960a3a4.34560a1a6.8640a7.30240a2d5.1080d7.3360a1e6.120e7:1e8"
    ),
}

_FACTOR_RE = re.compile(r"([abdefg])(\d)(\d?)")
_ORBIT_RE = re.compile(r"^(\d+)((?:[abdefg]\d\d?)+)$")


@dataclass(frozen=True)
class OrbitDatum:
    """One orbit of arrangement subspaces: how many, and the isomorphism type
    of their common stabilizer as a product of Weyl groups."""

    count: int
    stabilizer: tuple[tuple[str, int, int], ...]  # (family, rank, exponent)

    @property
    def stabilizer_order(self) -> int:
        out = 1
        for family, rank, exp in self.stabilizer:
            out *= _stab_order(family, rank) ** exp
        return out


def _stab_order(family: str, rank: int) -> int:
    if family in ("e", "f", "g"):
        return weyl_order(f"{family.upper()}{rank}", rank)
    return weyl_order(family.upper(), rank)


def parse_orbit_data(row: str) -> list[list[OrbitDatum]]:
    """Parse one orbit-data row into rank groups of orbit data.

    Grammar: ranks separated by ':', orbits within a rank by '.', each orbit
    a decimal count followed by stabilizer factors; a factor is a family
    letter, a single rank digit, and an optional single exponent digit.
    """
    normalized = row.strip()
    if normalized.startswith("a1a0"):
        normalized = normalized[1:]  # published row starts "a1a0" for "1a0"
    groups = []
    for rank_part in normalized.split(":"):
        if not rank_part:
            raise UsageError("empty rank group in orbit data")
        orbits = []
        for token in rank_part.split("."):
            m = _ORBIT_RE.match(token)
            if not m:
                raise UsageError(f"malformed orbit token {token!r}")
            count = int(m.group(1))
            factors = []
            for fam, rank, exp in _FACTOR_RE.findall(m.group(2)):
                factors.append((fam, int(rank), int(exp) if exp else 1))
            orbits.append(OrbitDatum(count, tuple(factors)))
        groups.append(orbits)
    return groups


def orbit_rank_counts(family: str) -> list[int]:
    """Total subspaces per rank according to the embedded orbit data."""
    groups = parse_orbit_data(ORBIT_DATA[family])
    return [sum(d.count for d in grp) for grp in groups]


def exceptional_order(family: str) -> int:
    """Arrangement monoid order Σ count · |W| / |stabilizer| over all orbits
    in the embedded data row."""
    if family not in EXCEPTIONAL_FAMILIES:
        raise UsageError(f"{family} is not an exceptional family")
    w = weyl_order(family, int(family[1]))
    total = Fraction(0)
    for group in parse_orbit_data(ORBIT_DATA[family]):
        for datum in group:
            total += Fraction(datum.count * w, datum.stabilizer_order)
    return _as_integer(total, f"{family} arrangement order")


EXCEPTIONAL_FACTORED = {
    "G2": 7**2,
    "F4": 11 * 4931,
    "E6": 2**4 * 5**2 * 40543,
    "E7": 3 * 113 * 24667553,
    "E8": 11 * 79 * 55099865069,
}
