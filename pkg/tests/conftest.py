"""Shared cached builders: groups, systems and monoids are expensive enough
that every test module reuses one construction per object."""

from __future__ import annotations

import functools

from refmonoids import refmon
from refmonoids.pperm import (
    FiniteInverseMonoid,
    all_partial_maps,
    all_signed_partial_maps,
    compose,
    compose_signed,
)
from refmonoids.systems import arrangement_system, boolean_system
from refmonoids.weyl import WeylType, build_group


def weyl_type(family: str, n: int) -> WeylType:
    return WeylType(family, n - 1 if family == "A" else n)


@functools.cache
def group(family: str, n: int):
    return build_group(weyl_type(family, n))


@functools.cache
def bool_system(family: str, n: int):
    return boolean_system(weyl_type(family, n))


@functools.cache
def arr_system(family: str, n: int):
    return arrangement_system(weyl_type(family, n))


@functools.cache
def bool_monoid(family: str, n: int) -> refmon.ReflectionMonoid:
    s = bool_system(family, n)
    return refmon.build(s.group, s)


@functools.cache
def arr_monoid(family: str, n: int) -> refmon.ReflectionMonoid:
    s = arr_system(family, n)
    return refmon.build(s.group, s)


@functools.cache
def g2_system():
    return arrangement_system(WeylType("G2", 2))


@functools.cache
def g2_monoid() -> refmon.ReflectionMonoid:
    s = g2_system()
    return refmon.build(s.group, s)


@functools.cache
def hexagon() -> refmon.ReflectionMonoid:
    return refmon.hexagon_monoid()


@functools.cache
def symmetric_inverse(n: int) -> FiniteInverseMonoid:
    return FiniteInverseMonoid.from_elements(
        all_partial_maps(n), compose, validate=n <= 2
    )


@functools.cache
def signed_inverse(n: int) -> FiniteInverseMonoid:
    return FiniteInverseMonoid.from_elements(
        all_signed_partial_maps(n), compose_signed, validate=n <= 1
    )


def built_monoid_registry() -> list[tuple[str, refmon.ReflectionMonoid]]:
    """Every subspace-system monoid the suite constructs, for the global
    structural sweep."""
    entries: list[tuple[str, refmon.ReflectionMonoid]] = []
    for fam, ns in (("A", (1, 2, 3, 4)), ("B", (1, 2, 3)), ("D", (2, 3, 4))):
        for n in ns:
            entries.append((f"boolean {fam} n={n}", bool_monoid(fam, n)))
    for fam, ns in (("A", (2, 3, 4)), ("B", (1, 2, 3, 4)), ("D", (1, 2, 3, 4))):
        for n in ns:
            entries.append((f"arrangement {fam} n={n}", arr_monoid(fam, n)))
    entries.append(("arrangement G2", g2_monoid()))
    entries.append(("hexagon", hexagon()))
    return entries
