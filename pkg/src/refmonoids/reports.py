"""Report builders behind the service endpoints.

Each builder returns a plain dict with the uniform shape
``{"request": ..., "results": [(label, value-string)...], "discrepancies":
[...]}``; all integers are rendered as decimal strings so nothing is lost in
transport.  Built groups and monoids are cached per (family, n, system),
since construction dominates the cost of repeated queries.
"""

from __future__ import annotations

import threading
from typing import Any

from . import orders, refmon
from .errors import CapExceededError, UsageError
from .pperm import (
    FiniteInverseMonoid,
    all_partial_maps,
    all_signed_partial_maps,
    compose,
    compose_signed,
    is_fundamental,
    mu_witness,
)
from .systems import SubspaceSystem, arrangement_system, boolean_system, stirling_rank_counts
from .weyl import WeylType, weyl_order

CLASSICAL = ("A", "B", "D")
EXCEPTIONAL = orders.EXCEPTIONAL_FAMILIES
DEFAULT_GROUP_CAP = 2000

_cache: dict[tuple, Any] = {}
_lock = threading.Lock()


def _weyl_type(family: str, n: int | None) -> WeylType:
    if family in CLASSICAL:
        if n is None or n < 1:
            raise UsageError(f"family {family} needs n >= 1")
        return WeylType(family, n - 1 if family == "A" else n)
    if family in EXCEPTIONAL:
        return WeylType(family, int(family[1]))
    raise UsageError(f"unknown family {family!r}")


def _cached(key: tuple, factory):
    with _lock:
        if key not in _cache:
            _cache[key] = factory()
        return _cache[key]


def get_system(family: str, n: int | None, system: str, cap: int) -> SubspaceSystem:
    t = _weyl_type(family, n)
    order = weyl_order(family, t.rank)
    if order > cap:
        raise CapExceededError(
            f"group of order {order} exceeds the enumeration cap {cap}"
        )
    if system == "boolean":
        if family not in CLASSICAL:
            raise UsageError("Boolean systems exist for classical families only")
        return _cached(("system", family, n, "boolean"), lambda: boolean_system(t))
    if system == "arrangement":
        if family in CLASSICAL or family == "G2":
            return _cached(
                ("system", family, n, "arrangement"), lambda: arrangement_system(t)
            )
        raise UsageError(f"family {family} has no explicit arrangement model")
    raise UsageError(f"unknown system kind {system!r}")


def get_monoid(family: str, n: int | None, system: str, cap: int) -> refmon.ReflectionMonoid:
    sys_obj = get_system(family, n, system, cap)
    return _cached(
        ("monoid", family, n, system),
        lambda: refmon.build(sys_obj.group, sys_obj),
    )


def _row(label: str, value) -> dict[str, str]:
    return {"label": label, "value": str(value)}


def _report(request: dict, results, discrepancies=None) -> dict:
    return {
        "request": request,
        "results": list(results),
        "discrepancies": list(discrepancies or []),
    }


def order_report(
    family: str,
    n: int | None,
    system: str = "arrangement",
    method: str = "formula",
    max_group_order: int = DEFAULT_GROUP_CAP,
) -> dict:
    family = family.upper()
    if method not in ("formula", "enumerate", "both"):
        raise UsageError(f"unknown method {method!r}")
    request = {"command": "order", "family": family, "n": n, "system": system, "method": method}
    results: list[dict] = []
    discrepancies: list[dict] = []

    formula_value: int | None = None
    if family in EXCEPTIONAL:
        if system != "arrangement":
            raise UsageError("exceptional families only carry arrangement systems")
        formula_value = orders.exceptional_order(family)
        results.append(_row("orbit-data order", formula_value))
        if family != "G2" and method in ("enumerate", "both"):
            raise UsageError(f"family {family} has no model to enumerate")
    elif system == "boolean":
        formula_value = orders.boolean_order(family, n)
        results.append(_row("general formula", formula_value))
        table_value = orders.boolean_order_table(family, n)
        results.append(_row("tabulated specialization", table_value))
        if table_value != formula_value:
            discrepancies.append(
                {
                    "formula": f"Boolean {family} tabulated specialization, n={n}",
                    "printed": str(table_value),
                    "oracle": str(formula_value),
                }
            )
            results.append(
                _row("adjusted specialization", orders.boolean_order_d_adjusted(n))
            )
    elif system == "arrangement":
        if family == "A":
            formula_value = orders.arrangement_order_A(n)
            results.append(_row("partition-sum formula", formula_value))
        elif family in ("B", "D"):
            formula_value = (
                orders.arrangement_order_B(n)
                if family == "B"
                else orders.arrangement_order_D(n)
            )
            printed = (
                orders.arrangement_order_B_printed(n)
                if family == "B"
                else orders.arrangement_order_D_printed(n)
            )
            results.append(_row("orbit/isotropy formula", formula_value))
            results.append(_row("printed closed form", printed))
            if printed != formula_value:
                discrepancies.append(
                    {
                        "formula": f"{family} arrangement printed closed form, n={n}",
                        "printed": str(printed),
                        "oracle": str(formula_value),
                    }
                )
        else:
            raise UsageError(f"unsupported family {family}")
    else:
        raise UsageError(f"unknown system kind {system!r}")

    if method in ("enumerate", "both"):
        monoid = get_monoid(family, n, system, max_group_order)
        results.append(_row("enumerated order", monoid.size))
        sys_obj = monoid.system
        results.append(
            _row("isotropy-sum order", refmon.order_by_isotropy(sys_obj.group, sys_obj))
        )
        if method == "both" and formula_value is not None:
            verdict = "match" if monoid.size == formula_value else "mismatch"
            results.append(_row("verdict", verdict))
            if verdict == "mismatch":
                discrepancies.append(
                    {
                        "formula": f"{family} {system} order, n={n}",
                        "printed": str(formula_value),
                        "oracle": str(monoid.size),
                    }
                )
    return _report(request, results, discrepancies)


def green_report(
    family: str, n: int | None, system: str = "arrangement",
    max_group_order: int = DEFAULT_GROUP_CAP,
) -> dict:
    family = family.upper()
    monoid = get_monoid(family, n, system, max_group_order)
    counts = monoid.green_summary()
    request = {"command": "green", "family": family, "n": n, "system": system}
    results = [_row(f"{k}-classes", v) for k, v in counts.items()]
    results.append(_row("order", monoid.size))
    return _report(request, results)


def _model_monoid(model: str, n: int) -> FiniteInverseMonoid:
    if model == "In":
        return FiniteInverseMonoid.from_elements(
            all_partial_maps(n), compose, validate=False
        )
    if model == "Jn":
        return FiniteInverseMonoid.from_elements(
            all_signed_partial_maps(n), compose_signed, validate=False
        )
    raise UsageError(f"unknown model {model!r}")


def _canonical_signed_witness(monoid: FiniteInverseMonoid, n: int):
    """The identity and the sign flip of the first point, when they are
    related by the greatest idempotent-separating congruence."""
    from .pperm import SignedPartialMap, mu_congruence

    index = {e: i for i, e in enumerate(monoid.elements)}
    ident = SignedPartialMap.identity(n)
    flip = SignedPartialMap.make(n, [(1, -1)] + [(i, i) for i in range(2, n + 1)])
    if ident not in index or flip not in index:
        return None
    a, b = index[ident], index[flip]
    if any(a in c and b in c for c in mu_congruence(monoid)):
        return a, b
    return None


def mu_report(
    model: str | None = None,
    family: str | None = None,
    n: int | None = None,
    system: str = "boolean",
    max_group_order: int = DEFAULT_GROUP_CAP,
) -> dict:
    request = {"command": "mu", "model": model, "family": family, "n": n, "system": system}
    results = []
    if model == "hexagon":
        monoid = _cached(("monoid", "hexagon"), refmon.hexagon_monoid)
        fundamental = monoid.is_fundamental()
        results.append(_row("order", monoid.size))
        results.append(_row("fundamental", fundamental))
        results.append(_row("mu trivial on units", monoid.mu_trivial_on_units()))
        if not fundamental:
            a, b = monoid.mu_witness()
            results.append(_row("witness", f"elements #{a} and #{b}"))
    elif model in ("In", "Jn"):
        if n is None or not 1 <= n <= 4:
            raise UsageError("point models are enumerated for 1 <= n <= 4")
        monoid = _cached(("model", model, n), lambda: _model_monoid(model, n))
        fundamental = is_fundamental(monoid)
        results.append(_row("order", monoid.size))
        results.append(_row("fundamental", fundamental))
        if not fundamental:
            a, b = _canonical_signed_witness(monoid, n) or mu_witness(monoid)
            results.append(
                _row("witness", f"{monoid.elements[a]!r} ~ {monoid.elements[b]!r}")
            )
    elif family:
        monoid = get_monoid(family.upper(), n, system, max_group_order)
        fundamental = monoid.is_fundamental()
        results.append(_row("order", monoid.size))
        results.append(_row("fundamental", fundamental))
        if not fundamental:
            a, b = monoid.mu_witness()
            results.append(_row("witness", f"elements #{a} and #{b}"))
    else:
        raise UsageError("mu needs either a model or a family")
    return _report(request, results)


def table_report(
    family: str,
    n: int | None = None,
    system: str = "arrangement",
    kind: str = "ranks",
    max_group_order: int = DEFAULT_GROUP_CAP,
) -> dict:
    family = family.upper()
    request = {"command": "table", "family": family, "n": n, "system": system, "kind": kind}
    results = []
    discrepancies = []
    if kind == "orbit-data":
        if family not in EXCEPTIONAL:
            raise UsageError("orbit data is embedded for exceptional families only")
        results.append(_row("orbit data", orders.ORBIT_DATA[family]))
        for rank, total in enumerate(orders.orbit_rank_counts(family)):
            results.append(_row(f"rank {rank} subspaces", total))
        return _report(request, results)
    sys_obj = get_system(family, n, system, max_group_order)
    if kind == "ranks":
        counts = sys_obj.rank_counts()
        for rank in sorted(counts):
            results.append(_row(f"rank {rank}", counts[rank]))
        if system == "arrangement" and family in CLASSICAL:
            closed = stirling_rank_counts(family, sys_obj.group.dim)
            for rank in sorted(closed):
                if closed[rank] != counts.get(rank, 0):
                    discrepancies.append(
                        {
                            "formula": f"rank-{rank} count for {family}, n={n}",
                            "printed": str(closed[rank]),
                            "oracle": str(counts.get(rank, 0)),
                        }
                    )
            results.append(
                _row(
                    "closed-form agreement",
                    "match" if not discrepancies else "mismatch",
                )
            )
    elif kind == "orbits":
        for orbit in sys_obj.orbits():
            iso = len(sys_obj.isotropy(orbit.representative))
            results.append(
                _row(
                    f"orbit {orbit.label}",
                    f"size {orbit.size}, stabilizer order {iso}",
                )
            )
    else:
        raise UsageError(f"unknown table kind {kind!r}")
    return _report(request, results, discrepancies)
