"""The FastAPI application wrapping the core package.

The service is stateless from the client's point of view, but caches built
groups and monoids process-wide, which is the point of running it as a
long-lived process: the expensive constructions amortize across queries.
Errors map to HTTP 400 with a structured detail carrying a machine-readable
code: "usage" for invalid combinations, "cap" for scale-cap violations.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import reports
from ..errors import CapExceededError, RefmonoidsError, UsageError
from ..orders import ORBIT_DATA
from .models import (
    Discrepancy,
    GreenRequest,
    MuRequest,
    OrderRequest,
    Report,
    ResultItem,
    TableRequest,
)


def _to_report(payload: dict) -> Report:
    return Report(
        request=payload["request"],
        results=[ResultItem(**r) for r in payload["results"]],
        discrepancies=[Discrepancy(**d) for d in payload["discrepancies"]],
    )


def _guard(fn, *args, **kwargs) -> Report:
    try:
        return _to_report(fn(*args, **kwargs))
    except CapExceededError as exc:
        raise HTTPException(
            status_code=400, detail={"code": "cap", "message": str(exc)}
        ) from exc
    except UsageError as exc:
        raise HTTPException(
            status_code=400, detail={"code": "usage", "message": str(exc)}
        ) from exc
    except RefmonoidsError as exc:  # pragma: no cover - defensive
        raise HTTPException(
            status_code=500, detail={"code": "internal", "message": str(exc)}
        ) from exc


def create_app() -> FastAPI:
    app = FastAPI(
        title="refmonoids",
        description=(
            "Exact-arithmetic construction and classification of monoids of "
            "partial linear isomorphisms over Weyl groups, with closed-form "
            "and enumerated orders cross-validated against each other."
        ),
        version="0.1.0",
    )

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/order", response_model=Report)
    def order(req: OrderRequest) -> Report:
        return _guard(
            reports.order_report,
            req.family,
            req.n,
            system=req.system,
            method=req.method,
            max_group_order=req.max_group_order,
        )

    @app.post("/green", response_model=Report)
    def green(req: GreenRequest) -> Report:
        return _guard(
            reports.green_report,
            req.family,
            req.n,
            system=req.system,
            max_group_order=req.max_group_order,
        )

    @app.post("/mu", response_model=Report)
    def mu(req: MuRequest) -> Report:
        return _guard(
            reports.mu_report,
            model=req.model,
            family=req.family,
            n=req.n,
            system=req.system,
            max_group_order=req.max_group_order,
        )

    @app.post("/table", response_model=Report)
    def table(req: TableRequest) -> Report:
        return _guard(
            reports.table_report,
            req.family,
            n=req.n,
            system=req.system,
            kind=req.kind,
            max_group_order=req.max_group_order,
        )

    @app.get("/orbit-data/{family}")
    def orbit_data(family: str) -> dict:
        key = family.upper()
        if key not in ORBIT_DATA:
            raise HTTPException(
                status_code=400,
                detail={"code": "usage", "message": f"no orbit data for {family!r}"},
            )
        return {"family": key, "row": ORBIT_DATA[key]}

    return app
