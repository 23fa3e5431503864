"""Command-line client for the refmonoids service.

The CLI is a thin HTTP client: every subcommand builds a request, posts it to
the service, and renders the report.  By default the service application is
mounted in-process (no running server required); pass ``--server URL`` to
talk to a remote instance, and use ``refmonoids serve`` to start one.

Exit codes: 0 on success, 2 on usage errors, 3 when a scale cap is exceeded.
"""

from __future__ import annotations

import asyncio
import json
import sys

import click
import httpx

EXIT_USAGE = 2
EXIT_CAP = 3


def _request(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=payload)

    from .service import create_app

    async def _call() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://refmonoids.local", timeout=600.0
        ) as client:
            return await client.post(path, json=payload)

    return asyncio.run(_call())


def _post(ctx: click.Context, path: str, payload: dict) -> dict:
    response = _request(ctx.obj.get("server"), path, payload)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail")
        except ValueError:
            detail = response.text
        if isinstance(detail, dict):
            code = detail.get("code")
            message = detail.get("message", "")
        else:
            code, message = "usage", str(detail)
        click.echo(f"error ({code}): {message}", err=True)
        sys.exit(EXIT_CAP if code == "cap" else EXIT_USAGE)
    return response.json()


def _emit(ctx: click.Context, report: dict) -> None:
    if ctx.obj.get("as_json"):
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        lines = []
        width = max((len(r["label"]) for r in report["results"]), default=0)
        for r in report["results"]:
            lines.append(f"{r['label']:<{width}}  {r['value']}")
        for d in report.get("discrepancies", []):
            lines.append(
                f"! {d['formula']}: printed {d['printed']} vs oracle {d['oracle']}"
            )
        text = "\n".join(lines)
    output = ctx.obj.get("output")
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@click.group()
@click.option("--server", default=None, help="URL of a running service; defaults to in-process.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
@click.option("--output", "-o", default=None, help="Write the report to a file.")
@click.pass_context
def main(ctx: click.Context, server: str | None, as_json: bool, output: str | None) -> None:
    """Orders, Green's structure and tables for monoids of partial reflections."""
    ctx.ensure_object(dict)
    ctx.obj.update(server=server, as_json=as_json, output=output)


_family_option = click.option(
    "--family",
    required=True,
    type=click.Choice(["A", "B", "D", "G2", "F4", "E6", "E7", "E8"], case_sensitive=False),
)
_n_option = click.option("--n", type=int, default=None, help="Degree (coordinates for type A).")
_system_option = click.option(
    "--system",
    type=click.Choice(["boolean", "arrangement"]),
    default="arrangement",
    show_default=True,
)
_cap_option = click.option(
    "--max-group-order",
    type=int,
    default=2000,
    show_default=True,
    help="Enumeration cap on the group order.",
)


@main.command()
@_family_option
@_n_option
@_system_option
@click.option(
    "--method",
    type=click.Choice(["formula", "enumerate", "both"]),
    default="formula",
    show_default=True,
)
@_cap_option
@click.pass_context
def order(ctx, family, n, system, method, max_group_order):
    """Monoid orders by formula, enumeration, or both with a verdict."""
    payload = {
        "family": family.upper(),
        "n": n,
        "system": system,
        "method": method,
        "max_group_order": max_group_order,
    }
    _emit(ctx, _post(ctx, "/order", payload))


@main.command()
@_family_option
@_n_option
@_system_option
@_cap_option
@click.pass_context
def green(ctx, family, n, system, max_group_order):
    """Green's class counts of the built monoid."""
    payload = {
        "family": family.upper(),
        "n": n,
        "system": system,
        "max_group_order": max_group_order,
    }
    _emit(ctx, _post(ctx, "/green", payload))


@main.command()
@click.option("--model", type=click.Choice(["In", "Jn", "hexagon"]), default=None)
@click.option(
    "--family",
    type=click.Choice(["A", "B", "D", "G2"], case_sensitive=False),
    default=None,
)
@_n_option
@click.option(
    "--system",
    type=click.Choice(["boolean", "arrangement"]),
    default="boolean",
    show_default=True,
)
@_cap_option
@click.pass_context
def mu(ctx, model, family, n, system, max_group_order):
    """Fundamentality verdict with a witness pair when non-fundamental."""
    payload = {
        "model": model,
        "family": family.upper() if family else None,
        "n": n,
        "system": system,
        "max_group_order": max_group_order,
    }
    _emit(ctx, _post(ctx, "/mu", payload))


@main.command()
@_family_option
@_n_option
@_system_option
@click.option("--ranks", "kind", flag_value="ranks", default=True)
@click.option("--orbits", "kind", flag_value="orbits")
@click.option("--orbit-data", "kind", flag_value="orbit-data")
@_cap_option
@click.pass_context
def table(ctx, family, n, system, kind, max_group_order):
    """Rank counts, orbit tables, or the embedded orbit-data rows."""
    payload = {
        "family": family.upper(),
        "n": n,
        "system": system,
        "kind": kind,
        "max_group_order": max_group_order,
    }
    _emit(ctx, _post(ctx, "/table", payload))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port):
    """Run the service with uvicorn."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
