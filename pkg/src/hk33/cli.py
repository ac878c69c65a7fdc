"""Command-line front end: a thin client over the HTTP service.

By default every command drives the service in-process through an ASGI test
transport, so no daemon is needed; ``--server URL`` points the same commands
at a running instance instead.  Exit codes: 0 success, 1 I/O, 2 schema or
spec errors, 3 validation errors, 4 oracle failure.
"""

from __future__ import annotations

import json
import sys
import warnings
from typing import Any, Optional

import click

from .model import canonical_json

EXIT_OK = 0
EXIT_IO = 1
EXIT_SCHEMA = 2
EXIT_VALIDATION = 3
EXIT_ORACLE = 4

_ERROR_KIND_EXITS = {"schema": EXIT_SCHEMA, "spec": EXIT_SCHEMA, "validation": EXIT_VALIDATION}


class ServiceClient:
    """Minimal POST/GET wrapper over either transport."""

    def __init__(self, server: Optional[str]) -> None:
        if server:
            import httpx

            self._client = httpx.Client(base_url=server)
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

                from .service import app

                self._client = TestClient(app)

    def post(self, path: str, payload: Any) -> tuple[int, Any]:
        response = self._client.post(path, json=payload)
        return response.status_code, response.json()

    def get(self, path: str) -> tuple[int, Any]:
        response = self._client.get(path)
        return response.status_code, response.json()


def _fail(message: str, code: int) -> None:
    click.echo(message, err=True)
    sys.exit(code)


def _handle_error(status: int, payload: Any) -> None:
    error = payload.get("error", {}) if isinstance(payload, dict) else {}
    kind = error.get("kind", "schema")
    if kind == "schema":
        message = f"schema error at {error.get('path', '$')}: {error.get('message', '')}"
    elif kind == "validation":
        message = "validation error:\n  " + "\n  ".join(error.get("violations", []))
    else:
        message = f"{kind} error: {error.get('message', '')}"
    _fail(message, _ERROR_KIND_EXITS.get(kind, EXIT_SCHEMA))


@click.group()
@click.option(
    "--server",
    envvar="HK33_SERVER",
    default=None,
    help="Base URL of a running service; default runs the service in-process.",
)
@click.pass_context
def main(ctx: click.Context, server: Optional[str]) -> None:
    """Classify handlebody-knot annulus presentations and emit family tables."""
    ctx.obj = ServiceClient(server)


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
@click.pass_obj
def classify(client: ServiceClient, input_path: str, fmt: str) -> None:
    """Classify one presentation document and print the report."""
    try:
        with open(input_path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        _fail(f"cannot read {input_path}: {exc}", EXIT_IO)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"schema error at $: invalid JSON: {exc}", EXIT_SCHEMA)
    status, payload = client.post("/classify", document)
    if status != 200:
        _handle_error(status, payload)
    click.echo(canonical_json(payload), nl=False)


@main.command()
@click.argument("spec")
@click.option("--classify", "run_classify", is_flag=True, help="Emit reports instead of presentations.")
@click.option("--format", "fmt", type=click.Choice(["json"]), default="json")
@click.pass_obj
def family(client: ServiceClient, spec: str, run_classify: bool, fmt: str) -> None:
    """Expand a family spec such as T:3,3 or T:mu=3..15:2,nu=3..15:2,filter=PT."""
    status, payload = client.post("/family", {"spec": spec, "classify": run_classify})
    if status != 200:
        _handle_error(status, payload)
    click.echo(canonical_json(payload), nl=False)


@main.command()
@click.argument("name")
@click.option("--range", "range_text", required=True, help="Parameter range a..b[:step].")
@click.option(
    "--format", "fmt", type=click.Choice(["tsv", "markdown", "json"]), default="tsv"
)
@click.pass_obj
def table(client: ServiceClient, name: str, range_text: str, fmt: str) -> None:
    """Build one of the named tables: PT, PI, V, W, Vprime, U."""
    from .families import FamilySpecError, parse_range

    try:
        values = parse_range(range_text)
    except FamilySpecError as exc:
        _fail(f"spec error: {exc}", EXIT_SCHEMA)
    step = values[1] - values[0] if len(values) > 1 else 1
    status, payload = client.post(
        "/table", {"name": name, "start": values[0], "stop": values[-1], "step": step}
    )
    if status != 200:
        _handle_error(status, payload)
    from . import tables as table_render

    if fmt == "tsv":
        click.echo(table_render.render_tsv(payload), nl=False)
    elif fmt == "markdown":
        click.echo(table_render.render_markdown(payload), nl=False)
    else:
        click.echo(canonical_json(payload), nl=False)


@main.command()
@click.argument("suite", type=click.Choice(["primitivity", "basis", "roots", "normalize"]))
@click.option("--maxlen", default=8, show_default=True)
@click.option("--cases", default=1000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.pass_obj
def oracle(client: ServiceClient, suite: str, maxlen: int, cases: int, seed: int) -> None:
    """Run a brute-force cross-check suite; exit 4 on any disagreement."""
    status, payload = client.post(
        "/oracle", {"suite": suite, "maxlen": maxlen, "cases": cases, "seed": seed}
    )
    if status != 200:
        _handle_error(status, payload)
    click.echo(payload["summary"])
    if not payload["passed"]:
        sys.exit(EXIT_ORACLE)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
