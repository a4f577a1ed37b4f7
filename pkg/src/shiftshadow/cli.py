"""Thin command-line client for the shiftshadow service.

Every subcommand loads its input files, posts one request to the service,
prints the JSON response with sorted keys, and maps the outcome to an exit
code: 0 when all checks pass, 1 when a mathematical check failed, 2 for
usage, input, and budget errors.  By default the client drives an
in-process copy of the app; pass --server (or set SHIFTSHADOW_SERVER) to
target a running instance instead.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import zoo


class ServiceClient:
    def __init__(self, server=None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def get(self, path):
        r = self._client.get(path)
        return r.status_code, r.json()

    def post(self, path, payload):
        r = self._client.post(path, json=payload)
        return r.status_code, r.json()


def _emit(data):
    click.echo(json.dumps(data, indent=2, sort_keys=True))


def _fail_usage(data):
    _emit(data)
    sys.exit(2)


def _request(ctx, method, path, payload=None):
    client = ServiceClient(ctx.obj.get("server"))
    status, data = client.get(path) if method == "get" else client.post(path, payload)
    if status >= 400:
        _fail_usage({"status": status, "detail": data.get("detail", data)})
    return data


def _load_json_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        _fail_usage({"error": "cannot read JSON file", "path": path,
                     "message": str(exc)})


def _resolve_definition(ref):
    """A --def value is a JSON file path or the name of a bundled shift."""
    if os.path.exists(ref):
        return _load_json_file(ref)
    try:
        return zoo.bundled_definition(ref)
    except ValueError:
        _fail_usage({"error": "unknown shift definition",
                     "value": ref,
                     "bundled": zoo.builder_names()})


@click.group()
@click.option("--server", envvar="SHIFTSHADOW_SERVER", default=None,
              help="Base URL of a running service; defaults to in-process.")
@click.pass_context
def main(ctx, server):
    """Subshift language queries, mixing/QFT certificates, shadow constructions."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


@main.command()
@click.pass_context
def defs(ctx):
    """List the bundled shift definitions."""
    _emit(_request(ctx, "get", "/defs"))


@main.group()
def shift():
    """Language queries against a shift definition."""


@shift.command("check")
@click.option("--def", "definition", required=True, help="Definition file or bundled name.")
@click.option("--word", required=True)
@click.pass_context
def shift_check(ctx, definition, word):
    """Decide membership of a word; exits 1 when the word is forbidden."""
    data = _request(ctx, "post", "/shift/check",
                    {"definition": _resolve_definition(definition), "word": word})
    _emit(data)
    sys.exit(0 if data["allowed"] else 1)


@shift.command("words")
@click.option("--def", "definition", required=True)
@click.option("-n", required=True, type=int)
@click.pass_context
def shift_words(ctx, definition, n):
    """Enumerate the allowed words of length n."""
    _emit(_request(ctx, "post", "/shift/words",
                   {"definition": _resolve_definition(definition), "n": n}))


@main.group()
def mixing():
    """Mixing-number certificates."""


@mixing.command("verify")
@click.option("--def", "definition", required=True)
@click.option("-M", "m", required=True, type=int)
@click.option("-L", "length_bound", default=6, type=int, show_default=True)
@click.option("--nmax", "n_max", default=None, type=int)
@click.pass_context
def mixing_verify(ctx, definition, m, length_bound, n_max):
    """Brute-force the mixing condition at the given bounds."""
    data = _request(ctx, "post", "/mixing/verify",
                    {"definition": _resolve_definition(definition), "m": m,
                     "length_bound": length_bound, "n_max": n_max})
    _emit(data)
    sys.exit(0 if data["verdict"] == "pass" else 1)


@mixing.command("exponent")
@click.option("--def", "definition", required=True)
@click.pass_context
def mixing_exponent(ctx, definition):
    """Primitivity exponent of the presentation (a sound mixing number)."""
    _emit(_request(ctx, "post", "/mixing/exponent",
                   {"definition": _resolve_definition(definition)}))


@mixing.command("witness")
@click.option("--def", "definition", required=True)
@click.option("-L", "length_bound", default=3, type=int, show_default=True)
@click.pass_context
def mixing_witness(ctx, definition, length_bound):
    """Search for a pair defeating every bridge length."""
    _emit(_request(ctx, "post", "/mixing/witness",
                   {"definition": _resolve_definition(definition),
                    "length_bound": length_bound}))


@main.group()
def qft():
    """Quasi-finite-type certificates."""


@qft.command("verify")
@click.option("--def", "definition", required=True)
@click.option("-M", "m", required=True, type=int)
@click.option("-L", "length_bound", default=6, type=int, show_default=True)
@click.option("--nmax", "n_max", default=None, type=int)
@click.pass_context
def qft_verify(ctx, definition, m, length_bound, n_max):
    """Brute-force the quasi-finite-type condition at the given bounds."""
    data = _request(ctx, "post", "/qft/verify",
                    {"definition": _resolve_definition(definition), "m": m,
                     "length_bound": length_bound, "n_max": n_max})
    _emit(data)
    sys.exit(0 if data["verdict"] == "pass" else 1)


@qft.command("search")
@click.option("--def", "definition", required=True)
@click.option("-L", "length_bound", default=6, type=int, show_default=True)
@click.option("--nmax", "n_max", default=None, type=int)
@click.option("--mmax", "m_max", default=8, type=int, show_default=True)
@click.pass_context
def qft_search_cmd(ctx, definition, length_bound, n_max, m_max):
    """Least number passing the bounded quasi-finite-type check."""
    _emit(_request(ctx, "post", "/qft/search",
                   {"definition": _resolve_definition(definition),
                    "length_bound": length_bound, "n_max": n_max, "m_max": m_max}))


@main.group()
def shadow():
    """Shadow-pair construction, verification, and exhaustive search."""


@shadow.command("construct")
@click.option("--def", "definition", required=True)
@click.option("--po", "orbit", required=True, help="Pseudo-orbit JSON file.")
@click.option("--method", required=True,
              type=click.Choice(["mixing", "mixing-forward", "qft", "schedule"]))
@click.option("-k", "epsilon_exponent", required=True, type=int,
              help="Accuracy exponent: trace within 2**-k.")
@click.option("-M", "number", default=None, type=int,
              help="Mixing/QFT number; defaults to the primitivity exponent.")
@click.option("--no-verify", is_flag=True, default=False)
@click.pass_context
def shadow_construct(ctx, definition, orbit, method, epsilon_exponent, number, no_verify):
    """Build the two-point shadow set for a pseudo-orbit."""
    data = _request(ctx, "post", "/shadow/construct",
                    {"definition": _resolve_definition(definition),
                     "pseudo_orbit": _load_json_file(orbit),
                     "method": method, "epsilon_exponent": epsilon_exponent,
                     "number": number, "verify": not no_verify})
    _emit(data)
    if not data["constructed"]:
        sys.exit(1)
    cert = data.get("certificate")
    sys.exit(0 if cert is None or cert["verdict"] != "fail" else 1)


@shadow.command("verify")
@click.option("--def", "definition", required=True)
@click.option("--po", "orbit", required=True)
@click.option("--set", "members", required=True, help="JSON list of anchored windows.")
@click.option("-k", "epsilon_exponent", required=True, type=int)
@click.option("--no-diameter", is_flag=True, default=False)
@click.option("--size-bound", default=None, type=int)
@click.pass_context
def shadow_verify_cmd(ctx, definition, orbit, members, epsilon_exponent,
                      no_diameter, size_bound):
    """Verify a candidate shadow set against a pseudo-orbit."""
    data = _request(ctx, "post", "/shadow/verify",
                    {"definition": _resolve_definition(definition),
                     "pseudo_orbit": _load_json_file(orbit),
                     "members": _load_json_file(members),
                     "epsilon_exponent": epsilon_exponent,
                     "check_diameter": not no_diameter,
                     "size_bound": size_bound})
    _emit(data)
    sys.exit(0 if data["verdict"] != "fail" else 1)


@shadow.command("search")
@click.option("--def", "definition", required=True)
@click.option("--po", "orbit", required=True)
@click.option("-N", "set_size", required=True, type=int)
@click.option("-k", "epsilon_exponent", required=True, type=int)
@click.option("--halfwidth", "half_width", required=True, type=int)
@click.option("--budget", default=10**6, type=int, show_default=True)
@click.option("--no-diameter", is_flag=True, default=False)
@click.pass_context
def shadow_search_cmd(ctx, definition, orbit, set_size, epsilon_exponent,
                      half_width, budget, no_diameter):
    """Exhaustively search all small candidate sets (witness or exhaustion proof)."""
    _emit(_request(ctx, "post", "/shadow/search",
                   {"definition": _resolve_definition(definition),
                    "pseudo_orbit": _load_json_file(orbit),
                    "set_size": set_size, "epsilon_exponent": epsilon_exponent,
                    "half_width": half_width, "budget": budget,
                    "check_diameter": not no_diameter}))


@main.group()
def interval():
    """The square-root interval map demonstration."""


@interval.command("demo")
@click.option("--delta", required=True, type=float)
@click.option("--epsilon", default=0.25, type=float, show_default=True)
@click.option("--grid", "invariance_grid", default=1e-4, type=float, show_default=True)
@click.option("--search-grid", "search_grid", default=1e-3, type=float, show_default=True)
@click.option("--csv", "as_csv", is_flag=True, default=False,
              help="Emit the pseudo-orbit as CSV instead of the JSON report.")
@click.pass_context
def interval_demo(ctx, delta, epsilon, invariance_grid, search_grid, as_csv):
    """Ascending pseudo-orbit, trapping certificate, and grid pair search."""
    data = _request(ctx, "post", "/interval/demo",
                    {"delta": delta, "epsilon": epsilon,
                     "invariance_grid": invariance_grid, "search_grid": search_grid})
    if as_csv:
        click.echo("i,x")
        for i, x in enumerate(data["pseudo_orbit"]):
            click.echo(f"{i},{x!r}")
    else:
        _emit(data)


def _render_table(report):
    rows = [("check", "result")]
    rows += [(c["name"], "pass" if c["passed"] else "FAIL") for c in report["checks"]]
    width = max(len(r[0]) for r in rows)
    lines = [f"scenario {report['scenario']}  seed {report['seed']}"]
    lines += [f"  {name.ljust(width)}  {res}" for name, res in rows[1:]]
    lines.append(f"overall: {'pass' if report['passed'] else 'FAIL'}")
    return "\n".join(lines)


@main.command()
@click.argument("scenario")
@click.option("--seed", default=0, type=int, show_default=True)
@click.option("--budget", default=10**6, type=int, show_default=True)
@click.option("--json", "as_json", flag_value=True, default=True)
@click.option("--table", "as_json", flag_value=False)
@click.pass_context
def repro(ctx, scenario, seed, budget, as_json):
    """Run a named end-to-end scenario and report its checks."""
    data = _request(ctx, "post", "/repro",
                    {"scenario": scenario, "seed": seed, "budget": budget})
    if as_json:
        _emit(data)
    else:
        click.echo(_render_table(data))
    sys.exit(0 if data["passed"] else 1)


if __name__ == "__main__":
    main()
