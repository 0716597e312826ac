"""CLI commands: expand-cb, expand-pbw, fuse, pair, verify, table."""
from __future__ import annotations

import json
from enum import Enum
from pathlib import Path
from typing import Optional

import typer

from qgroups.pbw.utils import setup_cli_logging, to_csv, to_json_text

app = typer.Typer(
    name="qgroups-pbw",
    help="Exact PBW and canonical bases of modified quantum sl2.",
    no_args_is_help=True,
)


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
    csv = "csv"


class Route(str, Enum):
    cb = "cb"
    pbw = "pbw"
    module_limit = "module-limit"
    all = "all"


class TableKind(str, Enum):
    pairing = "pairing"
    cb_pbw = "cb-pbw"
    pbw_cb = "pbw-cb"


class Suite(str, Enum):
    inverse = "inverse"
    orthogonality = "orthogonality"
    pairing = "pairing"
    limits = "limits"
    fusion = "fusion"
    closed_action = "closed-action"
    positivity = "positivity"
    homomorphism = "homomorphism"
    wall = "wall"
    qbinom_identity = "qbinom-identity"


_A = typer.Option(0, "--a", min=0, help="E divided power.")
_B = typer.Option(0, "--b", min=0, help="F divided power.")
_M = typer.Option(0, "--m", help="Weight of the idempotent 1_m.")
_FORMAT = typer.Option(OutputFormat.text, "--format", help="Output format.")
_VERBOSE = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr.")


def _canonical(a: int, b: int, m: int):
    from qgroups.pbw.udot1 import Orientation, cb_canonicalize  # noqa: PLC0415

    return cb_canonicalize(a, b, m, Orientation.EF if m <= b - a else Orientation.FE)


def _udot_rows(x) -> list[list[object]]:
    return [[i.a, i.b, x.weight, i.orient.value, c] for i, c in x.terms]


@app.command("expand-cb")
def cmd_expand_cb(
    a: int = _A,
    b: int = _B,
    m: int = _M,
    output_format: OutputFormat = _FORMAT,
    verbose: bool = _VERBOSE,
) -> None:
    """Expand the canonical basis element with indices (a, b, m) in the PBW basis."""
    from qgroups.pbw.bases import cb_to_pbw  # noqa: PLC0415
    from qgroups.pbw.serialize import to_data  # noqa: PLC0415

    setup_cli_logging(verbose)
    combo = cb_to_pbw(_canonical(a, b, m))
    if output_format is OutputFormat.json:
        typer.echo(to_json_text(to_data(combo)))
    elif output_format is OutputFormat.csv:
        typer.echo(to_csv(["a", "b", "m", "coeff"], ([i.a, i.b, i.m, c] for i, c in combo.terms)))
    else:
        typer.echo(f"{_canonical(a, b, m)} = {combo}")


@app.command("expand-pbw")
def cmd_expand_pbw(
    a: int = _A,
    b: int = _B,
    m: int = _M,
    output_format: OutputFormat = _FORMAT,
    verbose: bool = _VERBOSE,
) -> None:
    """Expand w_m(a, b) in the canonical basis."""
    from qgroups.pbw.bases import PBWIndex, pbw_to_cb  # noqa: PLC0415
    from qgroups.pbw.serialize import to_data  # noqa: PLC0415

    setup_cli_logging(verbose)
    w = PBWIndex(m, a, b)
    x = pbw_to_cb(w)
    if output_format is OutputFormat.json:
        typer.echo(to_json_text(to_data(x)))
    elif output_format is OutputFormat.csv:
        typer.echo(to_csv(["a", "b", "m", "orient", "coeff"], _udot_rows(x)))
    else:
        typer.echo(f"{w} = {x}")


@app.command("fuse")
def cmd_fuse(
    a: int = _A,
    b: int = _B,
    m: int = _M,
    output_format: OutputFormat = _FORMAT,
    verbose: bool = _VERBOSE,
) -> None:
    """Compute E^(a) *_m F^(b) by recursion and show its defining-limit remainder."""
    from qgroups.pbw.fusion import defining_limit_remainder, fuse  # noqa: PLC0415
    from qgroups.pbw.serialize import to_data  # noqa: PLC0415

    setup_cli_logging(verbose)
    result = fuse(a, b, m)
    remainder = defining_limit_remainder(a, b, m)
    ok = remainder.is_asympt_zero()
    if output_format is OutputFormat.json:
        typer.echo(to_json_text({
            "a": a,
            "b": b,
            "m": m,
            "value": to_data(result.value),
            "remainder": to_data(remainder),
            "asymptotically_zero": ok,
        }))
    elif output_format is OutputFormat.csv:
        typer.echo(to_csv(["a", "b", "m", "orient", "coeff"], _udot_rows(result.value)))
    else:
        typer.echo(str(result))
        typer.echo(f"remainder on (xi ⊗ eta): {remainder}")
    if not ok:
        typer.echo(json.dumps({"case": {"a": a, "b": b, "m": m}, "detail": "remainder not o(1)"}), err=True)
        raise typer.Exit(1)


@app.command("pair")
def cmd_pair(
    a: int = _A,
    b: int = _B,
    m: int = _M,
    a2: int = typer.Option(0, "--a2", min=0),
    b2: int = typer.Option(0, "--b2", min=0),
    m2: int = typer.Option(0, "--m2"),
    route: Route = typer.Option(Route.cb, "--route", help="Which computation of the form to use."),
    output_format: OutputFormat = _FORMAT,
    verbose: bool = _VERBOSE,
) -> None:
    """Pair two canonical basis elements by one or all three routes."""
    from qgroups.pbw.bases import pairing_via_pbw  # noqa: PLC0415
    from qgroups.pbw.fusion import pairing_module_limit  # noqa: PLC0415
    from qgroups.pbw.qarith import RationalFunction  # noqa: PLC0415
    from qgroups.pbw.serialize import to_data  # noqa: PLC0415
    from qgroups.pbw.udot1 import UdotElement, pairing  # noqa: PLC0415

    setup_cli_logging(verbose)
    i1, i2 = _canonical(a, b, m), _canonical(a2, b2, m2)
    x = UdotElement.basis(i1.a, i1.b, i1.m, i1.orient)
    y = UdotElement.basis(i2.a, i2.b, i2.m, i2.orient)

    def module_limit() -> RationalFunction:
        # different blocks are orthogonal
        if m != m2:
            return RationalFunction.zero()
        return pairing_module_limit(x, y)

    routes = {
        Route.cb: lambda: pairing(x, y),
        Route.pbw: lambda: pairing_via_pbw(x, y),
        Route.module_limit: module_limit,
    }
    chosen = list(routes) if route is Route.all else [route]
    values = {r.value: routes[r]() for r in chosen}

    if output_format is OutputFormat.json:
        typer.echo(to_json_text({"x": str(i1), "y": str(i2), "values": {k: to_data(v) for k, v in values.items()}}))
    elif output_format is OutputFormat.csv:
        typer.echo(to_csv(["route", "value"], values.items()))
    else:
        for name, value in values.items():
            typer.echo(f"({i1}, {i2}) [{name}] = {value}")

    if len(set(values.values())) > 1:
        diagnostic = {
            "case": {"a": a, "b": b, "m": m, "a2": a2, "b2": b2, "m2": m2},
            "detail": "routes disagree",
            "values": {k: str(v) for k, v in values.items()},
        }
        typer.echo(json.dumps(diagnostic), err=True)
        raise typer.Exit(1)


@app.command("verify")
def cmd_verify(
    suite: Suite = typer.Argument(..., help="Suite to run."),
    max_a: Optional[int] = typer.Option(None, "--max-a", min=0),
    max_b: Optional[int] = typer.Option(None, "--max-b", min=0),
    max_m: Optional[int] = typer.Option(None, "--max-m", min=0, help="Bound on |m|."),
    order: Optional[int] = typer.Option(None, "--order", min=1, help="Series truncation order."),
    config_path: Optional[Path] = typer.Option(None, "--config", help="Sweep configuration YAML."),
    output_format: OutputFormat = _FORMAT,
    verbose: bool = _VERBOSE,
) -> None:
    """Run an exact verification suite; exit 1 naming the first failing case."""
    from qgroups.pbw.config import (  # noqa: PLC0415
        DEFAULT_CONFIG_PATH,
        ConfigValidationError,
        SweepConfigLoader,
        threads_from_env,
    )
    from qgroups.pbw.verify import run_suite  # noqa: PLC0415

    setup_cli_logging(verbose)
    try:
        config = SweepConfigLoader().load(config_path or DEFAULT_CONFIG_PATH)
    except ConfigValidationError as exc:
        typer.echo(f"✗ {exc}", err=True)
        raise typer.Exit(1)
    ranges = config.for_suite(suite.value).override(
        max_a=max_a, max_b=max_b, max_m=max_m, order=order
    )
    result = run_suite(suite.value, ranges, threads=threads_from_env())
    first = result.first_failure

    if output_format is OutputFormat.json:
        typer.echo(to_json_text({
            "suite": result.suite,
            "cases": result.cases_run,
            "passed": result.passed,
            "failures": len(result.failures),
            "first_failure": first.to_json() if first else None,
        }))
    elif output_format is OutputFormat.csv:
        typer.echo(to_csv(["suite", "cases", "failures"], [[result.suite, result.cases_run, len(result.failures)]]))
    else:
        typer.echo(str(result))

    if first is not None:
        typer.echo(json.dumps(first.to_json()), err=True)
        raise typer.Exit(1)


@app.command("table")
def cmd_table(
    kind: TableKind = typer.Argument(..., help="pairing grid or a ladder transition matrix."),
    a: int = _A,
    b: int = _B,
    m: int = _M,
    max_a: int = typer.Option(2, "--max-a", min=0),
    max_b: int = typer.Option(2, "--max-b", min=0),
    output_format: OutputFormat = _FORMAT,
    verbose: bool = _VERBOSE,
) -> None:
    """Emit the pairing grid of block m, or the ladder matrices of (a, b, m)."""
    from qgroups.pbw.bases import ladder_matrices  # noqa: PLC0415
    from qgroups.pbw.serialize import to_data  # noqa: PLC0415
    from qgroups.pbw.udot1 import canonical_indices, pairing_cb  # noqa: PLC0415

    setup_cli_logging(verbose)
    if kind is TableKind.pairing:
        indices = list(canonical_indices(max_a, max_b, m))
        labels = [str(i) for i in indices]
        grid = [[pairing_cb(i1, i2) for i2 in indices] for i1 in indices]
        if output_format is OutputFormat.json:
            typer.echo(to_json_text({
                "m": m,
                "indices": [{"a": i.a, "b": i.b, "orient": i.orient.value} for i in indices],
                "entries": [[to_data(c) for c in row] for row in grid],
            }))
            return
    else:
        c2p, p2c = ladder_matrices(a, b, m)
        matrix = c2p if kind is TableKind.cb_pbw else p2c
        if output_format is OutputFormat.json:
            typer.echo(to_json_text(to_data(matrix)))
            return
        labels = [f"({x},{y})" for x, y in matrix.ladder]
        grid = [list(row) for row in matrix.entries]

    rows = [[label, *row] for label, row in zip(labels, grid)]
    if output_format is OutputFormat.csv:
        typer.echo(to_csv(["", *labels], rows))
    else:
        for row in rows:
            typer.echo("\t".join(str(c) for c in row))
