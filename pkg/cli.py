import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
from rich.console import Console
from rich.table import Table

from core.errors import UsageError
from meadow_app import MeadowWorkbench
from utils import configure_logging

app = typer.Typer(help="Common meadow toolkit: evaluate, normalize, decide and check laws.")
console = Console()

EXIT_NEGATIVE = 1
EXIT_USAGE = 2


@app.callback()
def main(
    ctx: typer.Context,
    config_path: Optional[Path] = typer.Option(None, "--config", "-c", help="Path to a JSON or YAML settings file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
):
    """Options shared by every command."""
    try:
        workbench = MeadowWorkbench(config_path=config_path)
    except UsageError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(EXIT_USAGE)
    configure_logging("DEBUG" if verbose else workbench.settings["log_level"], workbench.settings["log_file"] or None)
    ctx.obj = workbench


def _fail_on_error(result: Dict[str, Any]) -> None:
    if not result["success"]:
        typer.echo(f"Error: {result['error']}", err=True)
        raise typer.Exit(EXIT_USAGE)


def _check_format(format: str) -> None:
    if format not in ("text", "records"):
        typer.echo(f"Error: unknown format '{format}' (use text or records)", err=True)
        raise typer.Exit(EXIT_USAGE)


def _echo_record(record: Dict[str, Any]) -> None:
    typer.echo(json.dumps(record, sort_keys=True))


@app.command("eval")
def eval_command(
    ctx: typer.Context,
    expr: str = typer.Argument(..., help="Term to evaluate, e.g. 'x*x^-1'"),
    model: str = typer.Option("qbot", "--model", "-m", help="qbot, qzero, fp:<p>, fp0:<p> or fracpair"),
    bind: Optional[List[str]] = typer.Option(None, "--bind", "-b", help="var=value; _|_ or bot for the additional value"),
    format: str = typer.Option("text", "--format", "-f", help="text or records"),
):
    """Evaluate a term in a model."""
    _check_format(format)
    result = ctx.obj.evaluate(expr, model, bind or [])
    _fail_on_error(result)
    if format == "records":
        _echo_record({"expr": expr, "model": result["model"], "value": result["text"]})
    else:
        typer.echo(result["text"])


@app.command("normalize")
def normalize_command(
    ctx: typer.Context,
    expr: str = typer.Argument(..., help="Term to bring to fraction normal form"),
    format: str = typer.Option("text", "--format", "-f", help="text or records"),
):
    """Print the fraction normal form of a term."""
    _check_format(format)
    result = ctx.obj.normalize(expr)
    _fail_on_error(result)
    if format == "records":
        _echo_record(result["record"])
    else:
        typer.echo(result["text"])


@app.command("decide")
def decide_command(
    ctx: typer.Context,
    left: str = typer.Argument(..., help="Left-hand term"),
    right: str = typer.Argument(..., help="Right-hand term"),
    budget: Optional[int] = typer.Option(None, "--budget", help="Grid points tried when searching a counterexample"),
    format: str = typer.Option("text", "--format", "-f", help="text or records"),
):
    """Decide an equation in cancellation meadows of characteristic zero."""
    _check_format(format)
    result = ctx.obj.decide(left, right, budget)
    _fail_on_error(result)
    verdict = result["verdict"]
    if format == "records":
        _echo_record(verdict.to_record())
    else:
        typer.echo(verdict.render())
    if not verdict.equal:
        raise typer.Exit(EXIT_NEGATIVE)


@app.command("check")
def check_command(
    ctx: typer.Context,
    suite: str = typer.Argument(..., help="Suite name; see 'suites'"),
    model: str = typer.Option("qbot", "--model", "-m", help="qbot, qzero, fp:<p>, fp0:<p> or fracpair"),
    strategy: str = typer.Option("random", "--strategy", "-s", help="exhaustive or random:<n>"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the random strategy"),
    format: str = typer.Option("text", "--format", "-f", help="text or records"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Export reports to this file"),
    export_format: str = typer.Option("csv", "--export-format", help="csv or excel"),
):
    """Check a builtin law suite against a model."""
    _check_format(format)
    workbench = ctx.obj
    result = workbench.check(suite, model, strategy, seed)
    _fail_on_error(result)
    if format == "records":
        for record in result["records"]:
            _echo_record(record)
    else:
        display_reports(result["records"])
    if output:
        export_result = workbench.export_reports(str(output), export_format)
        if not export_result["success"]:
            typer.echo(f"Export error: {export_result['error']}", err=True)
            raise typer.Exit(EXIT_USAGE)
        typer.echo(f"Reports exported to: {export_result['path']}", err=True)
        typer.echo(f"Logs exported to: {export_result['log_path']}", err=True)
    if result["failed"]:
        raise typer.Exit(EXIT_NEGATIVE)


@app.command("fracpair")
def fracpair_command(
    ctx: typer.Context,
    op: str = typer.Argument(..., help="add, mul, neg, inv, canon or qbot"),
    operands: List[str] = typer.Argument(..., help="Operands as p/q (put '--' before negative ones)"),
    format: str = typer.Option("text", "--format", "-f", help="text or records"),
):
    """Fracpair arithmetic over the integers."""
    _check_format(format)
    result = ctx.obj.fracpair(op, operands)
    _fail_on_error(result)
    if format == "records":
        _echo_record({"op": op, "operands": list(operands), "value": result["text"]})
    else:
        typer.echo(result["text"])


@app.command("suites")
def suites_command(
    ctx: typer.Context,
    laws: bool = typer.Option(False, "--laws", "-l", help="Also list every law"),
    format: str = typer.Option("text", "--format", "-f", help="text or records"),
):
    """List the builtin law suites."""
    _check_format(format)
    for name, rows in ctx.obj.suites().items():
        if format == "records":
            for row in rows:
                _echo_record({"suite": name, **row})
            continue
        typer.echo(f"{name} ({len(rows)})")
        if laws:
            for row in rows:
                typer.echo(f"  {row['law']}: {row['text']}")


def display_reports(records: List[Dict[str, Any]]) -> None:
    """Display check reports as a table."""
    table = Table(show_header=True, header_style="bold green")
    table.add_column("Law")
    table.add_column("Model")
    table.add_column("Outcome")
    table.add_column("Cases", justify="right")
    table.add_column("Witness")
    table.add_column("Note")
    styles = {"pass": "green", "fail": "bold red", "skip": "yellow"}
    for record in records:
        outcome = record["outcome"]
        table.add_row(
            record["law"],
            record["model"],
            f"[{styles[outcome]}]{outcome}[/{styles[outcome]}]",
            str(record["cases"]),
            record["witness"],
            record["note"],
        )
    console.print(table)


if __name__ == "__main__":
    app()
