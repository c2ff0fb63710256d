"""
Typer CLI entrypoint for zntree.

Usage:
    poetry run python cli.py --workspace workspaces/not_min.json eval "u5 * b"
    poetry run python cli.py selftest --full
    poetry run python cli.py --workspace workspaces/free_ab.json --seed 7 walk run --walks 500
    poetry run python cli.py --workspace workspaces/not_min.json tree explore --depth 3
    poetry run python cli.py --workspace workspaces/free_ab.json metric pair aba abb
    poetry run python cli.py --workspace workspaces/free_ab.json strip count --end-a @a_minus --end-b @a_plus

Exit codes: 0 success, 1 experiment failure, 2 configuration error, 64 usage error.
"""

import sys
from pathlib import Path
from typing import Optional

import click
import typer
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from config.config import (
    DEFAULT_CONE_DEPTH,
    DEFAULT_STEPS,
    DEFAULT_STRIP_KMAX,
    DEFAULT_WALKS,
    default_out_dir,
    default_threads,
    format_float,
)
from config.logging_config import configure_logging
from utils.errors import (
    BoundaryError,
    ConfigurationError,
    ExperimentAbortedError,
    WordSyntaxError,
    ZnTreeError,
)

EXIT_OK = 0
EXIT_EXPERIMENT = 1
EXIT_CONFIG = 2
EXIT_USAGE = 64

app = typer.Typer(
    name="zntree",
    help="Z^n-words, universal Z^n-trees and random walks on Z^n-free groups",
    no_args_is_help=True,
)
walk_app = typer.Typer(help="Random walk experiments")
tree_app = typer.Typer(help="Tree-of-trees exploration")
metric_app = typer.Typer(help="Distances on the compactified tree")
strip_app = typer.Typer(help="Strip counting")
app.add_typer(walk_app, name="walk")
app.add_typer(tree_app, name="tree")
app.add_typer(metric_app, name="metric")
app.add_typer(strip_app, name="strip")

console = Console()


# ---------------------------------------------------------------------------
# Shared plumbing
# ---------------------------------------------------------------------------


def _exit_code(error: ZnTreeError) -> int:
    if isinstance(error, ConfigurationError):
        return EXIT_CONFIG
    if isinstance(error, WordSyntaxError):
        return EXIT_USAGE
    return EXIT_EXPERIMENT


def _fail(error: ZnTreeError) -> None:
    console.print(Panel(f"[bold red]{type(error).__name__}[/bold red]: {escape(str(error))}", border_style="red"))
    raise typer.Exit(code=_exit_code(error))


def _options(ctx: typer.Context) -> dict:
    return ctx.ensure_object(dict)


def _workspace(ctx: typer.Context):
    """The workspace named by --workspace; exits with code 2 when it is unusable."""
    from config.workspace import load_workspace

    opts = _options(ctx)
    path = opts.get("workspace")
    if path is None:
        console.print("[bold red]--workspace is required for this command[/bold red]")
        raise typer.Exit(code=EXIT_USAGE)
    ws, msg = load_workspace(path)
    if ws is None:
        console.print(Panel(f"[bold red]workspace invalid[/bold red]: {escape(msg)}", border_style="red"))
        raise typer.Exit(code=EXIT_CONFIG)
    return ws


def _seed(ctx: typer.Context, ws) -> int:
    seed = _options(ctx).get("seed")
    return ws.config.seed if seed is None else seed


def _snapshot(ctx: typer.Context, ws, **flags) -> dict:
    opts = _options(ctx)
    return {
        "workspace": ws.config.model_dump(),
        "workspace_path": str(opts.get("workspace")),
        "threads": opts.get("threads"),
        **flags,
    }


def _writer(ctx: typer.Context, stem: str, command: str, config: dict):
    from utils.records import RecordWriter

    return RecordWriter(_options(ctx)["out"], stem, command, config)


@app.callback()
def main_options(
    ctx: typer.Context,
    workspace: Optional[Path] = typer.Option(None, "--workspace", "-w", help="Workspace JSON file"),
    seed: Optional[int] = typer.Option(None, "--seed", min=0, max=2**64 - 1, help="Master seed (u64)"),
    out: Optional[Path] = typer.Option(None, "--out", help="Directory for CSV tables and JSON records"),
    threads: Optional[int] = typer.Option(None, "--threads", min=1, help="Worker threads; never changes output"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Logging level"),
) -> None:
    """Global options shared by every command."""
    configure_logging(log_level)
    ctx.obj = {
        "workspace": workspace,
        "seed": seed,
        "out": out or default_out_dir(),
        "threads": threads or default_threads(),
    }


# ---------------------------------------------------------------------------
# eval / selftest
# ---------------------------------------------------------------------------


@app.command(name="eval")
def eval_cmd(
    ctx: typer.Context,
    expr: str = typer.Argument(help='Product such as "u5 * b" or a word literal'),
) -> None:
    """Print the canonical word, length and ℏ of an expression."""
    ws = _workspace(ctx)
    try:
        g = ws.group.evaluate(expr)
    except ZnTreeError as e:
        _fail(e)
    typer.echo(f"word: {g.word}")
    typer.echo(f"length: {g.length}")
    typer.echo(f"hbar: {g.hbar}")


@app.command()
def selftest(
    ctx: typer.Context,
    full: bool = typer.Option(False, "--full", help="Run at the acceptance scale"),
    suite: Optional[list[str]] = typer.Option(None, "--suite", "-s", help="Run only these suites"),
) -> None:
    """Run the oracle and invariant suites and print a report hash."""
    from config.settings import WORKSPACE_DIR
    from config.workspace import load_workspace
    from graphs.selftest_graph import SuitePlan, run_selftest
    from pydantic import ValidationError

    opts = _options(ctx)
    paths = [WORKSPACE_DIR / f"{name}.json" for name in ("free_ab", "not_min", "z")]
    if opts.get("workspace") is not None:
        paths.append(Path(opts["workspace"]))
    for path in paths:
        ws, msg = load_workspace(path)
        if ws is None:
            console.print(Panel(f"[bold red]workspace invalid[/bold red]: {escape(msg)}", border_style="red"))
            raise typer.Exit(code=EXIT_CONFIG)

    seed = opts.get("seed")
    try:
        plan = SuitePlan(scale="full" if full else "reduced", suites=suite or [], **({} if seed is None else {"seed": seed}))
    except ValidationError as e:
        console.print(f"[bold red]{e.errors()[0]['msg']}[/bold red]")
        raise typer.Exit(code=EXIT_USAGE)

    with console.status(f"[bold green]Running {len(plan.suites) or 'all'} suites at {plan.scale} scale..."):
        result = run_selftest(plan)

    table = Table(title="Self-test", show_lines=False)
    table.add_column("Suite", style="cyan")
    table.add_column("Result")
    table.add_column("Checked", justify="right")
    table.add_column("Detail", style="white")
    for r in result["reports"]:
        verdict = "[green]PASS[/green]" if r["passed"] else "[red]FAIL[/red]"
        table.add_row(r["suite"], verdict, str(r["checked"]), escape(r["detail"]))
    console.print(table)

    writer = _writer(ctx, f"selftest-{plan.scale}-{plan.seed}", "selftest", plan.model_dump())
    writer.table(
        "suites",
        ["suite", "passed", "checked", "violations", "detail"],
        [[r["suite"], r["passed"], r["checked"], r["violations"], r["detail"]] for r in result["reports"]],
    )
    writer.close()

    status = result["status"]
    color = "green" if status == "complete" else "red"
    console.print(Panel(f"[bold {color}]{status.upper()}[/bold {color}]", title="Result", border_style=color))
    typer.echo(f"report hash: {result['report_hash']}")
    if status != "complete":
        raise typer.Exit(code=EXIT_EXPERIMENT)


# ---------------------------------------------------------------------------
# walk run
# ---------------------------------------------------------------------------


@walk_app.command("run")
def walk_run(
    ctx: typer.Context,
    measure: Optional[Path] = typer.Option(None, "--measure", help="JSON {expression: weight}; default from workspace"),
    steps: int = typer.Option(DEFAULT_STEPS, "--steps", min=1),
    walks: int = typer.Option(DEFAULT_WALKS, "--walks", min=1),
    depth: int = typer.Option(DEFAULT_CONE_DEPTH, "--depth", min=1, help="Cone table depth"),
    s_evidence: bool = typer.Option(False, "--s-evidence", help="Also search every path for an S-subsequence"),
) -> None:
    """Run an ensemble, tabulate cone masses and stationarity residuals."""
    from config.workspace import load_measure
    from graphs.walk_graph import run_walk_experiment

    ws = _workspace(ctx)
    seed = _seed(ctx, ws)
    mu = ws.measure
    if measure is not None:
        mu, msg = load_measure(measure, ws.group)
        if mu is None:
            console.print(Panel(f"[bold red]measure invalid[/bold red]: {escape(msg)}", border_style="red"))
            raise typer.Exit(code=EXIT_CONFIG)

    console.print(Panel(
        f"[bold cyan]{walks} walks x {steps} steps[/bold cyan] on {ws.config.name}, seed {seed}\nμ = {mu}",
        title="Walk experiment",
        border_style="blue",
    ))
    with console.status("[bold green]Sampling walks..."):
        result = run_walk_experiment(mu, walks, steps, seed, depth, _options(ctx)["threads"], s_evidence)

    writer = _writer(
        ctx,
        f"walk-{ws.config.name}-{seed}",
        "walk run",
        _snapshot(ctx, ws, seed=seed, steps=steps, walks=walks, depth=depth, s_evidence=s_evidence, measure=str(mu)),
    )
    outcomes = result["outcomes"]
    if outcomes:
        writer.table(
            "walks",
            ["walk", "seed", "steps", "final_length", "drift", "hbar_final", "hbar_max",
             "end_type", "conclusive", "stable_depth", "s_picks", "note"],
            [
                [o.walk_index, seed, o.steps, o.final_length, o.drift, o.hbar_final, o.hbar_max,
                 o.end_type, o.conclusive, o.stable_depth, o.s_picks, o.note]
                for o in outcomes
            ],
        )
    cones = result["cones"]
    if cones is not None:
        writer.table(
            "cones",
            ["apex", "depth", "mass", "std_error"],
            [[w, w.length, p, cones.std_error(w)] for w, p in cones.table.items()],
        )
    if result["residuals"]:
        writer.table(
            "residuals",
            ["apex", "observed", "predicted", "residual", "std_error"],
            [[r.apex, r.observed, r.predicted, r.residual, r.std_error] for r in result["residuals"]],
        )
    record = writer.close()

    for line in result["execution_results"]:
        console.print(f"  - {escape(line)}")
    if outcomes:
        mean = sum(o.drift for o in outcomes) / len(outcomes)
        typer.echo(f"mean drift: {format_float(mean)}")
    typer.echo(f"record: {record}")
    if result["status"] != "complete":
        console.print(Panel("[bold red]FAILED[/bold red]", border_style="red"))
        raise typer.Exit(code=EXIT_EXPERIMENT)


# ---------------------------------------------------------------------------
# tree explore
# ---------------------------------------------------------------------------


@tree_app.command("explore")
def tree_explore(
    ctx: typer.Context,
    depth: Optional[int] = typer.Option(None, "--depth", min=0, help="Ball radius; default from workspace"),
) -> None:
    """Materialize a ball and print the class histogram as CSV."""
    from boundary.tree_of_trees import TreeOfTrees, format_key
    from utils.records import render_csv

    ws = _workspace(ctx)
    radius = ws.config.explore_depth if depth is None else depth
    try:
        with console.status(f"[bold green]Exploring the ball of radius {radius}..."):
            tree = TreeOfTrees.explore(ws.group, radius, _options(ctx)["threads"])
    except ZnTreeError as e:
        _fail(e)

    histogram = sorted(tree.level_histogram().items())
    writer = _writer(ctx, f"tree-{ws.config.name}-{radius}", "tree explore", _snapshot(ctx, ws, depth=radius))
    writer.table("histogram", ["level", "classes"], histogram)
    writer.table(
        "classes",
        ["level", "index", "key", "anchor", "parent", "vertices"],
        [
            [c.level, c.index, format_key(c.key), c.anchor, format_key(c.parent) if c.parent else "", c.vertices]
            for c in tree.classes()
        ],
    )
    writer.close()

    typer.echo(render_csv(["level", "classes"], histogram), nl=False)
    typer.echo(f"gluing_count,{tree.gluing_count()}")


# ---------------------------------------------------------------------------
# metric pair
# ---------------------------------------------------------------------------


@metric_app.command("pair")
def metric_pair(
    ctx: typer.Context,
    x: str = typer.Argument(help='Vertex word, "@end_name" or "base | tail"'),
    y: str = typer.Argument(help='Vertex word, "@end_name" or "base | tail"'),
    depth: Optional[int] = typer.Option(None, "--depth", min=0, help="Exploration radius; default from workspace"),
) -> None:
    """Print dbar(x, y) with the enumeration trace used."""
    from boundary.compactification import d_ultra, gromov
    from boundary.tree_of_trees import TreeOfTrees, dbar_trace, format_key
    from config.workspace import parse_point

    ws = _workspace(ctx)
    radius = ws.config.explore_depth if depth is None else depth
    try:
        p, q = parse_point(x, ws), parse_point(y, ws)
        tree = TreeOfTrees.explore(ws.group, radius, _options(ctx)["threads"])
        result = dbar_trace(p, q, tree)
    except ZnTreeError as e:
        _fail(e)
    product = ultra = None
    if result.value:
        try:
            product = gromov(p, q)
            ultra = d_ultra(p, q)
        except BoundaryError:
            pass  # product not in one Z-subtree

    writer = _writer(ctx, f"metric-{ws.config.name}", "metric pair", _snapshot(ctx, ws, x=x, y=y, depth=radius))
    writer.table(
        "pair",
        ["x", "y", "gromov", "d_ultra", "dbar", "error_bound"],
        [[x, y, product, ultra, result.value, result.error_bound]],
    )
    writer.table(
        "trace",
        ["class", "level", "index", "factor", "inner"],
        [[format_key(t.key), t.level, t.index, t.factor, t.inner] for t in result.trace],
    )
    writer.close()

    if result.trace:
        table = Table(title="Enumeration trace")
        for col in ("class", "level", "index", "factor", "inner"):
            table.add_column(col)
        for t in result.trace:
            table.add_row(format_key(t.key), str(t.level), str(t.index), format_float(t.factor), format_float(t.inner))
        console.print(table)
    if product is not None:
        typer.echo(f"gromov: {product}")
    if ultra is not None:
        typer.echo(f"d_ultra: {format_float(ultra)}")
    typer.echo(f"dbar: {format_float(result.value)}")
    typer.echo(f"error_bound: {format_float(result.error_bound)}")


# ---------------------------------------------------------------------------
# strip count
# ---------------------------------------------------------------------------


@strip_app.command("count")
def strip_count_cmd(
    ctx: typer.Context,
    end_a: str = typer.Option(..., "--end-a", help='"@end_name" or "base | tail"'),
    end_b: str = typer.Option(..., "--end-b", help='"@end_name" or "base | tail"'),
    kmax: int = typer.Option(DEFAULT_STRIP_KMAX, "--kmax", min=1),
) -> None:
    """Count S(a, b) inside word-metric balls of radius 1..kmax."""
    from boundary.ends import BoundaryPoint
    from config.workspace import parse_point
    from walks.strips import strip_count

    ws = _workspace(ctx)
    try:
        a, b = parse_point(end_a, ws), parse_point(end_b, ws)
        if not isinstance(a, BoundaryPoint) or not isinstance(b, BoundaryPoint):
            raise ConfigurationError("--end-a and --end-b must name ends, not vertices")
        with console.status(f"[bold green]Counting strips up to k={kmax}..."):
            counts = strip_count(ws.group, a, b, kmax, _options(ctx)["threads"])
    except ZnTreeError as e:
        _fail(e)

    rows = [[r.k, r.count, r.hbar_count, r.criterion] for r in counts.rows]
    writer = _writer(
        ctx, f"strip-{ws.config.name}-{kmax}", "strip count", _snapshot(ctx, ws, end_a=end_a, end_b=end_b, kmax=kmax)
    )
    writer.table("counts", ["k", "count", "hbar_count", "criterion"], rows)
    writer.close()

    table = Table(title=f"S({a}, {b})")
    for col in ("k", "count", "ℏ-filtered", "(1/k) log count"):
        table.add_column(col, justify="right")
    for r in counts.rows:
        table.add_row(str(r.k), str(r.count), str(r.hbar_count), format_float(r.criterion))
    console.print(table)
    typer.echo(f"counts: {','.join(str(c) for c in counts.counts())}")
    typer.echo(f"slope: {format_float(counts.slope)}")


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def main(argv: Optional[list[str]] = None) -> int:
    """Run the CLI and map outcomes to exit codes (usage errors become 64)."""
    try:
        rv = app(args=argv, prog_name="zntree", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_CONFIG
    except click.Abort:
        return EXIT_EXPERIMENT
    except ExperimentAbortedError as e:
        console.print(f"[bold red]aborted[/bold red]: {e}")
        return EXIT_EXPERIMENT
    except ZnTreeError as e:
        console.print(f"[bold red]{type(e).__name__}[/bold red]: {e}")
        return _exit_code(e)
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
