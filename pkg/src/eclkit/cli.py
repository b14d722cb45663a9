"""eclkit CLI - discrete gradient integrators with energy conservation law audits."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from . import __version__

app = typer.Typer(
    name="eclkit",
    help="Discrete gradient integrators for conservative PDEs with local ECL audits.",
    no_args_is_help=True,
)
console = Console()
err_console = Console(stderr=True)

# Exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3

# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _fail(message: str, code: int) -> typer.Exit:
    err_console.print(f"[red]Error: {message}[/red]")
    return typer.Exit(code)


def _load_config(config_path: Path):
    """Load and validate an experiment config, exiting with code 2 on errors."""
    from .config import ExperimentConfig
    from .errors import ConfigError

    try:
        return ExperimentConfig.load(config_path).validate()
    except ConfigError as e:
        raise _fail(str(e), EXIT_CONFIG)


# ---------------------------------------------------------------------------
# run command
# ---------------------------------------------------------------------------


@app.command()
def run(
    config_path: Path = typer.Argument(..., help="Experiment config (YAML)"),
    output_dir: Optional[Path] = typer.Option(
        None,
        "--output-dir",
        "-o",
        help="Directory for the CSV summary and the report (overrides output.directory)",
    ),
    format: Optional[str] = typer.Option(
        None,
        "--format",
        "-f",
        help="Report format: 'json' (default), 'yaml', or 'markdown'",
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Print solver warnings"),
):
    """Run a simulation, audit every step and write CSV + report."""
    from rich.progress import Progress

    from .errors import ConfigError, SolverError
    from .integrate.simulation import run_simulation
    from .output import FORMATS, get_writer
    from .output.csv_fmt import TRAJECTORY_COLUMNS, write_csv
    from .output.report import build_run_report

    cfg = _load_config(config_path)
    cfg.verbose = cfg.verbose or verbose
    fmt_name = format or cfg.output.format
    if fmt_name not in FORMATS:
        raise _fail(
            f"Unknown format: '{fmt_name}'. Valid formats: {', '.join(FORMATS)}", EXIT_CONFIG
        )
    out_dir = output_dir or Path(cfg.output.directory)

    try:
        model = cfg.build_model()
        scheme = cfg.build_scheme(model)
        z0 = cfg.build_initial(model)
        step_cfg = cfg.build_step_config()
    except (ConfigError, ValueError) as e:
        raise _fail(str(e), EXIT_CONFIG)

    n_steps = cfg.time.n_steps
    console.print(
        Panel(
            f"[bold]eclkit[/bold] v{__version__}\n"
            f"Model: [cyan]{model.describe()}[/cyan] | dx: {model.grid.dx:g}\n"
            f"Scheme: [cyan]{scheme.describe()}[/cyan] | Method: [cyan]{cfg.time.method}[/cyan]\n"
            f"dt: {step_cfg.dt:g} | Steps: {n_steps} | Solver: {step_cfg.solver} "
            f"(tol {step_cfg.tol:.0e})",
            title="Run",
        )
    )

    error: Optional[SolverError] = None
    with Progress(console=err_console, transient=True) as progress:
        task = progress.add_task("Stepping", total=n_steps)
        try:
            traj = run_simulation(
                model,
                scheme,
                z0,
                n_steps,
                step_cfg,
                method=cfg.time.method,
                on_step=lambda _: progress.advance(task),
            )
        except SolverError as e:
            error = e
            traj = e.trajectory

    marker = f"FAILED at step {error.step}: {error.reason}" if error is not None else None
    csv_path = write_csv(traj.rows(), TRAJECTORY_COLUMNS, out_dir / cfg.output.csv, marker=marker)
    console.print(f"  Wrote: [green]{csv_path}[/green] ({traj.n_steps + 1} rows)")
    report = build_run_report(
        cfg.to_dict(), model, scheme, traj, error=str(error) if error is not None else None
    )
    get_writer(fmt_name).write_report(report, out_dir, cfg.output.report)

    summary = Table(title="Summary")
    summary.add_column("Quantity")
    summary.add_column("Value", justify="right")
    for key, value in report["summary"].items():
        summary.add_row(key, f"{value:.6g}" if isinstance(value, float) else str(value))
    console.print(summary)

    if error is not None:
        raise _fail(str(error), EXIT_SOLVER)
    console.print("\n[green bold]Done![/green bold]")


# ---------------------------------------------------------------------------
# check command
# ---------------------------------------------------------------------------


@app.command()
def check():
    """Run the built-in property suites (axiom, partials, product rule, skewness, ECL)."""
    from .selfcheck import run_selfcheck

    results = run_selfcheck()
    table = Table(title="Self-check")
    table.add_column("Suite")
    table.add_column("Result")
    table.add_column("Detail")
    for r in results:
        verdict = "[green]pass[/green]" if r.passed else "[red]FAIL[/red]"
        table.add_row(r.name, verdict, r.detail)
    console.print(table)

    failed = [r.name for r in results if not r.passed]
    if failed:
        raise _fail(f"failing suites: {', '.join(failed)}", EXIT_CHECK_FAILED)
    console.print("[green bold]All suites passed.[/green bold]")


# ---------------------------------------------------------------------------
# sweep command
# ---------------------------------------------------------------------------


@app.command()
def sweep(
    config_path: Path = typer.Argument(..., help="Base experiment config (YAML)"),
    dt: Optional[list[float]] = typer.Option(None, "--dt", help="Time step (repeatable)"),
    n: Optional[list[int]] = typer.Option(
        None, "--n", help="Grid size N (repeatable, default: the config's)"
    ),
    scheme: Optional[list[str]] = typer.Option(
        None, "--scheme", help="Discrete gradient scheme (repeatable, default: the config's)"
    ),
    final_time: Optional[float] = typer.Option(
        None, "--final-time", help="Final time (default: n_steps * dt from the config)"
    ),
    output: Path = typer.Option(Path("sweep.csv"), "--output", "-o", help="Sweep CSV path"),
):
    """Run the cross product of dt, N and scheme values; one CSV row per cell."""
    from rich.progress import Progress

    from .dgrad import SCHEMES
    from .errors import ConfigError
    from .output.csv_fmt import SWEEP_COLUMNS, write_csv
    from .sweep import run_sweep, sweep_cells, sweep_threads

    cfg = _load_config(config_path)
    dts = list(dt or [])
    ns = list(n or [cfg.grid.n_points])
    schemes = list(scheme or [cfg.scheme.name])
    for name in schemes:
        if name != "auto" and name not in SCHEMES:
            raise _fail(
                f"Unknown scheme '{name}'. Valid schemes: auto, {', '.join(SCHEMES)}", EXIT_CONFIG
            )
    try:
        cells = sweep_cells(ns, dts, schemes)
    except ConfigError as e:
        raise _fail(str(e), EXIT_CONFIG)
    if any(x <= 0 for x in dts) or any(x < 3 for x in ns):
        raise _fail("--dt values must be positive and --n values at least 3", EXIT_CONFIG)

    console.print(
        Panel(
            f"[bold]eclkit[/bold] v{__version__}\n"
            f"Model: [cyan]{cfg.model.name}[/cyan] | Cells: {len(cells)} "
            f"| Threads: {sweep_threads()}\n"
            f"dt: {', '.join(f'{x:g}' for x in dts)} | N: {', '.join(map(str, ns))} "
            f"| Schemes: {', '.join(schemes)}",
            title="Sweep",
        )
    )

    try:
        with Progress(console=err_console, transient=True) as progress:
            task = progress.add_task("Cells", total=len(cells))
            rows = run_sweep(
                cfg, ns, dts, schemes, final_time, on_cell=lambda: progress.advance(task)
            )
    except ConfigError as e:
        raise _fail(str(e), EXIT_CONFIG)

    write_csv(rows, SWEEP_COLUMNS, output)
    console.print(f"  Wrote: [green]{output}[/green] ({len(rows)} rows)")
    _print_csv_table(output)

    if all(r["status"] != "ok" for r in rows):
        raise _fail("every sweep cell failed", EXIT_SOLVER)


# ---------------------------------------------------------------------------
# table command
# ---------------------------------------------------------------------------


def _print_csv_table(path: Path) -> None:
    from .output.csv_fmt import read_csv
    from .sweep import convergence_slopes

    columns, rows = read_csv(path)
    table = Table(title=str(path))
    for c in columns:
        table.add_column(c, justify="right")
    for row in rows:
        table.add_row(*[row.get(c, "") for c in columns])
    console.print(table)

    if "global_error" in columns:
        slopes = convergence_slopes(rows)
        if slopes:
            st = Table(title="Convergence (log-log slope of global error vs dt)")
            st.add_column("N", justify="right")
            st.add_column("Scheme")
            st.add_column("Slope", justify="right")
            for (n_points, scheme_name), slope in sorted(slopes.items()):
                st.add_row(str(n_points), scheme_name, f"{slope:.3f}")
            console.print(st)


@app.command()
def table(csv_path: Path = typer.Argument(..., help="Trajectory or sweep CSV")):
    """Print a CSV as a table; sweep CSVs also get convergence slopes."""
    if not csv_path.exists():
        raise _fail(f"CSV file not found: {csv_path}", EXIT_CONFIG)
    _print_csv_table(csv_path)


# ---------------------------------------------------------------------------
# models command
# ---------------------------------------------------------------------------


@app.command()
def models():
    """List the built-in models and their parameters."""
    from .models import list_models

    tbl = Table(title="Built-in models")
    tbl.add_column("Name", style="cyan")
    tbl.add_column("Kind")
    tbl.add_column("Equation")
    tbl.add_column("Parameters (defaults)")
    for entry in list_models():
        params = ", ".join(f"{k}={v}" for k, v in entry.defaults.items())
        tbl.add_row(entry.name, entry.kind.value, entry.description, params)
    console.print(tbl)


# ---------------------------------------------------------------------------
# version command
# ---------------------------------------------------------------------------


@app.command()
def version():
    """Show version information."""
    console.print(f"eclkit v{__version__}")


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def main():
    app()


if __name__ == "__main__":
    main()
