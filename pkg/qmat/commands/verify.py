"""
Verification commands: exact linear algebra and property sweeps.

Commands:
- `pbw`, `theta-kernel`, `s-basis`, `coinv`, `specialization`: one report
  per degree 0..--max-degree for the global --m/--n.
- `lemma33` (alias `commutation`), `iso`, `centrality`, `confluence`,
  `domain`: one report.
- `all`: run the plan in the YAML manifest, optionally on several workers.

Reports print as a Rich table (`--format text`) or one JSON object per line
(`--format json`). The exit code is 1 when any check fails.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional

import typer
import yaml
from rich.console import Console
from rich.table import Table

from qmat.exceptions import QmatError
from qmat.oracle import (
    CheckReport,
    expand_plan,
    run_entry,
    run_plan,
)
from qmat.utils import (
    Settings,
    check_format,
    emit,
    get_settings,
    parse_index_list,
    reporting_errors,
)

app = typer.Typer(
    no_args_is_help=True,
    help="Verify the structure theorems by exact computation.",
)
console = Console()


def show_reports(reports: List[CheckReport], settings: Settings) -> None:
    if settings.output_format == "json":
        for report in reports:
            emit(report.to_json(), settings)
    else:
        table = Table(title="Verification")
        table.add_column("Check", style="cyan", no_wrap=True)
        table.add_column("m", justify="right")
        table.add_column("n", justify="right")
        table.add_column("d", justify="right")
        table.add_column("Expected", justify="right")
        table.add_column("Got", justify="right")
        table.add_column("Result")
        for report in reports:
            table.add_row(
                report.check,
                str(report.m),
                str(report.n),
                "-" if report.d is None else str(report.d),
                str(report.expected),
                str(report.got),
                "[green]pass[/green]" if report.passed else "[red]FAIL[/red]",
            )
        console.print(table)
    if not all(report.passed for report in reports):
        raise typer.Exit(1)


def _run(ctx: typer.Context, entries: List[Dict[str, Any]]) -> None:
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        reports = []
        for entry in entries:
            settings.status(f"running {entry}")
            reports.append(run_entry(entry, settings.caps))
    show_reports(reports, settings)


def _degrees(ctx: typer.Context, check: str) -> None:
    settings = get_settings(ctx)
    _run(
        ctx,
        [
            {"check": check, "m": settings.m, "n": settings.n, "d": d}
            for d in range(settings.max_degree + 1)
        ],
    )


@app.command()
def pbw(ctx: typer.Context) -> None:
    """Normal forms of degree-d words span exactly the PBW words."""
    _degrees(ctx, "pbw")


@app.command("theta-kernel")
def theta_kernel(ctx: typer.Context) -> None:
    """ker(theta) equals the degree-d part of I_1."""
    _degrees(ctx, "theta-kernel")


@app.command("s-basis")
def s_basis(ctx: typer.Context) -> None:
    """theta has rank |S| in each degree and is injective on S."""
    _degrees(ctx, "s-basis")


@app.command()
def coinv(
    ctx: typer.Context,
    bidegree: Optional[str] = typer.Option(
        None, "--bidegree", help="Check a single bidegree r,s instead"
    ),
) -> None:
    """Coinvariants equal the image of theta."""
    if bidegree is None:
        _degrees(ctx, "coinv")
        return
    settings = get_settings(ctx)
    with reporting_errors():
        r_s = parse_index_list(bidegree)
        if len(r_s) != 2:
            raise QmatError(f"--bidegree needs two integers, got {bidegree!r}")
    _run(
        ctx,
        [
            {
                "check": "coinv",
                "m": settings.m,
                "n": settings.n,
                "d": max(r_s),
                "bidegree": list(r_s),
            }
        ],
    )


@app.command()
def specialization(ctx: typer.Context) -> None:
    """Symbolic theta ranks equal ranks at a random rational q."""
    settings = get_settings(ctx)
    seed = int(settings.config.get("seed", 1997))
    _run(
        ctx,
        [
            {
                "check": "specialization",
                "m": settings.m,
                "n": settings.n,
                "d": d,
                "seed": seed,
            }
            for d in range(settings.max_degree + 1)
        ],
    )


@app.command("lemma33")
@app.command("commutation")
def commutation(ctx: typer.Context) -> None:
    """alpha and beta scalars for every pair of generators."""
    settings = get_settings(ctx)
    _run(ctx, [{"check": "lemma33", "m": settings.m, "n": settings.n}])


@app.command()
def iso(ctx: typer.Context) -> None:
    """Quotient presentation of every non-maximal P(I, J)."""
    settings = get_settings(ctx)
    _run(ctx, [{"check": "iso", "m": settings.m, "n": settings.n}])


@app.command()
def centrality(ctx: typer.Context) -> None:
    """The quantum determinant of O_q(M_n) is central (uses --n)."""
    settings = get_settings(ctx)
    _run(ctx, [{"check": "centrality", "n": settings.n}])


@app.command()
def confluence(
    ctx: typer.Context,
    samples: Optional[int] = typer.Option(
        None, "--samples", help="Random words (default: fuzz_samples)"
    ),
    max_length: int = typer.Option(6, "--max-length", help="Longest word"),
) -> None:
    """Leftmost and rightmost rewriting agree on random words."""
    settings = get_settings(ctx)
    _run(
        ctx,
        [
            {
                "check": "confluence",
                "m": settings.m,
                "n": settings.n,
                "samples": samples
                or int(settings.config.get("fuzz_samples", 1000)),
                "max_length": max_length,
                "seed": int(settings.config.get("seed", 1997)),
            }
        ],
    )


@app.command()
def domain(
    ctx: typer.Context,
    samples: int = typer.Option(500, "--samples", help="Random pairs"),
) -> None:
    """Products of nonzero elements modulo I_1 are nonzero."""
    settings = get_settings(ctx)
    _run(
        ctx,
        [
            {
                "check": "domain",
                "m": settings.m,
                "n": settings.n,
                "samples": samples,
                "max_degree": 3,
                "seed": int(settings.config.get("seed", 1997)),
            }
        ],
    )


@app.command("all")
def run_all(
    ctx: typer.Context,
    manifest: Path = typer.Option(
        Path("manifest.yaml"), "--manifest", help="YAML verification plan."
    ),
    jobs: Optional[int] = typer.Option(
        None, "--jobs", "-j", help="Worker processes (default: config jobs)"
    ),
) -> None:
    """
    Run every check listed in the manifest.

    The manifest holds a `checks` list; list-valued fields expand into one
    entry per combination:

        checks:
          - check: theta-kernel
            m: [1, 2, 3]
            n: [1, 2, 3]
            d: [0, 1, 2, 3, 4]
    """
    settings = get_settings(ctx)
    if not manifest.exists():
        console.print(f"[red]Manifest not found: {manifest}[/red]")
        raise typer.Exit(1)
    try:
        with open(manifest, "r") as f:
            plan_cfg = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        console.print(f"[red]Failed to load YAML manifest: {e}[/red]")
        raise typer.Exit(1)

    with reporting_errors():
        check_format(settings)
        plan = expand_plan(plan_cfg)
        workers = jobs or int(settings.config.get("jobs", 1))
        settings.status(f"{len(plan)} checks on {workers} worker(s)")
        reports = run_plan(plan, workers, settings.caps)
    show_reports(reports, settings)
