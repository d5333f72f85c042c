"""
Torus-invariant prime commands.

Commands (`hprimes` group):
- `list`: every P(I, J) with its id, label and generator count.
- `count`: number of H-primes containing I_1, (2^m - 1)(2^n - 1) + 1.
- `hasse`: covering relations, as text, JSON or DOT.

Top-level commands defined here:
- `commutator`: the scalars alpha, beta for X[i,j], X[s,t].
- `iso-check`: the quotient presentation check for one pair (I, J).
"""
from typing import Optional

import typer
from rich.console import Console
from rich.table import Table

from qmat.hspec import (
    IdealPair,
    enumerate_hprimes,
    hasse_diagram,
    p_ideal_generators,
    quotient_iso_check,
    scalar_commutator,
)
from qmat.ncalg import quantum_matrix
from qmat.utils import (
    check_format,
    emit,
    get_settings,
    parse_index_list,
    render_scalar,
    reporting_errors,
)

app = typer.Typer(
    no_args_is_help=True,
    help="Enumerate the H-primes of O_q(M_{m,n}) containing I_1.",
)
console = Console()


@app.command("list")
def list_hprimes(ctx: typer.Context) -> None:
    """
    List every H-prime P(I, J) containing I_1.
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        pairs = enumerate_hprimes(settings.m, settings.n)
        if settings.output_format == "json":
            emit(
                [
                    {**p.to_json(), "generators": len(p_ideal_generators(p))}
                    for p in pairs
                ],
                settings,
            )
            return
        table = Table(title=f"H-primes of O_q(M_{settings.m},{settings.n})")
        table.add_column("Id", style="cyan", no_wrap=True)
        table.add_column("I", style="green")
        table.add_column("J", style="green")
        table.add_column("Label")
        table.add_column("Generators", justify="right")
        for p in pairs:
            table.add_row(
                p.node_id,
                ",".join(map(str, p.rows)) or "-",
                ",".join(map(str, p.cols)) or "-",
                p.label.replace("\n", "/"),
                str(len(p_ideal_generators(p))),
            )
        console.print(table)


@app.command()
def count(ctx: typer.Context) -> None:
    """
    Print the number of H-primes containing I_1.

    Example:
        qmat --m 2 --n 2 hprimes count
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        emit(len(enumerate_hprimes(settings.m, settings.n)), settings)


@app.command()
def hasse(ctx: typer.Context) -> None:
    """
    Print the Hasse diagram of the H-primes (use --format dot for DOT).

    Example:
        qmat --m 2 --n 2 --format dot hprimes hasse
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings, ("text", "json", "dot"))
        diagram = hasse_diagram(settings.m, settings.n, settings.hasse_cap)
        settings.status(
            f"{len(diagram.nodes)} nodes, {len(diagram.edges)} edges"
        )
        if settings.output_format == "dot":
            typer.echo(diagram.to_dot(), nl=False)
        elif settings.output_format == "json":
            emit(diagram.to_json(), settings)
        else:
            for a, b in diagram.edges:
                typer.echo(f"{a.node_id} -> {b.node_id}")


def commutator(
    ctx: typer.Context,
    i: int = typer.Argument(..., help="Row of the first generator"),
    j: int = typer.Argument(..., help="Column of the first generator"),
    s: int = typer.Argument(..., help="Row of the second generator"),
    t: int = typer.Argument(..., help="Column of the second generator"),
) -> None:
    """
    Print alpha and beta with X[i,j]X[s,t] = alpha X[s,t]X[i,j] and
    X[i,j]X[s,t] = beta X[i,t]X[s,j] modulo I_1.

    Example:
        qmat commutator 1 1 2 2
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        algebra = quantum_matrix(settings.m, settings.n)
        algebra.index(i, j)
        algebra.index(s, t)
        scalars = scalar_commutator(i, j, s, t)
        alpha = render_scalar(scalars.alpha, settings)
        beta = render_scalar(scalars.beta, settings)
        if settings.output_format == "json":
            emit({"alpha": alpha, "beta": beta}, settings)
        else:
            typer.echo(f"alpha = {alpha}")
            typer.echo(f"beta = {beta}")


def iso_check(
    ctx: typer.Context,
    rows: Optional[str] = typer.Option(
        "", "--rows", help="Killed rows I, e.g. 1"
    ),
    cols: Optional[str] = typer.Option(
        "", "--cols", help="Killed columns J, e.g. 2,3"
    ),
    relations: bool = typer.Option(
        True, "--relations/--no-relations", help="Also check g on relations"
    ),
) -> None:
    """
    Check the quotient presentation of P(I, J).

    Example:
        qmat --m 2 --n 3 iso-check --rows 2 --cols 3
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        pair = IdealPair.of(
            parse_index_list(rows),
            parse_index_list(cols),
            settings.m,
            settings.n,
        )
        report = quotient_iso_check(pair, relations)
        if settings.output_format == "json":
            emit(report.to_json(), settings)
        else:
            status = "pass" if report.passed else "FAIL"
            typer.echo(
                f"{pair.node_id}: O_q(M_{{{settings.m},{settings.n}}})/P "
                f"~ O_q(M_{{{report.m_prime},{report.n_prime}}})/I_1' "
                f"[{status}]"
            )
        if not report.passed:
            raise typer.Exit(1)
