"""
Element commands on O_q(M_{m,n}).

Commands:
- `nf`: parse an expression and print its PBW normal form.
- `nf-mod-i1`: print the S-word representative modulo I_1.
- `minor`: print the quantum minor on `--rows` and `--cols`.
- `det`: print the quantum determinant (square shapes only).

All of them honour the global `--m`, `--n`, `--format` and `--q` options.
"""
import typer

from qmat.detid import (
    MinorSpec,
    quantum_determinant,
    quantum_minor,
    reduce_by_cases,
    reduce_mod_i1,
)
from qmat.ncalg import STRATEGIES, normal_form, quantum_matrix
from qmat.parser import parse
from qmat.utils import (
    check_format,
    emit,
    get_settings,
    parse_index_list,
    render_poly,
    reporting_errors,
)


def nf(
    ctx: typer.Context,
    expression: str = typer.Argument(..., help="Element, e.g. 'X[2,2]*X[1,1]'"),
    strategy: str = typer.Option(
        "leftmost", "--strategy", help="Rewriting order: leftmost|rightmost"
    ),
) -> None:
    """
    Print the PBW normal form of an element.

    Example:
        qmat --m 2 --n 2 nf "X[2,2]*X[1,1]"
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        if strategy not in STRATEGIES:
            raise typer.BadParameter(f"strategy must be one of {STRATEGIES}")
        algebra = quantum_matrix(settings.m, settings.n)
        settings.status(f"normal form in {algebra.describe()}")
        p = normal_form(parse(expression, algebra), strategy)
        emit(render_poly(p, settings), settings)


def nf_mod_i1(
    ctx: typer.Context,
    expression: str = typer.Argument(..., help="Element of O_q(M_{m,n})"),
    cases: bool = typer.Option(
        False, "--cases", help="Reduce by adjacent swaps instead of theta"
    ),
) -> None:
    """
    Print the representative modulo I_1 supported on S-words.

    Example:
        qmat --m 2 --n 2 nf-mod-i1 "X[1,1]*X[2,2]"
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        algebra = quantum_matrix(settings.m, settings.n)
        p = parse(expression, algebra)
        reduced = reduce_by_cases(p) if cases else reduce_mod_i1(p)
        emit(render_poly(reduced, settings), settings)


def minor(
    ctx: typer.Context,
    rows: str = typer.Option(..., "--rows", help="Row subset, e.g. 1,2"),
    cols: str = typer.Option(..., "--cols", help="Column subset, e.g. 1,3"),
) -> None:
    """
    Print a quantum minor.

    Example:
        qmat --m 2 --n 3 minor --rows 1,2 --cols 1,3
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        algebra = quantum_matrix(settings.m, settings.n)
        spec = MinorSpec(parse_index_list(rows), parse_index_list(cols))
        emit(render_poly(quantum_minor(algebra, spec), settings), settings)


def det(ctx: typer.Context) -> None:
    """
    Print the quantum determinant of O_q(M_n).

    Example:
        qmat --m 3 --n 3 det
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        algebra = quantum_matrix(settings.m, settings.n)
        emit(render_poly(quantum_determinant(algebra), settings), settings)
