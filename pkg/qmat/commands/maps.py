"""
Commands around the embedding theta and the gradings.

Commands:
- `theta`: image of an element of O_q(M_{m,n}) in O_q(k^m) (x) O_q(k^n).
- `coinv`: coinvariant test for a tensor element (y[i], z[j] syntax), with
  `--preimage` printing x such that theta(x) is the element.
- `weights`: torus weight of every term of a matrix element, or with
  `--gamma` the coaction weight of every term of a tensor element.
"""
import typer

from qmat.maps import (
    bidegree,
    coinvariant_check,
    coinvariant_preimage,
    gamma_weight,
    h_weight,
    tensor_algebra,
    theta as theta_map,
)
from qmat.ncalg import quantum_matrix
from qmat.parser import parse
from qmat.utils import (
    check_format,
    emit,
    get_settings,
    render_poly,
    reporting_errors,
)


def theta(
    ctx: typer.Context,
    expression: str = typer.Argument(..., help="Element of O_q(M_{m,n})"),
) -> None:
    """
    Print theta of an element.

    Example:
        qmat --m 2 --n 2 theta "X[2,1]*X[1,2]"
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        p = parse(expression, quantum_matrix(settings.m, settings.n))
        emit(render_poly(theta_map(p), settings), settings)


def coinv(
    ctx: typer.Context,
    expression: str = typer.Argument(
        ..., help="Tensor element, e.g. 'y[1]*z[1] + y[2]'"
    ),
    preimage: bool = typer.Option(
        False, "--preimage", help="Also print the preimage under theta"
    ),
) -> None:
    """
    Decide whether a tensor element is a coinvariant.

    Example:
        qmat --m 2 --n 2 coinv --preimage "y[2]*y[1]*z[1]*z[2]"
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        algebra = tensor_algebra(settings.m, settings.n)
        p = parse(expression, algebra)
        report = coinvariant_check(p)
        witness = report.witness
        if settings.output_format == "json":
            payload = {
                "coinvariant": report.ok,
                "witness": (
                    algebra.word_json(witness) if witness is not None else None
                ),
            }
            if preimage:
                payload["preimage"] = render_poly(
                    coinvariant_preimage(p), settings
                )
            emit(payload, settings)
            return
        if report.ok:
            typer.echo("coinvariant")
            if preimage:
                typer.echo(render_poly(coinvariant_preimage(p), settings))
        else:
            text = algebra.word_text(witness or ()) or "1"
            typer.echo(
                f"not coinvariant: {text} has weight "
                f"{gamma_weight(algebra, witness or ())}"
            )
            if preimage:
                coinvariant_preimage(p)


def weights(
    ctx: typer.Context,
    expression: str = typer.Argument(..., help="Element to weigh"),
    gamma: bool = typer.Option(
        False,
        "--gamma",
        help="Read a tensor element and print z-degree minus y-degree",
    ),
) -> None:
    """
    Print the weight of every term of an element.

    Example:
        qmat --m 2 --n 2 weights "X[1,1]*X[2,2] - q*X[1,2]*X[2,1]"
    """
    settings = get_settings(ctx)
    with reporting_errors():
        check_format(settings)
        if gamma:
            algebra = tensor_algebra(settings.m, settings.n)
        else:
            algebra = quantum_matrix(settings.m, settings.n)
        p = parse(expression, algebra)
        rows = []
        for word, _ in p.items():
            entry = {"word": algebra.word_json(word)}
            if gamma:
                r, s = bidegree(algebra, word)
                entry.update(
                    {"bidegree": [r, s], "gamma": gamma_weight(algebra, word)}
                )
            else:
                entry.update(h_weight(algebra, word).to_json())
            rows.append((word, entry))
        if settings.output_format == "json":
            emit([entry for _, entry in rows], settings)
            return
        for word, entry in rows:
            text = algebra.word_text(word) or "1"
            if gamma:
                typer.echo(f"{text}: gamma {entry['gamma']}")
            else:
                typer.echo(
                    f"{text}: rows {tuple(entry['rows'])} "
                    f"cols {tuple(entry['cols'])}"
                )
