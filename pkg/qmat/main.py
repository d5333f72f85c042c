"""
Entrypoint for CLI.

This is the main entry point for the qmat CLI application. Global options
select the algebra O_q(M_{m,n}) and the output form; commands compute normal
forms, reductions modulo I_1, theta images, coinvariants, H-primes and the
verification reports.
"""
from typing import Optional

import typer

from qmat.commands import algebra, config, hprimes, maps, verify
from qmat.utils import Settings, parse_rational, reporting_errors

app = typer.Typer(
    no_args_is_help=True,
    help="Exact computations in quantum m x n matrices.",
    rich_markup_mode="rich",
)
app.add_typer(config.app, name="config", help="manage configuration settings")
app.add_typer(hprimes.app, name="hprimes")
app.add_typer(verify.app, name="verify")

app.command("nf")(algebra.nf)
app.command("nf-mod-i1")(algebra.nf_mod_i1)
app.command("minor")(algebra.minor)
app.command("det")(algebra.det)
app.command("theta")(maps.theta)
app.command("coinv")(maps.coinv)
app.command("weights")(maps.weights)
app.command("commutator")(hprimes.commutator)
app.command("iso-check")(hprimes.iso_check)


@app.callback()
def main(
    ctx: typer.Context,
    m: int = typer.Option(2, "--m", help="Number of rows."),
    n: int = typer.Option(2, "--n", help="Number of columns."),
    max_degree: Optional[int] = typer.Option(
        None, "--max-degree", help="Degree cap (default: config max_degree)."
    ),
    output_format: Optional[str] = typer.Option(
        None, "--format", help="text, json or dot (default: config)."
    ),
    q: Optional[str] = typer.Option(
        None, "--q", help="Specialize q to this rational in outputs."
    ),
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Print progress on stderr."
    ),
) -> None:
    """
    Exact computations in quantum m x n matrices.
    """
    settings_cfg = config.effective_config()
    with reporting_errors():
        ctx.obj = Settings(
            m=m,
            n=n,
            max_degree=(
                max_degree
                if max_degree is not None
                else int(settings_cfg["max_degree"])
            ),
            output_format=output_format or str(settings_cfg["output_format"]),
            q=parse_rational(q) if q is not None else None,
            verbose=verbose,
            config=settings_cfg,
        )


def qmat():
    app()


if __name__ == "__main__":
    app()
