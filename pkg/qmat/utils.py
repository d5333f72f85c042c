"""
Utility functions for the CLI
"""
import json
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import typer
from rich.console import Console

from qmat.constants import DEFAULT_HASSE_CAP, OUTPUT_FORMATS
from qmat.exceptions import QmatError, ScalarError
from qmat.ncalg import NCPoly, PresentedAlgebra, specialize_poly
from qmat.oracle import OracleCaps
from qmat.scalar import LaurentScalar

# status and warnings; results go to stdout through `emit`
console = Console(stderr=True)


@dataclass
class Settings:
    """Global options of one invocation, stored on the Typer context."""

    m: int = 2
    n: int = 2
    max_degree: int = 4
    output_format: str = "text"
    q: Optional[Fraction] = None
    verbose: bool = False
    config: Dict[str, Any] = field(default_factory=dict)

    @property
    def caps(self) -> OracleCaps:
        return OracleCaps(
            int(self.config.get("max_m", OracleCaps.max_m)),
            int(self.config.get("max_n", OracleCaps.max_n)),
            self.max_degree,
        )

    @property
    def hasse_cap(self) -> int:
        return int(self.config.get("hasse_cap", DEFAULT_HASSE_CAP))

    def status(self, message: str) -> None:
        if self.verbose:
            console.print(f"[cyan]{message}[/cyan]")


def get_settings(ctx: typer.Context) -> Settings:
    if isinstance(ctx.obj, Settings):
        return ctx.obj
    return Settings()


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ScalarError(f"not a rational number: {text!r}") from exc
    if value == 0:
        raise ScalarError("cannot specialize q at 0: q is invertible")
    return value


def parse_index_list(text: Optional[str]) -> Tuple[int, ...]:
    """`1,3` -> (1, 3); empty text is the empty set."""
    if not text or not text.strip():
        return ()
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise QmatError(f"not a comma-separated index list: {text!r}") from exc


def check_format(
    settings: Settings, allowed: Sequence[str] = ("text", "json")
) -> None:
    if settings.output_format not in OUTPUT_FORMATS:
        raise QmatError(f"unknown output format: {settings.output_format}")
    if settings.output_format not in allowed:
        raise QmatError(
            f"--format {settings.output_format} is not supported here; "
            f"use one of {', '.join(allowed)}"
        )


@contextmanager
def reporting_errors() -> Iterator[None]:
    """Turn library errors into error JSON on stderr and exit code 1."""
    try:
        yield
    except QmatError as exc:
        typer.echo(json.dumps(exc.to_dict(), ensure_ascii=False), err=True)
        raise typer.Exit(1)


def emit(payload: Any, settings: Settings) -> None:
    if settings.output_format == "json":
        typer.echo(json.dumps(payload, ensure_ascii=False))
    else:
        typer.echo(payload)


def _fraction_text(value: Fraction) -> str:
    return str(value)


def specialized_text(
    algebra: PresentedAlgebra, terms: Dict[Any, Fraction]
) -> str:
    items = sorted(((w, c) for w, c in terms.items() if c), reverse=True)
    if not items:
        return "0"
    out: List[str] = []
    for k, (word, coeff) in enumerate(items):
        sign = "-" if coeff < 0 else "+"
        value = abs(coeff)
        if not word:
            body = _fraction_text(value)
        elif value == 1:
            body = algebra.word_text(word)
        else:
            body = f"{_fraction_text(value)}*{algebra.word_text(word)}"
        if k == 0:
            out.append(f"-{body}" if sign == "-" else body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def render_poly(p: NCPoly, settings: Settings) -> Any:
    """Text or JSON form of p, specialized at --q when given."""
    if settings.q is None:
        if settings.output_format == "json":
            return p.to_json()
        return p.to_text()
    special = specialize_poly(p, settings.q)
    if settings.output_format == "json":
        return [
            {"word": p.algebra.word_json(w), "coeff": _fraction_text(c)}
            for w, c in sorted(special.terms.items(), reverse=True)
        ]
    return specialized_text(p.algebra, special.terms)


def render_scalar(value: LaurentScalar, settings: Settings) -> str:
    if settings.q is not None:
        return _fraction_text(value.specialize(settings.q))
    if settings.output_format == "json":
        return value.canonical()
    return value.pretty()
