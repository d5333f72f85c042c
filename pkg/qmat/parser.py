"""
Surface syntax for algebra elements.

    expr   := [sign] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" signed_int)?
    atom   := rational | "q" | X[i,j] | y[i] | z[j] | "(" expr ")"

`X` generators are legal in quantum matrix algebras, `y` in quantum affine
spaces and tensor algebras, `z` in tensor algebras only. Negative exponents
are accepted for invertible scalars (`q^-1`, `(2*q)^-2`).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, List, Sequence, Tuple

import pyparsing as pp

from qmat.exceptions import AlgebraError, ExpressionError, QmatError
from qmat.ncalg import (
    NCPoly,
    PresentedAlgebra,
    QuantumAffine,
    QuantumMatrix,
    TensorAlgebra,
    normal_form,
)
from qmat.scalar import LaurentScalar


class Node:
    loc: int

    def evaluate(self, algebra: PresentedAlgebra) -> NCPoly:
        raise NotImplementedError


@dataclass
class Number(Node):
    value: Fraction
    loc: int

    def evaluate(self, algebra: PresentedAlgebra) -> NCPoly:
        return NCPoly.scalar(algebra, self.value)


@dataclass
class Parameter(Node):
    loc: int

    def evaluate(self, algebra: PresentedAlgebra) -> NCPoly:
        return NCPoly.scalar(algebra, LaurentScalar.q())


@dataclass
class Generator(Node):
    kind: str
    indices: Tuple[int, ...]
    loc: int

    @property
    def text(self) -> str:
        return f"{self.kind}[{','.join(str(i) for i in self.indices)}]"

    def _position(self, algebra: PresentedAlgebra) -> int:
        if self.kind == "X" and isinstance(algebra, QuantumMatrix):
            return algebra.index(*self.indices)
        if self.kind == "y" and isinstance(algebra, TensorAlgebra):
            return algebra.y(*self.indices)
        if self.kind == "z" and isinstance(algebra, TensorAlgebra):
            return algebra.z(*self.indices)
        if self.kind == "y" and isinstance(algebra, QuantumAffine):
            return algebra.index(*self.indices)
        raise ExpressionError(
            f"{self.text} is not a generator of {algebra.describe()}",
            position=self.loc,
        )

    def evaluate(self, algebra: PresentedAlgebra) -> NCPoly:
        try:
            index = self._position(algebra)
        except ExpressionError:
            raise
        except AlgebraError as exc:
            raise AlgebraError(f"{self.text} at {self.loc}: {exc}") from exc
        return NCPoly.generator(algebra, index)


@dataclass
class Power(Node):
    base: Node
    exponent: int
    loc: int

    def evaluate(self, algebra: PresentedAlgebra) -> NCPoly:
        value = self.base.evaluate(algebra)
        if self.exponent >= 0:
            return value**self.exponent
        if value.is_scalar() and len(value) == 1:
            scalar = value.coefficient(())
            if scalar.is_unit():
                return NCPoly.scalar(algebra, scalar**self.exponent)
        raise ExpressionError(
            "negative exponent on a non-invertible expression",
            position=self.loc,
        )


@dataclass
class Product(Node):
    factors: List[Node]
    loc: int

    def evaluate(self, algebra: PresentedAlgebra) -> NCPoly:
        result = NCPoly.one(algebra)
        for factor in self.factors:
            result = result * factor.evaluate(algebra)
        return result


@dataclass
class Sum(Node):
    terms: List[Tuple[int, Node]]
    loc: int

    def evaluate(self, algebra: PresentedAlgebra) -> NCPoly:
        result = NCPoly.zero(algebra)
        for sign, term in self.terms:
            value = term.evaluate(algebra)
            result = result + value if sign > 0 else result - value
        return result


def _number(s: str, loc: int, toks: pp.ParseResults) -> Node:
    try:
        return Number(Fraction(toks[0]), loc)
    except ZeroDivisionError:
        raise pp.ParseFatalException(s, loc, f"zero denominator in {toks[0]}")


def _parameter(s: str, loc: int, toks: pp.ParseResults) -> Node:
    return Parameter(loc)


def _generator(s: str, loc: int, toks: pp.ParseResults) -> Node:
    return Generator(toks[0], tuple(int(t) for t in toks[1:]), loc)


def _factor(s: str, loc: int, toks: pp.ParseResults) -> Node:
    if len(toks) == 1:
        return toks[0]
    return Power(toks[0], int(toks[1]), loc)


def _term(s: str, loc: int, toks: pp.ParseResults) -> Node:
    factors: Sequence[Any] = toks.as_list()
    if len(factors) == 1:
        return factors[0]
    return Product(list(factors), loc)


def _expr(s: str, loc: int, toks: pp.ParseResults) -> Node:
    items = toks.as_list()
    terms: List[Tuple[int, Node]] = []
    sign = 1
    for item in items:
        if isinstance(item, str):
            sign = -1 if item == "-" else 1
        else:
            terms.append((sign, item))
            sign = 1
    if len(terms) == 1 and terms[0][0] > 0:
        return terms[0][1]
    return Sum(terms, loc)


@lru_cache(maxsize=None)
def grammar() -> pp.ParserElement:
    lbrack, rbrack, comma = map(pp.Suppress, "[],")
    nat = pp.Word(pp.nums)
    signed_int = pp.Regex(r"[+-]?\d+")
    rational = pp.Regex(r"\d+(/\d+)?").set_parse_action(_number)
    parameter = pp.Keyword("q").set_parse_action(_parameter)
    matrix_gen = pp.Literal("X") + lbrack + nat + comma + nat + rbrack
    affine_gen = pp.one_of("y z") + lbrack + nat + rbrack
    generator = (matrix_gen | affine_gen).set_parse_action(_generator)

    expr = pp.Forward()
    atom = (
        rational
        | parameter
        | generator
        | pp.Suppress("(") + expr + pp.Suppress(")")
    )
    exponent = pp.Suppress("^") + signed_int
    factor = (atom + pp.Optional(exponent)).set_parse_action(_factor)
    product = factor + pp.ZeroOrMore(pp.Suppress("*") + factor)
    term = product.set_parse_action(_term)
    sign = pp.one_of("+ -")
    expr <<= (
        pp.Optional(sign) + term + pp.ZeroOrMore(sign + term)
    ).set_parse_action(_expr)
    return expr


def parse_tree(text: str) -> Node:
    try:
        return grammar().parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise ExpressionError(
            f"syntax error: {exc.msg}", position=exc.loc
        ) from exc


def parse(text: str, algebra: PresentedAlgebra) -> NCPoly:
    """Parse and evaluate `text` in `algebra`; the result is canonical."""
    tree = parse_tree(text)
    try:
        return normal_form(tree.evaluate(algebra))
    except QmatError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise ExpressionError(str(exc), position=tree.loc) from exc
