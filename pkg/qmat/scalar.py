"""
Exact scalars: Laurent polynomials in q over the rationals and their
fraction field.

`LaurentScalar` is the coefficient type of every algebra element in qmat.
`RatScalar` is the fraction field used by the linear-algebra oracle, and
`EchelonForm` is the fraction-free sparse elimination behind `rs_solve`.

Programmatic helpers:
- `ls_mul(a, b)`, `ls_specialize(a, c)`
- `rs_solve(matrix, mode)` with mode `rank` or `kernel`
- `specialized_rank(matrix, c)`
"""
import re
from fractions import Fraction
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import sympy as sp

from qmat.exceptions import ScalarError

Rational = Union[int, Fraction]

_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)\*q\^(-?\d+)\s*")


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise ScalarError(f"Not an exact rational: {value!r}")


# q as a sympy generator; division and gcd run on sympy polynomials over QQ
_Q = sp.Symbol("q")


def _to_sympy(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def _from_sympy(value: Any) -> Fraction:
    return Fraction(int(value.p), int(value.q))


class LaurentScalar:
    """An element of Q[q, q^-1], stored as exponent -> nonzero rational."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[int, Rational]] = None):
        clean: Dict[int, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            value = _as_fraction(coeff)
            if value:
                clean[int(exp)] = value
        self._terms = clean
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[int, Fraction]) -> "LaurentScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "LaurentScalar":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentScalar":
        return cls._raw({0: Fraction(1)})

    @classmethod
    def q(cls, power: int = 1) -> "LaurentScalar":
        return cls._raw({power: Fraction(1)})

    @classmethod
    def monomial(cls, coeff: Rational, power: int = 0) -> "LaurentScalar":
        return cls({power: coeff})

    @classmethod
    def coerce(cls, value: Union["LaurentScalar", Rational]) -> "LaurentScalar":
        if isinstance(value, LaurentScalar):
            return value
        return cls({0: value})

    # structure

    @property
    def terms(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[int, Fraction]]:
        """Terms sorted by descending exponent."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def is_unit(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ScalarError("zero has no exponent range")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ScalarError("zero has no exponent range")
        return max(self._terms)

    @property
    def leading_coefficient(self) -> Fraction:
        return self._terms[self.max_exp]

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentScalar.coerce(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # ring operations

    def __add__(self, other: Union["LaurentScalar", Rational]) -> "LaurentScalar":
        other = LaurentScalar.coerce(other)
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            value = out.get(exp, 0) + coeff
            if value:
                out[exp] = value
            else:
                out.pop(exp, None)
        return LaurentScalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["LaurentScalar", Rational]) -> "LaurentScalar":
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other: Rational) -> "LaurentScalar":
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other: Union["LaurentScalar", Rational]) -> "LaurentScalar":
        other = LaurentScalar.coerce(other)
        if not self._terms or not other._terms:
            return LaurentScalar.zero()
        out: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = e1 + e2
                out[exp] = out.get(exp, 0) + c1 * c2
        return LaurentScalar._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentScalar":
        if power < 0:
            return self.inverse() ** (-power)
        result = LaurentScalar.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def shift(self, power: int) -> "LaurentScalar":
        """Multiply by q^power."""
        return LaurentScalar._raw(
            {e + power: c for e, c in self._terms.items()}
        )

    def inverse(self) -> "LaurentScalar":
        if not self.is_unit():
            raise ScalarError(f"{self.canonical()} is not invertible")
        (exp, coeff), = self._terms.items()
        return LaurentScalar._raw({-exp: 1 / coeff})

    def specialize(self, c: Rational) -> Fraction:
        """Evaluate at q = c."""
        c = _as_fraction(c)
        if c == 0:
            raise ScalarError("cannot specialize q at 0: q is invertible")
        return sum(
            (coeff * c ** exp for exp, coeff in self._terms.items()),
            Fraction(0),
        )

    # division in the Laurent ring

    def _poly(self) -> Tuple[int, sp.Poly]:
        """(shift, polynomial) with self = q^shift * polynomial."""
        low = self.min_exp
        rep = {(exp - low,): _to_sympy(c) for exp, c in self._terms.items()}
        return low, sp.Poly.from_dict(rep, _Q, domain=sp.QQ)

    @classmethod
    def _from_poly(cls, low: int, poly: sp.Poly) -> "LaurentScalar":
        return cls._raw(
            {low + k: _from_sympy(c) for (k,), c in poly.terms() if c}
        )

    def divexact(self, other: "LaurentScalar") -> "LaurentScalar":
        """Exact quotient self / other; raises if other does not divide."""
        if other.is_zero():
            raise ScalarError("division by zero")
        if self.is_zero():
            return LaurentScalar.zero()
        if other.is_unit():
            return self * other.inverse()
        low_a, a = self._poly()
        low_b, b = other._poly()
        quot, rem = a.div(b)
        if not rem.is_zero:
            raise ScalarError(
                f"{other.canonical()} does not divide {self.canonical()}"
            )
        return LaurentScalar._from_poly(low_a - low_b, quot)

    def normalized(self) -> Tuple["LaurentScalar", "LaurentScalar"]:
        """Split into (unit, rest) with rest having min exponent 0 and
        leading coefficient 1."""
        if self.is_zero():
            return LaurentScalar.one(), self
        unit = LaurentScalar.monomial(self.leading_coefficient, self.min_exp)
        return unit, self * unit.inverse()

    def gcd(self, other: "LaurentScalar") -> "LaurentScalar":
        """Greatest common divisor, normalized (min exponent 0, monic);
        gcd of two units is 1."""
        if self.is_zero():
            return other.normalized()[1]
        if other.is_zero():
            return self.normalized()[1]
        if self.is_unit() or other.is_unit():
            return LaurentScalar.one()
        _, a = self._poly()
        _, b = other._poly()
        return LaurentScalar._from_poly(0, a.gcd(b).monic())

    # text forms

    def canonical(self) -> str:
        """Canonical form, e.g. `1*q^2 - 1*q^-2`; exponents descending."""
        if not self._terms:
            return "0"
        parts = []
        for k, (exp, coeff) in enumerate(self.items()):
            if k == 0:
                parts.append(f"{coeff}*q^{exp}")
            else:
                sign = "-" if coeff < 0 else "+"
                parts.append(f" {sign} {abs(coeff)}*q^{exp}")
        return "".join(parts)

    @classmethod
    def from_string(cls, text: str) -> "LaurentScalar":
        """Parse the canonical form produced by `canonical`."""
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms: Dict[int, Fraction] = {}
        pos = 0
        while pos < len(text):
            match = _TERM_RE.match(text, pos)
            if not match or match.end() == pos:
                raise ScalarError(f"Malformed scalar at {pos}: {text!r}")
            sign, coeff, exp = match.groups()
            value = Fraction(coeff) * (-1 if sign == "-" else 1)
            terms[int(exp)] = terms.get(int(exp), 0) + value
            pos = match.end()
        return cls(terms)

    @staticmethod
    def _pretty_term(coeff: Fraction, exp: int) -> str:
        power = "q" if exp == 1 else f"q^{exp}"
        if exp == 0:
            return str(coeff)
        if coeff == 1:
            return power
        if coeff == -1:
            return f"-{power}"
        return f"{coeff}*{power}"

    def pretty(self) -> str:
        """Human form, e.g. `q^2 - q^-2`, `-q`, `1/2*q^-1`."""
        if not self._terms:
            return "0"
        parts = []
        for k, (exp, coeff) in enumerate(self.items()):
            if k == 0:
                parts.append(self._pretty_term(coeff, exp))
            else:
                sign = "-" if coeff < 0 else "+"
                parts.append(f" {sign} {self._pretty_term(abs(coeff), exp)}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.canonical()

    def __repr__(self) -> str:
        return f"LaurentScalar({self.canonical()!r})"


def ls_mul(a: LaurentScalar, b: LaurentScalar) -> LaurentScalar:
    return a * b


def ls_specialize(a: LaurentScalar, c: Rational) -> Fraction:
    return a.specialize(c)


def content(entries: Iterable[LaurentScalar]) -> LaurentScalar:
    """gcd of all entries (1 if any entry is a unit)."""
    g = LaurentScalar.zero()
    for entry in entries:
        g = g.gcd(entry)
        if g.is_one():
            break
    return g


class RatScalar:
    """Element of Q(q), kept reduced with a normalized denominator."""

    __slots__ = ("num", "den")

    def __init__(
        self,
        num: Union[LaurentScalar, Rational],
        den: Union[LaurentScalar, Rational] = 1,
    ):
        num = LaurentScalar.coerce(num)
        den = LaurentScalar.coerce(den)
        if den.is_zero():
            raise ScalarError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, LaurentScalar.one()
            return
        g = num.gcd(den)
        if not g.is_one():
            num, den = num.divexact(g), den.divexact(g)
        unit, den = den.normalized()
        self.num = num * unit.inverse()
        self.den = den

    @classmethod
    def coerce(cls, value: Union["RatScalar", LaurentScalar, Rational]) -> "RatScalar":
        if isinstance(value, RatScalar):
            return value
        return cls(value)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (LaurentScalar, int, Fraction)):
            other = RatScalar(other)
        if not isinstance(other, RatScalar):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: object) -> "RatScalar":
        o = RatScalar.coerce(other)  # type: ignore[arg-type]
        if self.den == o.den:
            return RatScalar(self.num + o.num, self.den)
        return RatScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatScalar":
        return RatScalar(-self.num, self.den)

    def __sub__(self, other: object) -> "RatScalar":
        return self + (-RatScalar.coerce(other))  # type: ignore[arg-type]

    def __mul__(self, other: object) -> "RatScalar":
        o = RatScalar.coerce(other)  # type: ignore[arg-type]
        return RatScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RatScalar":
        o = RatScalar.coerce(other)  # type: ignore[arg-type]
        if o.is_zero():
            raise ScalarError("division by zero")
        return RatScalar(self.num * o.den, self.den * o.num)

    def specialize(self, c: Rational) -> Fraction:
        den = self.den.specialize(c)
        if den == 0:
            raise ScalarError(f"denominator vanishes at q = {c}")
        return self.num.specialize(c) / den

    def __repr__(self) -> str:
        if self.den.is_one():
            return f"RatScalar({self.num.canonical()!r})"
        return f"RatScalar({self.num.canonical()!r} / {self.den.canonical()!r})"


SparseVector = Dict[int, LaurentScalar]


def _primitive(vec: SparseVector) -> SparseVector:
    g = content(vec.values())
    if g.is_one() or g.is_zero():
        return vec
    return {c: x.divexact(g) for c, x in vec.items()}


class EchelonForm:
    """Incremental sparse row echelon form over Q[q, q^-1].

    Rows are stored by pivot column and carry entries only at columns at or
    after the pivot. A unit pivot is scaled to 1; any other pivot row is
    made primitive. Elimination never leaves the Laurent ring.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: Dict[int, SparseVector] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def rows(self) -> List[SparseVector]:
        return [dict(self._rows[c]) for c in self.pivots]

    def reduce(self, vector: Mapping[int, LaurentScalar]) -> SparseVector:
        vec = {c: x for c, x in vector.items() if x}
        for col in self.pivots:
            if not vec:
                break
            x = vec.get(col)
            if x is None:
                continue
            row = self._rows[col]
            pivot = row[col]
            if not pivot.is_one():
                vec = {c: pivot * v for c, v in vec.items()}
            for c, r in row.items():
                value = vec.get(c, LaurentScalar.zero()) - x * r
                if value:
                    vec[c] = value
                else:
                    vec.pop(c, None)
            if not pivot.is_one():
                vec = _primitive(vec)
        return vec

    def insert(self, vector: Mapping[int, LaurentScalar]) -> bool:
        """Add a vector to the span; True if the rank grew."""
        vec = self.reduce(vector)
        if not vec:
            return False
        lead = min(vec)
        pivot = vec[lead]
        if pivot.is_unit():
            inv = pivot.inverse()
            vec = {c: x * inv for c, x in vec.items()}
        else:
            vec = _primitive(vec)
        self._rows[lead] = vec
        return True

    def contains(self, vector: Mapping[int, LaurentScalar]) -> bool:
        return not self.reduce(vector)

    def kernel_basis(self) -> List[List[LaurentScalar]]:
        """Basis of the right kernel of the stored rows, entries cleared to
        Laurent polynomials with content removed."""
        pivots = self.pivots
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            x: Dict[int, RatScalar] = {free: RatScalar(1)}
            for col in reversed(pivots):
                row = self._rows[col]
                acc = RatScalar(0)
                for c, r in row.items():
                    if c != col and c in x:
                        acc = acc + x[c] * r
                if not acc.is_zero():
                    x[col] = -acc / row[col]
            denominator = LaurentScalar.one()
            for value in x.values():
                g = denominator.gcd(value.den)
                denominator = (denominator * value.den).divexact(g)
            cleared = {
                c: (v.num * denominator).divexact(v.den) for c, v in x.items()
            }
            cleared = _primitive(cleared)
            basis.append(
                [cleared.get(c, LaurentScalar.zero()) for c in range(self.ncols)]
            )
        return basis


ScalarLike = Union[RatScalar, LaurentScalar, Rational]


def _clear_row(row: Sequence[ScalarLike]) -> SparseVector:
    entries = [RatScalar.coerce(x) for x in row]
    denominator = LaurentScalar.one()
    for e in entries:
        g = denominator.gcd(e.den)
        denominator = (denominator * e.den).divexact(g)
    return {
        c: (e.num * denominator).divexact(e.den)
        for c, e in enumerate(entries)
        if not e.is_zero()
    }


def rs_solve(
    matrix: Sequence[Sequence[ScalarLike]], mode: str = "rank"
) -> Union[int, List[List[LaurentScalar]]]:
    """Exact rank or right-kernel basis of a matrix over Q(q)."""
    if mode not in ("rank", "kernel"):
        raise ScalarError(f"Unknown solve mode: {mode}")
    ncols = len(matrix[0]) if matrix else 0
    echelon = EchelonForm(ncols)
    for row in matrix:
        if len(row) != ncols:
            raise ScalarError("matrix rows have different lengths")
        echelon.insert(_clear_row(row))
    if mode == "rank":
        return echelon.rank
    return echelon.kernel_basis()


def specialized_rank(matrix: Sequence[Sequence[ScalarLike]], c: Rational) -> int:
    """Rank over Q of the matrix specialized at q = c."""
    if not matrix or not matrix[0]:
        return 0
    rows = [
        [_to_sympy(RatScalar.coerce(x).specialize(c)) for x in row]
        for row in matrix
    ]
    return int(sp.Matrix(rows).rank())
