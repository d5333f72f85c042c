"""
Presented algebras and their elements.

Three shapes are supported: quantum matrices O_q(M_{m,n}), multiparameter
quantum affine spaces O_lambda(k^r), and the tensor product of two quantum
affine spaces (stored as a quantum affine space on m + n generators).

Elements are `NCPoly` objects, sparse maps from words to `LaurentScalar`.
Words are tuples of 0-based generator positions in the algebra's generator
order; the canonical form of an element is supported on non-decreasing
(PBW) words and is computed by `normal_form`.

Programmatic helpers:
- `quantum_matrix(m, n)`, `quantum_affine(dimension)`, `tensor(left, right)`
- `normal_form(p, strategy)`, `multiply(a, b)`
- `pbw_words(algebra, d)`, `component_dimension(algebra, d)`
- `specialize_poly(p, c)`, `specialized_normal_form(sp)`
"""
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
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

from qmat.exceptions import AlgebraError, ScalarError
from qmat.scalar import LaurentScalar, Rational

Word = Tuple[int, ...]
Rewrite = Tuple[Tuple[LaurentScalar, Word], ...]

STRATEGIES = ("leftmost", "rightmost")

_ONE = LaurentScalar.one()


@dataclass(frozen=True, order=True)
class GeneratorId:
    """A generator: kind `x` is a matrix entry (i, j), kind `a` an affine
    generator (index,); coordinates are 1-based."""

    kind: str
    coords: Tuple[int, ...]


class PresentedAlgebra:
    """Base class: a generator order plus rewriting rules for descending
    adjacent pairs. Instances are immutable and hashable by `key`."""

    generators: Tuple[GeneratorId, ...] = ()

    def __init__(self) -> None:
        self._cache: Dict[Tuple[Word, str], Dict[Word, LaurentScalar]] = {}

    @property
    def key(self) -> Tuple[Any, ...]:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PresentedAlgebra) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return self.describe()

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def describe(self) -> str:
        raise NotImplementedError

    def label(self, index: int) -> str:
        raise NotImplementedError

    def word_json(self, word: Word) -> List[Any]:
        raise NotImplementedError

    def word_text(self, word: Word) -> str:
        return "*".join(self.label(g) for g in word)

    def validate_word(self, word: Sequence[int]) -> Word:
        for g in word:
            if not 0 <= g < self.ngens:
                raise AlgebraError(
                    f"generator position {g} out of range for {self.describe()}"
                )
        return tuple(word)

    def rewrite_pair(self, high: int, low: int) -> Rewrite:
        """Replacement for the descending pair (high, low), high > low."""
        raise NotImplementedError

    def _descent(self, word: Word, strategy: str) -> Optional[int]:
        positions = range(len(word) - 1)
        if strategy == "rightmost":
            positions = reversed(positions)  # type: ignore[assignment]
        for k in positions:
            if word[k] > word[k + 1]:
                return k
        return None

    def reduce_word(
        self, word: Word, strategy: str = "leftmost"
    ) -> Dict[Word, LaurentScalar]:
        """Normal form of a single word. The returned mapping is shared with
        the cache and must not be mutated."""
        cache = self._cache
        root = (word, strategy)
        if root in cache:
            return cache[root]
        # rewrites strictly lower the word: the worklist has no cycles
        stack = [word]
        while stack:
            top = stack[-1]
            key = (top, strategy)
            if key in cache:
                stack.pop()
                continue
            pos = self._descent(top, strategy)
            if pos is None:
                cache[key] = {top: _ONE}
                stack.pop()
                continue
            head, tail = top[:pos], top[pos + 2:]
            rule = [
                (coeff, head + pair + tail)
                for coeff, pair in self.rewrite_pair(top[pos], top[pos + 1])
            ]
            missing = [w for _, w in rule if (w, strategy) not in cache]
            if missing:
                stack.extend(missing)
                continue
            result: Dict[Word, LaurentScalar] = {}
            for coeff, w in rule:
                for v, c in cache[(w, strategy)].items():
                    value = result.get(v, LaurentScalar.zero()) + coeff * c
                    if value:
                        result[v] = value
                    else:
                        result.pop(v, None)
            cache[key] = result
            stack.pop()
        return cache[root]


class QuantumMatrix(PresentedAlgebra):
    """O_q(M_{m,n}) with generators X[i,j] in lexicographic order."""

    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise AlgebraError(f"quantum matrices need m, n >= 1, got {m}x{n}")
        super().__init__()
        self.m = m
        self.n = n
        self.generators = tuple(
            GeneratorId("x", (i, j))
            for i in range(1, m + 1)
            for j in range(1, n + 1)
        )
        q = LaurentScalar.q()
        self._q_inv = LaurentScalar.q(-1)
        self._commutator = -(q - self._q_inv)

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("QuantumMatrix", self.m, self.n)

    def describe(self) -> str:
        return f"O_q(M_{{{self.m},{self.n}}})"

    def index(self, i: int, j: int) -> int:
        if not (1 <= i <= self.m and 1 <= j <= self.n):
            raise AlgebraError(
                f"X[{i},{j}] is out of range for {self.m}x{self.n} matrices"
            )
        return (i - 1) * self.n + (j - 1)

    def coords(self, index: int) -> Tuple[int, int]:
        i, j = divmod(index, self.n)
        return i + 1, j + 1

    def label(self, index: int) -> str:
        i, j = self.coords(index)
        return f"X[{i},{j}]"

    def word_json(self, word: Word) -> List[Any]:
        return [list(self.coords(g)) for g in word]

    def rewrite_pair(self, high: int, low: int) -> Rewrite:
        i, j = self.coords(low)
        l, s = self.coords(high)
        if i == l or j == s:
            return ((self._q_inv, (low, high)),)
        if j > s:
            return ((_ONE, (low, high)),)
        return (
            (_ONE, (low, high)),
            (self._commutator, (self.index(i, s), self.index(l, j))),
        )


class QuantumAffine(PresentedAlgebra):
    """O_lambda(k^r): y_a y_b = lambda_ab y_b y_a for a < b, lambda_ab a
    unit of Q[q, q^-1]."""

    def __init__(
        self,
        dimension: int,
        lambdas: Optional[Mapping[Tuple[int, int], LaurentScalar]] = None,
    ):
        if dimension < 1:
            raise AlgebraError(f"affine dimension must be >= 1, got {dimension}")
        super().__init__()
        self.dimension = dimension
        self.generators = tuple(
            GeneratorId("a", (k,)) for k in range(1, dimension + 1)
        )
        table: Dict[Tuple[int, int], LaurentScalar] = {}
        for a in range(1, dimension + 1):
            for b in range(a + 1, dimension + 1):
                value = (lambdas or {}).get((a, b), LaurentScalar.q())
                if not value.is_unit():
                    raise AlgebraError(
                        f"lambda[{a},{b}] = {value.canonical()} is not a unit"
                    )
                table[(a, b)] = value
        self.lambdas = table
        self._inverse = {k: v.inverse() for k, v in table.items()}

    @property
    def key(self) -> Tuple[Any, ...]:
        return (
            "QuantumAffine",
            self.dimension,
            tuple(sorted(self.lambdas.items())),
        )

    def describe(self) -> str:
        return f"O_lambda(k^{self.dimension})"

    def index(self, k: int) -> int:
        if not 1 <= k <= self.dimension:
            raise AlgebraError(
                f"affine generator {k} out of range 1..{self.dimension}"
            )
        return k - 1

    def label(self, index: int) -> str:
        return f"y[{index + 1}]"

    def word_json(self, word: Word) -> List[Any]:
        return [g + 1 for g in word]

    def rewrite_pair(self, high: int, low: int) -> Rewrite:
        return ((self._inverse[(low + 1, high + 1)], (low, high)),)

    def sort_coefficient(self, word: Sequence[int]) -> LaurentScalar:
        """Scalar c with word = c * sorted(word): one inverse lambda per
        strictly inverted pair of positions."""
        coeff = _ONE
        for a in range(len(word)):
            for b in range(a + 1, len(word)):
                if word[a] > word[b]:
                    coeff = coeff * self._inverse[(word[b] + 1, word[a] + 1)]
        return coeff


class TensorAlgebra(QuantumAffine):
    """left (x) right for two quantum affine spaces, presented as a quantum
    affine space on left generators followed by right generators."""

    def __init__(self, left: QuantumAffine, right: QuantumAffine):
        if isinstance(left, TensorAlgebra) or isinstance(right, TensorAlgebra):
            raise AlgebraError("tensor factors must be quantum affine spaces")
        m, n = left.dimension, right.dimension
        lambdas: Dict[Tuple[int, int], LaurentScalar] = {}
        for a in range(1, m + n + 1):
            for b in range(a + 1, m + n + 1):
                if b <= m:
                    lambdas[(a, b)] = left.lambdas[(a, b)]
                elif a > m:
                    lambdas[(a, b)] = right.lambdas[(a - m, b - m)]
                else:
                    lambdas[(a, b)] = _ONE
        super().__init__(m + n, lambdas)
        self.left = left
        self.right = right

    @property
    def key(self) -> Tuple[Any, ...]:
        return ("Tensor", self.left.key, self.right.key)

    @property
    def m(self) -> int:
        return self.left.dimension

    @property
    def n(self) -> int:
        return self.right.dimension

    def describe(self) -> str:
        return f"O_q(k^{self.m}) (x) O_q(k^{self.n})"

    def y(self, i: int) -> int:
        if not 1 <= i <= self.m:
            raise AlgebraError(f"y[{i}] out of range 1..{self.m}")
        return i - 1

    def z(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise AlgebraError(f"z[{j}] out of range 1..{self.n}")
        return self.m + j - 1

    def is_left(self, index: int) -> bool:
        return index < self.m

    def label(self, index: int) -> str:
        if self.is_left(index):
            return f"y[{index + 1}]"
        return f"z[{index - self.m + 1}]"


@lru_cache(maxsize=None)
def quantum_matrix(m: int, n: int) -> QuantumMatrix:
    return QuantumMatrix(m, n)


@lru_cache(maxsize=None)
def _standard_affine(dimension: int) -> QuantumAffine:
    return QuantumAffine(dimension)


def quantum_affine(
    dimension: int,
    lambdas: Optional[Mapping[Tuple[int, int], LaurentScalar]] = None,
) -> QuantumAffine:
    """O_lambda(k^dimension); every lambda defaults to q."""
    if lambdas:
        return QuantumAffine(dimension, lambdas)
    return _standard_affine(dimension)


@lru_cache(maxsize=None)
def tensor(left: QuantumAffine, right: QuantumAffine) -> TensorAlgebra:
    return TensorAlgebra(left, right)


ScalarInput = Union[LaurentScalar, Rational]


class NCPoly:
    """Finite linear combination of words with LaurentScalar coefficients."""

    __slots__ = ("algebra", "_terms")

    def __init__(
        self,
        algebra: PresentedAlgebra,
        terms: Optional[Mapping[Sequence[int], ScalarInput]] = None,
    ):
        self.algebra = algebra
        clean: Dict[Word, LaurentScalar] = {}
        for word, coeff in (terms or {}).items():
            w = algebra.validate_word(word)
            value = clean.get(w, LaurentScalar.zero()) + LaurentScalar.coerce(coeff)
            if value:
                clean[w] = value
            else:
                clean.pop(w, None)
        self._terms = clean

    @classmethod
    def _raw(
        cls, algebra: PresentedAlgebra, terms: Dict[Word, LaurentScalar]
    ) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, algebra: PresentedAlgebra) -> "NCPoly":
        return cls._raw(algebra, {})

    @classmethod
    def one(cls, algebra: PresentedAlgebra) -> "NCPoly":
        return cls._raw(algebra, {(): _ONE})

    @classmethod
    def scalar(cls, algebra: PresentedAlgebra, coeff: ScalarInput) -> "NCPoly":
        return cls(algebra, {(): coeff})

    @classmethod
    def monomial(
        cls,
        algebra: PresentedAlgebra,
        word: Sequence[int],
        coeff: ScalarInput = 1,
    ) -> "NCPoly":
        return cls(algebra, {tuple(word): coeff})

    @classmethod
    def generator(cls, algebra: PresentedAlgebra, index: int) -> "NCPoly":
        return cls.monomial(algebra, (index,))

    # inspection

    @property
    def terms(self) -> Dict[Word, LaurentScalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Word, LaurentScalar]]:
        """Terms in descending lexicographic order of their words."""
        return sorted(self._terms.items(), reverse=True)

    def words(self) -> List[Word]:
        return sorted(self._terms)

    def coefficient(self, word: Sequence[int]) -> LaurentScalar:
        return self._terms.get(tuple(word), LaurentScalar.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def is_canonical(self) -> bool:
        return all(is_pbw(w) for w in self._terms)

    def is_scalar(self) -> bool:
        return all(not w for w in self._terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    # arithmetic

    def _check(self, other: "NCPoly") -> None:
        if self.algebra != other.algebra:
            raise AlgebraError(
                f"algebra mismatch: {self.algebra.describe()} vs "
                f"{other.algebra.describe()}"
            )

    def _coerce(self, other: Union["NCPoly", ScalarInput]) -> "NCPoly":
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return NCPoly.scalar(self.algebra, other)

    def __add__(self, other: Union["NCPoly", ScalarInput]) -> "NCPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            value = out.get(w, LaurentScalar.zero()) + c
            if value:
                out[w] = value
            else:
                out.pop(w, None)
        return NCPoly._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw(self.algebra, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Union["NCPoly", ScalarInput]) -> "NCPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: ScalarInput) -> "NCPoly":
        return self._coerce(other) - self

    def scale(self, coeff: ScalarInput) -> "NCPoly":
        c = LaurentScalar.coerce(coeff)
        if c.is_zero():
            return NCPoly.zero(self.algebra)
        return NCPoly._raw(self.algebra, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other: Union["NCPoly", ScalarInput]) -> "NCPoly":
        if isinstance(other, NCPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: ScalarInput) -> "NCPoly":
        return self.scale(other)

    def __pow__(self, power: int) -> "NCPoly":
        if power < 0:
            if self.is_scalar() and len(self) == 1:
                return NCPoly.scalar(self.algebra, self._terms[()] ** power)
            raise AlgebraError("negative powers are defined for unit scalars only")
        result = NCPoly.one(self.algebra)
        for _ in range(power):
            result = result * self
        return result

    # serialization

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"word": self.algebra.word_json(w), "coeff": c.canonical()}
            for w, c in self.items()
        ]

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (word, coeff) in enumerate(self.items()):
            negative = coeff.is_unit() and coeff.leading_coefficient < 0
            if negative:
                coeff = -coeff
            if not word:
                body = coeff.pretty() if coeff.is_unit() else f"({coeff.pretty()})"
            else:
                text = self.algebra.word_text(word)
                if coeff.is_one():
                    body = text
                elif coeff.is_unit():
                    body = f"{coeff.pretty()}*{text}"
                else:
                    body = f"({coeff.pretty()})*{text}"
            if k == 0:
                out.append(f"-{body}" if negative else body)
            else:
                out.append(f" - {body}" if negative else f" + {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"NCPoly({self.algebra.describe()}, {self.to_text()!r})"


def is_pbw(word: Sequence[int]) -> bool:
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


def normal_form(p: NCPoly, strategy: str = "leftmost") -> NCPoly:
    """Canonical form of p, supported on non-decreasing words."""
    if strategy not in STRATEGIES:
        raise AlgebraError(f"unknown rewriting strategy: {strategy}")
    algebra = p.algebra
    out: Dict[Word, LaurentScalar] = {}
    for word, coeff in p._terms.items():
        if is_pbw(word):
            reduced: Mapping[Word, LaurentScalar] = {word: _ONE}
        else:
            reduced = algebra.reduce_word(word, strategy)
        for w, c in reduced.items():
            value = out.get(w, LaurentScalar.zero()) + coeff * c
            if value:
                out[w] = value
            else:
                out.pop(w, None)
    return NCPoly._raw(algebra, out)


def multiply(a: NCPoly, b: NCPoly) -> NCPoly:
    a._check(b)
    product: Dict[Word, LaurentScalar] = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            w = w1 + w2
            value = product.get(w, LaurentScalar.zero()) + c1 * c2
            if value:
                product[w] = value
            else:
                product.pop(w, None)
    return normal_form(NCPoly._raw(a.algebra, product))


def pbw_words(algebra: PresentedAlgebra, d: int) -> List[Word]:
    """Non-decreasing words of length d, in lexicographic order."""
    if d < 0:
        raise AlgebraError(f"degree must be >= 0, got {d}")
    return list(combinations_with_replacement(range(algebra.ngens), d))


def component_dimension(algebra: PresentedAlgebra, d: int) -> int:
    if d < 0:
        raise AlgebraError(f"degree must be >= 0, got {d}")
    return math.comb(algebra.ngens + d - 1, d)


@dataclass
class SpecializedPoly:
    """An element with rational coefficients, q specialized to `at`."""

    algebra: PresentedAlgebra
    at: Fraction
    terms: Dict[Word, Fraction] = field(default_factory=dict)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpecializedPoly):
            return NotImplemented
        mine = {w: c for w, c in self.terms.items() if c}
        theirs = {w: c for w, c in other.terms.items() if c}
        return (
            self.algebra == other.algebra
            and self.at == other.at
            and mine == theirs
        )


def specialize_poly(p: NCPoly, c: Rational) -> SpecializedPoly:
    at = Fraction(c)
    if at == 0:
        raise ScalarError("cannot specialize q at 0: q is invertible")
    terms = {}
    for w, coeff in p._terms.items():
        value = coeff.specialize(at)
        if value:
            terms[w] = value
    return SpecializedPoly(p.algebra, at, terms)


def specialized_normal_form(sp: SpecializedPoly) -> SpecializedPoly:
    """Rewrite to PBW form over Q with q = sp.at, independently of the
    symbolic rewriting cache."""
    algebra = sp.algebra
    pending: Dict[Word, Fraction] = dict(sp.terms)
    done: Dict[Word, Fraction] = {}
    while pending:
        word, coeff = pending.popitem()
        if not coeff:
            continue
        pos = algebra._descent(word, "leftmost")
        if pos is None:
            done[word] = done.get(word, Fraction(0)) + coeff
            continue
        head, tail = word[:pos], word[pos + 2:]
        for rule_coeff, pair in algebra.rewrite_pair(word[pos], word[pos + 1]):
            new = head + pair + tail
            value = coeff * rule_coeff.specialize(sp.at)
            pending[new] = pending.get(new, Fraction(0)) + value
    return SpecializedPoly(
        algebra, sp.at, {w: c for w, c in done.items() if c}
    )


def random_word(
    algebra: PresentedAlgebra, length: int, rng: random.Random
) -> Word:
    return tuple(rng.randrange(algebra.ngens) for _ in range(length))


def random_scalar(rng: random.Random, max_terms: int = 2) -> LaurentScalar:
    terms = {
        rng.randint(-2, 2): Fraction(
            rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2)
        )
        for _ in range(rng.randint(1, max_terms))
    }
    return LaurentScalar(terms)


def random_poly(
    algebra: PresentedAlgebra,
    rng: random.Random,
    max_degree: int = 3,
    max_terms: int = 3,
    homogeneous: Optional[int] = None,
) -> NCPoly:
    """A random element; with `homogeneous` set, every word has that length."""
    terms: Dict[Sequence[int], LaurentScalar] = {}
    for _ in range(rng.randint(1, max_terms)):
        length = (
            homogeneous
            if homogeneous is not None
            else rng.randint(0, max_degree)
        )
        terms[random_word(algebra, length, rng)] = random_scalar(rng)
    return NCPoly(algebra, terms)


def words_of_length(algebra: PresentedAlgebra, d: int) -> Iterable[Word]:
    """Every word of length d, PBW or not."""
    if d == 0:
        yield ()
        return
    for head in words_of_length(algebra, d - 1):
        for g in range(algebra.ngens):
            yield head + (g,)
