"""
Quantum minors, the determinantal ideal I_1 and reduction modulo I_1.

Modulo I_1 every monomial is a unit multiple of exactly one S-word: a word
X[i1,j1]...X[il,jl] with rows non-increasing and columns non-decreasing.
`reduce_mod_i1` finds it by pulling back through theta; `reduce_by_cases`
reaches the same S-word by local swaps and is kept as an independent check.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from typing import Dict, List, Sequence, Tuple

from qmat.exceptions import AlgebraError
from qmat.maps import require_matrix, theta_word
from qmat.ncalg import (
    NCPoly,
    QuantumMatrix,
    Word,
    normal_form,
    quantum_matrix,
)
from qmat.scalar import LaurentScalar


@dataclass(frozen=True)
class MinorSpec:
    """Row and column subsets of a quantum minor, stored ascending."""

    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(sorted(self.rows))
        cols = tuple(sorted(self.cols))
        if len(rows) != len(cols):
            raise AlgebraError(
                f"minor needs |rows| == |cols|, got {len(rows)} and {len(cols)}"
            )
        if not rows:
            raise AlgebraError("minor needs at least one row")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise AlgebraError("minor rows and columns must be distinct")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    @property
    def size(self) -> int:
        return len(self.rows)


def _inversions(seq: Sequence[int]) -> int:
    return sum(
        1
        for a in range(len(seq))
        for b in range(a + 1, len(seq))
        if seq[a] > seq[b]
    )


def quantum_minor(algebra: QuantumMatrix, spec: MinorSpec) -> NCPoly:
    """Sum over bijections rows -> cols of (-q)^inv * X[r1,s(r1)]...X[rt,s(rt)]."""
    algebra = require_matrix(algebra)
    terms: Dict[Word, LaurentScalar] = {}
    for image in permutations(spec.cols):
        inv = _inversions(image)
        word = tuple(algebra.index(r, c) for r, c in zip(spec.rows, image))
        terms[word] = LaurentScalar.monomial((-1) ** inv, inv)
    return normal_form(NCPoly(algebra, terms))


def quantum_determinant(algebra: QuantumMatrix) -> NCPoly:
    algebra = require_matrix(algebra)
    if algebra.m != algebra.n:
        raise AlgebraError(
            f"determinant needs a square algebra, got {algebra.m}x{algebra.n}"
        )
    full = tuple(range(1, algebra.m + 1))
    return quantum_minor(algebra, MinorSpec(full, full))


def minors_of_size(algebra: QuantumMatrix, t: int) -> List[NCPoly]:
    """All t x t quantum minors, rows then columns in lexicographic order."""
    algebra = require_matrix(algebra)
    if t < 1:
        raise AlgebraError(f"minor size must be >= 1, got {t}")
    return [
        quantum_minor(algebra, MinorSpec(rows, cols))
        for rows in combinations(range(1, algebra.m + 1), t)
        for cols in combinations(range(1, algebra.n + 1), t)
    ]


def i1_generators(m: int, n: int) -> List[NCPoly]:
    """The 2 x 2 quantum minors X[i,j]X[l,s] - q X[i,s]X[l,j], i<l, j<s."""
    return minors_of_size(quantum_matrix(m, n), 2)


def is_sword(algebra: QuantumMatrix, word: Sequence[int]) -> bool:
    coords = [algebra.coords(g) for g in word]
    return all(
        coords[k][0] >= coords[k + 1][0] and coords[k][1] <= coords[k + 1][1]
        for k in range(len(coords) - 1)
    )


def s_basis_size(m: int, n: int, d: int) -> int:
    if d < 0:
        raise AlgebraError(f"degree must be >= 0, got {d}")
    return math.comb(m + d - 1, d) * math.comb(n + d - 1, d)


def s_basis(m: int, n: int, d: int) -> List[Word]:
    """S-words of length d: row multisets descending, column multisets
    ascending, paired positionwise."""
    algebra = quantum_matrix(m, n)
    if d < 0:
        raise AlgebraError(f"degree must be >= 0, got {d}")
    out = []
    for rows in combinations_with_replacement(range(1, m + 1), d):
        for cols in combinations_with_replacement(range(1, n + 1), d):
            out.append(
                tuple(
                    algebra.index(i, j)
                    for i, j in zip(reversed(rows), cols)
                )
            )
    return out


@lru_cache(maxsize=None)
def _pullback_word(
    algebra: QuantumMatrix, word: Word
) -> Tuple[LaurentScalar, Word]:
    coords = [algebra.coords(g) for g in word]
    rows = sorted((i for i, _ in coords), reverse=True)
    cols = sorted(j for _, j in coords)
    sword = tuple(algebra.index(i, j) for i, j in zip(rows, cols))
    c_word, image = theta_word(algebra, word)
    c_sword, sword_image = theta_word(algebra, sword)
    if image != sword_image:
        raise AlgebraError(
            f"theta images differ for {algebra.word_text(word)} and its "
            f"S-word {algebra.word_text(sword)}"
        )
    return c_word * c_sword.inverse(), sword


def _collect(
    algebra: QuantumMatrix, items: Sequence[Tuple[LaurentScalar, Word]]
) -> NCPoly:
    terms: Dict[Word, LaurentScalar] = {}
    for coeff, word in items:
        value = terms.get(word, LaurentScalar.zero()) + coeff
        if value:
            terms[word] = value
        else:
            terms.pop(word, None)
    return NCPoly._raw(algebra, terms)


def reduce_mod_i1(p: NCPoly) -> NCPoly:
    """The representative of p + I_1 supported on S-words."""
    algebra = require_matrix(p.algebra)
    items = []
    for word, coeff in p.terms.items():
        scale, sword = _pullback_word(algebra, word)
        items.append((coeff * scale, sword))
    return _collect(algebra, items)


@lru_cache(maxsize=None)
def _case_reduce_word(
    algebra: QuantumMatrix, word: Word
) -> Tuple[LaurentScalar, Word]:
    q = LaurentScalar.q()
    q_inv = LaurentScalar.q(-1)
    rows = [algebra.coords(g)[0] for g in word]
    cols = [algebra.coords(g)[1] for g in word]
    coeff = LaurentScalar.one()
    while True:
        r = next(
            (
                k
                for k in range(len(word) - 1)
                if rows[k] < rows[k + 1] or cols[k] > cols[k + 1]
            ),
            None,
        )
        if r is None:
            break
        i, j, i2, j2 = rows[r], cols[r], rows[r + 1], cols[r + 1]
        if i < i2 and j >= j2:
            # plain swap: q when the columns agree, 1 otherwise
            if j == j2:
                coeff = coeff * q
            rows[r], rows[r + 1] = i2, i
            cols[r], cols[r + 1] = j2, j
        elif i == i2:
            coeff = coeff * q_inv
            cols[r], cols[r + 1] = j2, j
        elif i < i2:
            # X[i,j]X[i2,j2] = q X[i2,j]X[i,j2] mod I_1
            coeff = coeff * q
            rows[r], rows[r + 1] = i2, i
        else:
            # X[i,j]X[i2,j2] = q^-1 X[i,j2]X[i2,j] mod I_1
            coeff = coeff * q_inv
            cols[r], cols[r + 1] = j2, j
    return coeff, tuple(algebra.index(i, j) for i, j in zip(rows, cols))


def reduce_by_cases(p: NCPoly) -> NCPoly:
    """Reduction modulo I_1 by adjacent swaps, independent of theta."""
    algebra = require_matrix(p.algebra)
    items = []
    for word, coeff in p.terms.items():
        scale, sword = _case_reduce_word(algebra, word)
        items.append((coeff * scale, sword))
    return _collect(algebra, items)
