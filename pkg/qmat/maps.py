"""
The embedding theta, the coaction grading and torus weights.

theta sends X[i,j] to y[i] (x) z[j] in O_q(k^m) (x) O_q(k^n). Elements of
that tensor algebra are graded by z-degree minus y-degree; the weight-zero
part is the coinvariant subalgebra, which is exactly the image of theta.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from qmat.exceptions import AlgebraError, CoinvariantError
from qmat.ncalg import (
    NCPoly,
    PresentedAlgebra,
    QuantumMatrix,
    TensorAlgebra,
    Word,
    multiply,
    normal_form,
    quantum_affine,
    quantum_matrix,
    tensor,
)
from qmat.scalar import LaurentScalar


@dataclass(frozen=True)
class TorusWeight:
    """Row and column multiplicities of a word."""

    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __add__(self, other: "TorusWeight") -> "TorusWeight":
        return TorusWeight(
            tuple(a + b for a, b in zip(self.rows, other.rows)),
            tuple(a + b for a, b in zip(self.cols, other.cols)),
        )

    def to_json(self) -> Dict[str, List[int]]:
        return {"rows": list(self.rows), "cols": list(self.cols)}


@dataclass(frozen=True)
class CoinvariantReport:
    ok: bool
    witness: Optional[Word] = None


def tensor_algebra(m: int, n: int) -> TensorAlgebra:
    return tensor(quantum_affine(m), quantum_affine(n))


def require_matrix(algebra: PresentedAlgebra) -> QuantumMatrix:
    if not isinstance(algebra, QuantumMatrix):
        raise AlgebraError(f"expected a quantum matrix algebra, got {algebra}")
    return algebra


def require_tensor(algebra: PresentedAlgebra) -> TensorAlgebra:
    if not isinstance(algebra, TensorAlgebra):
        raise AlgebraError(f"expected a tensor algebra, got {algebra}")
    return algebra


@lru_cache(maxsize=None)
def theta_word(
    algebra: QuantumMatrix, word: Word
) -> Tuple[LaurentScalar, Word]:
    """theta of a single word: a unit scalar times one sorted tensor word."""
    target = tensor_algebra(algebra.m, algebra.n)
    image = []
    for g in word:
        i, j = algebra.coords(g)
        image.extend((target.y(i), target.z(j)))
    return target.sort_coefficient(image), tuple(sorted(image))


def _accumulate(
    terms: Dict[Word, LaurentScalar], word: Word, coeff: LaurentScalar
) -> None:
    value = terms.get(word, LaurentScalar.zero()) + coeff
    if value:
        terms[word] = value
    else:
        terms.pop(word, None)


def theta(p: NCPoly) -> NCPoly:
    algebra = require_matrix(p.algebra)
    target = tensor_algebra(algebra.m, algebra.n)
    out: Dict[Word, LaurentScalar] = {}
    for word, coeff in p.terms.items():
        scale, image = theta_word(algebra, word)
        _accumulate(out, image, coeff * scale)
    return NCPoly._raw(target, out)


def apply_homomorphism(
    p: NCPoly, images: Sequence[NCPoly], target: PresentedAlgebra
) -> NCPoly:
    """Evaluate the algebra map sending generator k to images[k]."""
    if len(images) != p.algebra.ngens:
        raise AlgebraError(
            f"{len(images)} images given for {p.algebra.ngens} generators"
        )
    for image in images:
        if image.algebra != target:
            raise AlgebraError("generator image lives in the wrong algebra")
    out: Dict[Word, LaurentScalar] = {}
    for word, coeff in p.terms.items():
        value = NCPoly.one(target)
        for g in word:
            value = multiply(value, images[g])
            if value.is_zero():
                break
        for w, c in value.terms.items():
            _accumulate(out, w, coeff * c)
    return NCPoly._raw(target, out)


def bidegree(algebra: TensorAlgebra, word: Sequence[int]) -> Tuple[int, int]:
    left = sum(1 for g in word if algebra.is_left(g))
    return left, len(word) - left


def gamma_weight(algebra: PresentedAlgebra, word: Sequence[int]) -> int:
    """z-degree minus y-degree of a tensor word."""
    r, s = bidegree(require_tensor(algebra), word)
    return s - r


def coinvariant_check(p: NCPoly) -> CoinvariantReport:
    """Witness is the first offending word in ascending word order."""
    algebra = require_tensor(p.algebra)
    for word in p.words():
        if gamma_weight(algebra, word) != 0:
            return CoinvariantReport(False, word)
    return CoinvariantReport(True)


def coinvariant_preimage(p: NCPoly) -> NCPoly:
    """x on SWords with theta(x) = p, for coinvariant p."""
    algebra = require_tensor(p.algebra)
    p = normal_form(p)
    report = coinvariant_check(p)
    if not report.ok:
        raise CoinvariantError(
            "not a coinvariant: "
            f"{algebra.word_text(report.witness or ())} has gamma weight "
            f"{gamma_weight(algebra, report.witness or ())}"
        )
    source = quantum_matrix(algebra.m, algebra.n)
    out: Dict[Word, LaurentScalar] = {}
    for word, coeff in p.terms.items():
        ys = sorted((g + 1 for g in word if algebra.is_left(g)), reverse=True)
        zs = [g - algebra.m + 1 for g in word if not algebra.is_left(g)]
        preimage = tuple(source.index(i, j) for i, j in zip(ys, zs))
        scale, _ = theta_word(source, preimage)
        _accumulate(out, preimage, coeff * scale.inverse())
    return NCPoly._raw(source, out)


def h_weight(algebra: PresentedAlgebra, word: Sequence[int]) -> TorusWeight:
    matrix = require_matrix(algebra)
    rows = [0] * matrix.m
    cols = [0] * matrix.n
    for g in word:
        i, j = matrix.coords(g)
        rows[i - 1] += 1
        cols[j - 1] += 1
    return TorusWeight(tuple(rows), tuple(cols))
