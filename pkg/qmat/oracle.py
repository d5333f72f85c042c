"""
Degree-truncated linear algebra checks.

Every check returns a `CheckReport` with the expected and observed numbers.
Matrices are assembled from the public operations of the other modules and
eliminated exactly over Q(q) with `EchelonForm`; nothing is re-derived.

Checks:
- `build_theta_matrix`, `kernel_equals_i1`, `verify_s_basis`,
  `verify_coinvariants`: the degree-d statements about theta and I_1
- `verify_pbw`, `verify_confluence`, `verify_centrality`, `verify_domain`,
  `verify_commutation`, `verify_iso`, `verify_specialization`: property sweeps

`run_plan` runs a list of plan entries (see `expand_plan`), optionally in a
process pool, and returns the reports in plan order.
"""
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import (
    Any,
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Tuple,
)

from qmat.constants import (
    DEFAULT_FUZZ_SAMPLES,
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_M,
    DEFAULT_MAX_N,
    DEFAULT_SEED,
)
from qmat.detid import (
    i1_generators,
    quantum_determinant,
    reduce_mod_i1,
    s_basis,
    s_basis_size,
)
from qmat.exceptions import AlgebraError, CapExceededError
from qmat.hspec import (
    enumerate_hprimes,
    quotient_iso_check,
    scalar_commutator,
)
from qmat.maps import coinvariant_check, tensor_algebra, theta
from qmat.ncalg import (
    NCPoly,
    PresentedAlgebra,
    Word,
    component_dimension,
    multiply,
    normal_form,
    pbw_words,
    quantum_matrix,
    random_poly,
    random_word,
    words_of_length,
)
from qmat.scalar import EchelonForm, LaurentScalar, specialized_rank

SparseVector = Dict[int, LaurentScalar]


@dataclass(frozen=True)
class OracleCaps:
    max_m: int = DEFAULT_MAX_M
    max_n: int = DEFAULT_MAX_N
    max_degree: int = DEFAULT_MAX_DEGREE

    def check(self, m: int, n: int, d: Optional[int] = None) -> None:
        if m < 1 or n < 1:
            raise AlgebraError(f"need m, n >= 1, got {m}x{n}")
        if m > self.max_m or n > self.max_n:
            raise CapExceededError(
                f"{m}x{n} exceeds the oracle cap "
                f"{self.max_m}x{self.max_n}"
            )
        if d is not None:
            if d < 0:
                raise AlgebraError(f"degree must be >= 0, got {d}")
            if d > self.max_degree:
                raise CapExceededError(
                    f"degree {d} exceeds the oracle cap {self.max_degree}"
                )


@dataclass
class CheckReport:
    check: str
    m: int
    n: int
    d: Optional[int]
    expected: Any
    got: Any
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "m": self.m,
            "n": self.n,
            "d": self.d,
            "expected": self.expected,
            "got": self.got,
            "pass": self.passed,
        }


@dataclass
class TruncatedMap:
    """A linear map between degree-d components. `columns[k]` holds the
    target coordinates of the image of `source_basis[k]`."""

    source: PresentedAlgebra
    target: PresentedAlgebra
    source_basis: List[Word]
    target_basis: List[Word]
    columns: List[SparseVector]

    def __post_init__(self) -> None:
        if len(self.columns) != len(self.source_basis):
            raise AlgebraError("one column per source basis word is required")
        size = len(self.target_basis)
        for col in self.columns:
            if any(not 0 <= k < size for k in col):
                raise AlgebraError("column coordinate outside target basis")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.target_basis), len(self.source_basis)

    def rows(self) -> List[SparseVector]:
        out: List[SparseVector] = [{} for _ in self.target_basis]
        for c, col in enumerate(self.columns):
            for r, value in col.items():
                out[r][c] = value
        return out

    def dense(self) -> List[List[LaurentScalar]]:
        zero = LaurentScalar.zero()
        return [
            [row.get(c, zero) for c in range(len(self.source_basis))]
            for row in self.rows()
        ]

    def rank(self) -> int:
        echelon = EchelonForm(len(self.target_basis))
        for col in self.columns:
            echelon.insert(col)
        return echelon.rank

    def kernel_dimension(self) -> int:
        return len(self.source_basis) - self.rank()


def coordinates(p: NCPoly, index: Mapping[Word, int]) -> SparseVector:
    try:
        return {index[w]: c for w, c in p.terms.items()}
    except KeyError as exc:
        raise AlgebraError(f"word {exc.args[0]} is outside the basis") from exc


def tensor_basis(m: int, n: int, r: int, s: int) -> List[Word]:
    """PBW words of the tensor algebra with y-degree r and z-degree s."""
    ys = pbw_words(tensor_algebra(m, n).left, r)
    zs = pbw_words(tensor_algebra(m, n).right, s)
    return [y + tuple(m + z for z in zw) for y in ys for zw in zs]


def build_theta_matrix(
    m: int, n: int, d: int, caps: Optional[OracleCaps] = None
) -> TruncatedMap:
    (caps or OracleCaps()).check(m, n, d)
    source = quantum_matrix(m, n)
    target = tensor_algebra(m, n)
    source_basis = pbw_words(source, d)
    target_basis = tensor_basis(m, n, d, d)
    index = {w: k for k, w in enumerate(target_basis)}
    columns = [
        coordinates(theta(NCPoly.monomial(source, w)), index)
        for w in source_basis
    ]
    return TruncatedMap(source, target, source_basis, target_basis, columns)


def _sandwiches(m: int, n: int, d: int) -> Iterable[NCPoly]:
    """u * g * v for 2 x 2 minors g and PBW words u, v of total degree d-2."""
    algebra = quantum_matrix(m, n)
    if d < 2:
        return
    for g in i1_generators(m, n):
        for left in range(d - 1):
            for u in pbw_words(algebra, left):
                for v in pbw_words(algebra, d - 2 - left):
                    yield multiply(
                        multiply(NCPoly.monomial(algebra, u), g),
                        NCPoly.monomial(algebra, v),
                    )


def kernel_equals_i1(
    m: int, n: int, d: int, caps: Optional[OracleCaps] = None
) -> CheckReport:
    """ker(theta) in degree d against the degree-d part of I_1."""
    theta_map = build_theta_matrix(m, n, d, caps)
    kernel_dim = theta_map.kernel_dimension()
    index = {w: k for k, w in enumerate(theta_map.source_basis)}
    span = EchelonForm(len(theta_map.source_basis))
    contained = True
    generated = 0
    for element in _sandwiches(m, n, d):
        generated += 1
        if not theta(element).is_zero():
            contained = False
        # once the span fills the kernel only containment is left to check
        if span.rank < kernel_dim:
            span.insert(coordinates(element, index))
    return CheckReport(
        "theta-kernel",
        m,
        n,
        d,
        kernel_dim,
        span.rank,
        contained and span.rank == kernel_dim,
        {"contained": contained, "generated": generated},
    )


def verify_s_basis(
    m: int, n: int, d: int, caps: Optional[OracleCaps] = None
) -> CheckReport:
    theta_map = build_theta_matrix(m, n, d, caps)
    rank = theta_map.rank()
    expected = s_basis_size(m, n, d)
    index = {w: k for k, w in enumerate(theta_map.target_basis)}
    source = quantum_matrix(m, n)
    images = EchelonForm(len(theta_map.target_basis))
    independent = all(
        images.insert(coordinates(theta(NCPoly.monomial(source, w)), index))
        for w in s_basis(m, n, d)
    )
    return CheckReport(
        "s-basis",
        m,
        n,
        d,
        expected,
        rank,
        rank == expected and independent,
        {"independent": independent},
    )


def verify_coinvariants(
    m: int,
    n: int,
    d: int,
    bidegree: Optional[Tuple[int, int]] = None,
    caps: Optional[OracleCaps] = None,
) -> CheckReport:
    """Coinvariants of bidegree (r, s) against the image of theta there;
    theta only reaches bidegree (d, d)."""
    r, s = bidegree if bidegree is not None else (d, d)
    (caps or OracleCaps()).check(m, n, max(r, s))
    target = tensor_algebra(m, n)
    basis = tensor_basis(m, n, r, s)
    echelon = EchelonForm(len(basis))
    for k, word in enumerate(basis):
        if coinvariant_check(NCPoly.monomial(target, word)).ok:
            echelon.insert({k: LaurentScalar.one()})
    coinvariant_dim = echelon.rank
    image_rank = build_theta_matrix(m, n, r, caps).rank() if r == s else 0
    return CheckReport(
        "coinv",
        m,
        n,
        d,
        image_rank,
        coinvariant_dim,
        image_rank == coinvariant_dim,
        {"bidegree": [r, s]},
    )


def verify_pbw(
    m: int, n: int, d: int, caps: Optional[OracleCaps] = None
) -> CheckReport:
    """Normal forms of all words of length d span exactly the PBW words."""
    (caps or OracleCaps()).check(m, n, d)
    algebra = quantum_matrix(m, n)
    basis = pbw_words(algebra, d)
    index = {w: k for k, w in enumerate(basis)}
    echelon = EchelonForm(len(basis))
    for word in words_of_length(algebra, d):
        if echelon.rank == len(basis):
            break
        echelon.insert(
            coordinates(normal_form(NCPoly.monomial(algebra, word)), index)
        )
    expected = component_dimension(algebra, d)
    return CheckReport(
        "pbw",
        m,
        n,
        d,
        expected,
        echelon.rank,
        expected == echelon.rank == len(basis),
    )


def verify_confluence(
    m: int,
    n: int,
    samples: int = DEFAULT_FUZZ_SAMPLES,
    max_length: int = 6,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    algebra = quantum_matrix(m, n)
    rng = random.Random(seed)
    agree = 0
    for _ in range(samples):
        word = random_word(algebra, rng.randint(0, max_length), rng)
        p = NCPoly.monomial(algebra, word)
        if normal_form(p, "leftmost") == normal_form(p, "rightmost"):
            agree += 1
    return CheckReport(
        "confluence", m, n, max_length, samples, agree, agree == samples
    )


def verify_centrality(n: int) -> CheckReport:
    """The quantum determinant commutes with every generator."""
    algebra = quantum_matrix(n, n)
    det = quantum_determinant(algebra)
    central = sum(
        1
        for k in range(algebra.ngens)
        if (
            det * NCPoly.generator(algebra, k)
            - NCPoly.generator(algebra, k) * det
        ).is_zero()
    )
    return CheckReport(
        "centrality", n, n, n, algebra.ngens, central, central == algebra.ngens
    )


def _random_reduced(
    m: int, n: int, rng: random.Random, max_degree: int
) -> NCPoly:
    algebra = quantum_matrix(m, n)
    while True:
        p = reduce_mod_i1(random_poly(algebra, rng, max_degree=max_degree))
        if not p.is_zero():
            return p


def verify_domain(
    m: int,
    n: int,
    samples: int = 500,
    max_degree: int = 3,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Products of nonzero elements of O_q(M_{m,n})/I_1 stay nonzero."""
    rng = random.Random(seed)
    nonzero = 0
    for _ in range(samples):
        a = _random_reduced(m, n, rng, max_degree)
        b = _random_reduced(m, n, rng, max_degree)
        if not reduce_mod_i1(a * b).is_zero():
            nonzero += 1
    return CheckReport(
        "domain", m, n, max_degree, samples, nonzero, nonzero == samples
    )


_ALPHAS = {LaurentScalar.q(k) for k in range(-2, 3)}
_BETAS = {LaurentScalar.q(k) for k in range(-1, 2)}


def verify_commutation(m: int, n: int) -> CheckReport:
    """For all X[i,j], X[s,t]: X[i,j]X[s,t] - alpha X[s,t]X[i,j] and
    X[i,j]X[s,t] - beta X[i,t]X[s,j] vanish modulo I_1."""
    algebra = quantum_matrix(m, n)
    cells = list(product(range(1, m + 1), range(1, n + 1)))
    total = 0
    good = 0
    for (i, j), (s, t) in product(cells, cells):
        total += 1
        scalars = scalar_commutator(i, j, s, t)
        x_ij, x_st = algebra.index(i, j), algebra.index(s, t)
        x_it, x_sj = algebra.index(i, t), algebra.index(s, j)
        lhs = NCPoly.monomial(algebra, (x_ij, x_st))
        first = lhs - NCPoly.monomial(algebra, (x_st, x_ij), scalars.alpha)
        second = lhs - NCPoly.monomial(algebra, (x_it, x_sj), scalars.beta)
        if (
            scalars.alpha in _ALPHAS
            and scalars.beta in _BETAS
            and reduce_mod_i1(first).is_zero()
            and reduce_mod_i1(second).is_zero()
        ):
            good += 1
    return CheckReport("lemma33", m, n, 2, total, good, good == total)


def verify_iso(m: int, n: int) -> CheckReport:
    pairs = [p for p in enumerate_hprimes(m, n) if not p.maximal]
    failed = [
        p.node_id for p in pairs if not quotient_iso_check(p).passed
    ]
    return CheckReport(
        "iso",
        m,
        n,
        None,
        len(pairs),
        len(pairs) - len(failed),
        not failed,
        {"failed": failed},
    )


def verify_specialization(
    m: int,
    n: int,
    d: int,
    seed: int = DEFAULT_SEED,
    caps: Optional[OracleCaps] = None,
) -> CheckReport:
    """Symbolic ranks equal ranks at a random rational q = c."""
    rng = random.Random(seed)
    # numerator 2..9 over 1 or a larger denominator: never 0 or +-1
    c = Fraction(rng.randint(2, 9), rng.choice([1, 10, 11, 13]))
    if rng.random() < 0.5:
        c = -c
    theta_map = build_theta_matrix(m, n, d, caps)
    symbolic = theta_map.rank()
    special = specialized_rank(theta_map.dense(), c)
    return CheckReport(
        "specialization",
        m,
        n,
        d,
        symbolic,
        special,
        symbolic == special,
        {"c": str(c)},
    )


CHECKS: Dict[str, Callable[..., CheckReport]] = {
    "pbw": verify_pbw,
    "theta-kernel": kernel_equals_i1,
    "s-basis": verify_s_basis,
    "coinv": verify_coinvariants,
    "lemma33": verify_commutation,
    "commutation": verify_commutation,
    "centrality": verify_centrality,
    "confluence": verify_confluence,
    "domain": verify_domain,
    "iso": verify_iso,
    "specialization": verify_specialization,
}

# checks whose reports depend on a degree
DEGREE_CHECKS = ("pbw", "theta-kernel", "s-basis", "coinv", "specialization")


def expand_plan(manifest: Mapping[str, Any]) -> List[Dict[str, Any]]:
    """Expand manifest `checks` entries; list-valued fields other than
    `bidegree` become a cartesian product."""
    entries = manifest.get("checks")
    if not isinstance(entries, list):
        raise AlgebraError("manifest needs a `checks` list")
    plan: List[Dict[str, Any]] = []
    for entry in entries:
        if not isinstance(entry, dict) or entry.get("check") not in CHECKS:
            raise AlgebraError(f"unknown check in manifest: {entry!r}")
        keys = [
            k
            for k, v in entry.items()
            if isinstance(v, list) and k != "bidegree"
        ]
        for values in product(*(entry[k] for k in keys)):
            item = dict(entry)
            item.update(zip(keys, values))
            plan.append(item)
    return plan


def run_entry(
    entry: Mapping[str, Any], caps: Optional[OracleCaps] = None
) -> CheckReport:
    params = dict(entry)
    name = params.pop("check")
    if "bidegree" in params:
        params["bidegree"] = tuple(params["bidegree"])
    if name == "centrality":
        params.pop("m", None)
    if caps is not None and name in DEGREE_CHECKS:
        params["caps"] = caps
    return CHECKS[name](**params)


def run_plan(
    plan: List[Dict[str, Any]],
    jobs: int = 1,
    caps: Optional[OracleCaps] = None,
) -> List[CheckReport]:
    if jobs <= 1:
        return [run_entry(entry, caps) for entry in plan]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_entry, plan, [caps] * len(plan)))
