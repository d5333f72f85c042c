"""
Torus-invariant primes containing I_1.

Each such prime is P(I, J) = I_1 + <X[i,j] : i in I or j in J>, and every
pair with I or J full names the same maximal ideal. A non-maximal P(I, J)
has quotient O_q(M_{m',n'})/I_1' where the surviving rows and columns are
re-indexed; this presentation decides containment between the P(I, J)
without any Groebner machinery.

Programmatic helpers:
- `IdealPair.of(rows, cols, m, n)` builds a canonical pair
- `quotient_map(pair)` returns the maps f and g of the quotient presentation
- `hasse_diagram(m, n)` returns a `HasseDiagram` with DOT and JSON renderings
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

import graphviz
import networkx as nx

from qmat.constants import DEFAULT_HASSE_CAP
from qmat.detid import i1_generators, reduce_mod_i1
from qmat.exceptions import AlgebraError, CapExceededError
from qmat.maps import apply_homomorphism
from qmat.ncalg import NCPoly, QuantumMatrix, quantum_matrix
from qmat.scalar import LaurentScalar


@dataclass(frozen=True, order=True)
class IdealPair:
    """Canonical (I, J) naming the ideal P(I, J) of O_q(M_{m,n})."""

    m: int
    n: int
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    maximal: bool = False

    @classmethod
    def of(
        cls, rows: Iterable[int], cols: Iterable[int], m: int, n: int
    ) -> "IdealPair":
        if m < 1 or n < 1:
            raise AlgebraError(f"need m, n >= 1, got {m}x{n}")
        r = tuple(sorted(set(rows)))
        c = tuple(sorted(set(cols)))
        if any(not 1 <= i <= m for i in r) or any(not 1 <= j <= n for j in c):
            raise AlgebraError(f"row/column index out of range for {m}x{n}")
        if len(r) == m or len(c) == n:
            return cls.top(m, n)
        return cls(m, n, r, c, False)

    @classmethod
    def top(cls, m: int, n: int) -> "IdealPair":
        return cls(m, n, tuple(range(1, m + 1)), tuple(range(1, n + 1)), True)

    @classmethod
    def bottom(cls, m: int, n: int) -> "IdealPair":
        return cls.of((), (), m, n)

    @property
    def row_set(self) -> FrozenSet[int]:
        return frozenset(self.rows)

    @property
    def col_set(self) -> FrozenSet[int]:
        return frozenset(self.cols)

    def killed(self, i: int, j: int) -> bool:
        return self.maximal or i in self.row_set or j in self.col_set

    @property
    def node_id(self) -> str:
        if self.maximal:
            return "P_M"
        parts = [f"r{i}" for i in self.rows] + [f"c{j}" for j in self.cols]
        return "_".join(["P"] + parts) if parts else "P_0"

    @property
    def label(self) -> str:
        """Pictograph for 2 x 2 (filled dot for a killed generator, box for
        I_1 itself); explicit (I, J) otherwise."""
        if (self.m, self.n) == (2, 2):
            if not self.maximal and not self.rows and not self.cols:
                return "(□)"
            return "\n".join(
                "".join(
                    "•" if self.killed(i, j) else "∘" for j in range(1, 3)
                )
                for i in range(1, 3)
            )
        if self.maximal:
            return "M"
        return f"({_set_text(self.rows)},{_set_text(self.cols)})"

    def to_json(self) -> Dict[str, Any]:
        return {
            "id": self.node_id,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "maximal": self.maximal,
            "label": self.label,
        }


def _set_text(values: Tuple[int, ...]) -> str:
    if not values:
        return "∅"
    return "{" + ",".join(str(v) for v in values) + "}"


@dataclass(frozen=True)
class CommutationScalars:
    alpha: LaurentScalar
    beta: LaurentScalar


def p_ideal_generators(pair: IdealPair) -> List[NCPoly]:
    """The 2 x 2 quantum minors followed by the killed generators."""
    algebra = quantum_matrix(pair.m, pair.n)
    gens = list(i1_generators(pair.m, pair.n))
    for i in range(1, pair.m + 1):
        for j in range(1, pair.n + 1):
            if pair.killed(i, j):
                gens.append(NCPoly.generator(algebra, algebra.index(i, j)))
    return gens


def scalar_commutator(i: int, j: int, s: int, t: int) -> CommutationScalars:
    """alpha, beta with X[i,j]X[s,t] = alpha X[s,t]X[i,j] and
    X[i,j]X[s,t] = beta X[i,t]X[s,j] modulo I_1."""
    if min(i, j, s, t) < 1:
        raise AlgebraError("generator indices are 1-based")
    q = LaurentScalar.q
    if i == s:
        alpha = q(1) if j < t else q(-1) if j > t else q(0)
        return CommutationScalars(alpha, alpha)
    if j == t:
        return CommutationScalars(q(1) if i < s else q(-1), q(0))
    if i < s:
        if j > t:
            return CommutationScalars(q(0), q(-1))
        return CommutationScalars(q(2), q(1))
    if j < t:
        return CommutationScalars(q(0), q(1))
    return CommutationScalars(q(-2), q(-1))


def hprime_count(m: int, n: int) -> int:
    return (2**m - 1) * (2**n - 1) + 1


def enumerate_hprimes(m: int, n: int) -> List[IdealPair]:
    """Canonical pairs ordered by |I| + |J|, then I, then J; maximal last."""
    if m < 1 or n < 1:
        raise AlgebraError(f"need m, n >= 1, got {m}x{n}")
    pairs = []
    for a in range(m):
        for rows in combinations(range(1, m + 1), a):
            for b in range(n):
                for cols in combinations(range(1, n + 1), b):
                    pairs.append(IdealPair(m, n, rows, cols, False))
    pairs.sort(key=lambda p: (len(p.rows) + len(p.cols), p.rows, p.cols))
    pairs.append(IdealPair.top(m, n))
    return pairs


@dataclass(frozen=True)
class QuotientMap:
    """f: O_q(M_{m',n'}) -> O_q(M_{m,n}) and g in the other direction."""

    pair: IdealPair
    source: QuantumMatrix
    target: QuantumMatrix
    kept_rows: Tuple[int, ...]
    kept_cols: Tuple[int, ...]
    g_images: Tuple[NCPoly, ...] = field(repr=False)
    f_images: Tuple[NCPoly, ...] = field(repr=False)

    def g(self, p: NCPoly) -> NCPoly:
        return apply_homomorphism(p, self.g_images, self.target)

    def f(self, p: NCPoly) -> NCPoly:
        return apply_homomorphism(p, self.f_images, self.source)


def quotient_map(pair: IdealPair) -> QuotientMap:
    if pair.maximal:
        raise AlgebraError("the maximal ideal has no matrix quotient")
    source = quantum_matrix(pair.m, pair.n)
    kept_rows = tuple(i for i in range(1, pair.m + 1) if i not in pair.row_set)
    kept_cols = tuple(j for j in range(1, pair.n + 1) if j not in pair.col_set)
    target = quantum_matrix(len(kept_rows), len(kept_cols))
    row_pos = {i: a for a, i in enumerate(kept_rows, start=1)}
    col_pos = {j: b for b, j in enumerate(kept_cols, start=1)}
    g_images = []
    for i in range(1, pair.m + 1):
        for j in range(1, pair.n + 1):
            if pair.killed(i, j):
                g_images.append(NCPoly.zero(target))
            else:
                index = target.index(row_pos[i], col_pos[j])
                g_images.append(NCPoly.generator(target, index))
    f_images = [
        NCPoly.generator(source, source.index(i, j))
        for i in kept_rows
        for j in kept_cols
    ]
    return QuotientMap(
        pair,
        source,
        target,
        kept_rows,
        kept_cols,
        tuple(g_images),
        tuple(f_images),
    )


def hprime_leq(a: IdealPair, b: IdealPair, semantic: bool = False) -> bool:
    """P(a) is contained in P(b)."""
    if (a.m, a.n) != (b.m, b.n):
        raise AlgebraError("ideal pairs over different matrix sizes")
    if not semantic:
        if b.maximal:
            return True
        if a.maximal:
            return False
        return a.row_set <= b.row_set and a.col_set <= b.col_set
    if b.maximal:
        return True
    quotient = quotient_map(b)
    return all(
        reduce_mod_i1(quotient.g(gen)).is_zero()
        for gen in p_ideal_generators(a)
    )


def _relations(algebra: QuantumMatrix) -> List[NCPoly]:
    """X_high X_low minus its rewrite, for every descending pair."""
    out = []
    for high in range(algebra.ngens):
        for low in range(high):
            terms = {(high, low): LaurentScalar.one()}
            for coeff, word in algebra.rewrite_pair(high, low):
                terms[word] = terms.get(word, LaurentScalar.zero()) - coeff
            out.append(NCPoly(algebra, terms))
    return out


@dataclass
class IsoReport:
    pair: IdealPair
    m_prime: int
    n_prime: int
    gf_identity: bool
    fg_identity: bool
    g_kills_ideal: bool
    relations_respected: Optional[bool] = None

    @property
    def passed(self) -> bool:
        return (
            self.gf_identity
            and self.fg_identity
            and self.g_kills_ideal
            and self.relations_respected is not False
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "pair": self.pair.to_json(),
            "m_prime": self.m_prime,
            "n_prime": self.n_prime,
            "gf_identity": self.gf_identity,
            "fg_identity": self.fg_identity,
            "g_kills_ideal": self.g_kills_ideal,
            "relations_respected": self.relations_respected,
            "pass": self.passed,
        }


def quotient_iso_check(pair: IdealPair, relations: bool = True) -> IsoReport:
    """Check that f and g induce inverse isomorphisms
    O_q(M_{m,n})/P(I,J) <-> O_q(M_{m',n'})/I_1' on generator cosets."""
    qmap = quotient_map(pair)
    source, target = qmap.source, qmap.target

    gf_identity = all(
        reduce_mod_i1(qmap.g(qmap.f(x)) - x).is_zero()
        for x in (
            NCPoly.generator(target, k) for k in range(target.ngens)
        )
    )

    killed = {
        k
        for k in range(source.ngens)
        if pair.killed(*source.coords(k))
    }
    ideal = p_ideal_generators(pair)
    fg_identity = True
    for k in range(source.ngens):
        x = NCPoly.generator(source, k)
        image = qmap.f(qmap.g(x))
        if k in killed:
            fg_identity &= image.is_zero() and any(x == gen for gen in ideal)
        else:
            fg_identity &= image == x

    g_kills_ideal = all(
        reduce_mod_i1(qmap.g(gen)).is_zero() for gen in ideal
    )
    respected = None
    if relations:
        respected = all(
            qmap.g(rel).is_zero() for rel in _relations(source)
        )
    return IsoReport(
        pair,
        target.m,
        target.n,
        gf_identity,
        fg_identity,
        g_kills_ideal,
        respected,
    )


@dataclass
class HasseDiagram:
    m: int
    n: int
    nodes: List[IdealPair]
    edges: List[Tuple[IdealPair, IdealPair]]

    def to_json(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "n": self.n,
            "nodes": [p.to_json() for p in self.nodes],
            "edges": [
                {"from": a.node_id, "to": b.node_id} for a, b in self.edges
            ],
        }

    def to_dot(self) -> str:
        dot = graphviz.Digraph(
            name="hprimes", comment=f"H-primes {self.m}x{self.n}"
        )
        dot.attr(rankdir="BT")
        for pair in self.nodes:
            dot.node(pair.node_id, pair.label)
        for a, b in self.edges:
            dot.edge(a.node_id, b.node_id)
        return dot.source


def hasse_diagram(
    m: int, n: int, cap: int = DEFAULT_HASSE_CAP
) -> HasseDiagram:
    """Covering relations of the containment order, smaller to larger."""
    count = hprime_count(m, n)
    if count > cap:
        raise CapExceededError(
            f"{count} ideals for {m}x{n} exceed the Hasse cap of {cap}"
        )
    nodes = enumerate_hprimes(m, n)
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(
        (a, b)
        for a in nodes
        for b in nodes
        if a != b and hprime_leq(a, b)
    )
    reduced = nx.transitive_reduction(graph)
    order = {p: k for k, p in enumerate(nodes)}
    edges = sorted(reduced.edges(), key=lambda e: (order[e[0]], order[e[1]]))
    return HasseDiagram(m, n, nodes, edges)
