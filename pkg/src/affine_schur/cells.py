"""
Two-sided cells and the idempotent-generated ideal chain of S^(n, r).

Path statistics
    An antidiagonal path runs up and to the right through the periodic
    matrix. A path may pass through several translates of the same entry, but
    every entry (an orbit of cells under the diagonal shift by n) is counted
    once, so the weight of a union of paths is the total of the distinct
    entries it meets. Cells met by one path form a chain for

        (x, y) <= (x', y')  iff  x' <= x and y' >= y,

    and every chain lies on some path. Passing to orbits, entry u precedes
    entry v when some translate of v lies weakly above-right of u; this is a
    partial order on the finitely many entries, d_j is the largest weight of
    a union of j of its chains, and rho(A) = (d_1, d_2 - d_1, ...). Counting
    only the cells on rows 1..n would break the symmetry rho(A^T) = rho(A)
    and disagrees with the dimensions of the ideal chain.

Ideals
    J_i is generated by the idempotents of the first i partitions in the
    total order. Membership is decided only positively: an element is
    Confirmed when it is an exact rational combination of products
    e_B l_mu e_C with spread(B), spread(C) <= W. Otherwise the verdict is
    UnknownAtBound(W), never a refutation.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import AlgebraElement, basis_element, element_to_json, idempotent, multiply, product
from .combinatorics import (
    Composition,
    Partition,
    dominance_leq,
    is_partition,
    total_order,
)
from .linalg import EchelonSpan
from .matrices import PeriodicMatrix, basis, diag, matrix_to_json

# ---------------------------------------------------------------------------
# d-values and rho


def _precedes(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Cell a lies weakly down-left of cell b, so one up/right path can visit a then b."""
    return b[0] <= a[0] and b[1] >= a[1]


def entry_precedes(u: tuple[int, int], v: tuple[int, int], n: int) -> bool:
    """Some translate (v + k(n, n)) of the entry v lies weakly above-right of u, v != u."""
    if u == v:
        return False
    (x, y), (x2, y2) = u, v
    return -((y2 - y) // n) <= (x - x2) // n


def d_values_oracle(A: PeriodicMatrix) -> tuple[int, ...]:
    """
    Exhaustive search on explicit translates: a set of entries counts as a
    chain when one translate per entry can be picked making the cells
    pairwise comparable. Translates within ``reach`` periods of the first
    entry are tried, which covers every chain (consecutive entries of a chain
    sit at most spread + 1 periods apart).
    """
    n = A.n
    weight = dict(A.entries)
    orbits = sorted(weight)
    reach = (A.spread() + 1) * max(1, len(orbits))

    def is_chain(entries) -> bool:
        first, *rest = entries
        for shifts in itertools.product(range(-reach, reach + 1), repeat=len(rest)):
            cells = [first] + [(x + k * n, y + k * n) for (x, y), k in zip(rest, shifts)]
            if all(_precedes(a, b) or _precedes(b, a) for a, b in itertools.combinations(cells, 2)):
                return True
        return False

    chains = [
        frozenset(c)
        for size in range(1, len(orbits) + 1)
        for c in itertools.combinations(orbits, size)
        if is_chain(c)
    ]
    out = []
    for j in range(1, n + 1):
        best = 0
        for family in itertools.combinations_with_replacement(chains, j):
            best = max(best, sum(weight[c] for c in frozenset().union(*family)))
        out.append(best)
    return tuple(out)


def d_values_dp(A: PeriodicMatrix) -> tuple[int, ...]:
    """
    Grow j disjoint chains through the entries in order of increasing offset
    y - x (offsets strictly increase along a chain). The state is the multiset
    of chain tails; each entry is skipped or appended to one compatible chain.
    Disjointness loses nothing, since dropping an entry from a chain leaves a
    chain.
    """
    n = A.n
    entries = sorted(A.entries, key=lambda e: (e[0][1] - e[0][0], e[0]))
    out = []
    for j in range(1, n + 1):
        states: dict[tuple, int] = {(-1,) * j: 0}
        for idx, (cell, v) in enumerate(entries):
            nxt = dict(states)
            for tails, w in states.items():
                for slot, t in enumerate(tails):
                    if slot and tails[slot - 1] == t:
                        continue  # same tail, same outcome
                    if t == -1 or entry_precedes(entries[t][0], cell, n):
                        key = tuple(sorted(tails[:slot] + (idx,) + tails[slot + 1:]))
                        if nxt.get(key, -1) < w + v:
                            nxt[key] = w + v
            states = nxt
        out.append(max(states.values()))
    return tuple(out)


def d_values(A: PeriodicMatrix, check: bool = False) -> tuple[int, ...]:
    d = d_values_dp(A)
    if check and d != d_values_oracle(A):
        raise AssertionError(f"d-value methods disagree on {A!r}")
    return d


@dataclass(frozen=True)
class CellLabel:
    """rho(A) together with its position in the total order (1-based)."""

    partition: Partition
    index: int

    def __post_init__(self):
        if not is_partition(self.partition):
            raise ValueError(f"{self.partition} is not a partition")


def increments(d: Sequence[int]) -> tuple[int, ...]:
    return tuple(b - a for a, b in zip((0,) + tuple(d), d))


def rho(A: PeriodicMatrix) -> CellLabel:
    lam = increments(d_values(A))
    return CellLabel(lam, total_order(A.n, A.r).index(lam) + 1)


# ---------------------------------------------------------------------------
# ideals and membership


@dataclass(frozen=True)
class IdealHandle:
    """
    A two-sided ideal generated by idempotents l_mu.

    For chain members ``index`` is i and ``label`` is lambda^(i); ideals built
    from arbitrary compositions have index None.
    """

    n: int
    r: int
    generators: tuple[Composition, ...]
    index: int | None = None
    label: Partition | None = None

    def generator_element(self) -> AlgebraElement:
        return AlgebraElement(self.n, self.r, {diag(mu): 1 for mu in self.generators})


def chain(n: int, r: int) -> list[IdealHandle]:
    """
    J_1 <= ... <= J_t over the total order. J_i is generated by the first i
    partitions; this contains every mu dominating lambda^(i) because the total
    order refines dominance, and it keeps the generator sets nested even where
    dominance is only partial.
    """
    order = total_order(n, r)
    return [
        IdealHandle(n, r, tuple(order[:i]), i, order[i - 1])
        for i in range(1, len(order) + 1)
    ]


def ideal(n: int, r: int, generators: Iterable[Sequence[int]]) -> IdealHandle:
    gens = tuple(sorted({tuple(mu) for mu in generators}, reverse=True))
    for mu in gens:
        if len(mu) != n or sum(mu) != r or min(mu) < 0:
            raise ValueError(f"{mu} is not in Lambda({n},{r})")
    return IdealHandle(n, r, gens)


@dataclass(frozen=True)
class WitnessTerm:
    coefficient: Fraction
    left: PeriodicMatrix
    mu: Composition
    right: PeriodicMatrix

    def to_json(self) -> dict:
        c = self.coefficient
        return {
            "coefficient": str(c) if c.denominator != 1 else int(c),
            "B": matrix_to_json(self.left),
            "mu": list(self.mu),
            "C": matrix_to_json(self.right),
        }


@dataclass
class MembershipCertificate:
    verdict: str  # "Confirmed" or "UnknownAtBound"
    window: int
    ideal: IdealHandle
    query: AlgebraElement
    witness: list[WitnessTerm] = field(default_factory=list)
    product_hash: str | None = None

    @property
    def confirmed(self) -> bool:
        return self.verdict == "Confirmed"

    def describe(self) -> str:
        return "Confirmed" if self.confirmed else f"UnknownAtBound({self.window})"

    def evaluate(self) -> AlgebraElement:
        """Recompute sum c * e_B l_mu e_C by direct multiplication."""
        acc = AlgebraElement.zero(self.query.n, self.query.r)
        for t in self.witness:
            term = product(basis_element(t.left), idempotent(t.mu), basis_element(t.right))
            acc = acc + term.scale(t.coefficient)
        return acc

    def verify(self) -> bool:
        if not self.confirmed:
            return False
        value = self.evaluate()
        return value == self.query and element_hash(value) == self.product_hash

    def to_json(self) -> dict:
        return {
            "verdict": self.describe(),
            "window": self.window,
            "ideal": {"index": self.ideal.index, "generators": [list(m) for m in self.ideal.generators]},
            "query": element_to_json(self.query),
            "witness": [t.to_json() for t in self.witness],
            "product_hash": self.product_hash,
        }


def element_hash(x: AlgebraElement) -> str:
    blob = json.dumps(element_to_json(x), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _vector(x: AlgebraElement) -> dict:
    return dict(x.items())


@lru_cache(maxsize=None)
def _factors(n: int, r: int, row, col, W: int) -> tuple[PeriodicMatrix, ...]:
    # small spreads first, so generators and short witnesses are found first
    return tuple(sorted(basis(n, r, W, row=row, col=col), key=lambda A: (A.spread(), A.sort_key())))


@lru_cache(maxsize=None)
def _block_span(n: int, r: int, generators: tuple, row, col, W: int) -> EchelonSpan:
    """Span of e_B l_mu e_C with row(B) = row, col(C) = col, mu a generator."""
    span: EchelonSpan = EchelonSpan(key=PeriodicMatrix.sort_key)
    for mu in generators:
        lefts = _factors(n, r, row, mu, W)
        rights = _factors(n, r, mu, col, W)
        for B in lefts:
            eB = basis_element(B)
            for C in rights:
                span.add(_vector(multiply(eB, basis_element(C))), (B, mu, C))
    return span


def membership(x: AlgebraElement, J: IdealHandle, W: int = 2) -> MembershipCertificate:
    """Certify x in J from products with factor spread at most W."""
    if W < 0:
        raise ValueError("window must be nonnegative")
    if (x.n, x.r) != (J.n, J.r):
        raise ValueError("element and ideal live in different algebras")
    blocks: dict[tuple, dict] = {}
    for A, c in x.items():
        blocks.setdefault((A.row(), A.col()), {})[A] = c
    witness: list[WitnessTerm] = []
    for (row, col), vec in sorted(blocks.items(), reverse=True):
        span = _block_span(J.n, J.r, J.generators, row, col, W)
        combo = span.express(vec)
        if combo is None:
            return MembershipCertificate("UnknownAtBound", W, J, x)
        for g, c in sorted(combo.items()):
            B, mu, C = span.generators[g]
            witness.append(WitnessTerm(Fraction(c), B, mu, C))
    cert = MembershipCertificate("Confirmed", W, J, x, witness)
    value = cert.evaluate()
    if value != x:
        raise AssertionError("membership witness failed to re-verify")
    cert.product_hash = element_hash(value)
    return cert


def sn_orbit_ideal_equality(lam: Sequence[int], mu: Sequence[int], W: int = 2) -> tuple[MembershipCertificate, MembershipCertificate]:
    """Check l_lam in <l_mu> and l_mu in <l_lam>; inputs must be rearrangements."""
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) != len(mu) or sorted(lam) != sorted(mu):
        raise ValueError(f"{mu} is not a rearrangement of {lam}")
    n, r = len(lam), sum(lam)
    forward = membership(idempotent(lam), ideal(n, r, [mu]), W)
    backward = membership(idempotent(mu), ideal(n, r, [lam]), W)
    return forward, backward


# ---------------------------------------------------------------------------
# strata


@dataclass(frozen=True)
class LaurentPresentation:
    """Z[x_1, ..., x_k] with the variables in ``inverted`` also inverted."""

    variables: int
    inverted: tuple[int, ...]

    def __post_init__(self):
        if any(not 1 <= m <= self.variables for m in self.inverted):
            raise ValueError("inverted index outside the variable range")

    def __str__(self):
        gens = []
        for k in range(1, self.variables + 1):
            gens.append(f"x{k}")
            if k in self.inverted:
                gens.append(f"x{k}^-1")
        return "Z[" + ", ".join(gens) + "]"


def b_lambda(lam: Sequence[int]) -> LaurentPresentation:
    """B_lambda: m(i) = lambda_1 - lambda_{i+1} for i = 1..n, with lambda_{n+1} = 0."""
    lam = tuple(lam)
    if not lam or not is_partition(lam) or sum(lam) < 1:
        raise ValueError(f"{lam} is not a nonzero partition")
    padded = lam + (0,)
    m = {lam[0] - padded[i] for i in range(1, len(lam) + 1)}
    return LaurentPresentation(lam[0], tuple(sorted(m - {0})))


@dataclass
class StratumReport:
    lam: Partition
    index: int
    window: int
    keys: list[PeriodicMatrix]
    outside_translation_span: list[PeriodicMatrix]
    pairs_tested: int
    noncommuting: list[tuple[PeriodicMatrix, PeriodicMatrix]]

    @property
    def spanned(self) -> bool:
        return not self.outside_translation_span

    @property
    def commutative(self) -> bool:
        return not self.noncommuting


def quotient_span(lam: Sequence[int], W: int) -> EchelonSpan:
    """Truncated span of J_{i-1} inside l_lam S l_lam, where lam = lambda^(i)."""
    lam = tuple(lam)
    n, r = len(lam), sum(lam)
    i = total_order(n, r).index(lam) + 1
    if i == 1:
        return EchelonSpan(key=PeriodicMatrix.sort_key)
    return _block_span(n, r, chain(n, r)[i - 2].generators, lam, lam, W)


def reduce_modulo(x: AlgebraElement, span: EchelonSpan) -> dict:
    return span.reduce(_vector(x))


def stratum_basis(lam: Sequence[int], W: int = 2) -> StratumReport:
    """
    Spanning and commutativity diagnostics for l_lam S l_lam modulo J_{i-1},
    everything truncated at spread W.
    """
    lam = tuple(lam)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    n, r = len(lam), sum(lam)
    index = total_order(n, r).index(lam) + 1
    keys = basis(n, r, W, row=lam, col=lam)
    modulo = quotient_span(lam, W)

    with_translations: EchelonSpan = EchelonSpan(key=PeriodicMatrix.sort_key)
    for p, row in modulo.rows.items():
        with_translations.add(row)
    for A in keys:
        if A.is_translation():
            with_translations.add({A: 1})
    outside = [A for A in keys if not with_translations.contains({A: 1})]

    small = [A for A in keys if A.spread() <= W // 2]
    bad = []
    tested = 0
    for A, B in itertools.combinations(small, 2):
        eA, eB = basis_element(A), basis_element(B)
        comm = multiply(eA, eB) - multiply(eB, eA)
        tested += 1
        if reduce_modulo(comm, modulo):
            bad.append((A, B))
    return StratumReport(lam, index, W, keys, outside, tested, bad)


def dominated_generators(lam: Sequence[int], n: int) -> list[Partition]:
    """The partitions mu with mu >= lam in dominance order."""
    r = sum(lam)
    return [mu for mu in total_order(n, r) if dominance_leq(lam, mu)]


__all__ = [
    "CellLabel",
    "IdealHandle",
    "LaurentPresentation",
    "MembershipCertificate",
    "StratumReport",
    "WitnessTerm",
    "b_lambda",
    "chain",
    "d_values",
    "d_values_dp",
    "d_values_oracle",
    "dominated_generators",
    "element_hash",
    "ideal",
    "increments",
    "membership",
    "quotient_span",
    "rho",
    "sn_orbit_ideal_equality",
    "stratum_basis",
]
