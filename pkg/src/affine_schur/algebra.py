"""
Exact arithmetic in the affine Schur algebra S^(n, r) at v = 1.

The basis is {e_A : A in Theta(n, r)}, with e_A identified with the orbit sum
xi_{i,j} for any (i, j) in the orbit matching A. Two product rules are
provided:

``multiply_basis_oracle``
    counts C(i,j,k,l,p,q) = #{s : (i,j) ~ (p,s), (s,q) ~ (k,l)} directly for a
    fixed representative (p, q) of every candidate output orbit;

``multiply_basis_coset``
    the double coset formula

        xi_{i,j} xi_{j,l} = sum_{d in S_{j,l} \\ S_j / S_{i,j}} [S_{i,ld} : S_{i,j,ld}] xi_{i,ld}

    with all stabilizers taken in the extended affine Weyl group.

The oracle is the reference; the coset rule is only trusted where it has been
compared against it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from sympy.utilities.iterables import multiset_permutations

from .combinatorics import (
    Composition,
    act,
    affine_stabilizer,
    aligning_element,
    compositions,
    double_cosets,
    residue,
    stabilizer_element,
)
from .matrices import PeriodicMatrix, diag, matrix_from_json, matrix_of_pair, matrix_to_json, pair_of_matrix


class AmbientMismatchError(ValueError):
    """Operands live in different algebras S^(n, r)."""


class MethodMismatchError(AssertionError):
    """The oracle and the coset rule disagree on a basis product."""


class AlgebraElement:
    """
    A finite linear combination of basis elements e_A of S^(n, r).

    Coefficients are ints (or Fractions for rational combinations); zero
    coefficients are never stored. Instances are immutable.
    """

    __slots__ = ("n", "r", "_terms")

    def __init__(self, n: int, r: int, terms: Mapping[PeriodicMatrix, int] | None = None):
        self.n, self.r = n, r
        clean = {}
        for A, c in (terms or {}).items():
            if A.n != n or A.r != r:
                raise AmbientMismatchError(f"{A!r} is not a basis index of S^({n},{r})")
            if c:
                clean[A] = c
        self._terms = clean

    @classmethod
    def basis_element(cls, A: PeriodicMatrix) -> AlgebraElement:
        return cls(A.n, A.r, {A: 1})

    @classmethod
    def zero(cls, n: int, r: int) -> AlgebraElement:
        return cls(n, r)

    # -- container protocol -----------------------------------------------

    def items(self):
        return self._terms.items()

    def support(self) -> list[PeriodicMatrix]:
        return sorted(self._terms)

    def coefficient(self, A: PeriodicMatrix):
        return self._terms.get(A, 0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[PeriodicMatrix]:
        return iter(self.support())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    # -- linear structure -------------------------------------------------

    def _check(self, other: AlgebraElement):
        if (self.n, self.r) != (other.n, other.r):
            raise AmbientMismatchError(
                f"S^({self.n},{self.r}) and S^({other.n},{other.r}) elements cannot be combined"
            )

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for A, c in other._terms.items():
            out[A] = out.get(A, 0) + c
        return AlgebraElement(self.n, self.r, out)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.n, self.r, {A: -c for A, c in self._terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> AlgebraElement:
        return AlgebraElement(self.n, self.r, {A: c * a for A, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.n, self.r) == (other.n, other.r) and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, self.r, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"0 in S^({self.n},{self.r})"
        return " + ".join(f"{c}*{A!r}" for A, c in sorted(self._terms.items()))


def element(n: int, r: int, terms: Iterable[tuple]) -> AlgebraElement:
    """Build an element from (coefficient, matrix) pairs, summing repeats."""
    acc: dict[PeriodicMatrix, int] = {}
    for c, A in terms:
        acc[A] = acc.get(A, 0) + c
    return AlgebraElement(n, r, acc)


def basis_element(A: PeriodicMatrix) -> AlgebraElement:
    return AlgebraElement.basis_element(A)


# ---------------------------------------------------------------------------
# the counting rule


def _check_ambient(A: PeriodicMatrix, B: PeriodicMatrix):
    if A.n != B.n or A.r != B.r:
        raise AmbientMismatchError(f"{A!r} and {B!r} live in different algebras")


def orbit_count(
    A: PeriodicMatrix, B: PeriodicMatrix, p: Sequence[int], q: Sequence[int]
) -> int:
    """
    #{s in Z^r : matrix_of_pair(p, s) = A and matrix_of_pair(s, q) = B}.

    Works for any representative (p, q) of the output orbit. Position t with
    p_t = x + kn may only take s_t = y + kn with a_{x,y} > 0; the remaining
    multiplicities of A (per row) and of B are tracked and pruned on.
    """
    n, r = A.n, A.r
    if len(p) != r or len(q) != r:
        raise ValueError("representative has the wrong length")
    rows: dict[int, dict[int, int]] = {}
    for (x, y), v in A.entries:
        rows.setdefault(x, {})[y] = v
    remaining_b = dict(B.entries)
    slots = []
    for t in range(r):
        x = residue(p[t], n)
        if x not in rows:
            return 0
        slots.append((x, p[t] - x, q[t]))

    def search(t: int) -> int:
        if t == r:
            return 1
        x, shift, qt = slots[t]
        row = rows[x]
        total = 0
        for y, left in row.items():
            if not left:
                continue
            s = y + shift
            ys = residue(s, n)
            key = (ys, qt - (s - ys))
            if not remaining_b.get(key):
                continue
            row[y] -= 1
            remaining_b[key] -= 1
            total += search(t + 1)
            row[y] += 1
            remaining_b[key] += 1
        return total

    return search(0)


def _arrangements(values: Sequence[int]) -> list[list[int]]:
    return list(multiset_permutations(sorted(values)))


def product_support(A: PeriodicMatrix, B: PeriodicMatrix) -> set[PeriodicMatrix]:
    """
    Every A'' with a nonzero coefficient in e_A e_B (assuming col(A) = row(B)).

    With (p, s) the canonical pair of A fixed, the q with (s, q) in the orbit
    of B are exactly the arrangements, per residue class of s, of the columns of
    the matching row of B. Each gives the output orbit of (p, q).
    """
    n = A.n
    p, s = pair_of_matrix(A)
    b_rows: dict[int, list[int]] = {}
    for (y, z), v in B.entries:
        b_rows.setdefault(y, []).extend([z] * v)
    classes: dict[int, list[tuple[int, int]]] = {}
    for t, st in enumerate(s):
        y = residue(st, n)
        classes.setdefault(y, []).append((t, st - y))
    choices = []
    for y, positions in classes.items():
        options = []
        for arrangement in _arrangements(b_rows[y]):
            options.append([(t, z + shift) for (t, shift), z in zip(positions, arrangement)])
        choices.append(options)
    found = set()
    q = [0] * A.r
    for choice in itertools.product(*choices):
        for part in choice:
            for t, val in part:
                q[t] = val
        found.add(matrix_of_pair(p, q, n))
    return found


def multiply_basis_oracle(A: PeriodicMatrix, B: PeriodicMatrix) -> AlgebraElement:
    """e_A e_B by direct orbit counting."""
    _check_ambient(A, B)
    if A.col() != B.row():
        return AlgebraElement.zero(A.n, A.r)
    terms = {}
    for C in product_support(A, B):
        p, q = pair_of_matrix(C)
        terms[C] = orbit_count(A, B, p, q)
    return AlgebraElement(A.n, A.r, terms)


def multiply_basis_coset(A: PeriodicMatrix, B: PeriodicMatrix) -> AlgebraElement:
    """e_A e_B by the double coset formula (see the module docstring)."""
    _check_ambient(A, B)
    if A.col() != B.row():
        return AlgebraElement.zero(A.n, A.r)
    n = A.n
    i, j = pair_of_matrix(A)
    j0, l0 = pair_of_matrix(B)
    g = aligning_element(j0, j, n)
    l = act(l0, g, n)

    S_j = affine_stabilizer(n, j)
    S_jl = affine_stabilizer(n, j, l)
    S_ij = affine_stabilizer(n, i, j)
    terms: dict[PeriodicMatrix, int] = {}
    for sigma in double_cosets(S_jl, S_j, S_ij):
        ld = act(l, stabilizer_element(j, sigma, n), n)
        top = affine_stabilizer(n, i, ld).order()
        bottom = affine_stabilizer(n, i, j, ld).order()
        C = matrix_of_pair(i, ld, n)
        terms[C] = terms.get(C, 0) + top // bottom
    return AlgebraElement(n, A.r, terms)


class StructureConstantTable:
    """
    Memo of basis products (A, B) -> e_A e_B for one product rule.

    Entries are written once per key; concurrent writers for the same key
    compute identical values, so plain dict assignment is enough.
    """

    def __init__(self, rule: Callable[[PeriodicMatrix, PeriodicMatrix], AlgebraElement]):
        self.rule = rule
        self._memo: dict[tuple[PeriodicMatrix, PeriodicMatrix], AlgebraElement] = {}

    def __call__(self, A: PeriodicMatrix, B: PeriodicMatrix) -> AlgebraElement:
        key = (A, B)
        hit = self._memo.get(key)
        if hit is None:
            hit = self.rule(A, B)
            self._memo[key] = hit
        return hit

    def __len__(self):
        return len(self._memo)

    def clear(self):
        self._memo.clear()

    def disagreements(self, reference=multiply_basis_oracle) -> list[tuple[PeriodicMatrix, PeriodicMatrix]]:
        """Cached keys whose value differs from ``reference``."""
        return [key for key, val in list(self._memo.items()) if reference(*key) != val]


TABLES = {
    "oracle": StructureConstantTable(multiply_basis_oracle),
    "coset": StructureConstantTable(multiply_basis_coset),
}
METHODS = ("oracle", "coset", "cross-check")


def basis_product(A: PeriodicMatrix, B: PeriodicMatrix, method: str = "oracle") -> AlgebraElement:
    if method == "cross-check":
        a, b = TABLES["oracle"](A, B), TABLES["coset"](A, B)
        if a != b:
            raise MethodMismatchError(f"e_A e_B differs between methods for A={A!r}, B={B!r}")
        return a
    try:
        table = TABLES[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}, expected one of {METHODS}") from None
    return table(A, B)


def multiply(x: AlgebraElement, y: AlgebraElement, method: str = "oracle") -> AlgebraElement:
    """Bilinear extension of the chosen basis product rule."""
    x._check(y)
    by_row: dict[Composition, list] = {}
    for B, b in y.items():
        by_row.setdefault(B.row(), []).append((B, b))
    out: dict[PeriodicMatrix, int] = {}
    for A, a in x.items():
        for B, b in by_row.get(A.col(), ()):
            for C, c in basis_product(A, B, method).items():
                out[C] = out.get(C, 0) + a * b * c
    return AlgebraElement(x.n, x.r, out)


def product(*factors: AlgebraElement, method: str = "oracle") -> AlgebraElement:
    acc = factors[0]
    for f in factors[1:]:
        acc = multiply(acc, f, method)
    return acc


# ---------------------------------------------------------------------------
# distinguished elements


def idempotent(lam: Sequence[int]) -> AlgebraElement:
    """l_lambda = e_{diag(lambda)}."""
    if any(x < 0 for x in lam) or sum(lam) < 1:
        raise ValueError(f"{tuple(lam)} is not a composition of a positive integer")
    return basis_element(diag(lam))


def identity(n: int, r: int) -> AlgebraElement:
    """The sum of all l_lambda, lambda in Lambda(n, r)."""
    return AlgebraElement(n, r, {diag(lam): 1 for lam in compositions(n, r)})


def antiauto(x: AlgebraElement) -> AlgebraElement:
    """The involution e_A -> e_{A^T}, extended linearly."""
    return AlgebraElement(x.n, x.r, {A.transpose(): c for A, c in x.items()})


def element_to_json(x: AlgebraElement) -> dict:
    return {
        "n": x.n,
        "r": x.r,
        "terms": [{"matrix": matrix_to_json(A), "coefficient": _json_number(c)} for A, c in sorted(x.items())],
    }


def element_from_json(obj: Mapping) -> AlgebraElement:
    n, r = int(obj["n"]), int(obj["r"])
    terms = []
    for term in obj["terms"]:
        coeff = Fraction(str(term["coefficient"]))
        terms.append((int(coeff) if coeff.denominator == 1 else coeff, matrix_from_json(term["matrix"])))
    return element(n, r, terms)


def _json_number(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return str(c)
    return int(c)


# ---------------------------------------------------------------------------
# the classical Schur algebra inside S^(n, r)


def _elementary(n: int, i: int, j: int, lam: Sequence[int]) -> PeriodicMatrix:
    entries = [((k + 1, k + 1), v) for k, v in enumerate(lam)]
    entries.append(((i, j), 1))
    return PeriodicMatrix(n, entries)


def classical_generator_e(i: int, n: int, r: int) -> AlgebraElement:
    """e_i = sum over lambda in Lambda(n, r-1) of e_{E_{i,i+1} + diag(lambda)}."""
    if not 1 <= i < n:
        raise ValueError(f"generator index {i} outside [1, {n - 1}]")
    return AlgebraElement(n, r, {_elementary(n, i, i + 1, lam): 1 for lam in compositions(n, r - 1)})


def classical_generator_f(i: int, n: int, r: int) -> AlgebraElement:
    """f_i = sum over lambda in Lambda(n, r-1) of e_{E_{i+1,i} + diag(lambda)}."""
    if not 1 <= i < n:
        raise ValueError(f"generator index {i} outside [1, {n - 1}]")
    return AlgebraElement(n, r, {_elementary(n, i + 1, i, lam): 1 for lam in compositions(n, r - 1)})


@dataclass
class RelationCheck:
    relation: str
    description: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def expect(self, lhs: AlgebraElement, rhs: AlgebraElement, label: str):
        self.checked += 1
        if lhs != rhs:
            self.failures.append(f"{label}: lhs={lhs!r} rhs={rhs!r}")


def verify_classical_presentation(n: int, r: int, method: str = "oracle") -> list[RelationCheck]:
    """
    Evaluate the defining relations of the classical Schur algebra on the
    spread-0 generators e_i, f_i, l_lambda. Relations (3) and (5) use the zero
    case consistent with their nonzero case (l_lambda e_i = 0 iff lambda_i = 0,
    l_lambda f_i = 0 iff lambda_{i+1} = 0).
    """
    if n < 2:
        raise ValueError("the classical presentation needs n >= 2")
    mul = lambda *xs: product(*xs, method=method)  # noqa: E731
    zero = AlgebraElement.zero(n, r)
    lams = compositions(n, r)
    l = {lam: idempotent(lam) for lam in lams}
    E = {i: classical_generator_e(i, n, r) for i in range(1, n)}
    F = {i: classical_generator_f(i, n, r) for i in range(1, n)}
    one = identity(n, r)

    def shift(lam, i, sign):
        out = list(lam)
        out[i - 1] += sign
        out[i] -= sign
        return tuple(out)

    rel1 = RelationCheck("(1)", "l_a l_b = delta_ab l_a, sum of l_a = 1")
    for a in lams:
        for b in lams:
            rel1.expect(mul(l[a], l[b]), l[a] if a == b else zero, f"l{a} l{b}")
    for g in list(E.values()) + list(F.values()) + list(l.values()):
        rel1.expect(mul(one, g), g, "1*g")
        rel1.expect(mul(g, one), g, "g*1")

    rel2 = RelationCheck("(2)", "e_i l_a = l_{a+alpha_i-alpha_i+1} e_i if a_{i+1} >= 1, else 0")
    rel3 = RelationCheck("(3)", "l_a e_i = e_i l_{a-alpha_i+alpha_i+1} if a_i >= 1, else 0")
    rel4 = RelationCheck("(4)", "f_i l_a = l_{a-alpha_i+alpha_i+1} f_i if a_i >= 1, else 0")
    rel5 = RelationCheck("(5)", "l_a f_i = f_i l_{a+alpha_i-alpha_i+1} if a_{i+1} >= 1, else 0")
    for i in range(1, n):
        for a in lams:
            up, down = a[i] >= 1, a[i - 1] >= 1
            rel2.expect(mul(E[i], l[a]), mul(l[shift(a, i, 1)], E[i]) if up else zero, f"i={i} a={a}")
            rel3.expect(mul(l[a], E[i]), mul(E[i], l[shift(a, i, -1)]) if down else zero, f"i={i} a={a}")
            rel4.expect(mul(F[i], l[a]), mul(l[shift(a, i, -1)], F[i]) if down else zero, f"i={i} a={a}")
            rel5.expect(mul(l[a], F[i]), mul(F[i], l[shift(a, i, 1)]) if up else zero, f"i={i} a={a}")

    rel6 = RelationCheck("(6)", "e_i f_j - f_j e_i = delta_ij sum (a_i - a_{i+1}) l_a")
    for i in range(1, n):
        h = AlgebraElement(n, r, {diag(a): a[i - 1] - a[i] for a in lams})
        for j in range(1, n):
            rel6.expect(mul(E[i], F[j]) - mul(F[j], E[i]), h if i == j else zero, f"i={i} j={j}")

    rel7 = RelationCheck("(7)", "Serre relations for the e_i")
    rel8 = RelationCheck("(8)", "Serre relations for the f_i")
    for rel, X in ((rel7, E), (rel8, F)):
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) == 1:
                    lhs = mul(X[i], X[i], X[j]) - mul(X[i], X[j], X[i]).scale(2) + mul(X[j], X[i], X[i])
                    rel.expect(lhs, zero, f"i={i} j={j}")
                else:
                    rel.expect(mul(X[i], X[j]), mul(X[j], X[i]), f"i={i} j={j}")
    return [rel1, rel2, rel3, rel4, rel5, rel6, rel7, rel8]
