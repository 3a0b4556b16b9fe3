"""
Partitions, compositions, multi-indices and the extended affine Weyl group.

Conventions used throughout the package:

* compositions and partitions are plain tuples of nonnegative ints of a fixed
  length ``n``;
* permutations are tuples in 0-based one-line notation, ``sigma[t]`` is the
  image of position ``t``; they are printed 1-based;
* the extended affine Weyl group acts on the right on integer multi-indices:
  place-permute by ``sigma`` first, then shift by ``n * epsilon``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

Composition = tuple[int, ...]
Partition = tuple[int, ...]
MultiIndex = tuple[int, ...]
Permutation = tuple[int, ...]


# ---------------------------------------------------------------------------
# compositions and partitions


def compositions(n: int, r: int) -> list[Composition]:
    """All of Lambda(n, r), in descending lexicographic order."""
    if n < 1 or r < 0:
        raise ValueError(f"need n >= 1 and r >= 0, got n={n}, r={r}")

    def rec(k: int, left: int) -> Iterator[Composition]:
        if k == 1:
            yield (left,)
            return
        for first in range(left, -1, -1):
            for rest in rec(k - 1, left - first):
                yield (first,) + rest

    return list(rec(n, r))


def partitions(n: int, r: int) -> list[Partition]:
    """All of Lambda^+(n, r) (at most n nonzero parts, zero padded to length n)."""
    return [lam for lam in compositions(n, r) if is_partition(lam)]


def is_partition(lam: Sequence[int]) -> bool:
    return all(x >= 0 for x in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def parse_composition(text: str) -> Composition:
    """Read a comma separated list of nonnegative integers."""
    try:
        parts = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        raise ValueError(f"not a composition: {text!r}") from exc
    if not parts or any(p < 0 for p in parts):
        raise ValueError(f"not a composition: {text!r}")
    return parts


def format_composition(lam: Sequence[int]) -> str:
    return ",".join(str(x) for x in lam)


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True iff ``mu <= lam`` in the dominance order (prefix sums of lam win)."""
    if len(mu) != len(lam) or sum(mu) != sum(lam):
        raise ValueError(f"{tuple(mu)} and {tuple(lam)} are not in the same Lambda(n, r)")
    return all(a >= b for a, b in zip(itertools.accumulate(lam), itertools.accumulate(mu)))


def total_order(n: int, r: int) -> list[Partition]:
    """
    Lambda^+(n, r) listed as lambda^(1) > lambda^(2) > ... > lambda^(t).

    Descending lexicographic order; it refines dominance, and the first entry
    is (r, 0, ..., 0).
    """
    if n < 1 or r < 1:
        raise ValueError(f"need n, r >= 1, got n={n}, r={r}")
    return partitions(n, r)


def dual_partition(lam: Sequence[int]) -> Partition:
    """Conjugate partition, zero padded to length max(len(lam), lam[0])."""
    if not is_partition(lam):
        raise ValueError(f"{tuple(lam)} is not a partition")
    width = lam[0] if lam else 0
    dual = [sum(1 for x in lam if x >= i) for i in range(1, width + 1)]
    length = max(len(lam), width)
    return tuple(dual) + (0,) * (length - len(dual))


def elementary_symmetric(values: Sequence, k: int):
    """
    e_k(values), exact for ints, Fractions and sympy numbers.

    >>> elementary_symmetric([1, 2, 3], 2)
    11
    """
    m = len(values)
    if not 1 <= k <= m:
        raise ValueError(f"k={k} out of range for {m} values")
    e = [1] + [0] * k
    for a in values:
        for d in range(k, 0, -1):
            e[d] = e[d] + e[d - 1] * a
    return e[k]


# ---------------------------------------------------------------------------
# permutations and the extended affine Weyl group


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """The product sigma * tau, i.e. the function t -> sigma(tau(t))."""
    return tuple(sigma[t] for t in tau)


def inverse(sigma: Permutation) -> Permutation:
    inv = [0] * len(sigma)
    for t, s in enumerate(sigma):
        inv[s] = t
    return tuple(inv)


def identity_permutation(r: int) -> Permutation:
    return tuple(range(r))


def format_permutation(sigma: Permutation) -> str:
    """One-line notation, 1-based."""
    return " ".join(str(s + 1) for s in sigma)


def parse_permutation(text: str) -> Permutation:
    sigma = tuple(int(tok) - 1 for tok in text.replace(",", " ").split())
    if sorted(sigma) != list(range(len(sigma))):
        raise ValueError(f"not a permutation in one-line notation: {text!r}")
    return sigma


@dataclass(frozen=True)
class AffineWeylElement:
    """An element (sigma, epsilon) of S_r x| Z^r."""

    sigma: Permutation
    epsilon: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sigma) != list(range(len(self.sigma))):
            raise ValueError(f"sigma={self.sigma} is not a permutation")
        if len(self.epsilon) != len(self.sigma):
            raise ValueError("sigma and epsilon have different lengths")

    @classmethod
    def identity(cls, r: int) -> AffineWeylElement:
        return cls(identity_permutation(r), (0,) * r)

    @property
    def r(self) -> int:
        return len(self.sigma)

    def __mul__(self, other: AffineWeylElement) -> AffineWeylElement:
        # (sigma, eps)(tau, eta) = (sigma tau, eps o tau + eta); this makes `act`
        # a right action.
        tau, eta = other.sigma, other.epsilon
        return AffineWeylElement(
            compose(self.sigma, tau),
            tuple(self.epsilon[tau[t]] + eta[t] for t in range(len(tau))),
        )

    def inverse(self) -> AffineWeylElement:
        inv = inverse(self.sigma)
        return AffineWeylElement(inv, tuple(-self.epsilon[inv[t]] for t in range(len(inv))))


def act(i: Sequence[int], g: AffineWeylElement, n: int) -> MultiIndex:
    """Right action i.(sigma, eps): place-permute by sigma, then add n*eps."""
    if len(i) != g.r:
        raise ValueError(f"multi-index of length {len(i)} vs group element of rank {g.r}")
    return tuple(i[g.sigma[t]] + n * g.epsilon[t] for t in range(g.r))


def residue(x: int, n: int) -> int:
    """The representative of x modulo n in [1, n]."""
    return (x - 1) % n + 1


def orbit_canonical(i: Sequence[int], j: Sequence[int], n: int) -> tuple[MultiIndex, MultiIndex]:
    """
    Canonical representative of the diagonal orbit of (i, j).

    The first index is weakly increasing with entries in [1, n]; ties are broken
    by the lexicographically smallest second index.
    """
    if len(i) != len(j):
        raise ValueError("multi-indices of different lengths")
    pairs = []
    for a, b in zip(i, j):
        x = residue(a, n)
        pairs.append((x, b - (a - x)))
    pairs.sort()
    return tuple(p for p, _ in pairs), tuple(q for _, q in pairs)


def aligning_element(src: Sequence[int], dst: Sequence[int], n: int) -> AffineWeylElement:
    """Some g with act(src, g) == dst; src and dst must have equal residue content."""
    slots: dict[int, deque[int]] = {}
    for t, a in enumerate(src):
        slots.setdefault(residue(a, n), deque()).append(t)
    sigma, eps = [], []
    for b in dst:
        queue = slots.get(residue(b, n))
        if not queue:
            raise ValueError(f"{tuple(src)} and {tuple(dst)} are not in one orbit")
        t = queue.popleft()
        sigma.append(t)
        eps.append((b - src[t]) // n)
    return AffineWeylElement(tuple(sigma), tuple(eps))


# ---------------------------------------------------------------------------
# Young subgroups


@dataclass(frozen=True)
class YoungSubgroup:
    """
    The subgroup of S_r preserving every block of a set partition of positions.

    Positions are 0-based. Blocks are stored sorted, so equal subgroups compare
    equal.
    """

    r: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = sorted(t for b in self.blocks for t in b)
        if seen != list(range(self.r)):
            raise ValueError(f"blocks {self.blocks} do not partition range({self.r})")
        norm = tuple(sorted(tuple(sorted(b)) for b in self.blocks if b))
        object.__setattr__(self, "blocks", norm)

    @classmethod
    def from_keys(cls, keys: Sequence) -> YoungSubgroup:
        """Blocks are the sets of positions carrying equal keys."""
        groups: dict = {}
        for t, k in enumerate(keys):
            groups.setdefault(k, []).append(t)
        return cls(len(keys), tuple(tuple(g) for g in groups.values()))

    @classmethod
    def trivial(cls, r: int) -> YoungSubgroup:
        return cls(r, tuple((t,) for t in range(r)))

    @classmethod
    def full(cls, r: int) -> YoungSubgroup:
        return cls(r, (tuple(range(r)),))

    def order(self) -> int:
        return prod(factorial(len(b)) for b in self.blocks)

    def block_of(self) -> list[int]:
        where = [0] * self.r
        for k, b in enumerate(self.blocks):
            for t in b:
                where[t] = k
        return where

    def contains(self, sigma: Permutation) -> bool:
        where = self.block_of()
        return all(where[sigma[t]] == where[t] for t in range(self.r))

    def is_subgroup_of(self, other: YoungSubgroup) -> bool:
        where = other.block_of()
        return all(len({where[t] for t in b}) == 1 for b in self.blocks)

    def intersection(self, other: YoungSubgroup) -> YoungSubgroup:
        a, b = self.block_of(), other.block_of()
        return YoungSubgroup.from_keys([(a[t], b[t]) for t in range(self.r)])

    def conjugate(self, sigma: Permutation) -> YoungSubgroup:
        """sigma^-1 H sigma, whose blocks are the preimages of the blocks of H."""
        inv = inverse(sigma)
        return YoungSubgroup(self.r, tuple(tuple(inv[t] for t in b) for b in self.blocks))

    def generators(self) -> list[Permutation]:
        """Transpositions of consecutive members of each block."""
        gens = []
        for b in self.blocks:
            for s, t in zip(b, b[1:]):
                g = list(range(self.r))
                g[s], g[t] = t, s
                gens.append(tuple(g))
        return gens

    def elements(self) -> Iterator[Permutation]:
        per_block = [list(itertools.permutations(b)) for b in self.blocks]
        for images in itertools.product(*per_block):
            sigma = list(range(self.r))
            for b, img in zip(self.blocks, images):
                for t, s in zip(b, img):
                    sigma[t] = s
            yield tuple(sigma)


def stabilizer_young(i: Sequence[int]) -> YoungSubgroup:
    """Stabilizer of a finite multi-index under place permutation."""
    return YoungSubgroup.from_keys(list(i))


def affine_stabilizer(n: int, *indices: Sequence[int]) -> YoungSubgroup:
    """
    Joint stabilizer of several multi-indices in S_r x| Z^r.

    An element (sigma, eps) fixes ``i`` iff i[sigma(t)] = i[t] mod n with
    eps[t] = (i[t] - i[sigma(t)]) / n, so the stabilizer projects isomorphically
    onto a Young subgroup of S_r: positions are grouped by the residue of the
    first index together with the differences of the others from it.
    """
    first = indices[0]
    keys = []
    for t in range(len(first)):
        keys.append((first[t] % n,) + tuple(other[t] - first[t] for other in indices[1:]))
    return YoungSubgroup.from_keys(keys)


def stabilizer_element(i: Sequence[int], sigma: Permutation, n: int) -> AffineWeylElement:
    """The unique lift of ``sigma`` (from the stabilizer projection) fixing ``i``."""
    eps = []
    for t in range(len(i)):
        diff = i[t] - i[sigma[t]]
        if diff % n:
            raise ValueError(f"{sigma} does not lift to the stabilizer of {tuple(i)}")
        eps.append(diff // n)
    return AffineWeylElement(tuple(sigma), tuple(eps))


def double_cosets(H: YoungSubgroup, G: YoungSubgroup, K: YoungSubgroup) -> list[Permutation]:
    """
    Representatives of H \\ G / K, each the lexicographically least element of
    its double coset.
    """
    if not (H.is_subgroup_of(G) and K.is_subgroup_of(G)):
        raise ValueError("H and K must be subgroups of G")
    h_gens, k_gens = H.generators(), K.generators()
    seen: set[Permutation] = set()
    reps = []
    for g in sorted(G.elements()):
        if g in seen:
            continue
        reps.append(g)
        seen.add(g)
        todo = [g]
        while todo:
            x = todo.pop()
            for y in [compose(h, x) for h in h_gens] + [compose(x, k) for k in k_gens]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
    return reps


def double_coset(H: YoungSubgroup, g: Permutation, K: YoungSubgroup) -> set[Permutation]:
    """The full set H g K, by brute force."""
    return {compose(compose(h, g), k) for h in H.elements() for k in K.elements()}


def subgroup_index(H: YoungSubgroup, K: YoungSubgroup) -> int:
    """[H : K] for K <= H."""
    if not K.is_subgroup_of(H):
        raise ValueError(f"{K.blocks} is not a subgroup of {H.blocks}")
    return H.order() // K.order()


def multinomial(counts: Iterable[int]) -> int:
    counts = list(counts)
    return factorial(sum(counts)) // prod(factorial(c) for c in counts)
