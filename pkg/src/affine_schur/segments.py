"""
Segment multisets and the parameter map phi to points of Omega.

A segment is a constant sequence (a, ..., a) with a nonzero. A multiset of
segments with lengths at most n and total length r labels a simple module;
phi sends it to a point over the dual of its shape by taking elementary
symmetric functions of the values within each group of equal lengths.

Scalars are sympy numbers: Rationals, or Gaussian rationals ``p + q*I``.
Tolerances only enter when a group polynomial has irrational roots.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import sympy
from sympy import I, Poly, Rational, nsimplify, symbols
from sympy.core.sorting import default_sort_key

from .combinatorics import Partition, dual_partition, elementary_symmetric, is_partition, partitions

TOLERANCE = 1e-9
_x = symbols("x")


def scalar(value) -> sympy.Expr:
    """Coerce ints, Fractions, strings like '3/2' or '1+2*I' to an exact sympy number."""
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, complex):
        return nsimplify(value.real, rational=True) + I * nsimplify(value.imag, rational=True)
    return sympy.sympify(str(value), rational=True)


@dataclass(frozen=True)
class Segment:
    value: sympy.Expr
    length: int

    def __post_init__(self):
        object.__setattr__(self, "value", scalar(self.value))
        if self.value == 0:
            raise ValueError("segment values must be nonzero")
        if not isinstance(self.length, int) or self.length < 1:
            raise ValueError(f"segment length must be a positive int, got {self.length!r}")


def _segment_key(s: Segment):
    return (-s.length, default_sort_key(s.value))


class SegmentMultiset:
    """An unordered collection of segments; equality is multiset equality."""

    __slots__ = ("segments",)

    def __init__(self, segments: Iterable[Segment | tuple]):
        segs = [s if isinstance(s, Segment) else Segment(*s) for s in segments]
        if not segs:
            raise ValueError("a segment multiset needs at least one segment")
        self.segments: tuple[Segment, ...] = tuple(sorted(segs, key=_segment_key))

    @property
    def length(self) -> int:
        return sum(s.length for s in self.segments)

    def groups(self) -> list[tuple[int, list[sympy.Expr]]]:
        """Values grouped by segment length, longest first."""
        by_len: dict[int, list] = {}
        for s in self.segments:
            by_len.setdefault(s.length, []).append(s.value)
        return sorted(by_len.items(), reverse=True)

    def __eq__(self, other):
        if not isinstance(other, SegmentMultiset):
            return NotImplemented
        return Counter(self.segments) == Counter(other.segments)

    def __hash__(self):
        return hash(frozenset(Counter(self.segments).items()))

    def __repr__(self):
        body = ", ".join(f"{s.value}x{s.length}" for s in self.segments)
        return f"SegmentMultiset({body})"

    def to_json(self) -> list:
        return [[str(s.value), s.length] for s in self.segments]

    @classmethod
    def from_json(cls, data: Sequence) -> SegmentMultiset:
        return cls(Segment(scalar(v), int(k)) for v, k in data)


def shape(s: SegmentMultiset) -> Partition:
    return tuple(sorted((seg.length for seg in s.segments), reverse=True))


def ambient_partition(lam: Sequence[int], n: int) -> Partition:
    """The dual of lam, as a composition with exactly n entries."""
    parts = [p for p in dual_partition(tuple(lam)) if p]
    if len(parts) > n:
        raise ValueError(f"the dual of {tuple(lam)} has more than {n} parts")
    return tuple(parts) + (0,) * (n - len(parts))


def validate_c(s: SegmentMultiset, n: int, r: int) -> bool:
    return s.length == r and all(seg.length <= n for seg in s.segments)


def m_indices(lam: Sequence[int]) -> list[int]:
    """m(i) = lam_1 - lam_{i+1} for i = 1..n, with lam_{n+1} = 0."""
    padded = tuple(lam) + (0,)
    return [padded[0] - padded[i] for i in range(1, len(lam) + 1)]


def validate_omega(a: Sequence, lam: Sequence[int]) -> bool:
    """a has lam_1 coordinates and a_{m(i)} != 0 whenever m(i) >= 1."""
    if not is_partition(lam) or len(a) != lam[0]:
        return False
    return all(scalar(a[m - 1]) != 0 for m in m_indices(lam) if m >= 1)


@dataclass(frozen=True)
class OmegaPoint:
    ambient: Partition
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "ambient", tuple(self.ambient))
        object.__setattr__(self, "coords", tuple(scalar(c) for c in self.coords))
        if not is_partition(self.ambient) or not self.ambient or self.ambient[0] != len(self.coords):
            raise ValueError(f"{len(self.coords)} coordinates do not fit the ambient partition {self.ambient}")

    def in_omega(self) -> bool:
        return validate_omega(self.coords, self.ambient)

    def to_json(self) -> dict:
        return {"ambient": list(self.ambient), "coords": [str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data) -> OmegaPoint:
        return cls(tuple(int(p) for p in data["ambient"]), tuple(scalar(c) for c in data["coords"]))


def phi(s: SegmentMultiset, n: int) -> OmegaPoint:
    """
    Group values by equal length, longest group first; a group of g values
    contributes e_1, ..., e_g of those values to the next g coordinates.
    """
    if not validate_c(s, n, s.length):
        raise ValueError(f"{s!r} has a segment longer than n={n}")
    coords = []
    for _, values in s.groups():
        coords.extend(sympy.expand(elementary_symmetric(values, k)) for k in range(1, len(values) + 1))
    return OmegaPoint(ambient_partition(shape(s), n), tuple(coords))


def _roots(coeffs: Sequence[sympy.Expr]) -> list[sympy.Expr]:
    """Roots with multiplicity of x^g - e1 x^(g-1) + e2 x^(g-2) - ..."""
    g = len(coeffs)
    poly = Poly(sum((-1) ** k * c * _x ** (g - k) for k, c in enumerate((1, *coeffs))), _x)
    inexact = any(c.has(sympy.Float) for c in poly.all_coeffs())
    out: list[sympy.Expr] = []
    if not inexact:
        _, factors = sympy.factor_list(poly.as_expr(), _x, gaussian=True)
        rest = []
        for f, mult in factors:
            fp = Poly(f, _x)
            if fp.degree() == 1:
                a, b = fp.all_coeffs()
                out.extend([sympy.nsimplify(-b / a)] * mult)
            else:
                rest.extend([fp] * mult)
    else:
        rest = [poly]
    for fp in rest:
        out.extend(sympy.nsimplify(z, rational=False, tolerance=TOLERANCE) for z in fp.nroots(n=30))
    return out


def phi_inverse(b: OmegaPoint, n: int) -> SegmentMultiset:
    """Rebuild the segments group by group from the elementary symmetric values."""
    lam = b.ambient
    if len(lam) != n:
        raise ValueError(f"ambient partition {lam} does not have {n} entries")
    seg_shape = tuple(p for p in dual_partition(lam) if p)
    if any(length > n for length in seg_shape):
        raise ValueError(f"{lam} is not the dual of a shape with parts at most {n}")
    groups = sorted(Counter(seg_shape).items(), reverse=True)
    segments = []
    pos = 0
    for length, g in groups:
        coeffs = b.coords[pos:pos + g]
        pos += g
        if coeffs[-1] == 0:
            raise ValueError(f"coordinate {pos} is zero, so a segment of length {length} would have value 0")
        segments.extend(Segment(z, length) for z in _roots(coeffs))
    return SegmentMultiset(segments)


def points_close(a: OmegaPoint, b: OmegaPoint, tol: float = TOLERANCE) -> bool:
    if a.ambient != b.ambient:
        return False
    return all(abs(complex(sympy.N(x - y, 30))) <= tol for x, y in zip(a.coords, b.coords))


def c_blocks(n: int, r: int) -> list[tuple[Partition, bool]]:
    """Every lam in Lambda+(n, r) with a flag telling whether C_lam is empty (lam_1 > n)."""
    return [(lam, lam[0] > n) for lam in partitions(n, r)]


def c_shapes(n: int, r: int) -> list[Partition]:
    """All shapes occurring in C_{r,n}: partitions of r with every part at most n."""
    return [lam for lam in _partitions_bounded(r, n)]


def _partitions_bounded(r: int, largest: int) -> list[Partition]:
    if r == 0:
        return [()]
    out = []
    for first in range(min(r, largest), 0, -1):
        out.extend((first,) + rest for rest in _partitions_bounded(r - first, first))
    return out


def random_segments(rng, n: int, r: int, gaussian: bool = False, positive: bool = False) -> SegmentMultiset:
    """Random lengths summing to r (each at most n) with small nonzero rational values."""
    segs = []
    left = r
    pool = [Rational(p, q) for p in range(1, 7) for q in (1, 2, 3)]
    while left:
        length = rng.randint(1, min(n, left))
        left -= length
        v = rng.choice(pool)
        if not positive and rng.random() < 0.5:
            v = -v
        if gaussian:
            v = v + I * rng.choice([0] + pool)
        segs.append(Segment(v, length))
    return SegmentMultiset(segs)


__all__ = [
    "OmegaPoint",
    "Segment",
    "SegmentMultiset",
    "TOLERANCE",
    "ambient_partition",
    "c_blocks",
    "c_shapes",
    "m_indices",
    "phi",
    "phi_inverse",
    "points_close",
    "random_segments",
    "scalar",
    "shape",
    "validate_c",
    "validate_omega",
]
