"""
Incremental exact row echelon form over Q for sparse vectors keyed by sortable
labels (here: periodic matrices).

Every stored row remembers which combination of the inserted generators it
equals, so a vector found to lie in the span comes with explicit coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Generic, Hashable, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)
Vector = dict  # label -> Fraction


def _clean(v: Mapping) -> dict:
    return {k: Fraction(c) for k, c in v.items() if c}


class EchelonSpan(Generic[K]):
    """
    A subspace of Q^(labels) spanned by generators added one at a time.

    Rows are stored by pivot, the largest label in the row under ``key``, with
    pivot coefficient 1. Rows are kept fully reduced against each other, so
    reduction of a vector yields a canonical normal form modulo the span.
    """

    def __init__(self, key=None):
        self.key = key or (lambda label: label)
        self.rows: dict[K, dict] = {}
        self.combos: dict[K, dict[int, Fraction]] = {}
        self.generators: list = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _pivot(self, v: Mapping) -> K:
        return max(v, key=self.key)

    def reduce(self, v: Mapping, track: bool = False):
        """
        Normal form of v modulo the span. With ``track`` also return the
        combination c of generators with v = remainder + sum c_g * g.
        """
        rem = _clean(v)
        used: dict[int, Fraction] = {}
        # pivots only ever get cancelled, never reintroduced, because rows are
        # mutually reduced; one sweep over the support in decreasing order works
        for p in sorted((k for k in rem if k in self.rows), key=self.key, reverse=True):
            c = rem.get(p)
            if not c:
                continue
            for k, a in self.rows[p].items():
                nv = rem.get(k, 0) - c * a
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
            if track:
                for g, a in self.combos[p].items():
                    nv = used.get(g, 0) + c * a
                    if nv:
                        used[g] = nv
                    else:
                        used.pop(g, None)
        return (rem, used) if track else rem

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping, tag=None) -> bool:
        """Insert a generator; return True if it enlarged the span."""
        idx = len(self.generators)
        self.generators.append(tag)
        rem, used = self.reduce(v, track=True)
        if not rem:
            return False
        combo = {g: -a for g, a in used.items()}
        combo[idx] = combo.get(idx, 0) + 1
        p = self._pivot(rem)
        lead = rem[p]
        row = {k: c / lead for k, c in rem.items()}
        combo = {g: c / lead for g, c in combo.items() if c}
        # keep older rows reduced with respect to the new pivot
        for q, other in self.rows.items():
            c = other.get(p)
            if not c:
                continue
            for k, a in row.items():
                nv = other.get(k, 0) - c * a
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
            oc = self.combos[q]
            for g, a in combo.items():
                nv = oc.get(g, 0) - c * a
                if nv:
                    oc[g] = nv
                else:
                    oc.pop(g, None)
        self.rows[p] = row
        self.combos[p] = combo
        return True

    def express(self, v: Mapping) -> dict[int, Fraction] | None:
        """Coefficients c with v = sum c_g * generator_g, or None if v is outside the span."""
        rem, used = self.reduce(v, track=True)
        return None if rem else used
