"""
n-periodic ZxZ matrices of weight r (the basis index set of the affine Schur
algebra), stored sparsely on the fundamental rows 1..n.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .combinatorics import Composition, MultiIndex, compositions, residue


class MatrixFormatError(ValueError):
    """Base class for rejected matrix input."""


class MalformedLineError(MatrixFormatError):
    pass


class NonPositiveEntryError(MatrixFormatError):
    pass


class WeightMismatchError(MatrixFormatError):
    pass


class PeriodicMatrix:
    """
    A = (a_{i,j}) with a_{i+n, j+n} = a_{i,j}, finitely many nonzero entries per
    row.

    Only nonzero entries with row index in [1, n] are stored; the column index
    is unbounded. Any (i, j) passed to the constructor is shifted along the
    diagonal into the fundamental rows, and repeated positions are summed.
    """

    __slots__ = ("n", "r", "entries", "_hash", "_row", "_col")

    def __init__(self, n: int, entries: Mapping[tuple[int, int], int] | Sequence = ()):
        if n < 1:
            raise ValueError(f"period must be positive, got n={n}")
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[tuple[int, int], int] = {}
        for (i, j), v in items:
            if not isinstance(v, int) or v < 0:
                raise NonPositiveEntryError(f"entry at ({i},{j}) must be a nonnegative int, got {v!r}")
            if v == 0:
                continue
            x = residue(i, n)
            key = (x, j - (i - x))
            acc[key] = acc.get(key, 0) + v
        self.n = n
        self.entries: tuple[tuple[tuple[int, int], int], ...] = tuple(sorted(acc.items()))
        self.r = sum(v for _, v in self.entries)
        self._hash = hash((n, self.entries))
        row, col = [0] * n, [0] * n
        for (i, j), v in self.entries:
            row[i - 1] += v
            col[residue(j, n) - 1] += v
        self._row, self._col = tuple(row), tuple(col)

    # -- value semantics --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PeriodicMatrix):
            return NotImplemented
        return self._hash == other._hash and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __lt__(self, other: PeriodicMatrix):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (self.n, self.r, self.entries)

    def __repr__(self):
        body = ", ".join(f"({i},{j}):{v}" for (i, j), v in self.entries)
        return f"PeriodicMatrix(n={self.n}, {{{body}}})"

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        x = residue(i, self.n)
        return dict(self.entries).get((x, j - (i - x)), 0)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    # -- statistics -------------------------------------------------------

    def row(self) -> Composition:
        return self._row

    def col(self) -> Composition:
        return self._col

    def spread(self) -> int:
        """Largest ceil(|j - i| / n) over the support; 0 on the fundamental block."""
        n = self.n
        return max((-(-abs(j - i) // n) for (i, j), _ in self.entries), default=0)

    def transpose(self) -> PeriodicMatrix:
        return PeriodicMatrix(self.n, [((j, i), v) for (i, j), v in self.entries])

    def is_translation(self) -> bool:
        """Every entry sits at (i, i + kn) for some k."""
        return all((j - i) % self.n == 0 for (i, j), _ in self.entries)

    def column_range(self) -> tuple[int, int]:
        cols = [j for (_, j), _ in self.entries]
        return min(cols), max(cols)


def diag(lam: Sequence[int]) -> PeriodicMatrix:
    return PeriodicMatrix(len(lam), [((i + 1, i + 1), v) for i, v in enumerate(lam)])


def matrix_of_pair(i: Sequence[int], j: Sequence[int], n: int) -> PeriodicMatrix:
    """a_{x,y} = #{s : (i_s, j_s) = (x, y) up to a diagonal shift by a multiple of n}."""
    if len(i) != len(j):
        raise ValueError("multi-indices of different lengths")
    return PeriodicMatrix(n, [((a, b), 1) for a, b in zip(i, j)])


def pair_of_matrix(A: PeriodicMatrix) -> tuple[MultiIndex, MultiIndex]:
    """The canonical orbit representative (i, j) with matrix_of_pair(i, j) == A."""
    i, j = [], []
    for (x, y), v in A.entries:
        i.extend([x] * v)
        j.extend([y] * v)
    return tuple(i), tuple(j)


def embed(A: PeriodicMatrix, N: int) -> PeriodicMatrix:
    """
    Image of A under S^(n, r) = e S^(N, r) e, N >= n: an entry at (x, y0 + kn)
    with y0 in [1, n] moves to (x, y0 + kN).
    """
    n = A.n
    if N < n:
        raise ValueError(f"cannot embed period {n} into period {N}")
    out = []
    for (x, y), v in A.entries:
        y0 = residue(y, n)
        out.append(((x, y0 + (y - y0) // n * N), v))
    return PeriodicMatrix(N, out)


def basis(
    n: int,
    r: int,
    max_spread: int,
    row: Sequence[int] | None = None,
    col: Sequence[int] | None = None,
) -> list[PeriodicMatrix]:
    """All A in Theta(n, r) with spread(A) <= max_spread, optionally with fixed marginals."""
    rows = [tuple(row)] if row is not None else compositions(n, r)
    want_col = tuple(col) if col is not None else None
    out = []
    for lam in rows:
        if len(lam) != n or sum(lam) != r:
            raise ValueError(f"{lam} is not in Lambda({n},{r})")
        per_row = []
        for x, k in enumerate(lam, start=1):
            cells = range(x - max_spread * n, x + max_spread * n + 1)
            per_row.append([
                [((x, y), 1) for y in combo]
                for combo in itertools.combinations_with_replacement(cells, k)
            ])
        for choice in itertools.product(*per_row):
            A = PeriodicMatrix(n, [e for part in choice for e in part])
            if want_col is None or A.col() == want_col:
                out.append(A)
    return sorted(out)


def random_matrix(rng, n: int, r: int, max_spread: int) -> PeriodicMatrix:
    """A random basis index: r units dropped into cells of band width max_spread."""
    cells = []
    for _ in range(r):
        x = rng.randint(1, n)
        cells.append(((x, x + rng.randint(-max_spread * n, max_spread * n)), 1))
    return PeriodicMatrix(n, cells)


# ---------------------------------------------------------------------------
# text and structured formats


def format_matrix(A: PeriodicMatrix) -> str:
    lines = [f"n={A.n} r={A.r}"]
    lines += [f"{i} {j} {v}" for (i, j), v in A.entries]
    return "\n".join(lines) + "\n"


def _checked_matrix(n: int, r: int, rows, where) -> PeriodicMatrix:
    entries: dict[tuple[int, int], int] = {}
    for loc, fields in zip(where, rows):
        try:
            i, j, v = (int(t) for t in fields)
        except (TypeError, ValueError):
            raise MalformedLineError(f"{loc}: expected '<i> <j> <v>', got {fields!r}") from None
        if v <= 0:
            raise NonPositiveEntryError(f"{loc}: entry must be positive, got {v}")
        if not 1 <= i <= n:
            raise MalformedLineError(f"{loc}: row index {i} outside [1, {n}]")
        if (i, j) in entries:
            raise MalformedLineError(f"{loc}: duplicate position ({i}, {j})")
        entries[(i, j)] = v
    A = PeriodicMatrix(n, entries)
    if A.r != r:
        raise WeightMismatchError(f"entries sum to {A.r}, header expects r={r}")
    return A


def parse_matrix(text: str) -> PeriodicMatrix:
    """
    Read the text format::

        n=<int> r=<int>
        <i> <j> <v>
        ...

    with 1 <= i <= n and v > 0; blank lines and '#' comments are ignored.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise MalformedLineError("empty input, expected header 'n=<int> r=<int>'")
    lineno, header = lines[0]
    fields = dict(tok.split("=", 1) for tok in header.split() if "=" in tok)
    try:
        n, r = int(fields["n"]), int(fields["r"])
    except (KeyError, ValueError):
        raise MalformedLineError(f"line {lineno}: bad header {header!r}") from None
    if n < 1 or r < 1:
        raise MalformedLineError(f"line {lineno}: need n, r >= 1 in header {header!r}")
    body = lines[1:]
    return _checked_matrix(n, r, [line.split() for _, line in body], [f"line {k}" for k, _ in body])


def matrix_to_json(A: PeriodicMatrix) -> dict:
    return {"n": A.n, "r": A.r, "entries": [[i, j, v] for (i, j), v in A.entries]}


def matrix_from_json(obj: Mapping) -> PeriodicMatrix:
    try:
        n, r, rows = int(obj["n"]), int(obj["r"]), list(obj["entries"])
    except (KeyError, TypeError, ValueError):
        raise MalformedLineError(f"structured matrix needs n, r, entries: {obj!r}") from None
    return _checked_matrix(n, r, rows, [f"entry {k}" for k in range(len(rows))])
