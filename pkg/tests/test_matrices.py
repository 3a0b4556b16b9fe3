from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_schur.combinatorics import AffineWeylElement, act
from affine_schur.matrices import (
    MalformedLineError,
    NonPositiveEntryError,
    PeriodicMatrix,
    WeightMismatchError,
    basis,
    diag,
    embed,
    format_matrix,
    matrix_from_json,
    matrix_of_pair,
    matrix_to_json,
    pair_of_matrix,
    parse_matrix,
    random_matrix,
)

small = settings(max_examples=60, deadline=None)


@st.composite
def matrices(draw, n=None, r=None, spread=2):
    n = n or draw(st.integers(1, 3))
    r = r or draw(st.integers(1, 3))
    cells = []
    for _ in range(r):
        x = draw(st.integers(1, n))
        cells.append(((x, x + draw(st.integers(-spread * n, spread * n))), 1))
    return PeriodicMatrix(n, cells)


def test_normalization_and_lookup():
    A = PeriodicMatrix(2, [((3, 5), 1), ((1, 3), 1), ((2, 1), 2)])
    assert A.entries == (((1, 3), 2), ((2, 1), 2))
    assert A[(3, 5)] == 2 and A[(5, 7)] == 2 and A[(1, 1)] == 0
    assert A.r == 4


def test_statistics():
    A = PeriodicMatrix(3, [((1, 2), 1), ((2, 1), 1), ((3, 7), 1)])
    assert A.row() == (1, 1, 1)
    assert A.col() == (2, 1, 0)
    assert A.spread() == 2
    assert diag((2, 0, 1)).spread() == 0
    assert A.transpose().row() == A.col()


def test_rejects_bad_entries():
    with pytest.raises(NonPositiveEntryError):
        PeriodicMatrix(2, [((1, 1), -1)])
    with pytest.raises(ValueError):
        PeriodicMatrix(0, [])


@small
@given(matrices())
def test_transpose_involution(A):
    assert A.transpose().transpose() == A


@small
@given(matrices(), st.data())
def test_pair_round_trip_and_orbit_invariance(A, data):
    i, j = pair_of_matrix(A)
    assert matrix_of_pair(i, j, A.n) == A
    sigma = data.draw(st.permutations(range(A.r)))
    eps = data.draw(st.lists(st.integers(-2, 2), min_size=A.r, max_size=A.r))
    g = AffineWeylElement(tuple(sigma), tuple(eps))
    assert matrix_of_pair(act(i, g, A.n), act(j, g, A.n), A.n) == A


def test_basis_counts_rank_one():
    # S^(1, 1) bands: one matrix per offset
    assert len(basis(1, 1, 2)) == 5
    # n = 2, r = 1, spread <= 1: each of the two rows has 5 cells
    assert len(basis(2, 1, 1)) == 10


def test_basis_matches_orbit_enumeration():
    # orbits of pairs (i, j) with i in [1, n]^r up to diagonal shift are the matrices
    n, r, s = 2, 2, 1
    seen = set()
    for i in itertools.product(range(1, n + 1), repeat=r):
        for j in itertools.product(*[range(x - s * n, x + s * n + 1) for x in i]):
            seen.add(matrix_of_pair(i, j, n))
    assert seen == set(basis(n, r, s))


def test_basis_with_marginals():
    Bs = basis(3, 2, 1, row=(1, 1, 0), col=(2, 0, 0))
    assert Bs and all(B.row() == (1, 1, 0) and B.col() == (2, 0, 0) for B in Bs)
    with pytest.raises(ValueError):
        basis(3, 2, 1, row=(1, 1))


def test_embedding():
    A = PeriodicMatrix(2, [((1, 4), 1), ((2, 1), 1)])
    E = embed(A, 3)
    assert E.entries == (((1, 5), 1), ((2, 1), 1))
    assert embed(diag((1, 1)), 4) == diag((1, 1, 0, 0))
    with pytest.raises(ValueError):
        embed(A, 1)


def test_text_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        A = random_matrix(rng, rng.randint(1, 3), rng.randint(1, 4), 2)
        assert parse_matrix(format_matrix(A)) == A
        assert matrix_from_json(matrix_to_json(A)) == A


def test_parse_errors_carry_context():
    with pytest.raises(MalformedLineError, match="line 3"):
        parse_matrix("n=2 r=2\n1 1 1\n1 x 1\n")
    with pytest.raises(NonPositiveEntryError, match="line 2"):
        parse_matrix("n=2 r=1\n1 1 0\n")
    with pytest.raises(WeightMismatchError):
        parse_matrix("n=2 r=3\n1 1 1\n")
    with pytest.raises(MalformedLineError, match="row index"):
        parse_matrix("n=2 r=1\n3 1 1\n")
    with pytest.raises(MalformedLineError, match="duplicate"):
        parse_matrix("n=2 r=2\n1 1 1\n1 1 1\n")
    with pytest.raises(MalformedLineError, match="header"):
        parse_matrix("r=2\n1 1 2\n")
    with pytest.raises(MalformedLineError):
        matrix_from_json({"n": 2})


def test_comments_ignored():
    A = parse_matrix("# a band\nn=1 r=1\n1 3 1  # offset two\n")
    assert A == PeriodicMatrix(1, [((1, 3), 1)])
