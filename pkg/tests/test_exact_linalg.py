from __future__ import annotations

from fractions import Fraction

import pytest

from diassocle.errors import DimensionMismatchError, FixtureError, NotAComplexError
from diassocle.exact_linalg import (
    EchelonBasis,
    Matrix,
    bareiss,
    block_matrix,
    coset_solve,
    determinant,
    format_fraction,
    kernel_basis,
    nullity,
    quotient_dim,
    rank,
    rref,
    span_rank,
    to_fraction,
    vec_add,
    vec_scale,
    vec_sub,
)
from diassocle.samples import make_rng, random_matrix


def test_to_fraction_parses_exact_inputs() -> None:
    assert to_fraction(3) == Fraction(3)
    assert to_fraction("-3/4") == Fraction(-3, 4)
    assert to_fraction(" 7 ") == Fraction(7)
    assert to_fraction(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("value", ["1/0", "a/2", "0.5", 0.5, True, None])
def test_to_fraction_rejects_inexact_or_malformed_values(value: object) -> None:
    with pytest.raises(FixtureError):
        to_fraction(value, path="$.x")


def test_format_fraction() -> None:
    assert format_fraction(Fraction(4, 2)) == "2"
    assert format_fraction(Fraction(-1, 3)) == "-1/3"


def test_sparse_vectors_drop_zeros() -> None:
    x = {0: Fraction(1), 2: Fraction(3)}
    assert vec_sub(x, x) == {}
    assert vec_add(x, {0: Fraction(-1)}) == {2: Fraction(3)}
    assert vec_scale(x, 0) == {}


def test_rank_and_kernel_of_a_singular_matrix() -> None:
    M = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M) == 2
    assert nullity(M) == 1
    (v,) = kernel_basis(M)
    assert M.apply_dense(v) == [0, 0, 0]


def test_rank_is_exact_where_floats_would_blur() -> None:
    eps = Fraction(1, 10**30)
    M = Matrix.from_rows([[1, 1], [1, 1 + eps]])
    assert rank(M) == 2


def test_coset_solve_returns_a_preimage_or_none() -> None:
    M = Matrix.from_rows([[1, 1], [0, 0]])
    x = coset_solve(M, [3, 0])
    assert x is not None and M.apply_dense(x) == [3, 0]
    assert coset_solve(M, [0, 1]) is None
    with pytest.raises(DimensionMismatchError):
        coset_solve(M, [1, 2, 3])


def test_quotient_dim_checks_the_composite() -> None:
    d0 = Matrix.from_rows([[1], [0]])
    d1 = Matrix.from_rows([[0, 1]])
    assert quotient_dim(d1, d0) == 0
    with pytest.raises(NotAComplexError):
        quotient_dim(Matrix.from_rows([[1, 0]]), d0)


def test_block_matrix_fills_zero_blocks() -> None:
    I = Matrix.identity(2)
    B = block_matrix([[I, None], [None, I]], [2, 2], [2, 2])
    assert B == Matrix.identity(4)


def test_echelon_basis_tracks_generators() -> None:
    basis = EchelonBasis(3, track=True)
    assert basis.add({0: 1, 1: 1}, label=0)
    assert basis.add({1: 1, 2: 1}, label=1)
    assert not basis.add({0: 1, 1: 2, 2: 1}, label=2)
    combo = basis.express({0: 1, 1: 2, 2: 1})
    assert combo == {0: Fraction(1), 1: Fraction(1)}
    assert basis.express({2: 1}) is None
    assert span_rank([{0: 1}, {0: 2}, {1: 1}], 3) == 2


def test_fraction_free_elimination_matches_gauss_jordan() -> None:
    rng = make_rng(5)
    for _ in range(500):
        rows, cols = (int(k) for k in rng.integers(1, 21, size=2))
        base = random_matrix(rows, cols, rng, density=float(rng.uniform(0.1, 0.9)))
        M = Matrix.from_function(rows, cols, lambda i, j: base.entry(i, j) / (i + 2))
        echelon, pivots = bareiss(M)
        assert pivots == rref(M)[1]
        assert all(isinstance(v, int) for row in echelon for v in row)
        assert rank(M) == len(pivots)
        assert rank(M) + nullity(M) == cols


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[0, 1], [1, 0]], -1),
        ([[Fraction(1, 2), 1], [3, 4]], -1),
        ([[2, 0, 1], [1, 3, 2], [1, 1, 2]], 6),
        ([[1, 2], [2, 4]], 0),
    ],
)
def test_determinant(rows: list, expected: int) -> None:
    assert determinant(Matrix.from_rows(rows)) == expected


def test_determinant_needs_a_square_matrix() -> None:
    with pytest.raises(DimensionMismatchError):
        determinant(Matrix.zeros(2, 3))
