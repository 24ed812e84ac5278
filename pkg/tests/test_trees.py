from __future__ import annotations

import pytest

from diassocle import MAX_TREE_ARITY
from diassocle.errors import ArityError, ResourceLimitError
from diassocle.trees import (
    LEAF,
    Star,
    canonical_index,
    catalan,
    comp_inverse,
    comp_table,
    comp_trees,
    decode,
    encode,
    enumerate_trees,
    face,
    face_table,
    graft,
    split_index,
    star,
    star_table,
    tree_at,
    tree_count,
    tree_with_split,
    ungraft,
)


def test_tree_counts_are_catalan_numbers() -> None:
    assert [tree_count(n) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    assert all(tree_count(n) == catalan(n) for n in range(11))


def test_canonical_order_starts_with_the_right_comb() -> None:
    right_comb, left_comb = enumerate_trees(2)
    assert encode(right_comb) == "(• (• •))"
    assert encode(left_comb) == "((• •) •)"
    assert canonical_index(right_comb) == 0
    assert tree_at(2, 1) == left_comb


def test_encoding_round_trips_through_decode() -> None:
    for n in range(9):
        for y in enumerate_trees(n):
            assert decode(encode(y)) == y
            assert y.leaves == n + 1


@pytest.mark.parametrize("text", ["(• •", "(• • •)", "x", "(• •) •", ""])
def test_malformed_tree_strings_are_rejected(text: str) -> None:
    with pytest.raises(ValueError):
        decode(text)


def test_graft_and_ungraft_are_inverse() -> None:
    y1, y2 = tree_at(1, 0), tree_at(2, 1)
    y = graft(y1, y2)
    assert y.size == 4
    assert ungraft(y) == (y1, y2)
    assert split_index(y) == 2
    with pytest.raises(ArityError):
        ungraft(LEAF)


def test_combs_carry_a_single_star() -> None:
    right_comb, left_comb = enumerate_trees(2)
    assert [star(right_comb, i) for i in range(3)] == [Star.LEFT] * 3
    assert [star(left_comb, i) for i in range(3)] == [Star.RIGHT] * 3
    corolla = tree_at(1, 0)
    assert (star(corolla, 0), star(corolla, 1)) == (Star.LEFT, Star.RIGHT)


def test_star_table_matches_star() -> None:
    for y_index, y in enumerate(enumerate_trees(3)):
        assert star_table(3)[y_index] == tuple(star(y, i) for i in range(4))


def test_faces_drop_one_arity() -> None:
    for n in range(1, 5):
        for y in enumerate_trees(n):
            for i in range(n + 1):
                assert face(y, i).size == n - 1
    right_comb = tree_at(2, 0)
    assert encode(face(right_comb, 0)) == "(• •)"
    assert face_table(2)[0] == (0, 0, 0)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_faces_satisfy_the_presimplicial_identity(n: int) -> None:
    for y in enumerate_trees(n):
        for j in range(n):
            for i in range(j + 1):
                assert face(face(y, j + 1), i) == face(face(y, i), j)


def test_face_rejects_out_of_range_leaves() -> None:
    with pytest.raises(ArityError):
        face(tree_at(2, 0), 3)
    with pytest.raises(ArityError):
        face(LEAF, 0)


def test_composition_trees_land_in_the_right_arities() -> None:
    for m in range(1, 4):
        for n in range(1, 4):
            for i in range(1, m + 1):
                table = comp_table(m, i, n)
                assert len(table) == tree_count(m + n - 1)
                for outer, inner in table:
                    assert 0 <= outer < tree_count(m)
                    assert 0 <= inner < tree_count(n)
                inverse = comp_inverse(m, i, n)
                assert sum(len(ys) for ys in inverse.values()) == len(table)


def test_composition_with_unary_pieces_is_identity() -> None:
    for y in enumerate_trees(3):
        outer, inner = comp_trees(3, 2, 1, y)
        assert outer == y
        assert inner == tree_at(1, 0)


def test_composition_rejects_bad_slots() -> None:
    with pytest.raises(ArityError):
        comp_trees(2, 3, 1, tree_at(2, 0))
    with pytest.raises(ArityError):
        comp_trees(2, 1, 2, tree_at(2, 0))


def test_split_index_lookup() -> None:
    for n in range(1, 5):
        for i in range(1, n + 1):
            assert split_index(tree_at(n, tree_with_split(n, i))) == i


def test_enumeration_limits() -> None:
    with pytest.raises(ArityError):
        enumerate_trees(-1)
    with pytest.raises(ResourceLimitError):
        enumerate_trees(MAX_TREE_ARITY + 1)
