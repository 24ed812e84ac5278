"""Planar binary tree calculus: enumeration, grafting, faces, star labels and composition trees."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import MAX_TREE_ARITY
from .errors import ArityError, ResourceLimitError

LOGGER = logging.getLogger(__name__)

LEAF_SYMBOL = "•"


class Star(str, Enum):
    """Label attached to a leaf position: ``LEFT`` is ⊣, ``RIGHT`` is ⊢."""

    LEFT = "⊣"
    RIGHT = "⊢"


@dataclass(frozen=True)
class PlanarTree:
    """A leaf (both children ``None``) or a node grafting two subtrees."""

    left: Optional["PlanarTree"] = None
    right: Optional["PlanarTree"] = None
    size: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if (self.left is None) != (self.right is None):
            raise ValueError("a node needs both subtrees")
        if self.left is not None and self.right is not None:
            object.__setattr__(self, "size", self.left.size + self.right.size + 1)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def leaves(self) -> int:
        return self.size + 1

    def __str__(self) -> str:
        return encode(self)


LEAF = PlanarTree()


def graft(y1: PlanarTree, y2: PlanarTree) -> PlanarTree:
    """Return y1 ∨ y2."""
    return PlanarTree(y1, y2)


def ungraft(y: PlanarTree) -> Tuple[PlanarTree, PlanarTree]:
    if y.is_leaf:
        raise ArityError("the bare root cannot be ungrafted")
    return y.left, y.right  # type: ignore[return-value]


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> Tuple[PlanarTree, ...]:
    """Return Y_n in canonical order (left size ascending, then left, then right)."""
    if n < 0:
        raise ArityError(f"tree arity must be nonnegative, got {n}")
    if n > MAX_TREE_ARITY:
        raise ResourceLimitError(f"refusing to enumerate Y_{n}; the limit is {MAX_TREE_ARITY}")
    if n == 0:
        return (LEAF,)
    trees: List[PlanarTree] = []
    for left_size in range(n):
        for left in enumerate_trees(left_size):
            for right in enumerate_trees(n - 1 - left_size):
                trees.append(PlanarTree(left, right))
    LOGGER.debug("Enumerated planar trees | n=%s count=%s", n, len(trees))
    return tuple(trees)


@lru_cache(maxsize=None)
def _index_map(n: int) -> Dict[PlanarTree, int]:
    return {tree: idx for idx, tree in enumerate(enumerate_trees(n))}


def tree_count(n: int) -> int:
    return len(enumerate_trees(n))


def canonical_index(y: PlanarTree) -> int:
    return _index_map(y.size)[y]


def tree_at(n: int, index: int) -> PlanarTree:
    trees = enumerate_trees(n)
    if not 0 <= index < len(trees):
        raise ArityError(f"Y_{n} has {len(trees)} trees; index {index} is out of range")
    return trees[index]


def encode(y: PlanarTree) -> str:
    """Serialize as a balanced-parenthesis string: a leaf is "•", a node "(L R)"."""
    if y.is_leaf:
        return LEAF_SYMBOL
    return f"({encode(y.left)} {encode(y.right)})"  # type: ignore[arg-type]


def decode(text: str) -> PlanarTree:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    position = 0

    def parse() -> PlanarTree:
        nonlocal position
        if position >= len(tokens):
            raise ValueError(f"truncated tree string: {text!r}")
        token = tokens[position]
        position += 1
        if token == LEAF_SYMBOL:
            return LEAF
        if token != "(":
            raise ValueError(f"unexpected token {token!r} in tree string {text!r}")
        left = parse()
        right = parse()
        if position >= len(tokens) or tokens[position] != ")":
            raise ValueError(f"unbalanced tree string: {text!r}")
        position += 1
        return PlanarTree(left, right)

    tree = parse()
    if position != len(tokens):
        raise ValueError(f"trailing tokens in tree string: {text!r}")
    return tree


def _check_leaf(y: PlanarTree, i: int) -> None:
    if y.is_leaf:
        raise ArityError("Y_0 has no removable leaves")
    if not 0 <= i <= y.size:
        raise ArityError(f"leaf {i} out of range for a tree in Y_{y.size}")


def face(y: PlanarTree, i: int) -> PlanarTree:
    """Remove leaf i and replace its parent by the sibling subtree."""
    _check_leaf(y, i)
    return _remove_leaf(y, i)


def _remove_leaf(y: PlanarTree, i: int) -> PlanarTree:
    left, right = y.left, y.right
    left_leaves = left.leaves  # type: ignore[union-attr]
    if i < left_leaves:
        if left.is_leaf:  # type: ignore[union-attr]
            return right  # type: ignore[return-value]
        return PlanarTree(_remove_leaf(left, i), right)  # type: ignore[arg-type]
    if right.is_leaf:  # type: ignore[union-attr]
        return left  # type: ignore[return-value]
    return PlanarTree(left, _remove_leaf(right, i - left_leaves))  # type: ignore[arg-type]


def star(y: PlanarTree, i: int) -> Star:
    _check_leaf(y, i)
    n = y.size
    if i == 0:
        return Star.LEFT if y.left.is_leaf else Star.RIGHT  # type: ignore[union-attr]
    if i == n:
        return Star.RIGHT if y.right.is_leaf else Star.LEFT  # type: ignore[union-attr]
    return _leaf_side(y, i)


def _leaf_side(y: PlanarTree, i: int) -> Star:
    left, right = y.left, y.right
    left_leaves = left.leaves  # type: ignore[union-attr]
    if i < left_leaves:
        if left.is_leaf:  # type: ignore[union-attr]
            return Star.LEFT
        return _leaf_side(left, i)  # type: ignore[arg-type]
    if right.is_leaf:  # type: ignore[union-attr]
        return Star.RIGHT
    return _leaf_side(right, i - left_leaves)  # type: ignore[arg-type]


def split_index(y: PlanarTree) -> int:
    """Return i such that y = y1 ∨ y2 with y1 in Y_{i-1}."""
    if y.is_leaf:
        raise ArityError("the bare root has no split index")
    return y.left.size + 1  # type: ignore[union-attr]


def _remove_leaves(y: PlanarTree, leaves: List[int]) -> PlanarTree:
    for leaf in sorted(leaves, reverse=True):
        y = _remove_leaf(y, leaf)
    return y


def comp_trees(m: int, i: int, n: int, y: PlanarTree) -> Tuple[PlanarTree, PlanarTree]:
    """Return the outer tree in Y_m and the inner tree in Y_n used by the i-th partial composition."""
    if m < 1 or n < 1 or not 1 <= i <= m:
        raise ArityError(f"invalid composition slot m={m} i={i} n={n}")
    total = m + n - 1
    if y.size != total:
        raise ArityError(f"composition tree must lie in Y_{total}, got Y_{y.size}")
    outer = _remove_leaves(y, list(range(i, i + n - 1)))
    inner = _remove_leaves(y, list(range(0, i - 1)) + list(range(i + n, total + 1)))
    return outer, inner


@lru_cache(maxsize=None)
def face_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """face_table(n)[y][i] is the canonical index of face(y, i) for y in Y_n."""
    return tuple(
        tuple(canonical_index(_remove_leaf(y, i)) for i in range(n + 1))
        for y in enumerate_trees(n)
    )


@lru_cache(maxsize=None)
def star_table(n: int) -> Tuple[Tuple[Star, ...], ...]:
    return tuple(tuple(star(y, i) for i in range(n + 1)) for y in enumerate_trees(n))


@lru_cache(maxsize=None)
def comp_table(m: int, i: int, n: int) -> Tuple[Tuple[int, int], ...]:
    """comp_table(m, i, n)[y] is the pair (outer index, inner index) for y in Y_{m+n-1}."""
    pairs = []
    for y in enumerate_trees(m + n - 1):
        outer, inner = comp_trees(m, i, n, y)
        pairs.append((canonical_index(outer), canonical_index(inner)))
    return tuple(pairs)


@lru_cache(maxsize=None)
def comp_inverse(m: int, i: int, n: int) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    inverse: Dict[Tuple[int, int], List[int]] = {}
    for y, pair in enumerate(comp_table(m, i, n)):
        inverse.setdefault(pair, []).append(y)
    return {pair: tuple(ys) for pair, ys in inverse.items()}


@lru_cache(maxsize=None)
def split_table(n: int) -> Tuple[int, ...]:
    return tuple(split_index(y) for y in enumerate_trees(n))


@lru_cache(maxsize=None)
def tree_with_split(n: int, i: int) -> int:
    """Canonical index of the first tree in Y_n whose split index is i."""
    for idx, value in enumerate(split_table(n)):
        if value == i:
            return idx
    raise ArityError(f"no tree in Y_{n} has split index {i}")


def catalan(n: int) -> int:
    value = 1
    for k in range(n):
        value = value * 2 * (2 * k + 1) // (k + 2)
    return value


__all__ = [
    "LEAF",
    "PlanarTree",
    "Star",
    "canonical_index",
    "catalan",
    "comp_inverse",
    "comp_table",
    "comp_trees",
    "decode",
    "encode",
    "enumerate_trees",
    "face",
    "face_table",
    "graft",
    "split_index",
    "split_table",
    "star",
    "star_table",
    "tree_at",
    "tree_count",
    "tree_with_split",
    "ungraft",
]
