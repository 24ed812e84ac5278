"""Tree-indexed cochains, partial compositions, the bracket and coboundary of diassociative cochains.

Cochains are stored sparsely: ``table[(tree, indices)]`` is the coordinate vector of the
value on a basis tuple, and missing keys are zero. Operators are linear, so their
matrices are read off by running them once on a cochain whose coordinates are
:class:`LinearForm` variables.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra_core import (
    AlgebraData,
    BilinearMap,
    BimoduleData,
    DiassData,
    DiassRepData,
    RAvgAlgebra,
    RAvgBimodule,
    verify_relative_averaging,
)
from .constructions import adjoint_bimodule, diass_direct_sum, induced_diass, induced_rep_on_B, split
from .errors import ArityError, DimensionMismatchError
from .exact_linalg import LinearForm, Matrix, SparseVec, basis_vector, vec_axpy, vec_scale, vec_sub
from .trees import comp_inverse, enumerate_trees, face_table, star_table, tree_count

LOGGER = logging.getLogger(__name__)

Key = Tuple[int, Tuple[int, ...]]
IndexFilter = Callable[[Tuple[int, ...]], bool]

e = basis_vector


@dataclass
class Cochain:
    """A multilinear map from (trees in Y_n) × (source basis)^n to the target space."""

    arity: int
    source_dim: int
    target_dim: int
    table: Dict[Key, SparseVec] = field(default_factory=dict)
    tree_indexed: bool = True

    @classmethod
    def zero(cls, arity: int, source_dim: int, target_dim: int, *, tree_indexed: bool = True) -> "Cochain":
        return cls(arity, source_dim, target_dim, {}, tree_indexed)

    @classmethod
    def element(cls, vec: SparseVec, target_dim: int) -> "Cochain":
        """An element of the target viewed as a 0-cochain."""
        return cls(0, 0, target_dim, {(0, ()): dict(vec)} if vec else {})

    @classmethod
    def from_function(
        cls,
        arity: int,
        source_dim: int,
        target_dim: int,
        fn: Callable[[int, Tuple[int, ...]], SparseVec],
        *,
        tree_indexed: bool = True,
        index_filter: Optional[IndexFilter] = None,
    ) -> "Cochain":
        table: Dict[Key, SparseVec] = {}
        trees = range(tree_count(arity)) if tree_indexed else range(1)
        for t in trees:
            for idx in itertools.product(range(source_dim), repeat=arity):
                if index_filter is not None and not index_filter(idx):
                    continue
                value = {k: v for k, v in fn(t, idx).items() if v}
                if value:
                    table[(t, idx)] = value
        return cls(arity, source_dim, target_dim, table, tree_indexed)

    def value(self, tree: int, idx: Tuple[int, ...]) -> SparseVec:
        return self.table.get((tree, idx), {})

    def evaluate(self, tree: int, args: Sequence[SparseVec]) -> SparseVec:
        """Multilinear evaluation on arbitrary (sparse) arguments."""
        if len(args) != self.arity:
            raise ArityError(f"{self.arity}-cochain evaluated on {len(args)} arguments")
        out: SparseVec = {}
        if any(not a for a in args):
            return out
        tree = tree if self.tree_indexed else 0
        for combo in itertools.product(*(list(a.items()) for a in args)):
            vec = self.table.get((tree, tuple(k for k, _ in combo)))
            if vec:
                coeff: Any = 1
                for _, c in combo:
                    coeff = coeff * c
                vec_axpy(out, coeff, vec)
        return out

    def element_value(self) -> SparseVec:
        if self.arity != 0:
            raise ArityError("only 0-cochains are elements")
        return self.value(0, ())

    def _check_compatible(self, other: "Cochain") -> None:
        if (self.arity, self.source_dim, self.target_dim) != (other.arity, other.source_dim, other.target_dim):
            raise DimensionMismatchError(
                f"cochain shapes differ: ({self.arity}, {self.source_dim}, {self.target_dim}) vs "
                f"({other.arity}, {other.source_dim}, {other.target_dim})"
            )

    def axpy(self, c: Any, other: "Cochain") -> "Cochain":
        """Return self + c·other."""
        self._check_compatible(other)
        table = {key: dict(vec) for key, vec in self.table.items()}
        for key, vec in other.table.items():
            target = table.setdefault(key, {})
            vec_axpy(target, c, vec)
            if not target:
                del table[key]
        return Cochain(self.arity, self.source_dim, self.target_dim, table, self.tree_indexed)

    def add(self, other: "Cochain") -> "Cochain":
        return self.axpy(1, other)

    def sub(self, other: "Cochain") -> "Cochain":
        return self.axpy(-1, other)

    def scale(self, c: Any) -> "Cochain":
        table = {key: vec_scale(vec, c) for key, vec in self.table.items()}
        return Cochain(self.arity, self.source_dim, self.target_dim, {k: v for k, v in table.items() if v}, self.tree_indexed)

    def neg(self) -> "Cochain":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return not any(self.table.values())

    def equals(self, other: "Cochain") -> bool:
        return self.sub(other).is_zero()


# ---------------------------------------------------------------------------
# flat coordinates


@dataclass(frozen=True)
class CochainSpace:
    """Basis of a cochain space: keys ordered tree-major, then lexicographically by index tuple."""

    arity: int
    source_dim: int
    target_dim: int
    tree_indexed: bool = True
    index_filter: Optional[IndexFilter] = field(default=None, compare=False)

    @property
    def keys(self) -> List[Key]:
        keys = _all_keys(self.arity, self.source_dim, self.tree_indexed)
        if self.index_filter is None:
            return list(keys)
        return [key for key in keys if self.index_filter(key[1])]

    @property
    def dim(self) -> int:
        return len(self.keys) * self.target_dim

    def zero(self) -> Cochain:
        return Cochain.zero(self.arity, self.source_dim, self.target_dim, tree_indexed=self.tree_indexed)


@lru_cache(maxsize=None)
def _all_keys(arity: int, source_dim: int, tree_indexed: bool) -> Tuple[Key, ...]:
    trees = range(tree_count(arity)) if tree_indexed else range(1)
    return tuple((t, idx) for t in trees for idx in itertools.product(range(source_dim), repeat=arity))


class CochainLayout:
    """Direct sum of cochain spaces flattened into one coordinate vector."""

    def __init__(self, blocks: Sequence[CochainSpace]) -> None:
        self.blocks = list(blocks)
        self._keys = [space.keys for space in self.blocks]
        self._positions = [{key: pos for pos, key in enumerate(keys)} for keys in self._keys]
        self.offsets: List[int] = []
        offset = 0
        for space, keys in zip(self.blocks, self._keys):
            self.offsets.append(offset)
            offset += len(keys) * space.target_dim
        self.dim = offset

    def block_dims(self) -> List[int]:
        return [len(keys) * space.target_dim for space, keys in zip(self.blocks, self._keys)]

    def flatten(self, cochains: Sequence[Cochain]) -> SparseVec:
        if len(cochains) != len(self.blocks):
            raise DimensionMismatchError(f"layout has {len(self.blocks)} blocks, got {len(cochains)} cochains")
        out: SparseVec = {}
        for b, (space, cochain) in enumerate(zip(self.blocks, cochains)):
            positions = self._positions[b]
            for key, vec in cochain.table.items():
                if not vec:
                    continue
                pos = positions.get(key)
                if pos is None:
                    raise DimensionMismatchError(f"cochain entry {key} lies outside block {b}")
                base = self.offsets[b] + pos * space.target_dim
                for k, v in vec.items():
                    out[base + k] = v
        return out

    def unflatten(self, vec: Mapping[int, Any]) -> List[Cochain]:
        cochains = [space.zero() for space in self.blocks]
        for flat, value in vec.items():
            if not value:
                continue
            b = self._block_of(flat)
            space = self.blocks[b]
            pos, coord = divmod(flat - self.offsets[b], space.target_dim)
            cochains[b].table.setdefault(self._keys[b][pos], {})[coord] = value
        return cochains

    def _block_of(self, flat: int) -> int:
        for b in range(len(self.blocks) - 1, -1, -1):
            if flat >= self.offsets[b]:
                return b
        raise DimensionMismatchError(f"flat index {flat} outside layout")

    def generic(self) -> List[Cochain]:
        """Cochains whose coordinates are the layout's own variables."""
        cochains = []
        for b, space in enumerate(self.blocks):
            table: Dict[Key, SparseVec] = {}
            for pos, key in enumerate(self._keys[b]):
                base = self.offsets[b] + pos * space.target_dim
                table[key] = {k: LinearForm.variable(base + k) for k in range(space.target_dim)}
            cochains.append(Cochain(space.arity, space.source_dim, space.target_dim, table, space.tree_indexed))
        return cochains

    def label(self, flat: int) -> str:
        b = self._block_of(flat)
        space = self.blocks[b]
        pos, coord = divmod(flat - self.offsets[b], space.target_dim)
        tree, idx = self._keys[b][pos]
        return f"block{b}:tree{tree}:{','.join(map(str, idx))}->{coord}"


def operator_matrix(
    op: Callable[[List[Cochain]], List[Cochain]],
    source: CochainLayout,
    target: CochainLayout,
) -> Matrix:
    """Matrix of a linear cochain operator, read off from its action on the generic cochain."""
    images = op(source.generic())
    flat = target.flatten(images)
    rows: List[Dict[int, Fraction]] = [{} for _ in range(target.dim)]
    for row, form in flat.items():
        if not isinstance(form, LinearForm):
            raise TypeError("operator produced a constant term; it is not linear")
        rows[row] = dict(form.terms)
    return Matrix.from_sparse_rows(source.dim, rows)


# ---------------------------------------------------------------------------
# structure cochains


def cochain_from_linear(matrix: Matrix) -> Cochain:
    """A linear map as a 1-cochain on the single tree of Y_1."""
    table = {(0, (j,)): dict(col) for j, col in enumerate(matrix.sparse_columns) if col}
    return Cochain(1, matrix.cols, matrix.rows, table)


def cochain_from_bilinear(by_tree: Sequence[BilinearMap]) -> Cochain:
    """A 2-cochain from one bilinear map per tree of Y_2 (right comb first)."""
    if len(by_tree) != tree_count(2):
        raise ArityError("a 2-cochain needs one bilinear map per tree of Y_2")
    first = by_tree[0]
    if first.left_dim != first.right_dim:
        raise DimensionMismatchError("2-cochains need a single source space")
    table: Dict[Key, SparseVec] = {}
    for t, bilinear in enumerate(by_tree):
        for (i, j), vec in bilinear.entries.items():
            table[(t, (i, j))] = dict(vec)
    return Cochain(2, first.left_dim, first.out_dim, table)


def pi_of_diass(D: DiassData) -> Cochain:
    """⊣ on the right comb and ⊢ on the left comb."""
    return cochain_from_bilinear([D.dashv, D.vdash])


def assemble_delta(A: AlgebraData, M: BimoduleData) -> Cochain:
    """The 2-cochain on A⊕M encoding the product and both actions; M indices start at dim A."""
    return pi_of_diass(diass_direct_sum(A, M))


def operator_cochain(R: RAvgAlgebra) -> Cochain:
    return cochain_from_linear(R.P)


# ---------------------------------------------------------------------------
# partial compositions and the bracket


def circ_i(
    f: Cochain,
    g: Cochain,
    i: int,
    *,
    degrees: Optional[Sequence[int]] = None,
    inner_degree: int = 0,
    index_filter: Optional[IndexFilter] = None,
) -> Cochain:
    """(f∘ᵢg)(y; a) = f(R₀y; a₁.., g(Rᵢy; aᵢ..a_{i+n-1}), ..).

    With ``degrees`` set the result carries the Koszul sign (−1)^{|g|(|a₁|+..+|a_{i-1}|)}.
    """
    m, n = f.arity, g.arity
    if not 1 <= i <= m or n < 1:
        raise ArityError(f"cannot compose a {n}-cochain into slot {i} of a {m}-cochain")
    if g.target_dim != f.source_dim:
        raise DimensionMismatchError(f"inner target dimension {g.target_dim} differs from outer source {f.source_dim}")
    if f.tree_indexed != g.tree_indexed:
        raise ArityError("cannot compose a tree-indexed cochain with a plain one")
    inverse = comp_inverse(m, i, n) if f.tree_indexed else {(0, 0): (0,)}
    by_slot: Dict[int, List[Tuple[int, Tuple[int, ...], SparseVec]]] = {}
    for (tf, idx_f), vec in f.table.items():
        if vec:
            by_slot.setdefault(idx_f[i - 1], []).append((tf, idx_f, vec))
    graded = degrees is not None and inner_degree % 2 == 1
    table: Dict[Key, SparseVec] = {}
    for (tg, idx_g), w in g.table.items():
        for k, c in w.items():
            for tf, idx_f, vec in by_slot.get(k, ()):
                ys = inverse.get((tf, tg))
                if not ys:
                    continue
                new_idx = idx_f[: i - 1] + idx_g + idx_f[i:]
                if index_filter is not None and not index_filter(new_idx):
                    continue
                coeff = c
                if graded and sum(degrees[a] for a in idx_f[: i - 1]) % 2:  # type: ignore[index]
                    coeff = -coeff
                for y in ys:
                    vec_axpy(table.setdefault((y, new_idx), {}), coeff, vec)
    return Cochain(m + n - 1, g.source_dim, f.target_dim, {k: v for k, v in table.items() if v}, f.tree_indexed)


def mm_bracket(f: Cochain, g: Cochain, *, index_filter: Optional[IndexFilter] = None) -> Cochain:
    """Σᵢ(−1)^{(i−1)(n−1)} f∘ᵢg − (−1)^{(m−1)(n−1)} Σᵢ(−1)^{(i−1)(m−1)} g∘ᵢf."""
    if not (f.source_dim == f.target_dim == g.source_dim == g.target_dim):
        raise DimensionMismatchError("bracket needs cochains on a common space")
    m, n = f.arity, g.arity
    dim = f.source_dim
    result = Cochain.zero(m + n - 1, dim, dim)
    for i in range(1, m + 1):
        sign = -1 if ((i - 1) * (n - 1)) % 2 else 1
        result = result.axpy(sign, circ_i(f, g, i, index_filter=index_filter))
    outer = -1 if ((m - 1) * (n - 1)) % 2 else 1
    for i in range(1, n + 1):
        sign = -1 if ((i - 1) * (m - 1)) % 2 else 1
        result = result.axpy(-outer * sign, circ_i(g, f, i, index_filter=index_filter))
    return result


# ---------------------------------------------------------------------------
# the diassociative coboundary


def delta_diass(f: Cochain, D: DiassData, rep: DiassRepData) -> Cochain:
    """Coboundary of CY^n(D, M) with the ⋆-labelled face-map formula."""
    n = f.arity
    if (n > 0 and f.source_dim != D.dim) or f.target_dim != rep.dim:
        raise DimensionMismatchError(
            f"cochain maps {f.source_dim}→{f.target_dim}, coefficients need {D.dim}→{rep.dim}"
        )
    faces = face_table(n + 1)
    stars = star_table(n + 1)
    table: Dict[Key, SparseVec] = {}
    for t in range(tree_count(n + 1)):
        face_row, star_row = faces[t], stars[t]
        for idx in itertools.product(range(D.dim), repeat=n + 1):
            out: SparseVec = {}
            value = f.value(face_row[0], idx[1:])
            if value:
                vec_axpy(out, 1, rep.act_left(star_row[0], e(idx[0]), value))
            for i in range(1, n + 1):
                merged = D.product(star_row[i], e(idx[i - 1]), e(idx[i]))
                if not merged:
                    continue
                args = [e(a) for a in idx[: i - 1]] + [merged] + [e(a) for a in idx[i + 1:]]
                vec_axpy(out, -1 if i % 2 else 1, f.evaluate(face_row[i], args))
            value = f.value(face_row[n + 1], idx[:n])
            if value:
                sign = -1 if (n + 1) % 2 else 1
                vec_axpy(out, sign, rep.act_right(star_row[n + 1], value, e(idx[n])))
            if out:
                table[(t, idx)] = out
    return Cochain(n + 1, D.dim, rep.dim, table)


# ---------------------------------------------------------------------------
# cochains on M with values in A, lifted to A⊕M


def lift(f: Cochain, R: RAvgAlgebra) -> Cochain:
    """View f: M^n → A as a cochain on A⊕M that vanishes unless every input lies in M."""
    da = R.A.dim
    total = da + R.M.dim
    table = {(t, tuple(i + da for i in idx)): dict(vec) for (t, idx), vec in f.table.items() if vec}
    return Cochain(f.arity, total, total, table)


def restrict(F: Cochain, R: RAvgAlgebra) -> Cochain:
    """The M^n → A component of a cochain on A⊕M."""
    da = R.A.dim
    table: Dict[Key, SparseVec] = {}
    for (t, idx), vec in F.table.items():
        if all(i >= da for i in idx):
            a_part, _ = split(vec, da)
            if a_part:
                table[(t, tuple(i - da for i in idx))] = a_part
    return Cochain(F.arity, R.M.dim, da, table)


def _module_only(da: int) -> IndexFilter:
    return lambda idx: all(i >= da for i in idx)


def _at_most_one_algebra(da: int) -> IndexFilter:
    return lambda idx: sum(1 for i in idx if i < da) <= 1


def _bracket_with_element(f: Cochain, a: SparseVec, R: RAvgAlgebra) -> Cochain:
    """⟦f,a⟧(y;u) = Σᵢ f(y;..a·uᵢ − uᵢ·a..) + f(y;u)·a − a·f(y;u)."""
    A, M = R.A, R.M
    m = f.arity
    if m == 0:
        b = f.element_value()
        return Cochain.element(vec_sub(A.mul(b, a), A.mul(a, b)), A.dim)
    commutators = [vec_sub(M.act_left(a, e(u)), M.act_right(e(u), a)) for u in range(M.dim)]
    table: Dict[Key, SparseVec] = {}
    for t in range(tree_count(m)):
        for idx in itertools.product(range(M.dim), repeat=m):
            out: SparseVec = {}
            for i in range(m):
                if commutators[idx[i]]:
                    args = [e(u) for u in idx]
                    args[i] = commutators[idx[i]]
                    vec_axpy(out, 1, f.evaluate(t, args))
            value = f.value(t, idx)
            if value:
                vec_axpy(out, 1, A.mul(value, a))
                vec_axpy(out, -1, A.mul(a, value))
            if out:
                table[(t, idx)] = out
    return Cochain(m, M.dim, A.dim, table)


def derived_bracket(f: Cochain, g: Cochain, R: RAvgAlgebra) -> Cochain:
    """⟦f,g⟧ = (−1)^m p[[Δ,f̂],ĝ] on cochains M^• → A, with the separate rules for 0-cochains."""
    m, n = f.arity, g.arity
    for c in (f, g):
        if c.target_dim != R.A.dim or (c.arity > 0 and c.source_dim != R.M.dim):
            raise DimensionMismatchError("derived bracket takes cochains from M to A")
    if n == 0:
        return _bracket_with_element(f, g.element_value(), R)
    if m == 0:
        return _bracket_with_element(g, f.element_value(), R).neg()
    da = R.A.dim
    delta = assemble_delta(R.A, R.M)
    inner = mm_bracket(delta, lift(f, R), index_filter=_at_most_one_algebra(da))
    outer = mm_bracket(inner, lift(g, R), index_filter=_module_only(da))
    result = restrict(outer, R)
    return result.neg() if m % 2 else result


def d_P(f: Cochain, R: RAvgAlgebra) -> Cochain:
    """d_P(f) = ⟦P, f⟧."""
    return derived_bracket(operator_cochain(R), f, R)


def delta_diass_P(f: Cochain, R: RAvgAlgebra, coeffs: Optional[RAvgBimodule] = None) -> Cochain:
    """Coboundary of the induced diassociative algebra M_P with values in A (or in B for given coefficients)."""
    D = induced_diass(R, check=False)
    rep = induced_rep_on_B(R, coeffs if coeffs is not None else adjoint_bimodule(R), check=False)
    return delta_diass(f, D, rep)


def theta(f: Cochain, R: RAvgAlgebra) -> Cochain:
    """Θf(y;u₁..u_{n+1}) = [y = |∨y₁] (−1)^{n+1} u₁·f(y₁;u₂..) + [y = y₁∨|] f(y₁;u₁..uₙ)·u_{n+1}."""
    M = R.M
    n = f.arity
    trees = enumerate_trees(n + 1)
    index_of = {tree: i for i, tree in enumerate(enumerate_trees(n))}
    sign = -1 if (n + 1) % 2 else 1
    table: Dict[Key, SparseVec] = {}
    for t, y in enumerate(trees):
        left_leaf, right_leaf = y.left.is_leaf, y.right.is_leaf  # type: ignore[union-attr]
        if not (left_leaf or right_leaf):
            continue
        for idx in itertools.product(range(M.dim), repeat=n + 1):
            out: SparseVec = {}
            if left_leaf:
                value = f.value(index_of[y.right], idx[1:])  # type: ignore[index]
                if value:
                    vec_axpy(out, sign, M.act_right(e(idx[0]), value))
            if right_leaf:
                value = f.value(index_of[y.left], idx[:n])  # type: ignore[index]
                if value:
                    vec_axpy(out, 1, M.act_left(value, e(idx[n])))
            if out:
                table[(t, idx)] = out
    return Cochain(n + 1, M.dim, M.dim, table)


# ---------------------------------------------------------------------------
# bidegrees on A⊕M


@dataclass
class TypedCochain:
    """The bidegree k|l component of a cochain on A⊕M."""

    cochain: Cochain
    k: int
    l: int
    algebra_dim: int

    def slot_word(self, idx: Tuple[int, ...]) -> str:
        return "".join("M" if i >= self.algebra_dim else "A" for i in idx)


def _module_slots(idx: Tuple[int, ...], da: int) -> int:
    return sum(1 for i in idx if i >= da)


def bidegree_project(F: Cochain, k: int, l: int, algebra_dim: int) -> TypedCochain:
    """Keep A-output on inputs with l module slots and M-output on inputs with l+1 module slots."""
    if k + l != F.arity - 1 or k < -1 or l < 0:
        raise ArityError(f"bidegree {k}|{l} is invalid for a {F.arity}-cochain")
    table: Dict[Key, SparseVec] = {}
    for key, vec in F.table.items():
        slots = _module_slots(key[1], algebra_dim)
        if slots == l:
            part = {c: v for c, v in vec.items() if c < algebra_dim}
        elif slots == l + 1:
            part = {c: v for c, v in vec.items() if c >= algebra_dim}
        else:
            continue
        if part:
            table[key] = part
    return TypedCochain(Cochain(F.arity, F.source_dim, F.target_dim, table, F.tree_indexed), k, l, algebra_dim)


def bidegree_decompose(F: Cochain, algebra_dim: int) -> Tuple[Dict[Tuple[int, int], TypedCochain], Cochain]:
    """Homogeneous components by bidegree, plus the M-valued part on pure A inputs that has none."""
    n = F.arity
    parts = {}
    for l in range(0, n + 1):
        k = n - 1 - l
        if k < -1:
            continue
        piece = bidegree_project(F, k, l, algebra_dim)
        if not piece.cochain.is_zero():
            parts[(k, l)] = piece
    remainder: Dict[Key, SparseVec] = {}
    for key, vec in F.table.items():
        if _module_slots(key[1], algebra_dim) == 0:
            part = {c: v for c, v in vec.items() if c >= algebra_dim}
            if part:
                remainder[key] = part
    return parts, Cochain(n, F.source_dim, F.target_dim, remainder, F.tree_indexed)


def is_homogeneous(F: Cochain, k: int, l: int, algebra_dim: int) -> bool:
    return F.equals(bidegree_project(F, k, l, algebra_dim).cochain)


# ---------------------------------------------------------------------------
# perturbations


@dataclass
class PerturbationResult:
    mc_equation_holds: bool
    direct_check: bool

    def to_dict(self) -> Dict[str, bool]:
        return {"mc_equation_holds": self.mc_equation_holds, "direct_check": self.direct_check}


def perturbation_check(R: RAvgAlgebra, perturbation: Matrix) -> PerturbationResult:
    """P + P′ is a relative averaging operator iff d_P(P′) + ½⟦P′,P′⟧ = 0."""
    p_prime = cochain_from_linear(perturbation)
    lhs = d_P(p_prime, R).axpy(Fraction(1, 2), derived_bracket(p_prime, p_prime, R))
    direct = verify_relative_averaging(R.with_operator(R.P.add(perturbation)), check_base=False).valid
    LOGGER.debug("Perturbation checked | mc=%s direct=%s", lhs.is_zero(), direct)
    return PerturbationResult(mc_equation_holds=lhs.is_zero(), direct_check=direct)


__all__ = [
    "Cochain",
    "CochainLayout",
    "CochainSpace",
    "PerturbationResult",
    "TypedCochain",
    "assemble_delta",
    "bidegree_decompose",
    "bidegree_project",
    "circ_i",
    "cochain_from_bilinear",
    "cochain_from_linear",
    "d_P",
    "delta_diass",
    "delta_diass_P",
    "derived_bracket",
    "is_homogeneous",
    "lift",
    "mm_bracket",
    "operator_cochain",
    "operator_matrix",
    "perturbation_check",
    "pi_of_diass",
    "restrict",
    "theta",
]
