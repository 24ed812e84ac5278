"""Truncated A∞, Diass∞ and L∞ structures over ℚ.

Graded spaces carry one internal degree per basis vector, operations stop at a maximal
arity K and every bracket is truncated there. Composition never lowers arity, so the
truncated identities hold exactly in arities up to K; nothing beyond K is claimed.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import DEFAULT_K
from .algebra_core import AlgebraData, BimoduleData, DiassData, VerificationReport, Violation
from .cochain_engine import Cochain, IndexFilter, assemble_delta, circ_i, cochain_from_linear, pi_of_diass
from .constructions import require_valid, shift
from .errors import ArityError, DimensionMismatchError, GradingError, InvalidStructureError
from .exact_linalg import EchelonBasis, Matrix, SparseVec, basis_vector, coset_solve, determinant, format_fraction, vec_sub
from .trees import encode, split_table, tree_at, tree_count, tree_with_split

LOGGER = logging.getLogger(__name__)

AINF = "ainf"
AINF_REP = "ainf_rep"
DIASS_INF = "diass_inf"
KINDS = (AINF, AINF_REP, DIASS_INF)

TRUNCATION_NOTE = "identities checked up to arity {k}; higher arities are truncated"

e = basis_vector


# ---------------------------------------------------------------------------
# graded spaces and graded maps


@dataclass(frozen=True)
class GradedSpace:
    """A finite basis with one internal degree per vector."""

    degrees: Tuple[int, ...]

    @classmethod
    def concentrated(cls, dim: int, degree: int = -1) -> "GradedSpace":
        return cls(tuple([degree] * dim))

    @classmethod
    def from_dims(cls, dims: Dict[int, int]) -> "GradedSpace":
        return cls(tuple(d for d in sorted(dims) for _ in range(dims[d])))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def degree_of(self, index: int) -> int:
        return self.degrees[index]

    @property
    def degree_range(self) -> Tuple[int, int]:
        if not self.degrees:
            return (0, 0)
        return (min(self.degrees), max(self.degrees))

    def dims_by_degree(self) -> Dict[int, int]:
        dims: Dict[int, int] = {}
        for d in self.degrees:
            dims[d] = dims.get(d, 0) + 1
        return dict(sorted(dims.items()))

    def basis_in_degree(self, degree: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def direct_sum(self, other: "GradedSpace") -> "GradedSpace":
        return GradedSpace(self.degrees + other.degrees)

    def to_dict(self) -> Dict[str, Any]:
        return {"degrees": list(self.degrees), "dims": self.dims_by_degree()}


def check_degrees(cochain: Cochain, source: GradedSpace, target: GradedSpace, degree: int, *, what: str) -> None:
    """Raise GradingError unless every entry raises total degree by exactly ``degree``."""
    for (_, idx), vec in cochain.table.items():
        expected = sum(source.degrees[i] for i in idx) + degree
        for c, v in vec.items():
            if v and target.degrees[c] != expected:
                raise GradingError(
                    f"{what}: entry {idx} -> e{c} lands in degree {target.degrees[c]}, expected {expected}"
                )


def _describe_table(cochain: Cochain, limit: int = 4) -> List[str]:
    lines = []
    for (t, idx), vec in sorted(cochain.table.items()):
        if vec:
            coords = ", ".join(f"e{c}:{format_fraction(Fraction(v))}" for c, v in sorted(vec.items()))
            lines.append(f"arity {cochain.arity} tree {t} {idx} -> {{{coords}}}")
            if len(lines) >= limit:
                break
    return lines


@dataclass
class GradedMap:
    """A sum of multilinear maps of one degree on a graded space, stored per arity."""

    space: GradedSpace
    degree: int
    parts: Dict[int, Cochain] = field(default_factory=dict)
    tree_indexed: bool = True

    @classmethod
    def zero(cls, space: GradedSpace, degree: int, *, tree_indexed: bool = True) -> "GradedMap":
        return cls(space, degree, {}, tree_indexed)

    def part(self, arity: int) -> Cochain:
        found = self.parts.get(arity)
        if found is not None:
            return found
        dim = self.space.dim
        return Cochain.zero(arity, dim, dim, tree_indexed=self.tree_indexed)

    @property
    def arities(self) -> List[int]:
        return sorted(k for k, c in self.parts.items() if not c.is_zero())

    def check(self) -> "GradedMap":
        for k, c in self.parts.items():
            if c.arity != k or c.source_dim != self.space.dim or c.target_dim != self.space.dim:
                raise DimensionMismatchError(f"arity-{k} part does not match the graded space")
            check_degrees(c, self.space, self.space, self.degree, what=f"degree-{self.degree} map")
        return self

    def axpy(self, c: Any, other: "GradedMap") -> "GradedMap":
        if other.space != self.space or other.tree_indexed != self.tree_indexed:
            raise DimensionMismatchError("graded maps live on different spaces")
        if other.is_zero():
            return GradedMap(self.space, self.degree, dict(self.parts), self.tree_indexed)
        if self.is_zero():
            return other.scale(c)
        if other.degree != self.degree:
            raise GradingError(f"cannot add maps of degree {self.degree} and {other.degree}")
        parts = dict(self.parts)
        for k, piece in other.parts.items():
            parts[k] = parts[k].axpy(c, piece) if k in parts else piece.scale(c)
        return GradedMap(self.space, self.degree, {k: v for k, v in parts.items() if not v.is_zero()}, self.tree_indexed)

    def add(self, other: "GradedMap") -> "GradedMap":
        return self.axpy(1, other)

    def sub(self, other: "GradedMap") -> "GradedMap":
        return self.axpy(-1, other)

    def scale(self, c: Any) -> "GradedMap":
        parts = {k: v.scale(c) for k, v in self.parts.items()}
        return GradedMap(self.space, self.degree, {k: v for k, v in parts.items() if not v.is_zero()}, self.tree_indexed)

    def neg(self) -> "GradedMap":
        return self.scale(-1)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.parts.values())

    def equals(self, other: "GradedMap") -> bool:
        return self.axpy(-1, other).is_zero()

    def truncate(self, max_arity: int) -> "GradedMap":
        return GradedMap(self.space, self.degree, {k: v for k, v in self.parts.items() if k <= max_arity}, self.tree_indexed)

    def filtered(self, keep: Callable[[Tuple[int, ...], int], bool]) -> "GradedMap":
        """Keep the coordinates c of entries on idx with keep(idx, c)."""
        parts = {}
        for k, cochain in self.parts.items():
            table = {}
            for key, vec in cochain.table.items():
                kept = {c: v for c, v in vec.items() if v and keep(key[1], c)}
                if kept:
                    table[key] = kept
            if table:
                parts[k] = Cochain(k, cochain.source_dim, cochain.target_dim, table, cochain.tree_indexed)
        return GradedMap(self.space, self.degree, parts, self.tree_indexed)

    def describe(self, limit: int = 4) -> List[str]:
        lines: List[str] = []
        for k in self.arities:
            lines.extend(_describe_table(self.parts[k], limit - len(lines)))
            if len(lines) >= limit:
                break
        return lines or ["0"]


def _accumulate(parts: Dict[int, Cochain], c: Any, piece: Cochain) -> None:
    k = piece.arity
    parts[k] = parts[k].axpy(c, piece) if k in parts else piece.scale(c)


def diamond(p: GradedMap, q: GradedMap, max_arity: int, *, index_filter: Optional[IndexFilter] = None) -> GradedMap:
    """p⋄q = Σ p_k ∘ᵢ q_l with the Koszul sign (−1)^{|q|(|a₁|+..+|a_{i−1}|)}, kept up to arity ``max_arity``."""
    if p.space != q.space or p.tree_indexed != q.tree_indexed:
        raise DimensionMismatchError("cannot compose graded maps on different spaces")
    parts: Dict[int, Cochain] = {}
    for k, pk in p.parts.items():
        for l, ql in q.parts.items():
            if k + l - 1 > max_arity or pk.is_zero() or ql.is_zero():
                continue
            for i in range(1, k + 1):
                piece = circ_i(pk, ql, i, degrees=p.space.degrees, inner_degree=q.degree, index_filter=index_filter)
                _accumulate(parts, 1, piece)
    parts = {k: v for k, v in parts.items() if not v.is_zero()}
    return GradedMap(p.space, p.degree + q.degree, parts, p.tree_indexed)


def graded_mm_bracket(
    p: GradedMap, q: GradedMap, max_arity: int = DEFAULT_K, *, index_filter: Optional[IndexFilter] = None
) -> GradedMap:
    """{[p,q]} = p⋄q − (−1)^{|p||q|} q⋄p, truncated at ``max_arity``."""
    sign = -1 if (p.degree * q.degree) % 2 else 1
    forward = diamond(p, q, max_arity, index_filter=index_filter)
    backward = diamond(q, p, max_arity, index_filter=index_filter)
    result = forward.axpy(-sign, backward)
    result.degree = p.degree + q.degree
    return result


def exp_adjoint(x: GradedMap, P: GradedMap, max_arity: int, depth: Optional[int] = None) -> GradedMap:
    """e^{{[−,P]}}x = Σₙ (1/n!) {[..{[x,P]},..,P]}."""
    depth = max_arity + 1 if depth is None else depth
    total = x
    term = x
    for n in range(1, depth + 1):
        term = graded_mm_bracket(term, P, max_arity)
        if term.is_zero():
            break
        total = total.axpy(Fraction(1, factorial(n)), term)
    return total


# ---------------------------------------------------------------------------
# A∞, A∞-representations and Diass∞ operations


@dataclass
class GradedOps:
    """μ_k, η_k or π_k up to arity ``max_arity``; every entry raises degree by ``degree``.

    For ``ainf_rep`` the operations are η_k on tuples from base ⊕ space with exactly one
    slot in the module (module indices start at ``base.dim``) and values in the module.
    """

    kind: str
    space: GradedSpace
    ops: Dict[int, Cochain]
    max_arity: int = DEFAULT_K
    degree: int = 1
    base: Optional[GradedSpace] = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidStructureError(f"unknown operation kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == AINF_REP and self.base is None:
            raise InvalidStructureError("a representation needs the graded space of its algebra")
        source = self.source_space
        for k, op in self.ops.items():
            if not 1 <= k <= self.max_arity or op.arity != k:
                raise ArityError(f"operation stored under arity {k} has arity {op.arity} (max {self.max_arity})")
            if op.tree_indexed != (self.kind == DIASS_INF):
                raise ArityError(f"{self.kind} operations must {'' if self.kind == DIASS_INF else 'not '}be tree-indexed")
            if op.source_dim != source.dim or op.target_dim != self.space.dim:
                raise DimensionMismatchError(f"arity-{k} operation has shape ({op.source_dim}, {op.target_dim})")
            check_degrees(op, source, self.space, self.degree, what=f"{self.kind} operation of arity {k}")
            if self.kind == AINF_REP:
                da = self.base.dim  # type: ignore[union-attr]
                for _, idx in op.table:
                    if sum(1 for i in idx if i >= da) != 1:
                        raise InvalidStructureError(f"η_{k} entry {idx} does not have exactly one module slot")

    @property
    def source_space(self) -> GradedSpace:
        if self.kind == AINF_REP:
            return self.base.direct_sum(self.space)  # type: ignore[union-attr]
        return self.space

    def op(self, k: int) -> Cochain:
        found = self.ops.get(k)
        if found is not None:
            return found
        return Cochain.zero(k, self.source_space.dim, self.space.dim, tree_indexed=self.kind == DIASS_INF)

    def as_map(self) -> GradedMap:
        if self.kind == AINF_REP:
            raise InvalidStructureError("a representation is a map on the semidirect sum, not on its own space")
        return GradedMap(self.space, self.degree, dict(self.ops), self.kind == DIASS_INF)

    @classmethod
    def from_map(cls, kind: str, mapping: GradedMap, max_arity: int) -> "GradedOps":
        ops = {k: v for k, v in mapping.parts.items() if k <= max_arity and not v.is_zero()}
        return cls(kind, mapping.space, ops, max_arity, mapping.degree)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "space": self.space.to_dict(),
            "base": self.base.to_dict() if self.base else None,
            "max_arity": self.max_arity,
            "degree": self.degree,
            "nonzero_entries": {k: len(v.table) for k, v in sorted(self.ops.items())},
        }


def _require_kind(ops: GradedOps, kind: str) -> None:
    if ops.kind != kind:
        raise InvalidStructureError(f"expected {kind} operations, got {ops.kind}")


def _identity_report(
    subject: str,
    identity: str,
    square: GradedMap,
    max_arity: int,
    index_filter: Optional[IndexFilter] = None,
) -> VerificationReport:
    report = VerificationReport(subject=subject)
    report.notes.append(TRUNCATION_NOTE.format(k=max_arity))
    dim = square.space.dim
    for n in range(1, max_arity + 1):
        part = square.part(n)
        trees = range(tree_count(n)) if square.tree_indexed else range(1)
        for t in trees:
            label = encode(tree_at(n, t)) if square.tree_indexed else None
            for idx in itertools.product(range(dim), repeat=n):
                if index_filter is not None and not index_filter(idx):
                    continue
                report.record(f"{identity} at arity {n}", [f"e{i}" for i in idx], part.value(t, idx), {}, dim, tree=label)
    if report.valid:
        LOGGER.debug("Graded identities hold | subject=%s checks=%s", subject, report.checks)
    else:
        LOGGER.warning("Graded identities fail | subject=%s detail=%s", subject, report.first_failure())
    return report


def verify_ainf(A: GradedOps) -> VerificationReport:
    """Σ ±μ_k(a₁..μ_l(aᵢ..)..aₙ) = 0 for every n ≤ K with sign (−1)^{|a₁|+..+|a_{i−1}|}."""
    _require_kind(A, AINF)
    mu = A.as_map()
    return _identity_report("A∞ algebra", "higher associativity", diamond(mu, mu, A.max_arity), A.max_arity)


def _one_module_slot(algebra_dim: int) -> IndexFilter:
    return lambda idx: sum(1 for i in idx if i >= algebra_dim) == 1


def _semidirect_ops(A: GradedOps, M: GradedOps, *, trees: bool) -> Dict[int, Cochain]:
    da = A.space.dim
    total = da + M.space.dim
    ops: Dict[int, Cochain] = {}
    for k in range(1, max(A.max_arity, M.max_arity) + 1):
        splits = split_table(k) if trees else (None,)
        table: Dict[Tuple[int, Tuple[int, ...]], SparseVec] = {}
        for t, split_at in enumerate(splits):
            for (_, idx), vec in A.op(k).table.items():
                if vec:
                    table[(t, idx)] = dict(vec)
            for (_, idx), vec in M.op(k).table.items():
                position = next(p for p, i in enumerate(idx) if i >= da) + 1
                if vec and (split_at is None or position == split_at):
                    table[(t, idx)] = shift(vec, da)
        if table:
            ops[k] = Cochain(k, total, total, table, trees)
    return ops


def _check_pair(A: GradedOps, M: GradedOps) -> None:
    _require_kind(A, AINF)
    _require_kind(M, AINF_REP)
    if M.base != A.space:
        raise DimensionMismatchError("the representation is over a different graded space")


def ainf_semidirect(A: GradedOps, M: GradedOps) -> GradedOps:
    """The square-zero A∞ algebra A ⊕ M with μ on pure A inputs and η on one module slot."""
    _check_pair(A, M)
    space = A.space.direct_sum(M.space)
    return GradedOps(AINF, space, _semidirect_ops(A, M, trees=False), max(A.max_arity, M.max_arity))


def verify_ainf_rep(A: GradedOps, M: GradedOps) -> VerificationReport:
    """The higher associativities with exactly one input from M."""
    total = ainf_semidirect(A, M)
    mu = total.as_map()
    square = diamond(mu, mu, total.max_arity, index_filter=_one_module_slot(A.space.dim))
    report = _identity_report("A∞ representation", "higher associativity", square, total.max_arity, _one_module_slot(A.space.dim))
    base = verify_ainf(A)
    if not base.valid:
        report.precondition = f"the A∞ algebra fails: {base.first_failure()}"
    return report


def verify_diass_inf(D: GradedOps) -> VerificationReport:
    """The tree-indexed higher diassociativity for every n ≤ K and y ∈ Y_n."""
    _require_kind(D, DIASS_INF)
    pi = D.as_map()
    return _identity_report("Diass∞ algebra", "higher diassociativity", diamond(pi, pi, D.max_arity), D.max_arity)


def diass_inf_semidirect(A: GradedOps, M: GradedOps) -> GradedOps:
    """π_k(y; (a₁,u₁)..(a_k,u_k)) = (μ_k(a₁..a_k), η_k(a₁..uᵢ..a_k)) with i the split index of y."""
    _check_pair(A, M)
    space = A.space.direct_sum(M.space)
    D = GradedOps(DIASS_INF, space, _semidirect_ops(A, M, trees=True), max(A.max_arity, M.max_arity))
    LOGGER.info("Semidirect Diass∞ built | dim=%s max_arity=%s", space.dim, D.max_arity)
    return D


def read_off_semidirect(D: GradedOps, algebra_dim: int) -> Tuple[GradedOps, GradedOps]:
    """Recover (μ, η) from a Diass∞ structure on A ⊕ M of semidirect shape."""
    _require_kind(D, DIASS_INF)
    da = algebra_dim
    if not 0 <= da <= D.space.dim:
        raise DimensionMismatchError(f"algebra dimension {da} exceeds the space dimension {D.space.dim}")
    a_space = GradedSpace(D.space.degrees[:da])
    m_space = GradedSpace(D.space.degrees[da:])
    dm = m_space.dim
    mus: Dict[int, Cochain] = {}
    etas: Dict[int, Cochain] = {}
    for k, op in D.ops.items():
        mu_table = {}
        eta_table = {}
        for idx in itertools.product(range(D.space.dim), repeat=k):
            slots = [p for p, i in enumerate(idx) if i >= da]
            if not slots:
                value = {c: v for c, v in op.value(0, idx).items() if c < da}
                if value:
                    mu_table[(0, idx)] = value
            elif len(slots) == 1:
                value = op.value(tree_with_split(k, slots[0] + 1), idx)
                value = {c - da: v for c, v in value.items() if c >= da}
                if value:
                    eta_table[(0, idx)] = value
        if mu_table:
            mus[k] = Cochain(k, da, da, mu_table, False)
        if eta_table:
            etas[k] = Cochain(k, da + dm, dm, eta_table, False)
    A = GradedOps(AINF, a_space, mus, D.max_arity, D.degree)
    M = GradedOps(AINF_REP, m_space, etas, D.max_arity, D.degree, base=a_space)
    rebuilt = GradedMap(D.space, D.degree, _semidirect_ops(A, M, trees=True))
    if not rebuilt.equals(D.as_map()):
        raise InvalidStructureError("the Diass∞ structure is not of semidirect shape")
    return A, M


# ---------------------------------------------------------------------------
# ungraded structures placed in degree −1


def ainf_from_algebra(A: AlgebraData, *, max_arity: int = DEFAULT_K) -> GradedOps:
    """μ₂(s⁻¹a, s⁻¹b) = s⁻¹(ab) and μ_k = 0 otherwise."""
    table = {(0, key): dict(vec) for key, vec in A.mu.entries.items() if vec}
    mu = Cochain(2, A.dim, A.dim, table, False)
    return GradedOps(AINF, GradedSpace.concentrated(A.dim), {2: mu}, max_arity)


def ainf_rep_from_bimodule(M: BimoduleData, *, max_arity: int = DEFAULT_K) -> GradedOps:
    """η₂(a, u) = a·u and η₂(u, a) = u·a on M placed in degree −1."""
    da = M.base.dim
    table: Dict[Tuple[int, Tuple[int, ...]], SparseVec] = {}
    for (i, k), vec in M.left.entries.items():
        if vec:
            table[(0, (i, da + k))] = dict(vec)
    for (k, i), vec in M.right.entries.items():
        if vec:
            table[(0, (da + k, i))] = dict(vec)
    eta = Cochain(2, da + M.dim, M.dim, table, False)
    base = GradedSpace.concentrated(da)
    return GradedOps(AINF_REP, GradedSpace.concentrated(M.dim), {2: eta}, max_arity, base=base)


def self_representation(A: GradedOps) -> GradedOps:
    """η_k = μ_k with the module slot anywhere."""
    _require_kind(A, AINF)
    da = A.space.dim
    ops: Dict[int, Cochain] = {}
    for k, mu in A.ops.items():
        table: Dict[Tuple[int, Tuple[int, ...]], SparseVec] = {}
        for (_, idx), vec in mu.table.items():
            for p in range(k):
                moved = idx[:p] + (idx[p] + da,) + idx[p + 1 :]
                table[(0, moved)] = dict(vec)
        ops[k] = Cochain(k, 2 * da, da, table, False)
    return GradedOps(AINF_REP, A.space, ops, A.max_arity, A.degree, base=A.space)


def diass_inf_from_diass(D: DiassData, *, max_arity: int = DEFAULT_K) -> GradedOps:
    """π₂ is ⊣ on the right comb and ⊢ on the left comb; everything else vanishes."""
    return GradedOps(DIASS_INF, GradedSpace.concentrated(D.dim), {2: pi_of_diass(D)}, max_arity)


# ---------------------------------------------------------------------------
# random structures and transport


def random_graded_map(
    space: GradedSpace,
    degree: int,
    max_arity: int,
    rng: np.random.Generator,
    *,
    tree_indexed: bool = True,
    density: float = 0.3,
    bound: int = 2,
) -> GradedMap:
    """Random integer entries wherever the degree constraint allows a nonzero value."""
    dim = space.dim
    parts: Dict[int, Cochain] = {}
    for k in range(1, max_arity + 1):
        trees = range(tree_count(k)) if tree_indexed else range(1)
        table: Dict[Tuple[int, Tuple[int, ...]], SparseVec] = {}
        for t in trees:
            for idx in itertools.product(range(dim), repeat=k):
                targets = space.basis_in_degree(sum(space.degrees[i] for i in idx) + degree)
                vec = {}
                for c in targets:
                    if rng.random() < density:
                        value = int(rng.integers(-bound, bound + 1))
                        if value:
                            vec[c] = Fraction(value)
                if vec:
                    table[(t, idx)] = vec
        if table:
            parts[k] = Cochain(k, dim, dim, table, tree_indexed)
    return GradedMap(space, degree, parts, tree_indexed)


def _inverse(g: Matrix) -> Matrix:
    columns = []
    for j in range(g.rows):
        solution = coset_solve(g, e(j))
        if solution is None:
            raise InvalidStructureError("the transport map is not invertible")
        columns.append({i: v for i, v in enumerate(solution) if v})
    return Matrix.from_sparse_columns(g.cols, columns)


def random_automorphism(space: GradedSpace, rng: np.random.Generator, *, bound: int = 2) -> Matrix:
    """A random invertible degree-preserving map, block by block."""
    dim = space.dim
    while True:
        rows = [[0] * dim for _ in range(dim)]
        for d in space.dims_by_degree():
            block = space.basis_in_degree(d)
            for i in block:
                for j in block:
                    rows[i][j] = int(rng.integers(-bound, bound + 1))
        g = Matrix.from_rows(rows, dim)
        if determinant(g) != 0:
            return g


def transport(ops: GradedOps, g: Matrix) -> GradedOps:
    """The structure g·op(g⁻¹–, .., g⁻¹–) along a degree-preserving isomorphism g."""
    if ops.kind == AINF_REP:
        raise InvalidStructureError("transport acts on A∞ and Diass∞ operations only")
    space = ops.space
    for j, col in enumerate(g.sparse_columns):
        for i in col:
            if space.degrees[i] != space.degrees[j]:
                raise GradingError("the transport map does not preserve degrees")
    inverse = _inverse(g)
    images = [inverse.apply(e(i)) for i in range(space.dim)]
    tree_indexed = ops.kind == DIASS_INF
    new_ops = {}
    for k, op in ops.ops.items():
        new_ops[k] = Cochain.from_function(
            k,
            space.dim,
            space.dim,
            lambda t, idx, op=op: g.apply(op.evaluate(t, [images[i] for i in idx])),
            tree_indexed=tree_indexed,
        )
    return GradedOps(ops.kind, space, new_ops, ops.max_arity, ops.degree)


# ---------------------------------------------------------------------------
# Koszul signs and unshuffles


def koszul_sign(order: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of reordering graded elements x_0..x_{n-1} into x_{order[0]}..x_{order[n-1]}."""
    if sorted(order) != list(range(len(degrees))):
        raise ArityError(f"{list(order)} is not a permutation of {len(degrees)} elements")
    sign = 1
    for p in range(len(order)):
        for q in range(p + 1, len(order)):
            a, b = order[p], order[q]
            if a > b and degrees[a] % 2 and degrees[b] % 2:
                sign = -sign
    return sign


def unshuffles(n: int, i: int) -> Iterator[Tuple[int, ...]]:
    """Orders whose first i and last n−i entries are increasing."""
    for first in itertools.combinations(range(n), i):
        chosen = set(first)
        yield first + tuple(k for k in range(n) if k not in chosen)


def compose_orders(first: Sequence[int], second: Sequence[int]) -> Tuple[int, ...]:
    """Reordering by ``first`` and then by ``second``."""
    return tuple(first[t] for t in second)


# ---------------------------------------------------------------------------
# V-data and higher derived brackets


@dataclass
class VElement:
    """An element (s⁻¹x, a) of s⁻¹𝔥 ⊕ 𝔞 of total degree ``degree``; ``shifted`` holds x itself."""

    degree: int
    shifted: Optional[GradedMap] = None
    value: Optional[GradedMap] = None

    def __post_init__(self) -> None:
        if self.shifted is not None and self.shifted.is_zero():
            self.shifted = None
        if self.value is not None and self.value.is_zero():
            self.value = None
        if self.shifted is not None and self.shifted.degree - 1 != self.degree:
            raise GradingError(f"s⁻¹x with |x| = {self.shifted.degree} has degree {self.shifted.degree - 1}, not {self.degree}")
        if self.value is not None and self.value.degree != self.degree:
            raise GradingError(f"𝔞-part of degree {self.value.degree} in an element of degree {self.degree}")

    def is_zero(self) -> bool:
        return self.shifted is None and self.value is None

    def axpy(self, c: Any, other: "VElement") -> "VElement":
        if other.is_zero():
            return VElement(self.degree, self.shifted, self.value)
        if self.is_zero():
            return other.scale(c)
        if other.degree != self.degree:
            raise GradingError(f"cannot add elements of degree {self.degree} and {other.degree}")
        return VElement(self.degree, _combine(self.shifted, c, other.shifted), _combine(self.value, c, other.value))

    def add(self, other: "VElement") -> "VElement":
        return self.axpy(1, other)

    def sub(self, other: "VElement") -> "VElement":
        return self.axpy(-1, other)

    def scale(self, c: Any) -> "VElement":
        return VElement(
            self.degree,
            self.shifted.scale(c) if self.shifted is not None else None,
            self.value.scale(c) if self.value is not None else None,
        )

    def equals(self, other: "VElement") -> bool:
        return self.sub(other).is_zero() if self.degree == other.degree else (self.is_zero() and other.is_zero())

    def describe(self) -> List[str]:
        lines = [f"s⁻¹𝔥: {line}" for line in self.shifted.describe()] if self.shifted is not None else []
        lines += [f"𝔞: {line}" for line in self.value.describe()] if self.value is not None else []
        return lines or ["0"]


def _combine(x: Optional[GradedMap], c: Any, y: Optional[GradedMap]) -> Optional[GradedMap]:
    if y is None:
        return x
    if x is None:
        return y.scale(c)
    return x.axpy(c, y)


@dataclass
class VData:
    """A graded Lie algebra of cochains on ``space``, a projection onto an abelian 𝔞 and Δ ∈ ker(p)₁."""

    space: GradedSpace
    projection: Callable[[GradedMap], GradedMap]
    delta: GradedMap
    max_arity: int = DEFAULT_K
    in_subalgebra: Optional[Callable[[GradedMap], bool]] = None

    def bracket(self, x: GradedMap, y: GradedMap) -> GradedMap:
        return graded_mm_bracket(x, y, self.max_arity)

    def check(self, samples: Sequence[GradedMap] = ()) -> VerificationReport:
        report = VerificationReport(subject="V-data")
        report.notes.append(TRUNCATION_NOTE.format(k=self.max_arity))
        self._expect_zero(report, "[Δ,Δ] = 0", ("Δ", "Δ"), self.bracket(self.delta, self.delta))
        self._expect_zero(report, "p(Δ) = 0", ("Δ",), self.projection(self.delta))
        p = self.projection
        for i, x in enumerate(samples):
            px = p(x)
            self._expect_zero(report, "p∘p = p", (f"x{i}",), p(px).sub(px))
            for j, y in enumerate(samples):
                py = p(y)
                self._expect_zero(report, "𝔞 is abelian", (f"x{i}", f"x{j}"), self.bracket(px, py))
                kx, ky = x.sub(px), y.sub(py)
                self._expect_zero(report, "ker p is a subalgebra", (f"x{i}", f"x{j}"), p(self.bracket(kx, ky)))
            if self.in_subalgebra is not None and self.in_subalgebra(x):
                report.checks += 1
                if not self.in_subalgebra(self.bracket(self.delta, x)):
                    report.violations.append(Violation("[Δ,𝔥] ⊂ 𝔥", (f"x{i}",), self.bracket(self.delta, x).describe(), ["in 𝔥"]))
        return report

    @staticmethod
    def _expect_zero(report: VerificationReport, identity: str, inputs: Tuple[str, ...], value: GradedMap) -> None:
        report.checks += 1
        if not value.is_zero():
            report.violations.append(Violation(identity, inputs, value.describe(), ["0"]))


class LInfinityAlgebra:
    """Graded-symmetric brackets l_k of degree +1 evaluated on demand."""

    max_arity: int = DEFAULT_K

    def bracket(self, xs: Sequence[VElement]) -> VElement:
        raise NotImplementedError

    def zero(self, degree: int) -> VElement:
        return VElement(degree)


class VDataLInfinity(LInfinityAlgebra):
    """l_k(a₁..a_k) = p[..[[Δ,a₁],a₂]..,a_k] on 𝔞, extended to s⁻¹𝔥 ⊕ 𝔞 when ``with_subalgebra`` is set.

    On s⁻¹𝔥 ⊕ 𝔞 the nonzero brackets are
    l₁(s⁻¹x, a) = (−s⁻¹[Δ,x], p(x + [Δ,a])), l₂(s⁻¹x, s⁻¹y) = (−1)^{|x|} s⁻¹[x,y] and
    l_k(s⁻¹x, a₁..a_{k−1}) = p[..[x,a₁]..,a_{k−1}], up to graded symmetry.
    """

    def __init__(self, vdata: VData, *, with_subalgebra: bool = False) -> None:
        self.vdata = vdata
        self.with_subalgebra = with_subalgebra
        self.max_arity = vdata.max_arity
        self.sign_log: List[Tuple[str, int]] = []

    def _nested(self, start: GradedMap, others: Sequence[GradedMap]) -> GradedMap:
        acc = start
        for a in others:
            if acc.is_zero():
                break
            acc = self.vdata.bracket(acc, a)
        return acc

    def bracket(self, xs: Sequence[VElement]) -> VElement:
        k = len(xs)
        if k == 0:
            raise ArityError("L∞ brackets start at arity 1")
        degree = sum(x.degree for x in xs) + 1
        result = self.zero(degree)
        pieces = []
        for x in xs:
            options = []
            if x.shifted is not None:
                if not self.with_subalgebra:
                    raise InvalidStructureError("this L∞ algebra has no shifted subalgebra part")
                options.append(("h", x.shifted))
            if x.value is not None:
                options.append(("a", x.value))
            if not options:
                return result
            pieces.append(options)
        for choice in itertools.product(*pieces):
            result = result.add(self._pure(choice, degree))
        return result

    def _pure(self, choice: Sequence[Tuple[str, GradedMap]], degree: int) -> VElement:
        p = self.vdata.projection
        delta = self.vdata.delta
        k = len(choice)
        hs = [i for i, (kind, _) in enumerate(choice) if kind == "h"]
        if not hs:
            return VElement(degree, value=p(self._nested(delta, [m for _, m in choice])))
        if len(hs) == 1:
            j = hs[0]
            x = choice[j][1]
            before = sum(m.degree for _, m in choice[:j])
            sign = -1 if ((x.degree - 1) * before) % 2 else 1
            self.sign_log.append((f"move s⁻¹x from slot {j + 1} to the front", sign))
            if k == 1:
                self.sign_log.append(("desuspend [Δ,x]", -1))
                return VElement(degree, shifted=self.vdata.bracket(delta, x).neg(), value=p(x))
            rest = [m for i, (_, m) in enumerate(choice) if i != j]
            return VElement(degree, value=p(self._nested(x, rest)).scale(sign))
        if len(hs) == 2 and k == 2:
            x, y = choice[0][1], choice[1][1]
            sign = -1 if x.degree % 2 else 1
            self.sign_log.append(("(−1)^{|x|} on s⁻¹[x,y]", sign))
            return VElement(degree, shifted=self.vdata.bracket(x, y).scale(sign))
        return self.zero(degree)


class TwistedLInfinity(LInfinityAlgebra):
    """l_k^α(x₁..x_k) = Σₙ (1/n!) l_{n+k}(α..α, x₁..x_k), summed while n + k ≤ depth."""

    def __init__(self, base: LInfinityAlgebra, alpha: VElement, *, depth: Optional[int] = None) -> None:
        self.base = base
        self.alpha = alpha
        self.max_arity = base.max_arity
        self.depth = base.max_arity + 1 if depth is None else depth

    def bracket(self, xs: Sequence[VElement]) -> VElement:
        k = len(xs)
        result = self.zero(sum(x.degree for x in xs) + 1)
        for n in range(0, self.depth - k + 1):
            term = self.base.bracket([self.alpha] * n + list(xs))
            result = result.axpy(Fraction(1, factorial(n)), term)
        return result


def vdata_linf(vdata: VData, *, with_subalgebra: bool = False, check: bool = True) -> VDataLInfinity:
    if with_subalgebra and vdata.in_subalgebra is None:
        raise InvalidStructureError("the shifted extension needs a subalgebra membership test")
    if check:
        require_valid(vdata.check(), "V-data")
    return VDataLInfinity(vdata, with_subalgebra=with_subalgebra)


def mc_residual(L: LInfinityAlgebra, alpha: VElement, depth: Optional[int] = None) -> VElement:
    """Σ_{k ≤ depth} (1/k!) l_k(α..α)."""
    if alpha.degree != 0:
        raise GradingError(f"Maurer–Cartan elements have degree 0, got {alpha.degree}")
    depth = L.max_arity + 1 if depth is None else depth
    total = L.zero(1)
    for k in range(1, depth + 1):
        total = total.axpy(Fraction(1, factorial(k)), L.bracket([alpha] * k))
    return total


def twist_linf(L: LInfinityAlgebra, alpha: VElement, *, depth: Optional[int] = None, check: bool = True) -> TwistedLInfinity:
    if check:
        residual = mc_residual(L, alpha, depth)
        if not residual.is_zero():
            raise InvalidStructureError(f"twisting element is not Maurer–Cartan: {residual.describe()}")
    return TwistedLInfinity(L, alpha, depth=depth)


def linf_higher_jacobi(L: LInfinityAlgebra, samples: Sequence[VElement], max_arity: Optional[int] = None) -> VerificationReport:
    """Σ_{i+j=n+1} Σ_σ ε(σ) l_j(l_i(x_σ(1)..x_σ(i)), x_σ(i+1)..x_σ(n)) = 0 over (i, n−i)-unshuffles."""
    top = L.max_arity if max_arity is None else max_arity
    report = VerificationReport(subject="L∞ algebra")
    report.notes.append(TRUNCATION_NOTE.format(k=top))
    for n in range(1, top + 1):
        for combo in itertools.combinations_with_replacement(range(len(samples)), n):
            xs = [samples[c] for c in combo]
            degrees = [x.degree for x in xs]
            total = L.zero(sum(degrees) + 2)
            for i in range(1, n + 1):
                for order in unshuffles(n, i):
                    inner = L.bracket([xs[o] for o in order[:i]])
                    if inner.is_zero():
                        continue
                    outer = L.bracket([inner] + [xs[o] for o in order[i:]])
                    total = total.axpy(koszul_sign(order, degrees), outer)
            report.checks += 1
            if not total.is_zero():
                report.violations.append(Violation(f"higher Jacobi at arity {n}", tuple(f"x{c}" for c in combo), total.describe(), ["0"]))
    if not report.valid:
        LOGGER.warning("Higher Jacobi fails | detail=%s", report.first_failure())
    return report


# ---------------------------------------------------------------------------
# relative averaging structures as Maurer–Cartan elements


def module_projection(algebra_dim: int) -> Callable[[GradedMap], GradedMap]:
    """p onto maps that read only module inputs and return algebra values."""
    return lambda f: f.filtered(lambda idx, c: c < algebra_dim and all(i >= algebra_dim for i in idx))


def subalgebra_projection(algebra_dim: int) -> Callable[[GradedMap], GradedMap]:
    """Keep algebra values on pure algebra inputs and module values on inputs with one module slot."""

    def keep(idx: Tuple[int, ...], c: int) -> bool:
        slots = sum(1 for i in idx if i >= algebra_dim)
        return (slots == 0 and c < algebra_dim) or (slots == 1 and c >= algebra_dim)

    return lambda f: f.filtered(keep)


def in_subalgebra(algebra_dim: int) -> Callable[[GradedMap], bool]:
    project = subalgebra_projection(algebra_dim)
    return lambda f: project(f).equals(f)


def lift_operator(P: Matrix, algebra_dim: int) -> GradedMap:
    """P: M → A as a degree-0 map on A ⊕ M placed in degree −1."""
    da = algebra_dim
    total = da + P.cols
    table = {(0, (j + da,)): dict(col) for j, col in enumerate(P.sparse_columns) if col}
    return GradedMap(GradedSpace.concentrated(total), 0, {1: Cochain(1, total, total, table)} if table else {})


def ravg_linf(A: AlgebraData, M: BimoduleData, *, max_arity: int = DEFAULT_K) -> Tuple[VDataLInfinity, GradedMap]:
    """The L∞ algebra on s⁻¹𝔥 ⊕ 𝔞 for A ⊕ M with vanishing V-data element, and Δ from (μ, l, r)."""
    da = A.dim
    space = GradedSpace.concentrated(da + M.dim)
    vdata = VData(space, module_projection(da), GradedMap.zero(space, 1), max_arity, in_subalgebra(da))
    delta = GradedMap(space, 1, {2: assemble_delta(A, M)})
    return VDataLInfinity(vdata, with_subalgebra=True), delta


def ravg_mc_element(A: AlgebraData, M: BimoduleData, P: Matrix) -> VElement:
    """α = (s⁻¹Δ, P)."""
    space = GradedSpace.concentrated(A.dim + M.dim)
    delta = GradedMap(space, 1, {2: assemble_delta(A, M)})
    return VElement(0, shifted=delta, value=lift_operator(P, A.dim))


def mc_check_ravg(A: AlgebraData, M: BimoduleData, P: Matrix, *, max_arity: int = DEFAULT_K) -> bool:
    """True iff (s⁻¹Δ, P) solves the Maurer–Cartan equation; only l₂ and l₃ contribute."""
    if P.rows != A.dim or P.cols != M.dim:
        raise DimensionMismatchError(f"operator shape {P.rows}x{P.cols} does not map M (dim {M.dim}) to A (dim {A.dim})")
    L, _ = ravg_linf(A, M, max_arity=max_arity)
    residual = mc_residual(L, ravg_mc_element(A, M, P), depth=4)
    LOGGER.debug("Relative averaging Maurer–Cartan check | dim_A=%s dim_M=%s mc=%s", A.dim, M.dim, residual.is_zero())
    return residual.is_zero()


def differential_square_report(L: LInfinityAlgebra, samples: Sequence[VElement]) -> VerificationReport:
    """l₁(l₁(x)) = 0 on each sample."""
    report = VerificationReport(subject="square of the unary bracket")
    report.notes.append(TRUNCATION_NOTE.format(k=L.max_arity))
    for i, x in enumerate(samples):
        twice = L.bracket([L.bracket([x])])
        report.checks += 1
        if not twice.is_zero():
            report.violations.append(Violation("l₁∘l₁ = 0", (f"x{i}",), twice.describe(), ["0"]))
    return report


def module_samples(algebra_dim: int, module_dim: int, max_arity: int = 2) -> List[VElement]:
    """Elementary maps M^{⊗k} → A in 𝔞 for k ≤ max_arity, each with a single nonzero value."""
    da = algebra_dim
    space = GradedSpace.concentrated(da + module_dim)
    samples = []
    for k in range(1, max_arity + 1):
        for idx in itertools.product(range(module_dim), repeat=k):
            for c in range(da):
                table = {(t, tuple(i + da for i in idx)): {c: Fraction(1)} for t in range(tree_count(k))}
                part = Cochain(k, space.dim, space.dim, table)
                samples.append(VElement(k - 1, value=GradedMap(space, k - 1, {k: part})))
    return samples


def triple_bracket_vanishes(A: AlgebraData, M: BimoduleData, P: Matrix, *, max_arity: int = DEFAULT_K) -> bool:
    """[[[Δ,P],P],P] = 0 since it would need three module inputs in arity two."""
    space = GradedSpace.concentrated(A.dim + M.dim)
    delta = GradedMap(space, 1, {2: assemble_delta(A, M)})
    lifted = lift_operator(P, A.dim)
    value = graded_mm_bracket(graded_mm_bracket(graded_mm_bracket(delta, lifted, max_arity), lifted, max_arity), lifted, max_arity)
    return value.is_zero()


# ---------------------------------------------------------------------------
# homotopy relative averaging operators


@dataclass
class MCElement:
    """P = Σ P_k with P_k: 𝐤[Y_k] ⊗ M^{⊗k} → A of degree 0."""

    source: GradedSpace
    target: GradedSpace
    parts: Dict[int, Cochain] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k, part in self.parts.items():
            if k < 1 or part.arity != k or not part.tree_indexed:
                raise ArityError(f"P_{k} must be a tree-indexed {k}-ary map")
            if part.source_dim != self.source.dim or part.target_dim != self.target.dim:
                raise DimensionMismatchError(f"P_{k} has shape ({part.source_dim}, {part.target_dim})")
            check_degrees(part, self.source, self.target, 0, what=f"P_{k}")

    @classmethod
    def strict(cls, source: GradedSpace, target: GradedSpace, P: Matrix) -> "MCElement":
        return cls(source, target, {1: cochain_from_linear(P)})

    @property
    def is_strict(self) -> bool:
        return all(k == 1 or c.is_zero() for k, c in self.parts.items())

    def linear_part(self) -> Matrix:
        part = self.parts.get(1)
        columns = [part.value(0, (j,)) if part else {} for j in range(self.source.dim)]
        return Matrix.from_sparse_columns(self.target.dim, columns)

    def lift(self) -> GradedMap:
        da = self.target.dim
        space = self.target.direct_sum(self.source)
        parts = {}
        for k, part in self.parts.items():
            table = {(t, tuple(i + da for i in idx)): dict(vec) for (t, idx), vec in part.table.items() if vec}
            if table:
                parts[k] = Cochain(k, space.dim, space.dim, table)
        return GradedMap(space, 0, parts)


def homotopy_linf(A: GradedOps, M: GradedOps, *, max_arity: Optional[int] = None) -> VDataLInfinity:
    """Higher derived brackets on 𝔞 = Hom(𝐤[Y]⊗T(M), A) with Δ the semidirect Diass∞ structure."""
    D = diass_inf_semidirect(A, M)
    top = D.max_arity if max_arity is None else max_arity
    vdata = VData(D.space, module_projection(A.space.dim), D.as_map(), top)
    return VDataLInfinity(vdata)


def homotopy_ravg_check(A: GradedOps, M: GradedOps, P: MCElement, *, max_arity: Optional[int] = None) -> bool:
    """True iff Σ (1/k!) l_k(P..P) = 0 up to the truncation arity."""
    if P.source != M.space or P.target != A.space:
        raise DimensionMismatchError("P must map the representation space to the algebra space")
    L = homotopy_linf(A, M, max_arity=max_arity)
    residual = mc_residual(L, VElement(0, value=P.lift()), depth=L.max_arity + 1)
    LOGGER.debug("Homotopy operator check | max_arity=%s mc=%s", L.max_arity, residual.is_zero())
    return residual.is_zero()


def strict_homotopy_check(A: GradedOps, M: GradedOps, P: MCElement) -> VerificationReport:
    """μ_k(Pu₁..Pu_k) = P η_k(Pu₁..uᵢ..Pu_k) for every k ≤ K and every slot i."""
    _check_pair(A, M)
    if not P.is_strict:
        raise InvalidStructureError("the strict check needs P_k = 0 for k ≥ 2")
    linear = P.linear_part()
    da = A.space.dim
    top = max(A.max_arity, M.max_arity)
    report = VerificationReport(subject="strict homotopy relative averaging operator")
    report.notes.append(TRUNCATION_NOTE.format(k=top))
    images = [linear.apply(e(u)) for u in range(M.space.dim)]
    for k in range(1, top + 1):
        mu, eta = A.op(k), M.op(k)
        for idx in itertools.product(range(M.space.dim), repeat=k):
            lhs = mu.evaluate(0, [images[u] for u in idx])
            for i in range(k):
                args = [images[u] for u in idx]
                args[i] = e(idx[i] + da)
                rhs = linear.apply(eta.evaluate(0, args))
                report.record(f"strict operator identity at arity {k}, slot {i + 1}", [f"u{u}" for u in idx], lhs, rhs, da)
    return report


def induced_diass_inf(A: GradedOps, M: GradedOps, P: MCElement, *, check: bool = True) -> GradedOps:
    """π_k^P = (e^{{[−,P]}}π) on 𝐤[Y_k] ⊗ M^{⊗k}."""
    top = max(A.max_arity, M.max_arity)
    if check and not homotopy_ravg_check(A, M, P, max_arity=top):
        raise InvalidStructureError("P is not a homotopy relative averaging operator")
    da = A.space.dim
    dm = M.space.dim
    pi = diass_inf_semidirect(A, M).as_map()
    twisted = exp_adjoint(pi, P.lift(), top)
    ops: Dict[int, Cochain] = {}
    for k, part in twisted.parts.items():
        table = {}
        for (t, idx), vec in part.table.items():
            if all(i >= da for i in idx):
                value = {c - da: v for c, v in vec.items() if c >= da and v}
                if value:
                    table[(t, tuple(i - da for i in idx))] = value
        if table:
            ops[k] = Cochain(k, dm, dm, table)
    LOGGER.info("Induced Diass∞ structure built | dim=%s arities=%s", dm, sorted(ops))
    return GradedOps(DIASS_INF, M.space, ops, top)


# ---------------------------------------------------------------------------
# the quotient A∞ algebra of a Diass∞ algebra


@dataclass
class DiassInfQuotient:
    """D/I with its A∞ structure, the representation on D and the quotient map."""

    ainf: GradedOps
    rep: GradedOps
    projection: MCElement
    ideal_dim: int
    representatives: Tuple[int, ...]
    report: VerificationReport

    def to_dict(self) -> Dict[str, Any]:
        return {
            "quotient": self.ainf.to_dict(),
            "representation": self.rep.to_dict(),
            "ideal_dim": self.ideal_dim,
            "representatives": list(self.representatives),
            "well_defined": self.report.valid,
        }


def homogeneous_ideal(D: GradedOps) -> EchelonBasis:
    """Saturate span{π_k(y;a) − π_k(y′;a)} under every π-insertion."""
    _require_kind(D, DIASS_INF)
    dim = D.space.dim
    ideal = EchelonBasis(dim)
    queue: List[SparseVec] = []
    for k, op in D.ops.items():
        for idx in itertools.product(range(dim), repeat=k):
            first = op.value(0, idx)
            for t in range(1, tree_count(k)):
                generator = vec_sub(op.value(t, idx), first)
                if ideal.add(generator):
                    queue.append(generator)
    while queue:
        vec = queue.pop()
        for k, op in D.ops.items():
            for slot in range(k):
                for others in itertools.product(range(dim), repeat=k - 1):
                    args = [e(o) for o in others]
                    args.insert(slot, vec)
                    for t in range(tree_count(k)):
                        candidate = op.evaluate(t, args)
                        if ideal.add(candidate):
                            queue.append(candidate)
    LOGGER.debug("Homogeneous ideal saturated | dim=%s ideal_dim=%s", dim, len(ideal))
    return ideal


def split_index_report(D: GradedOps, ideal: EchelonBasis) -> VerificationReport:
    """π_k(y; a) depends on y only through its split index and vanishes on ideal inputs away from the split."""
    report = VerificationReport(subject="Diass∞ quotient")
    report.notes.append(TRUNCATION_NOTE.format(k=D.max_arity))
    dim = D.space.dim
    generators = ideal.rows()
    for k, op in D.ops.items():
        splits = split_table(k)
        for t in range(tree_count(k)):
            label = encode(tree_at(k, t))
            first = tree_with_split(k, splits[t])
            if t != first:
                for idx in itertools.product(range(dim), repeat=k):
                    report.record(
                        f"split-index dependence at arity {k}", [f"e{i}" for i in idx],
                        op.value(t, idx), op.value(first, idx), dim, tree=label,
                    )
            for j in range(k):
                if j == splits[t] - 1:
                    continue
                for others in itertools.product(range(dim), repeat=k - 1):
                    for g, w in enumerate(generators):
                        args = [e(o) for o in others]
                        args.insert(j, w)
                        inputs = [f"e{o}" for o in others]
                        inputs.insert(j, f"w{g}")
                        report.record(f"ideal input off the split at arity {k}", inputs, op.evaluate(t, args), {}, dim, tree=label)
    if not report.valid:
        LOGGER.warning("Quotient operations are not well defined | detail=%s", report.first_failure())
    return report


def quotient_ainf(D: GradedOps, *, check: bool = True) -> DiassInfQuotient:
    """μ_k([a]..) = [π_k(y; a..)] on D/I and η_k([a]..aᵢ..[a]) = π_k(y; a..) with i the split index of y."""
    if check:
        require_valid(verify_diass_inf(D), "Diass∞ algebra")
    ideal = homogeneous_ideal(D)
    reps = tuple(ideal.complement_indices())
    position = {c: s for s, c in enumerate(reps)}
    qdim = len(reps)
    dim = D.space.dim
    qspace = GradedSpace(tuple(D.space.degrees[c] for c in reps))

    def q(vec: SparseVec) -> SparseVec:
        return {position[k]: v for k, v in ideal.normal_form(vec).items()}

    mus: Dict[int, Cochain] = {}
    etas: Dict[int, Cochain] = {}
    for k, op in D.ops.items():
        mus[k] = Cochain.from_function(k, qdim, qdim, lambda t, idx, op=op: q(op.value(0, tuple(reps[s] for s in idx))), tree_indexed=False)

        def eta(t: int, idx: Tuple[int, ...], op: Cochain = op, k: int = k) -> SparseVec:
            slot = next(p for p, i in enumerate(idx) if i >= qdim)
            args = tuple(i - qdim if p == slot else reps[i] for p, i in enumerate(idx))
            return op.value(tree_with_split(k, slot + 1), args)

        etas[k] = Cochain.from_function(k, qdim + dim, dim, eta, tree_indexed=False, index_filter=_one_module_slot(qdim))
    ainf = GradedOps(AINF, qspace, {k: v for k, v in mus.items() if not v.is_zero()}, D.max_arity, D.degree)
    rep = GradedOps(AINF_REP, D.space, {k: v for k, v in etas.items() if not v.is_zero()}, D.max_arity, D.degree, base=qspace)
    P = Matrix.from_sparse_columns(qdim, [q(e(k)) for k in range(dim)])
    projection = MCElement.strict(D.space, qspace, P)
    LOGGER.info("Quotient A∞ algebra built | dim=%s quotient_dim=%s", dim, qdim)
    return DiassInfQuotient(ainf, rep, projection, len(ideal), reps, split_index_report(D, ideal))


__all__ = [
    "AINF",
    "AINF_REP",
    "DIASS_INF",
    "DiassInfQuotient",
    "GradedMap",
    "GradedOps",
    "GradedSpace",
    "LInfinityAlgebra",
    "MCElement",
    "TwistedLInfinity",
    "VData",
    "VDataLInfinity",
    "VElement",
    "ainf_from_algebra",
    "ainf_rep_from_bimodule",
    "ainf_semidirect",
    "check_degrees",
    "compose_orders",
    "diamond",
    "differential_square_report",
    "diass_inf_from_diass",
    "diass_inf_semidirect",
    "exp_adjoint",
    "graded_mm_bracket",
    "homogeneous_ideal",
    "homotopy_linf",
    "homotopy_ravg_check",
    "in_subalgebra",
    "induced_diass_inf",
    "koszul_sign",
    "lift_operator",
    "linf_higher_jacobi",
    "mc_check_ravg",
    "mc_residual",
    "module_samples",
    "module_projection",
    "quotient_ainf",
    "random_automorphism",
    "random_graded_map",
    "ravg_linf",
    "ravg_mc_element",
    "read_off_semidirect",
    "self_representation",
    "split_index_report",
    "strict_homotopy_check",
    "subalgebra_projection",
    "transport",
    "triple_bracket_vanishes",
    "twist_linf",
    "unshuffles",
    "verify_ainf",
    "verify_ainf_rep",
    "verify_diass_inf",
    "vdata_linf",
]
