"""Structure-producing constructions: direct sums, graphs, quotients, duals, semidirect products and free objects."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra_core import (
    AlgebraData,
    AveragingElementResult,
    BilinearMap,
    BimoduleData,
    DiassData,
    DiassRepData,
    RAvgAlgebra,
    RAvgBimodule,
    VerificationReport,
    averaging_from_element,
    find_unit,
    regular_bimodule,
    verify_diass,
    verify_diass_morphism,
    verify_relative_averaging,
)
from .errors import DimensionMismatchError, InvalidStructureError, TruncationError
from .exact_linalg import (
    EchelonBasis,
    LinearForm,
    Matrix,
    SparseVec,
    basis_vector,
    block_matrix,
    kernel_basis,
    vec_add,
    vec_axpy,
    vec_sub,
)

LOGGER = logging.getLogger(__name__)

e = basis_vector


def shift(vec: SparseVec, offset: int) -> SparseVec:
    return {k + offset: v for k, v in vec.items()}


def split(vec: SparseVec, boundary: int) -> Tuple[SparseVec, SparseVec]:
    """Split a vector on X⊕Y into its X part and its (re-indexed) Y part."""
    low = {k: v for k, v in vec.items() if k < boundary}
    high = {k - boundary: v for k, v in vec.items() if k >= boundary}
    return low, high


def require_valid(report: VerificationReport, what: str) -> None:
    if not report.valid:
        raise InvalidStructureError(f"{what} is not valid: {report.first_failure()}")


# ---------------------------------------------------------------------------
# diassociative structures from relative averaging data


def diass_direct_sum(A: AlgebraData, M: BimoduleData) -> DiassData:
    """(a,u)⊣(b,v) = (ab, u·b) and (a,u)⊢(b,v) = (ab, a·v) on A⊕M."""
    da, dm = A.dim, M.dim
    dim = da + dm

    def dashv(i: int, j: int) -> SparseVec:
        if i < da and j < da:
            return A.mu.basis(i, j)
        if i >= da and j < da:
            return shift(M.right.basis(i - da, j), da)
        return {}

    def vdash(i: int, j: int) -> SparseVec:
        if i < da and j < da:
            return A.mu.basis(i, j)
        if i < da and j >= da:
            return shift(M.left.basis(i, j - da), da)
        return {}

    return DiassData(dim, BilinearMap.from_function(dim, dim, dim, dashv), BilinearMap.from_function(dim, dim, dim, vdash))


def graph_is_subalgebra(R: RAvgAlgebra) -> bool:
    """True iff {(P(u), u)} is closed under both products of the direct-sum diassociative algebra."""
    D = diass_direct_sum(R.A, R.M)
    da = R.A.dim
    graph = [vec_add(R.P.apply(e(k)), shift(e(k), da)) for k in range(R.M.dim)]
    for x, y in itertools.product(graph, repeat=2):
        for star in ("⊣", "⊢"):
            a_part, m_part = split(D.product(star, x, y), da)
            if vec_sub(a_part, R.P.apply(m_part)):
                return False
    return True


def nijenhuis_check(R: RAvgAlgebra) -> bool:
    """True iff N(a,u) = (P(u), 0) is a Nijenhuis operator for both products on A⊕M."""
    D = diass_direct_sum(R.A, R.M)
    da = R.A.dim

    def N(x: SparseVec) -> SparseVec:
        return R.P.apply(split(x, da)[1])

    for i, j in itertools.product(range(D.dim), repeat=2):
        x, y = e(i), e(j)
        nx, ny = N(x), N(y)
        for star in ("⊣", "⊢"):
            lhs = D.product(star, nx, ny)
            inner = vec_sub(vec_add(D.product(star, nx, y), D.product(star, x, ny)), N(D.product(star, x, y)))
            if vec_sub(lhs, N(inner)):
                return False
    return True


def induced_diass(R: RAvgAlgebra, *, check: bool = True) -> DiassData:
    """u⊣v = u·P(v) and u⊢v = P(u)·v on M."""
    if check:
        require_valid(verify_relative_averaging(R), "relative averaging algebra")
    M, P = R.M, R.P
    dm = M.dim
    dashv = BilinearMap.from_function(dm, dm, dm, lambda i, j: M.act_right(e(i), P.apply(e(j))))
    vdash = BilinearMap.from_function(dm, dm, dm, lambda i, j: M.act_left(P.apply(e(i)), e(j)))
    return DiassData(dm, dashv, vdash)


# ---------------------------------------------------------------------------
# quotient by the ideal generated by x⊣y − x⊢y


def ideal_span(D: DiassData) -> EchelonBasis:
    """Saturate span{eᵢ⊣eⱼ − eᵢ⊢eⱼ} under both products on both sides."""
    ideal = EchelonBasis(D.dim)
    queue: List[SparseVec] = []
    for i, j in itertools.product(range(D.dim), repeat=2):
        generator = vec_sub(D.dashv.basis(i, j), D.vdash.basis(i, j))
        if ideal.add(generator):
            queue.append(generator)
    while queue:
        vec = queue.pop()
        for k in range(D.dim):
            for star in ("⊣", "⊢"):
                for candidate in (D.product(star, vec, e(k)), D.product(star, e(k), vec)):
                    if ideal.add(candidate):
                        queue.append(candidate)
    LOGGER.debug("Ideal saturated | dim=%s ideal_dim=%s", D.dim, len(ideal))
    return ideal


@dataclass(frozen=True, eq=False)
class DiassQuotient:
    """The relative averaging algebra (D/I, D, q) together with the data used to build it."""

    ravg: RAvgAlgebra
    ideal: EchelonBasis
    representatives: Tuple[int, ...]

    def project(self, vec: SparseVec) -> SparseVec:
        residual = self.ideal.normal_form(vec)
        position = {c: t for t, c in enumerate(self.representatives)}
        return {position[k]: v for k, v in residual.items()}


def quotient_data(D: DiassData, *, check: bool = True) -> DiassQuotient:
    if check:
        require_valid(verify_diass(D), "diassociative algebra")
    ideal = ideal_span(D)
    reps = tuple(ideal.complement_indices())
    qdim = len(reps)
    position = {c: t for t, c in enumerate(reps)}

    def q(vec: SparseVec) -> SparseVec:
        return {position[k]: v for k, v in ideal.normal_form(vec).items()}

    mu = BilinearMap.from_function(qdim, qdim, qdim, lambda s, t: q(D.dashv.basis(reps[s], reps[t])))
    A = AlgebraData(qdim, mu)
    left = BilinearMap.from_function(qdim, D.dim, D.dim, lambda s, k: D.vdash.basis(reps[s], k))
    right = BilinearMap.from_function(D.dim, qdim, D.dim, lambda k, s: D.dashv.basis(k, reps[s]))
    M = BimoduleData(A, D.dim, left, right)
    P = Matrix.from_sparse_columns(qdim, [q(e(k)) for k in range(D.dim)])
    LOGGER.info("Quotient algebra built | dim=%s quotient_dim=%s", D.dim, qdim)
    return DiassQuotient(ravg=RAvgAlgebra(A, M, P), ideal=ideal, representatives=reps)


def quotient_ravg(D: DiassData, *, check: bool = True) -> RAvgAlgebra:
    """(D/I, D, q) with [x]·y = x⊢y and y·[x] = y⊣x."""
    return quotient_data(D, check=check).ravg


def diass_morphism_to_ravg(D: DiassData, R: RAvgAlgebra, psi: Matrix) -> Tuple[RAvgAlgebra, Matrix, Matrix]:
    """Turn a diassociative morphism ψ: D → M_P into (φ^ψ, ψ) from the quotient of D into R."""
    require_valid(verify_diass_morphism(D, induced_diass(R), psi), "diassociative morphism")
    quotient = quotient_data(D)
    phi = Matrix.from_sparse_columns(R.A.dim, [R.P.apply(psi.apply(e(c))) for c in quotient.representatives])
    return quotient.ravg, phi, psi


def quotient_functor_morphism(src: DiassData, dst: DiassData, psi: Matrix) -> Tuple[RAvgAlgebra, RAvgAlgebra, Matrix, Matrix]:
    """Induced morphism [x] ↦ [ψ(x)] between the quotient relative averaging algebras."""
    require_valid(verify_diass_morphism(src, dst, psi), "diassociative morphism")
    left, right = quotient_data(src), quotient_data(dst)
    phi = Matrix.from_sparse_columns(
        right.ravg.A.dim, [right.project(psi.apply(e(c))) for c in left.representatives]
    )
    return left.ravg, right.ravg, phi, psi


# ---------------------------------------------------------------------------
# bimodules over relative averaging algebras


def adjoint_bimodule(R: RAvgAlgebra) -> RAvgBimodule:
    """B = A, N = M, Q = P, l(u,a) = u·a, r(a,u) = a·u."""
    return RAvgBimodule(base=R, B=regular_bimodule(R.A), N=R.M, Q=R.P, l=R.M.right, r=R.M.left)


def zero_bimodule(R: RAvgAlgebra) -> RAvgBimodule:
    A = R.A
    return RAvgBimodule(
        base=R, B=BimoduleData.zero(A, 0), N=BimoduleData.zero(A, 0), Q=Matrix.zeros(0, 0),
        l=BilinearMap.zeros(R.M.dim, 0, 0), r=BilinearMap.zeros(0, R.M.dim, 0),
    )


def dual_bimodule(B: RAvgBimodule) -> RAvgBimodule:
    """(N* → B*) with Qᵀ, dual actions and dual pairings."""
    A, M = B.base.A, B.base.M
    old_b, old_n = B.B, B.N
    nb, nn = old_b.dim, old_n.dim

    def dual_module(mod: BimoduleData) -> BimoduleData:
        d = mod.dim
        left = BilinearMap.from_function(
            A.dim, d, d, lambda a, j: {k: mod.right.table[k][a][j] for k in range(d) if mod.right.table[k][a][j]}
        )
        right = BilinearMap.from_function(
            d, A.dim, d, lambda j, a: {k: mod.left.table[a][k][j] for k in range(d) if mod.left.table[a][k][j]}
        )
        return BimoduleData(A, d, left, right)

    l = BilinearMap.from_function(
        M.dim, nn, nb, lambda u, j: {k: B.r.table[k][u][j] for k in range(nb) if B.r.table[k][u][j]}
    )
    r = BilinearMap.from_function(
        nn, M.dim, nb, lambda j, u: {k: B.l.table[u][k][j] for k in range(nb) if B.l.table[u][k][j]}
    )
    return RAvgBimodule(base=B.base, B=dual_module(old_n), N=dual_module(old_b), Q=B.Q.transpose(), l=l, r=r)


def semidirect(R: RAvgAlgebra, B: RAvgBimodule) -> RAvgAlgebra:
    """A⋉B acting on M⊕N with operator P⊕Q."""
    A, M = R.A, R.M
    da, db, dm, dn = A.dim, B.B.dim, M.dim, B.N.dim
    total_a, total_m = da + db, dm + dn

    def mu(i: int, j: int) -> SparseVec:
        if i < da and j < da:
            return A.mu.basis(i, j)
        if i < da:
            return shift(B.B.left.basis(i, j - da), da)
        if j < da:
            return shift(B.B.right.basis(i - da, j), da)
        return {}

    def left(i: int, k: int) -> SparseVec:
        if i < da and k < dm:
            return M.left.basis(i, k)
        if i < da:
            return shift(B.N.left.basis(i, k - dm), dm)
        if k < dm:
            return shift(B.r.basis(i - da, k), dm)
        return {}

    def right(k: int, i: int) -> SparseVec:
        if k < dm and i < da:
            return M.right.basis(k, i)
        if k < dm:
            return shift(B.l.basis(k, i - da), dm)
        if i < da:
            return shift(B.N.right.basis(k - dm, i), dm)
        return {}

    algebra = AlgebraData(total_a, BilinearMap.from_function(total_a, total_a, total_a, mu))
    module = BimoduleData(
        algebra, total_m,
        BilinearMap.from_function(total_a, total_m, total_m, left),
        BilinearMap.from_function(total_m, total_a, total_m, right),
    )
    P = block_matrix([[R.P, None], [None, B.Q]], [da, db], [dm, dn])
    return RAvgAlgebra(algebra, module, P)


def induced_rep_on_N(R: RAvgAlgebra, B: RAvgBimodule, *, check: bool = True) -> DiassRepData:
    """u⊣n = l(u,Qn), u⊢n = P(u)·n, n⊣u = n·P(u), n⊢u = r(Qn,u) over M_P."""
    D = induced_diass(R, check=check)
    P, Q, N = R.P, B.Q, B.N
    dm, dn = R.M.dim, N.dim
    return DiassRepData(
        D, dn,
        BilinearMap.from_function(dm, dn, dn, lambda u, n: B.l(e(u), Q.apply(e(n)))),
        BilinearMap.from_function(dm, dn, dn, lambda u, n: N.act_left(P.apply(e(u)), e(n))),
        BilinearMap.from_function(dn, dm, dn, lambda n, u: N.act_right(e(n), P.apply(e(u)))),
        BilinearMap.from_function(dn, dm, dn, lambda n, u: B.r(Q.apply(e(n)), e(u))),
    )


def induced_rep_on_B(R: RAvgAlgebra, B: RAvgBimodule, *, check: bool = True) -> DiassRepData:
    """u⊣b = P(u)·b − Q l(u,b), u⊢b = P(u)·b, b⊣u = b·P(u), b⊢u = b·P(u) − Q r(b,u) over M_P."""
    D = induced_diass(R, check=check)
    P, Q, mod = R.P, B.Q, B.B
    dm, db = R.M.dim, mod.dim
    return DiassRepData(
        D, db,
        BilinearMap.from_function(dm, db, db, lambda u, b: vec_sub(mod.act_left(P.apply(e(u)), e(b)), Q.apply(B.l(e(u), e(b))))),
        BilinearMap.from_function(dm, db, db, lambda u, b: mod.act_left(P.apply(e(u)), e(b))),
        BilinearMap.from_function(db, dm, db, lambda b, u: mod.act_right(e(b), P.apply(e(u)))),
        BilinearMap.from_function(db, dm, db, lambda b, u: vec_sub(mod.act_right(e(b), P.apply(e(u))), Q.apply(B.r(e(b), e(u))))),
    )


def morphism_bimodule(src: RAvgAlgebra, dst: RAvgAlgebra, phi: Matrix, psi: Matrix) -> RAvgBimodule:
    """(M′ → A′) as a bimodule over src, with A acting through φ and pairings through ψ."""
    A, A2, M2 = src.A, dst.A, dst.M
    b_mod = BimoduleData(
        A, A2.dim,
        BilinearMap.from_function(A.dim, A2.dim, A2.dim, lambda a, x: A2.mul(phi.apply(e(a)), e(x))),
        BilinearMap.from_function(A2.dim, A.dim, A2.dim, lambda x, a: A2.mul(e(x), phi.apply(e(a)))),
    )
    n_mod = BimoduleData(
        A, M2.dim,
        BilinearMap.from_function(A.dim, M2.dim, M2.dim, lambda a, n: M2.act_left(phi.apply(e(a)), e(n))),
        BilinearMap.from_function(M2.dim, A.dim, M2.dim, lambda n, a: M2.act_right(e(n), phi.apply(e(a)))),
    )
    l = BilinearMap.from_function(src.M.dim, A2.dim, M2.dim, lambda u, x: M2.act_right(psi.apply(e(u)), e(x)))
    r = BilinearMap.from_function(A2.dim, src.M.dim, M2.dim, lambda x, u: M2.act_left(e(x), psi.apply(e(u))))
    return RAvgBimodule(base=src, B=b_mod, N=n_mod, Q=dst.P, l=l, r=r)


# ---------------------------------------------------------------------------
# operator families


def _generic_operator(rows: int, cols: int) -> List[Dict[int, LinearForm]]:
    """Column k of a matrix whose (i, k) entry is the variable i*cols + k."""
    return [{i: LinearForm.variable(i * cols + k) for i in range(rows)} for k in range(cols)]


def _apply_generic(columns: List[Dict[int, LinearForm]], vec: SparseVec) -> SparseVec:
    out: SparseVec = {}
    for k, c in vec.items():
        vec_axpy(out, c, columns[k])
    return out


def bimodule_map_operator(A: AlgebraData, M: BimoduleData, rng: np.random.Generator) -> Matrix:
    """A random A-bimodule map M→A; every such map is a relative averaging operator."""
    da, dm = A.dim, M.dim
    columns = _generic_operator(da, dm)
    equations: List[Dict[int, Fraction]] = []
    for a, u in itertools.product(range(da), range(dm)):
        pu = _apply_generic(columns, e(u))
        for diff in (
            vec_sub(_apply_generic(columns, M.act_left(e(a), e(u))), A.mul(e(a), pu)),
            vec_sub(_apply_generic(columns, M.act_right(e(u), e(a))), A.mul(pu, e(a))),
        ):
            equations.extend(form.terms for form in diff.values())
    system = Matrix.from_sparse_rows(da * dm, equations) if equations else Matrix.zeros(0, da * dm)
    basis = kernel_basis(system)
    values = [Fraction(0)] * (da * dm)
    for vec in basis:
        c = int(rng.integers(-3, 4))
        values = [x + c * y for x, y in zip(values, vec)]
    LOGGER.debug("Bimodule map sampled | solution_dim=%s", len(basis))
    return Matrix.from_function(da, dm, lambda i, k: values[i * dm + k])


def tensor_square_ravg(A: AlgebraData) -> RAvgAlgebra:
    """M = A⊗A with outer actions and P(b⊗c) = bc."""
    d = A.dim
    dm = d * d

    def tensor(x: SparseVec, y: SparseVec) -> SparseVec:
        return {i * d + j: cx * cy for i, cx in x.items() for j, cy in y.items()}

    left = BilinearMap.from_function(d, dm, dm, lambda a, k: tensor(A.mul(e(a), e(k // d)), e(k % d)))
    right = BilinearMap.from_function(dm, d, dm, lambda k, a: tensor(e(k // d), A.mul(e(k % d), e(a))))
    P = Matrix.from_sparse_columns(d, [A.mu.basis(k // d, k % d) for k in range(dm)])
    return RAvgAlgebra(A, BimoduleData(A, dm, left, right), P)


def group_algebra(table: Sequence[Sequence[int]]) -> AlgebraData:
    n = len(table)
    if any(len(row) != n for row in table):
        raise DimensionMismatchError("group table must be square")
    return AlgebraData(n, BilinearMap.from_function(n, n, n, lambda g, h: {int(table[g][h]): Fraction(1)}))


def group_averaging(table: Sequence[Sequence[int]]) -> Tuple[AlgebraData, AveragingElementResult]:
    """Group algebra of a finite group with r = (1/|G|) Σ g⊗g⁻¹."""
    n = len(table)
    A = group_algebra(table)
    identity = next((g for g in range(n) if all(table[g][h] == h for h in range(n))), None)
    if identity is None:
        raise InvalidStructureError("group table has no identity element")
    r = [Fraction(0)] * (n * n)
    for g in range(n):
        inverse = next((h for h in range(n) if table[g][h] == identity), None)
        if inverse is None:
            raise InvalidStructureError(f"group element {g} has no inverse")
        r[g * n + inverse] += Fraction(1, n)
    return A, averaging_from_element(A, r)


def element_bimodule(A: AlgebraData, r: Sequence[Any]) -> RAvgBimodule:
    """A over the averaging algebra (A, P_r), with Q(u) = Σ r₁·u·r₂."""
    result = averaging_from_element(A, r)
    require_valid(result.report, "averaging element")
    return adjoint_bimodule(RAvgAlgebra(A, regular_bimodule(A), result.operator))


# ---------------------------------------------------------------------------
# truncated free relative averaging algebra

Word = Tuple[int, ...]
ModuleWord = Tuple[Word, int, Word]


@dataclass(frozen=True, eq=False)
class FreeRAvg:
    """T(W) and T(W)⊗V⊗T(W) truncated to total tensor degree at most ``bound``."""

    algebra: RAvgAlgebra
    f: Matrix
    bound: int
    words: Tuple[Word, ...]
    module_words: Tuple[ModuleWord, ...]

    def word_degree(self, index: int) -> int:
        return len(self.words[index])

    def module_degree(self, index: int) -> int:
        left, _, right = self.module_words[index]
        return len(left) + 1 + len(right)

    def within_bound(self, identity: str, indices: Tuple[int, ...]) -> bool:
        """Filter for basis tuples whose products do not overflow the truncation."""
        i, k = indices
        if identity == "φ(ab)":
            return self.word_degree(i) + self.word_degree(k) <= self.bound
        return self.word_degree(i) + self.module_degree(k) <= self.bound

    def inclusions(self) -> Tuple[Matrix, Matrix]:
        """The maps W → T(W) and V → T(W)⊗V⊗T(W)."""
        word_index = {w: i for i, w in enumerate(self.words)}
        module_index = {w: i for i, w in enumerate(self.module_words)}
        dw, dv = self.f.rows, self.f.cols
        phi = Matrix.from_sparse_columns(len(self.words), [{word_index[(w,)]: Fraction(1)} for w in range(dw)])
        psi = Matrix.from_sparse_columns(len(self.module_words), [{module_index[((), v, ())]: Fraction(1)} for v in range(dv)])
        return phi, psi

    def extend(self, phi: Matrix, psi: Matrix, target: RAvgAlgebra) -> Tuple[Matrix, Matrix]:
        """Universal extension (φ̃, ψ̃) of a chain map (φ: W→A′, ψ: V→M′) with φ∘f = P′∘ψ."""
        if not phi.matmul(self.f).sub(target.P.matmul(psi)).is_zero():
            raise InvalidStructureError("φ∘f and P′∘ψ differ; the pair is not a chain map")
        unit = find_unit(target.A)
        if unit is None:
            raise InvalidStructureError("extension needs a unital target algebra")
        A2, M2 = target.A, target.M

        def word_image(word: Word) -> SparseVec:
            out = dict(unit)
            for letter in word:
                out = A2.mul(out, phi.apply(e(letter)))
            return out

        phi_tilde = Matrix.from_sparse_columns(A2.dim, [word_image(w) for w in self.words])
        psi_columns = []
        for left, v, right in self.module_words:
            inner = M2.act_right(psi.apply(e(v)), word_image(right))
            psi_columns.append(M2.act_left(word_image(left), inner))
        psi_tilde = Matrix.from_sparse_columns(M2.dim, psi_columns)
        return phi_tilde, psi_tilde


def free_ravg(f: Matrix, bound: int) -> FreeRAvg:
    """Truncated free relative averaging algebra on f: V → W; products beyond ``bound`` vanish."""
    if bound < 1:
        raise TruncationError(f"truncation degree must be at least 1, got {bound}")
    dw, dv = f.rows, f.cols
    words: List[Word] = [w for length in range(bound + 1) for w in itertools.product(range(dw), repeat=length)]
    module_words: List[ModuleWord] = []
    for total in range(bound):
        for left_len in range(total + 1):
            for left in itertools.product(range(dw), repeat=left_len):
                for v in range(dv):
                    for right in itertools.product(range(dw), repeat=total - left_len):
                        module_words.append((left, v, right))
    word_index = {w: i for i, w in enumerate(words)}
    module_index = {w: i for i, w in enumerate(module_words)}
    na, nm = len(words), len(module_words)

    def concat(i: int, j: int) -> SparseVec:
        w = words[i] + words[j]
        return {word_index[w]: Fraction(1)} if len(w) <= bound else {}

    def left(i: int, k: int) -> SparseVec:
        l, v, r = module_words[k]
        w = (words[i] + l, v, r)
        return {module_index[w]: Fraction(1)} if w in module_index else {}

    def right(k: int, i: int) -> SparseVec:
        l, v, r = module_words[k]
        w = (l, v, r + words[i])
        return {module_index[w]: Fraction(1)} if w in module_index else {}

    columns = []
    for l, v, r in module_words:
        column: SparseVec = {}
        for w, c in f.column(v).items():
            column[word_index[l + (w,) + r]] = c
        columns.append(column)

    A = AlgebraData(na, BilinearMap.from_function(na, na, na, concat))
    M = BimoduleData(A, nm, BilinearMap.from_function(na, nm, nm, left), BilinearMap.from_function(nm, na, nm, right))
    P = Matrix.from_sparse_columns(na, columns)
    LOGGER.info("Free relative averaging algebra truncated | bound=%s algebra_dim=%s module_dim=%s", bound, na, nm)
    return FreeRAvg(RAvgAlgebra(A, M, P), f, bound, tuple(words), tuple(module_words))


__all__ = [
    "DiassQuotient",
    "FreeRAvg",
    "adjoint_bimodule",
    "bimodule_map_operator",
    "diass_direct_sum",
    "diass_morphism_to_ravg",
    "dual_bimodule",
    "element_bimodule",
    "free_ravg",
    "graph_is_subalgebra",
    "group_algebra",
    "group_averaging",
    "ideal_span",
    "induced_diass",
    "induced_rep_on_B",
    "induced_rep_on_N",
    "morphism_bimodule",
    "nijenhuis_check",
    "quotient_data",
    "quotient_functor_morphism",
    "quotient_ravg",
    "require_valid",
    "semidirect",
    "shift",
    "split",
    "tensor_square_ravg",
    "zero_bimodule",
]
