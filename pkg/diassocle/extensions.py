"""Abelian extensions of relative averaging algebras and their classifying cocycles."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .algebra_core import (
    AlgebraData,
    BilinearMap,
    BimoduleData,
    RAvgAlgebra,
    RAvgBimodule,
    VerificationReport,
    Violation,
    verify_morphism,
    verify_ravg_bimodule,
    verify_relative_averaging,
)
from .cochain_engine import Cochain, CochainLayout
from .cohomology import RAvgCochain, _RAvgBuilder, ravg_spaces, require_cocycle, zero_ravg_cochain
from .constructions import semidirect, shift
from .errors import DimensionMismatchError, InvalidStructureError
from .exact_linalg import Matrix, SparseVec, basis_vector, block_matrix, coset_solve, rank, vec_add, vec_sub

LOGGER = logging.getLogger(__name__)

e = basis_vector


@dataclass(frozen=True, eq=False)
class AbelianExtension:
    """0 → (N→B) → (M̂→Â) → (M→A) → 0 with the kernel carrying zero products."""

    total: RAvgAlgebra
    base: RAvgAlgebra
    i: Matrix
    p: Matrix
    i_bar: Matrix
    p_bar: Matrix
    kernel_operator: Matrix

    def __post_init__(self) -> None:
        ta, tm = self.total.A.dim, self.total.M.dim
        da, dm = self.base.A.dim, self.base.M.dim
        db, dn = self.kernel_operator.rows, self.kernel_operator.cols
        shapes = {
            "i": ((self.i.rows, self.i.cols), (ta, db)),
            "p": ((self.p.rows, self.p.cols), (da, ta)),
            "ī": ((self.i_bar.rows, self.i_bar.cols), (tm, dn)),
            "p̄": ((self.p_bar.rows, self.p_bar.cols), (dm, tm)),
        }
        for name, (got, want) in shapes.items():
            if got != want:
                raise DimensionMismatchError(f"{name} has shape {got[0]}x{got[1]}, expected {want[0]}x{want[1]}")

    @property
    def kernel_dims(self) -> Tuple[int, int]:
        return self.kernel_operator.rows, self.kernel_operator.cols


@dataclass(frozen=True, eq=False)
class Section:
    """Linear splittings s: A→Â and s̄: M→M̂ of the projections."""

    s: Matrix
    s_bar: Matrix


def _preimage(matrix: Matrix, vec: SparseVec, what: str) -> SparseVec:
    if not vec:
        return {}
    solution = coset_solve(matrix, vec)
    if solution is None:
        raise InvalidStructureError(f"vector does not lie in the image of {what}")
    return {k: v for k, v in enumerate(solution) if v}


def _record_columns(report: VerificationReport, name: str, lhs: Matrix, rhs: Matrix) -> None:
    for j in range(lhs.cols):
        report.record(name, (f"e{j}",), lhs.column(j), rhs.column(j), lhs.rows)


def verify_section(E: AbelianExtension, sec: Section) -> VerificationReport:
    report = VerificationReport(subject="section")
    _record_columns(report, "p∘s = id", E.p.matmul(sec.s), Matrix.identity(E.base.A.dim))
    _record_columns(report, "p̄∘s̄ = id", E.p_bar.matmul(sec.s_bar), Matrix.identity(E.base.M.dim))
    return report


def verify_extension(E: AbelianExtension) -> VerificationReport:
    """Exact rows, morphism projections, commuting squares and the abelian condition on the kernel."""
    report = VerificationReport(subject="abelian extension")
    report.merge(verify_relative_averaging(E.total))
    T, R = E.total, E.base
    db, dn = E.kernel_dims
    ta, tm = T.A.dim, T.M.dim

    for name, inj, proj, top, low, kernel in (
        ("A", E.i, E.p, ta, R.A.dim, db),
        ("M", E.i_bar, E.p_bar, tm, R.M.dim, dn),
    ):
        if rank(inj) != kernel:
            report.violations.append(_named_failure(f"inclusion into {name} is not injective"))
        if rank(proj) != low:
            report.violations.append(_named_failure(f"projection onto {name} is not surjective"))
        if top != low + kernel:
            report.violations.append(_named_failure(f"row through {name} is not exact in the middle"))
        report.checks += 3
        _record_columns(report, f"projection∘inclusion = 0 on {name}", proj.matmul(inj), Matrix.zeros(low, kernel))

    for x in range(ta):
        for y in range(ta):
            report.record("p(x·y) = p(x)·p(y)", (f"x{x}", f"y{y}"), E.p.apply(T.A.mul(e(x), e(y))), R.A.mul(E.p.apply(e(x)), E.p.apply(e(y))), R.A.dim)
        for m in range(tm):
            labels = (f"x{x}", f"m{m}")
            report.record("p̄(x·m) = p(x)·p̄(m)", labels, E.p_bar.apply(T.M.act_left(e(x), e(m))), R.M.act_left(E.p.apply(e(x)), E.p_bar.apply(e(m))), R.M.dim)
            report.record("p̄(m·x) = p̄(m)·p(x)", labels, E.p_bar.apply(T.M.act_right(e(m), e(x))), R.M.act_right(E.p_bar.apply(e(m)), E.p.apply(e(x))), R.M.dim)
    _record_columns(report, "P̂∘ī = i∘Q", T.P.matmul(E.i_bar), E.i.matmul(E.kernel_operator))
    _record_columns(report, "p∘P̂ = P∘p̄", E.p.matmul(T.P), R.P.matmul(E.p_bar))

    images_b = [E.i.apply(e(b)) for b in range(db)]
    images_n = [E.i_bar.apply(e(n)) for n in range(dn)]
    for b, ib in enumerate(images_b):
        for c, ic in enumerate(images_b):
            report.record("i(b)·i(b′) = 0", (f"b{b}", f"b{c}"), T.A.mul(ib, ic), {}, ta)
        for n, jn in enumerate(images_n):
            report.record("i(b)·ī(n) = 0", (f"b{b}", f"n{n}"), T.M.act_left(ib, jn), {}, tm)
            report.record("ī(n)·i(b) = 0", (f"n{n}", f"b{b}"), T.M.act_right(jn, ib), {}, tm)
    if not report.valid:
        LOGGER.warning("Extension rejected | detail=%s", report.first_failure())
    return report


def _named_failure(message: str) -> Violation:
    return Violation(identity=message, inputs=(), lhs=[], rhs=[])


# ---------------------------------------------------------------------------
# sections and the induced bimodule


def canonical_section(E: AbelianExtension) -> Section:
    """The inclusion of the first summand, valid when the total spaces are laid out as A⊕B and M⊕N."""
    da, dm = E.base.A.dim, E.base.M.dim
    db, dn = E.kernel_dims
    sec = Section(
        block_matrix([[Matrix.identity(da)], [None]], [da, db], [da]),
        block_matrix([[Matrix.identity(dm)], [None]], [dm, dn], [dm]),
    )
    if not verify_section(E, sec).valid:
        raise InvalidStructureError("the first summand does not split this extension")
    return sec


def any_section(E: AbelianExtension, rng: np.random.Generator) -> Section:
    """A section shifted by a random map into the kernel."""
    db, dn = E.kernel_dims

    def right_inverse(proj: Matrix, inj: Matrix, kernel: int) -> Matrix:
        columns = []
        for a in range(proj.rows):
            x = _preimage(proj, e(a), "the projection")
            noise = {k: int(v) for k, v in enumerate(rng.integers(-2, 3, size=kernel)) if v}
            columns.append(vec_add(x, inj.apply(noise)))
        return Matrix.from_sparse_columns(proj.cols, columns)

    return Section(right_inverse(E.p, E.i, db), right_inverse(E.p_bar, E.i_bar, dn))


def induced_bimodule(E: AbelianExtension, sec: Section) -> RAvgBimodule:
    """a·b = i⁻¹(s(a)·i(b)), a·n = ī⁻¹(s(a)·ī(n)), l(u,b) = ī⁻¹(s̄(u)·i(b)), r(b,u) = ī⁻¹(i(b)·s̄(u))."""
    if not verify_section(E, sec).valid:
        raise InvalidStructureError("not a section of the extension")
    T, R = E.total, E.base
    da, dm = R.A.dim, R.M.dim
    db, dn = E.kernel_dims
    s = [sec.s.apply(e(a)) for a in range(da)]
    s_bar = [sec.s_bar.apply(e(u)) for u in range(dm)]
    ib = [E.i.apply(e(b)) for b in range(db)]
    jn = [E.i_bar.apply(e(n)) for n in range(dn)]

    def back(vec: SparseVec) -> SparseVec:
        return _preimage(E.i, vec, "i")

    def back_bar(vec: SparseVec) -> SparseVec:
        return _preimage(E.i_bar, vec, "ī")

    B = BimoduleData(
        R.A, db,
        BilinearMap.from_function(da, db, db, lambda a, b: back(T.A.mul(s[a], ib[b]))),
        BilinearMap.from_function(db, da, db, lambda b, a: back(T.A.mul(ib[b], s[a]))),
    )
    N = BimoduleData(
        R.A, dn,
        BilinearMap.from_function(da, dn, dn, lambda a, n: back_bar(T.M.act_left(s[a], jn[n]))),
        BilinearMap.from_function(dn, da, dn, lambda n, a: back_bar(T.M.act_right(jn[n], s[a]))),
    )
    l = BilinearMap.from_function(dm, db, dn, lambda u, b: back_bar(T.M.act_right(s_bar[u], ib[b])))
    r = BilinearMap.from_function(db, dm, dn, lambda b, u: back_bar(T.M.act_left(ib[b], s_bar[u])))
    coeffs = RAvgBimodule(base=R, B=B, N=N, Q=E.kernel_operator, l=l, r=r)
    report = verify_ravg_bimodule(coeffs)
    if not report.valid:
        raise InvalidStructureError(f"induced bimodule is invalid: {report.first_failure()}")
    return coeffs


def same_bimodule(first: RAvgBimodule, second: RAvgBimodule) -> bool:
    return (
        first.B.left == second.B.left and first.B.right == second.B.right
        and first.N.left == second.N.left and first.N.right == second.N.right
        and first.l == second.l and first.r == second.r and first.Q == second.Q
    )


# ---------------------------------------------------------------------------
# cocycles


def extension_to_cocycle(E: AbelianExtension, sec: Section, *, check: bool = True) -> RAvgCochain:
    """α(a,b) = s(a)s(b) − s(ab), β(a,u) = s(a)s̄(u) − s̄(au), β(u,a) = s̄(u)s(a) − s̄(ua), γ = P̂s̄ − sP."""
    coeffs = induced_bimodule(E, sec)
    T, R = E.total, E.base
    da, dm = R.A.dim, R.M.dim
    db, dn = E.kernel_dims
    s = [sec.s.apply(e(a)) for a in range(da)]
    s_bar = [sec.s_bar.apply(e(u)) for u in range(dm)]

    alpha: Dict[Any, SparseVec] = {}
    for a in range(da):
        for b in range(da):
            value = _preimage(E.i, vec_sub(T.A.mul(s[a], s[b]), sec.s.apply(R.A.mul(e(a), e(b)))), "i")
            if value:
                alpha[(0, (a, b))] = value
    beta: Dict[Any, SparseVec] = {}
    for a in range(da):
        for u in range(dm):
            left = vec_sub(T.M.act_left(s[a], s_bar[u]), sec.s_bar.apply(R.M.act_left(e(a), e(u))))
            right = vec_sub(T.M.act_right(s_bar[u], s[a]), sec.s_bar.apply(R.M.act_right(e(u), e(a))))
            for key, vec in (((a, u + da), left), ((u + da, a), right)):
                value = _preimage(E.i_bar, vec, "ī")
                if value:
                    beta[(0, key)] = value
    gamma: Dict[Any, SparseVec] = {}
    for u in range(dm):
        value = _preimage(E.i, vec_sub(T.P.apply(s_bar[u]), sec.s.apply(R.P.apply(e(u)))), "i")
        if value:
            gamma[(0, (u,))] = value
    c = RAvgCochain(
        2,
        Cochain(2, da, db, alpha, tree_indexed=False),
        Cochain(2, da + dm, dn, beta, tree_indexed=False),
        Cochain(1, dm, db, gamma),
    )
    if check:
        require_cocycle(c, R, coeffs)
    return c


def cocycle_to_extension(c: RAvgCochain, R: RAvgAlgebra, coeffs: RAvgBimodule, *, check: bool = True) -> AbelianExtension:
    """Â = A⊕B and M̂ = M⊕N with products twisted by α and β, and P̂(u,n) = (P(u), Q(n) + γ(u))."""
    if c.n != 2 or c.gamma is None:
        raise DimensionMismatchError(f"extensions come from degree 2 cochains, got degree {c.n}")
    if check:
        require_cocycle(c, R, coeffs)
    split_total = semidirect(R, coeffs)
    da, dm = R.A.dim, R.M.dim
    db, dn = coeffs.B.dim, coeffs.N.dim
    ta, tm = da + db, dm + dn

    alpha = BilinearMap.from_function(
        ta, ta, ta, lambda x, y: shift(c.f.value(0, (x, y)), da) if x < da and y < da else {}
    )
    beta_left = BilinearMap.from_function(
        ta, tm, tm, lambda x, u: shift(c.g.value(0, (x, u + da)), dm) if x < da and u < dm else {}
    )
    beta_right = BilinearMap.from_function(
        tm, ta, tm, lambda u, x: shift(c.g.value(0, (u + da, x)), dm) if x < da and u < dm else {}
    )
    algebra = AlgebraData(ta, split_total.A.mu.add(alpha))
    module = BimoduleData(algebra, tm, split_total.M.left.add(beta_left), split_total.M.right.add(beta_right))
    gamma = Matrix.from_sparse_columns(db, [c.gamma.value(0, (u,)) for u in range(dm)])
    P_hat = block_matrix([[R.P, None], [gamma, coeffs.Q]], [da, db], [dm, dn])
    total = RAvgAlgebra(algebra, module, P_hat)
    E = AbelianExtension(
        total=total,
        base=R,
        i=block_matrix([[None], [Matrix.identity(db)]], [da, db], [db]),
        p=block_matrix([[Matrix.identity(da), None]], [da], [da, db]),
        i_bar=block_matrix([[None], [Matrix.identity(dn)]], [dm, dn], [dn]),
        p_bar=block_matrix([[Matrix.identity(dm), None]], [dm], [dm, dn]),
        kernel_operator=coeffs.Q,
    )
    LOGGER.debug("Extension built | total_dims=(%s, %s)", ta, tm)
    return E


def split_extension(R: RAvgAlgebra, coeffs: RAvgBimodule) -> AbelianExtension:
    return cocycle_to_extension(zero_ravg_cochain(R, 2, coeffs), R, coeffs, check=False)


# ---------------------------------------------------------------------------
# isomorphisms


def section_difference(E: AbelianExtension, sec: Section, other: Section) -> RAvgCochain:
    """(κ, η) = (i⁻¹(s − s′), ī⁻¹(s̄ − s̄′)) as a degree 1 cochain; the two cocycles differ by its coboundary."""
    da, dm = E.base.A.dim, E.base.M.dim
    db, dn = E.kernel_dims
    kappa: Dict[Any, SparseVec] = {}
    for a in range(da):
        value = _preimage(E.i, vec_sub(sec.s.apply(e(a)), other.s.apply(e(a))), "i")
        if value:
            kappa[(0, (a,))] = value
    eta: Dict[Any, SparseVec] = {}
    for u in range(dm):
        value = _preimage(E.i_bar, vec_sub(sec.s_bar.apply(e(u)), other.s_bar.apply(e(u))), "ī")
        if value:
            eta[(0, (u + da,))] = value
    return RAvgCochain(1, Cochain(1, da, db, kappa, tree_indexed=False), Cochain(1, da + dm, dn, eta, tree_indexed=False))


def _transfer(proj: Matrix, inj: Matrix, s: Matrix, s2: Matrix, inj2: Matrix, twist: Matrix) -> Matrix:
    """x ↦ s′(p x) + i′(i⁻¹(x − s p x) + twist(p x))."""
    columns = []
    for x in range(proj.cols):
        base = proj.apply(e(x))
        kernel_part = _preimage(inj, vec_sub(e(x), s.apply(base)), "the inclusion")
        columns.append(vec_add(s2.apply(base), inj2.apply(vec_add(kernel_part, twist.apply(base)))))
    return Matrix.from_sparse_columns(s2.rows, columns)


def isomorphism_between(
    E: AbelianExtension,
    E2: AbelianExtension,
    sec: Optional[Section] = None,
    sec2: Optional[Section] = None,
) -> Optional[Tuple[Matrix, Matrix]]:
    """Solve c − c′ = δ(κ, η) and return (φ, ψ): Â→Â′, M̂→M̂′ over the identity on A and M, or ``None``."""
    sec = sec or canonical_section(E)
    sec2 = sec2 or canonical_section(E2)
    coeffs = induced_bimodule(E, sec)
    if not same_bimodule(coeffs, induced_bimodule(E2, sec2)):
        LOGGER.info("Extensions induce different bimodules | not isomorphic over the identity")
        return None
    R = E.base
    c, c2 = extension_to_cocycle(E, sec), extension_to_cocycle(E2, sec2)
    target = CochainLayout(ravg_spaces(R, 2, coeffs))
    source = CochainLayout(ravg_spaces(R, 1, coeffs))
    solution = coset_solve(_RAvgBuilder(R, coeffs).matrix(1), target.flatten(c.sub(c2).components()))
    if solution is None:
        LOGGER.info("Extensions are not isomorphic over the identity on A and M")
        return None
    kappa, eta = source.unflatten({k: v for k, v in enumerate(solution) if v})
    da, dm = R.A.dim, R.M.dim
    db, dn = E.kernel_dims
    kappa_matrix = Matrix.from_sparse_columns(db, [kappa.value(0, (a,)) for a in range(da)])
    eta_matrix = Matrix.from_sparse_columns(dn, [eta.value(0, (u + da,)) for u in range(dm)])
    phi = _transfer(E.p, E.i, sec.s, sec2.s, E2.i, kappa_matrix)
    psi = _transfer(E.p_bar, E.i_bar, sec.s_bar, sec2.s_bar, E2.i_bar, eta_matrix)
    return phi, psi


def verify_extension_isomorphism(E: AbelianExtension, E2: AbelianExtension, phi: Matrix, psi: Matrix) -> VerificationReport:
    """(φ, ψ) is a morphism of the total algebras and commutes with both rows."""
    report = verify_morphism(E.total, E2.total, phi, psi)
    report.subject = "isomorphism of abelian extensions"
    _record_columns(report, "φ∘i = i′", phi.matmul(E.i), E2.i)
    _record_columns(report, "p′∘φ = p", E2.p.matmul(phi), E.p)
    _record_columns(report, "ψ∘ī = ī′", psi.matmul(E.i_bar), E2.i_bar)
    _record_columns(report, "p̄′∘ψ = p̄", E2.p_bar.matmul(psi), E.p_bar)
    return report


__all__ = [
    "AbelianExtension",
    "Section",
    "any_section",
    "canonical_section",
    "cocycle_to_extension",
    "extension_to_cocycle",
    "induced_bimodule",
    "isomorphism_between",
    "same_bimodule",
    "section_difference",
    "split_extension",
    "verify_extension",
    "verify_extension_isomorphism",
    "verify_section",
]
