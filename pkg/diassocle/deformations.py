"""Formal deformations of relative averaging algebras truncated at t^{N+1}."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from .algebra_core import BilinearMap, RAvgAlgebra, VerificationReport, verify_relative_averaging
from .cochain_engine import Cochain, CochainLayout
from .cohomology import RAvgCochain, _RAvgBuilder, ravg_spaces, require_cocycle
from .errors import ArityError, DimensionMismatchError, InvalidStructureError
from .exact_linalg import Matrix, SparseVec, basis_vector, coset_solve, vec_axpy

LOGGER = logging.getLogger(__name__)

e = basis_vector

Series = List[SparseVec]


# ---------------------------------------------------------------------------
# truncated power series of vectors


def _constant(vec: SparseVec, order: int) -> Series:
    return [dict(vec)] + [{} for _ in range(order)]


def _apply_linear(maps: Sequence[Matrix], x: Series, order: int) -> Series:
    out: Series = [{} for _ in range(order + 1)]
    for i, m in enumerate(maps[: order + 1]):
        for j in range(order + 1 - i):
            if x[j]:
                vec_axpy(out[i + j], 1, m.apply(x[j]))
    return out


def _apply_bilinear(maps: Sequence[BilinearMap], x: Series, y: Series, order: int) -> Series:
    out: Series = [{} for _ in range(order + 1)]
    for i, m in enumerate(maps[: order + 1]):
        for j in range(order + 1 - i):
            if not x[j]:
                continue
            for k in range(order + 1 - i - j):
                if y[k]:
                    vec_axpy(out[i + j + k], 1, m(x[j], y[k]))
    return out


def _inverse_series(maps: Sequence[Matrix], order: int) -> List[Matrix]:
    """Inverse of Σ tⁱ mapsᵢ with maps₀ = id, modulo t^{order+1}."""
    dim = maps[0].rows
    inverse = [Matrix.identity(dim)]
    for n in range(1, order + 1):
        term = Matrix.zeros(dim, dim)
        for i in range(1, n + 1):
            if i < len(maps):
                term = term.sub(maps[i].matmul(inverse[n - i]))
        inverse.append(term)
    return inverse


def _pad(items: Sequence[Any], order: int, zero: Callable[[], Any]) -> List[Any]:
    padded = list(items[: order + 1])
    while len(padded) < order + 1:
        padded.append(zero())
    return padded


# ---------------------------------------------------------------------------
# jets


@dataclass(frozen=True, eq=False)
class DeformationJet:
    """μ_t, l_t, r_t, P_t as lists of coefficients of t⁰..t^N; the t⁰ terms are the base data."""

    order: int
    base: RAvgAlgebra
    mus: List[BilinearMap]
    lefts: List[BilinearMap]
    rights: List[BilinearMap]
    operators: List[Matrix]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ArityError("a jet has order at least 0")
        for name, terms in (("μ", self.mus), ("l", self.lefts), ("r", self.rights), ("P", self.operators)):
            if len(terms) != self.order + 1:
                raise DimensionMismatchError(f"{name}_t has {len(terms)} coefficients, expected {self.order + 1}")
        A, M = self.base.A, self.base.M
        if self.mus[0] != A.mu or self.lefts[0] != M.left or self.rights[0] != M.right or self.operators[0] != self.base.P:
            raise InvalidStructureError("the t⁰ coefficients must be the base relative averaging algebra")
        for mu in self.mus:
            if (mu.left_dim, mu.right_dim, mu.out_dim) != (A.dim, A.dim, A.dim):
                raise DimensionMismatchError("μ coefficients must be bilinear on A")
        for l in self.lefts:
            if (l.left_dim, l.right_dim, l.out_dim) != (A.dim, M.dim, M.dim):
                raise DimensionMismatchError("l coefficients must map A×M to M")
        for r in self.rights:
            if (r.left_dim, r.right_dim, r.out_dim) != (M.dim, A.dim, M.dim):
                raise DimensionMismatchError("r coefficients must map M×A to M")
        for P in self.operators:
            if (P.rows, P.cols) != (A.dim, M.dim):
                raise DimensionMismatchError("P coefficients must map M to A")

    @classmethod
    def trivial(cls, base: RAvgAlgebra, order: int) -> "DeformationJet":
        return cls.from_terms(base, order=order)

    @classmethod
    def from_terms(
        cls,
        base: RAvgAlgebra,
        *,
        order: int,
        mus: Sequence[BilinearMap] = (),
        lefts: Sequence[BilinearMap] = (),
        rights: Sequence[BilinearMap] = (),
        operators: Sequence[Matrix] = (),
    ) -> "DeformationJet":
        """Build a jet from its higher coefficients t¹..t^N; missing ones are zero."""
        A, M = base.A, base.M
        return cls(
            order=order,
            base=base,
            mus=[A.mu] + _pad(mus, order - 1, lambda: BilinearMap.zeros(A.dim, A.dim, A.dim)),
            lefts=[M.left] + _pad(lefts, order - 1, lambda: BilinearMap.zeros(A.dim, M.dim, M.dim)),
            rights=[M.right] + _pad(rights, order - 1, lambda: BilinearMap.zeros(M.dim, A.dim, M.dim)),
            operators=[base.P] + _pad(operators, order - 1, lambda: Matrix.zeros(A.dim, M.dim)),
        )

    def truncate(self, order: int) -> "DeformationJet":
        if order > self.order:
            raise ArityError(f"cannot truncate a jet of order {self.order} to order {order}")
        n = order + 1
        return DeformationJet(order, self.base, self.mus[:n], self.lefts[:n], self.rights[:n], self.operators[:n])

    def is_trivial(self) -> bool:
        return all(
            term.is_zero()
            for terms in (self.mus[1:], self.lefts[1:], self.rights[1:], self.operators[1:])
            for term in terms
        )


@dataclass(frozen=True, eq=False)
class EquivalenceJet:
    """φ_t on A and ψ_t on M with identity constant terms."""

    order: int
    phis: List[Matrix]
    psis: List[Matrix]

    def __post_init__(self) -> None:
        if len(self.phis) != self.order + 1 or len(self.psis) != self.order + 1:
            raise DimensionMismatchError(f"an equivalence of order {self.order} needs {self.order + 1} terms")
        if self.phis[0] != Matrix.identity(self.phis[0].rows) or self.psis[0] != Matrix.identity(self.psis[0].rows):
            raise InvalidStructureError("an equivalence starts with the identity")

    @classmethod
    def identity(cls, R: RAvgAlgebra, order: int) -> "EquivalenceJet":
        return cls.from_terms(R, order=order)

    @classmethod
    def from_terms(
        cls, R: RAvgAlgebra, *, order: int, phis: Sequence[Matrix] = (), psis: Sequence[Matrix] = ()
    ) -> "EquivalenceJet":
        da, dm = R.A.dim, R.M.dim
        return cls(
            order,
            [Matrix.identity(da)] + _pad(phis, order - 1, lambda: Matrix.zeros(da, da)),
            [Matrix.identity(dm)] + _pad(psis, order - 1, lambda: Matrix.zeros(dm, dm)),
        )

    def padded(self, order: int) -> "EquivalenceJet":
        da, dm = self.phis[0].rows, self.psis[0].rows
        return EquivalenceJet(
            order,
            _pad(self.phis, order, lambda: Matrix.zeros(da, da)),
            _pad(self.psis, order, lambda: Matrix.zeros(dm, dm)),
        )


# ---------------------------------------------------------------------------
# the deformation equations


def verify_deformation(J: DeformationJet) -> VerificationReport:
    """Check associativity, both actions, their compatibility and the operator identities at every order."""
    report = VerificationReport(subject=f"deformation of order {J.order}")
    base = verify_relative_averaging(J.base)
    if not base.valid:
        report.precondition = base.first_failure()
    A, M = J.base.A, J.base.M
    N = J.order
    mu, l, r, P = J.mus, J.lefts, J.rights, J.operators

    def c(vec: SparseVec) -> Series:
        return _constant(vec, N)

    def check(family: str, labels: Sequence[str], lhs: Series, rhs: Series, dim: int) -> None:
        for n in range(N + 1):
            report.record(f"{family} at order {n}", labels, lhs[n], rhs[n], dim)

    for a, b, x in itertools.product(range(A.dim), repeat=3):
        lhs = _apply_bilinear(mu, _apply_bilinear(mu, c(e(a)), c(e(b)), N), c(e(x)), N)
        rhs = _apply_bilinear(mu, c(e(a)), _apply_bilinear(mu, c(e(b)), c(e(x)), N), N)
        check("associativity", (f"a{a}", f"b{b}", f"c{x}"), lhs, rhs, A.dim)
    for a, b, u in itertools.product(range(A.dim), range(A.dim), range(M.dim)):
        labels = (f"a{a}", f"b{b}", f"u{u}")
        lhs = _apply_bilinear(l, _apply_bilinear(mu, c(e(a)), c(e(b)), N), c(e(u)), N)
        rhs = _apply_bilinear(l, c(e(a)), _apply_bilinear(l, c(e(b)), c(e(u)), N), N)
        check("left action", labels, lhs, rhs, M.dim)
        lhs = _apply_bilinear(r, _apply_bilinear(r, c(e(u)), c(e(a)), N), c(e(b)), N)
        rhs = _apply_bilinear(r, c(e(u)), _apply_bilinear(mu, c(e(a)), c(e(b)), N), N)
        check("right action", labels, lhs, rhs, M.dim)
        lhs = _apply_bilinear(r, _apply_bilinear(l, c(e(a)), c(e(u)), N), c(e(b)), N)
        rhs = _apply_bilinear(l, c(e(a)), _apply_bilinear(r, c(e(u)), c(e(b)), N), N)
        check("bimodule", labels, lhs, rhs, M.dim)
    for u, v in itertools.product(range(M.dim), repeat=2):
        labels = (f"u{u}", f"v{v}")
        pu = _apply_linear(P, c(e(u)), N)
        pv = _apply_linear(P, c(e(v)), N)
        lhs = _apply_bilinear(mu, pu, pv, N)
        check("operator P(u)·P(v) = P(P(u)·v)", labels, lhs, _apply_linear(P, _apply_bilinear(l, pu, c(e(v)), N), N), A.dim)
        check("operator P(u)·P(v) = P(u·P(v))", labels, lhs, _apply_linear(P, _apply_bilinear(r, c(e(u)), pv, N), N), A.dim)
    if report.valid:
        LOGGER.info("Deformation equations hold | order=%s checks=%s", N, report.checks)
    else:
        LOGGER.warning("Deformation equations fail | order=%s detail=%s", N, report.first_failure())
    return report


# ---------------------------------------------------------------------------
# jets and 2-cocycles


def _cocycle_components(J: DeformationJet) -> RAvgCochain:
    R = J.base
    da, dm = R.A.dim, R.M.dim
    mu1, l1, r1, P1 = J.mus[1], J.lefts[1], J.rights[1], J.operators[1]
    f = Cochain(2, da, da, {(0, key): dict(vec) for key, vec in mu1.entries.items() if vec}, tree_indexed=False)
    g_table: Dict[Any, SparseVec] = {}
    for (a, u), vec in l1.entries.items():
        if vec:
            g_table[(0, (a, u + da))] = dict(vec)
    for (u, a), vec in r1.entries.items():
        if vec:
            g_table[(0, (u + da, a))] = dict(vec)
    g = Cochain(2, da + dm, dm, g_table, tree_indexed=False)
    gamma = Cochain(1, dm, da, {(0, (u,)): dict(col) for u, col in enumerate(P1.sparse_columns) if col})
    return RAvgCochain(2, f, g, gamma)


def deformation_to_cocycle(J: DeformationJet, *, check: bool = True) -> RAvgCochain:
    """(μ₁, β₁, P₁) with β₁(a,u) = l₁(a,u) and β₁(u,a) = r₁(u,a)."""
    if J.order < 1:
        raise ArityError("an infinitesimal deformation needs order at least 1")
    if check:
        report = verify_deformation(J.truncate(1))
        if not report.valid:
            raise InvalidStructureError(f"not a deformation: {report.first_failure()}")
    c = _cocycle_components(J)
    require_cocycle(c, J.base)
    LOGGER.debug("Cocycle extracted | nonzero=%s", c.nonzero_components())
    return c


def cocycle_to_deformation(c: RAvgCochain, R: RAvgAlgebra, *, check: bool = True) -> DeformationJet:
    """The order-1 jet (μ + tμ₁, l + tl₁, r + tr₁, P + tP₁) of a 2-cocycle."""
    if c.n != 2 or c.gamma is None:
        raise ArityError(f"a deformation comes from a degree 2 cochain, got degree {c.n}")
    if check:
        require_cocycle(c, R)
    da, dm = R.A.dim, R.M.dim
    mu1 = BilinearMap.from_function(da, da, da, lambda i, j: c.f.value(0, (i, j)))
    l1 = BilinearMap.from_function(da, dm, dm, lambda a, u: c.g.value(0, (a, u + da)))
    r1 = BilinearMap.from_function(dm, da, dm, lambda u, a: c.g.value(0, (u + da, a)))
    P1 = Matrix.from_sparse_columns(da, [c.gamma.value(0, (u,)) for u in range(dm)])
    return DeformationJet.from_terms(R, order=1, mus=[mu1], lefts=[l1], rights=[r1], operators=[P1])


def scale_jet(R: RAvgAlgebra, order: int) -> DeformationJet:
    """P_t = (1+t)P with everything else undeformed; equivalent to the trivial jet through ψ_t = (1+t)·id."""
    return DeformationJet.from_terms(R, order=order, operators=[R.P] if order >= 1 else [])


# ---------------------------------------------------------------------------
# equivalences


def equivalence_check(J: DeformationJet, J2: DeformationJet, E: EquivalenceJet) -> VerificationReport:
    """Check that (φ_t, ψ_t) maps J to J2 order by order; at order 1 also compare the cocycles."""
    if J.order != J2.order or E.order < J.order:
        raise ArityError(f"orders differ: jets {J.order} and {J2.order}, equivalence {E.order}")
    N = J.order
    A, M = J.base.A, J.base.M
    phi, psi = E.phis, E.psis
    report = VerificationReport(subject=f"equivalence of order {N}")

    def c(vec: SparseVec) -> Series:
        return _constant(vec, N)

    def check(family: str, labels: Sequence[str], lhs: Series, rhs: Series, dim: int) -> None:
        for n in range(N + 1):
            report.record(f"{family} at order {n}", labels, lhs[n], rhs[n], dim)

    for a, b in itertools.product(range(A.dim), repeat=2):
        lhs = _apply_linear(phi, _apply_bilinear(J.mus, c(e(a)), c(e(b)), N), N)
        rhs = _apply_bilinear(J2.mus, _apply_linear(phi, c(e(a)), N), _apply_linear(phi, c(e(b)), N), N)
        check("φ(a·b) = φ(a)·φ(b)", (f"a{a}", f"b{b}"), lhs, rhs, A.dim)
    for a, u in itertools.product(range(A.dim), range(M.dim)):
        labels = (f"a{a}", f"u{u}")
        phi_a, psi_u = _apply_linear(phi, c(e(a)), N), _apply_linear(psi, c(e(u)), N)
        lhs = _apply_linear(psi, _apply_bilinear(J.lefts, c(e(a)), c(e(u)), N), N)
        check("ψ(a·u) = φ(a)·ψ(u)", labels, lhs, _apply_bilinear(J2.lefts, phi_a, psi_u, N), M.dim)
        lhs = _apply_linear(psi, _apply_bilinear(J.rights, c(e(u)), c(e(a)), N), N)
        check("ψ(u·a) = ψ(u)·φ(a)", labels, lhs, _apply_bilinear(J2.rights, psi_u, phi_a, N), M.dim)
    for u in range(M.dim):
        lhs = _apply_linear(phi, _apply_linear(J.operators, c(e(u)), N), N)
        rhs = _apply_linear(J2.operators, _apply_linear(psi, c(e(u)), N), N)
        check("φ∘P = P′∘ψ", (f"u{u}",), lhs, rhs, A.dim)

    if N >= 1 and report.valid:
        R = J.base
        layout = CochainLayout(ravg_spaces(R, 2))
        difference = layout.flatten(_cocycle_components(J).sub(_cocycle_components(J2)).components())
        source = CochainLayout(ravg_spaces(R, 1))
        shift_vec = source.flatten(_equivalence_cochains(E, R))
        image = _RAvgBuilder(R, None).matrix(1).apply(shift_vec)
        report.record("c − c′ = δ(φ₁, ψ₁)", ("order 1",), difference, image, layout.dim)
    if not report.valid:
        LOGGER.info("Equivalence rejected | detail=%s", report.first_failure())
    return report


def _equivalence_cochains(E: EquivalenceJet, R: RAvgAlgebra) -> List[Cochain]:
    da, dm = R.A.dim, R.M.dim
    phi1, psi1 = E.phis[1], E.psis[1]
    f = Cochain(1, da, da, {(0, (a,)): dict(col) for a, col in enumerate(phi1.sparse_columns) if col}, tree_indexed=False)
    g = Cochain(1, da + dm, dm, {(0, (u + da,)): dict(col) for u, col in enumerate(psi1.sparse_columns) if col}, tree_indexed=False)
    return [f, g]


def equivalence_from_coboundary(c: RAvgCochain, c2: RAvgCochain, R: RAvgAlgebra) -> Optional[EquivalenceJet]:
    """Solve c − c2 = δ(φ₁, ψ₁); ``None`` when the cocycles are not cohomologous."""
    layout = CochainLayout(ravg_spaces(R, 2))
    source = CochainLayout(ravg_spaces(R, 1))
    rhs = layout.flatten(c.sub(c2).components())
    solution = coset_solve(_RAvgBuilder(R, None).matrix(1), rhs)
    if solution is None:
        LOGGER.info("Cocycles are not cohomologous | obstruction at order 1")
        return None
    f, g = source.unflatten({k: v for k, v in enumerate(solution) if v})
    da, dm = R.A.dim, R.M.dim
    phi1 = Matrix.from_sparse_columns(da, [f.value(0, (a,)) for a in range(da)])
    psi1 = Matrix.from_sparse_columns(dm, [g.value(0, (u + da,)) for u in range(dm)])
    return EquivalenceJet.from_terms(R, order=1, phis=[phi1], psis=[psi1])


def is_trivial_deformation(J: DeformationJet) -> bool:
    """True when the cocycle of J is a coboundary, i.e. J is equivalent to the trivial jet to first order."""
    c = deformation_to_cocycle(J)
    zero = _cocycle_components(DeformationJet.trivial(J.base, 1))
    return equivalence_from_coboundary(c, zero, J.base) is not None


def apply_equivalence(J: DeformationJet, E: EquivalenceJet) -> DeformationJet:
    """Transport J along (φ_t, ψ_t): μ′ = φμ(φ⁻¹,φ⁻¹), l′ = ψl(φ⁻¹,ψ⁻¹), r′ = ψr(ψ⁻¹,φ⁻¹), P′ = φPψ⁻¹."""
    N = J.order
    E = E.padded(N) if E.order < N else E
    phi, psi = E.phis[: N + 1], E.psis[: N + 1]
    phi_inv, psi_inv = _inverse_series(phi, N), _inverse_series(psi, N)
    A, M = J.base.A, J.base.M

    def c(vec: SparseVec) -> Series:
        return _constant(vec, N)

    mu_vals = {
        (a, b): _apply_linear(phi, _apply_bilinear(J.mus, _apply_linear(phi_inv, c(e(a)), N), _apply_linear(phi_inv, c(e(b)), N), N), N)
        for a, b in itertools.product(range(A.dim), repeat=2)
    }
    l_vals = {
        (a, u): _apply_linear(psi, _apply_bilinear(J.lefts, _apply_linear(phi_inv, c(e(a)), N), _apply_linear(psi_inv, c(e(u)), N), N), N)
        for a, u in itertools.product(range(A.dim), range(M.dim))
    }
    r_vals = {
        (u, a): _apply_linear(psi, _apply_bilinear(J.rights, _apply_linear(psi_inv, c(e(u)), N), _apply_linear(phi_inv, c(e(a)), N), N), N)
        for u, a in itertools.product(range(M.dim), range(A.dim))
    }
    p_vals = [_apply_linear(phi, _apply_linear(J.operators, _apply_linear(psi_inv, c(e(u)), N), N), N) for u in range(M.dim)]
    mus = [BilinearMap.from_function(A.dim, A.dim, A.dim, lambda i, j, n=n: mu_vals[(i, j)][n]) for n in range(1, N + 1)]
    lefts = [BilinearMap.from_function(A.dim, M.dim, M.dim, lambda i, j, n=n: l_vals[(i, j)][n]) for n in range(1, N + 1)]
    rights = [BilinearMap.from_function(M.dim, A.dim, M.dim, lambda i, j, n=n: r_vals[(i, j)][n]) for n in range(1, N + 1)]
    operators = [Matrix.from_sparse_columns(A.dim, [p_vals[u][n] for u in range(M.dim)]) for n in range(1, N + 1)]
    return DeformationJet.from_terms(J.base, order=N, mus=mus, lefts=lefts, rights=rights, operators=operators)


@dataclass
class BijectionReport:
    """Sampled check that jets modulo equivalence match second cohomology classes."""

    samples: int
    section_ok: bool
    well_defined: bool
    injective: bool
    notes: List[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.section_ok and self.well_defined and self.injective


def bijection_check(R: RAvgAlgebra, cocycles: Sequence[RAvgCochain], equivalences: Sequence[EquivalenceJet]) -> BijectionReport:
    """Round-trip each cocycle through its jet, transport jets along the given equivalences, compare classes."""
    notes: List[str] = []
    section_ok = well_defined = injective = True
    layout = CochainLayout(ravg_spaces(R, 2))
    jets = [cocycle_to_deformation(c, R) for c in cocycles]
    for k, (c, J) in enumerate(zip(cocycles, jets)):
        if layout.flatten(deformation_to_cocycle(J).components()) != layout.flatten(c.components()):
            section_ok = False
            notes.append(f"sample {k}: cocycle does not survive the round trip")
        for E in equivalences:
            moved = apply_equivalence(J, E)
            if not verify_deformation(moved).valid or equivalence_from_coboundary(c, deformation_to_cocycle(moved), R) is None:
                well_defined = False
                notes.append(f"sample {k}: an equivalent jet lands in another class")
    for (i, c), (j, c2) in itertools.combinations(enumerate(cocycles), 2):
        E = equivalence_from_coboundary(c, c2, R)
        if E is not None and not equivalence_check(jets[i], jets[j], E).valid:
            injective = False
            notes.append(f"samples {i} and {j}: cohomologous but no equivalence of jets")
    report = BijectionReport(len(cocycles), section_ok, well_defined, injective, notes)
    LOGGER.info("Deformation bijection sampled | samples=%s valid=%s", len(cocycles), report.valid)
    return report


__all__ = [
    "BijectionReport",
    "DeformationJet",
    "EquivalenceJet",
    "apply_equivalence",
    "bijection_check",
    "cocycle_to_deformation",
    "deformation_to_cocycle",
    "equivalence_check",
    "equivalence_from_coboundary",
    "is_trivial_deformation",
    "scale_jet",
    "verify_deformation",
]
