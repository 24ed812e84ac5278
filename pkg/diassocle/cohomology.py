"""Cochain complexes, Betti numbers, representatives and the long exact sequence."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd
from joblib import Memory, Parallel, delayed

from . import DEFAULT_NMAX
from .algebra_core import DiassData, DiassRepData, RAvgAlgebra, RAvgBimodule, verify_relative_averaging
from .cochain_engine import (
    Cochain,
    CochainLayout,
    CochainSpace,
    d_P,
    delta_diass,
    delta_diass_P,
    operator_matrix,
)
from .constructions import adjoint_bimodule, induced_diass, induced_rep_on_B, require_valid, shift, split
from .errors import ArityError, DimensionMismatchError, InvalidStructureError, NotACocycleError, NotAComplexError
from .exact_linalg import (
    EchelonBasis,
    Matrix,
    SparseVec,
    basis_vector,
    coset_solve,
    kernel_basis_sparse,
    rank,
    vec_axpy,
)
from .trees import split_table

LOGGER = logging.getLogger(__name__)

e = basis_vector

COMPLEX_KINDS = ("operator", "diass", "ravg", "avg", "assbimod", "kernel")


class OneModuleSlot:
    """Index filter on A⊕M tuples with exactly one M slot."""

    def __init__(self, algebra_dim: int) -> None:
        self.algebra_dim = algebra_dim

    def __call__(self, idx: Tuple[int, ...]) -> bool:
        return sum(1 for i in idx if i >= self.algebra_dim) == 1


# ---------------------------------------------------------------------------
# cochains of the relative averaging complex


@dataclass
class RAvgCochain:
    """(f, g, γ) with f: A^n→B, g on tuples with one M slot → N, γ ∈ CY^{n-1}(M,B) (absent for n = 1)."""

    n: int
    f: Cochain
    g: Cochain
    gamma: Optional[Cochain] = None

    def components(self) -> List[Cochain]:
        return [self.f, self.g] + ([self.gamma] if self.gamma is not None else [])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components())

    def sub(self, other: "RAvgCochain") -> "RAvgCochain":
        if self.n != other.n:
            raise ArityError(f"cochains of degree {self.n} and {other.n} cannot be subtracted")
        gamma = self.gamma.sub(other.gamma) if self.gamma is not None and other.gamma is not None else None
        return RAvgCochain(self.n, self.f.sub(other.f), self.g.sub(other.g), gamma)

    def add(self, other: "RAvgCochain") -> "RAvgCochain":
        if self.n != other.n:
            raise ArityError(f"cochains of degree {self.n} and {other.n} cannot be added")
        gamma = self.gamma.add(other.gamma) if self.gamma is not None and other.gamma is not None else None
        return RAvgCochain(self.n, self.f.add(other.f), self.g.add(other.g), gamma)

    def nonzero_components(self) -> List[str]:
        names = ["f", "g", "gamma"]
        return [name for name, c in zip(names, self.components()) if not c.is_zero()]


def _coefficients(R: RAvgAlgebra, coeffs: Optional[RAvgBimodule]) -> RAvgBimodule:
    return coeffs if coeffs is not None else adjoint_bimodule(R)


def ravg_spaces(R: RAvgAlgebra, n: int, coeffs: Optional[RAvgBimodule] = None) -> List[CochainSpace]:
    if n < 1:
        return []
    B = _coefficients(R, coeffs)
    da, dm = R.A.dim, R.M.dim
    spaces = [
        CochainSpace(n, da, B.B.dim, tree_indexed=False),
        CochainSpace(n, da + dm, B.N.dim, tree_indexed=False, index_filter=OneModuleSlot(da)),
    ]
    if n >= 2:
        spaces.append(CochainSpace(n - 1, dm, B.B.dim))
    return spaces


def zero_ravg_cochain(R: RAvgAlgebra, n: int, coeffs: Optional[RAvgBimodule] = None) -> RAvgCochain:
    spaces = ravg_spaces(R, n, coeffs)
    return RAvgCochain(n, spaces[0].zero(), spaces[1].zero(), spaces[2].zero() if n >= 2 else None)


# ---------------------------------------------------------------------------
# Hochschild part


@dataclass(frozen=True, eq=False)
class _MixedHochschild:
    """A⊕M with the semidirect product acting on B⊕N through the actions and pairings."""

    R: RAvgAlgebra
    coeffs: RAvgBimodule

    def mul(self, x: SparseVec, y: SparseVec) -> SparseVec:
        da = self.R.A.dim
        (a, u), (b, v) = split(x, da), split(y, da)
        out = self.R.A.mul(a, b)
        m_part = self.R.M.act_left(a, v)
        vec_axpy(m_part, 1, self.R.M.act_right(u, b))
        vec_axpy(out, 1, shift(m_part, da))
        return out

    def left(self, x: SparseVec, t: SparseVec) -> SparseVec:
        da, db = self.R.A.dim, self.coeffs.B.dim
        (a, u), (b, n) = split(x, da), split(t, db)
        out = self.coeffs.B.act_left(a, b)
        n_part = self.coeffs.N.act_left(a, n)
        vec_axpy(n_part, 1, self.coeffs.l(u, b))
        vec_axpy(out, 1, shift(n_part, db))
        return out

    def right(self, t: SparseVec, x: SparseVec) -> SparseVec:
        da, db = self.R.A.dim, self.coeffs.B.dim
        (b, n), (a, u) = split(t, db), split(x, da)
        out = self.coeffs.B.act_right(b, a)
        n_part = self.coeffs.N.act_right(n, a)
        vec_axpy(n_part, 1, self.coeffs.r(b, u))
        vec_axpy(out, 1, shift(n_part, db))
        return out


def _at_most_one_module_slot(da: int) -> Callable[[Tuple[int, ...]], bool]:
    return lambda idx: sum(1 for i in idx if i >= da) <= 1


def hoch_coboundary(
    f: Cochain, g: Cochain, R: RAvgAlgebra, coeffs: Optional[RAvgBimodule] = None
) -> Tuple[Cochain, Cochain]:
    """(δ_Hoch f, δ^f_Hoch g): the Hochschild coboundary of the pair on tuples with at most one M slot."""
    B = _coefficients(R, coeffs)
    da, dm, db, dn = R.A.dim, R.M.dim, B.B.dim, B.N.dim
    n = f.arity
    if g.arity != n:
        raise ArityError(f"f has arity {n}, g has arity {g.arity}")
    if f.target_dim != db or g.target_dim != dn:
        raise DimensionMismatchError("cochain targets do not match the coefficient spaces")
    mixed = _MixedHochschild(R, B)
    table = {key: dict(vec) for key, vec in f.table.items()}
    for key, vec in g.table.items():
        table[key] = shift(vec, db)
    combined = Cochain(n, da + dm, db + dn, table, tree_indexed=False)
    keep = _at_most_one_module_slot(da)
    f_out: Dict[Any, SparseVec] = {}
    g_out: Dict[Any, SparseVec] = {}

    for idx in itertools.product(range(da + dm), repeat=n + 1):
        if not keep(idx):
            continue
        out: SparseVec = {}
        first = combined.value(0, idx[1:])
        if first:
            vec_axpy(out, 1, mixed.left(e(idx[0]), first))
        for i in range(1, n + 1):
            merged = mixed.mul(e(idx[i - 1]), e(idx[i]))
            if not merged:
                continue
            args = [e(a) for a in idx[: i - 1]] + [merged] + [e(a) for a in idx[i + 1:]]
            vec_axpy(out, -1 if i % 2 else 1, combined.evaluate(0, args))
        last = combined.value(0, idx[:n])
        if last:
            vec_axpy(out, -1 if (n + 1) % 2 else 1, mixed.right(last, e(idx[n])))
        if not out:
            continue
        b_part, n_part = split(out, db)
        if all(i < da for i in idx):
            if b_part:
                f_out[(0, idx)] = b_part
        elif n_part:
            g_out[(0, idx)] = n_part
    return (
        Cochain(n + 1, da, db, f_out, tree_indexed=False),
        Cochain(n + 1, da + dm, dn, g_out, tree_indexed=False),
    )


def h_map(f: Cochain, g: Cochain, R: RAvgAlgebra, coeffs: Optional[RAvgBimodule] = None) -> Cochain:
    """h(f,g)(y;u) = (−1)^n ( f(Pu₁..Puₙ) − Q g(Pu₁..uᵢ..Puₙ) ) with i the split index of y."""
    B = _coefficients(R, coeffs)
    n = f.arity
    if g.arity != n or n < 1:
        raise ArityError(f"h needs f and g of a common positive arity, got {f.arity} and {g.arity}")
    da, dm = R.A.dim, R.M.dim

    images = [R.P.apply(e(u)) for u in range(dm)]
    sign = -1 if n % 2 else 1
    by_split: Dict[int, Dict[Tuple[int, ...], SparseVec]] = {}
    for i in range(1, n + 1):
        values: Dict[Tuple[int, ...], SparseVec] = {}
        for idx in itertools.product(range(dm), repeat=n):
            out = f.evaluate(0, [images[u] for u in idx])
            args = [images[u] for u in idx]
            args[i - 1] = {idx[i - 1] + da: Fraction(1)}
            vec_axpy(out, -1, B.Q.apply(g.evaluate(0, args)))
            if out:
                values[idx] = {k: sign * v for k, v in out.items()}
        by_split[i] = values
    table = {}
    for t, i in enumerate(split_table(n)):
        for idx, vec in by_split[i].items():
            table[(t, idx)] = dict(vec)
    return Cochain(n, dm, B.B.dim, table)


def ravg_coboundary(c: RAvgCochain, R: RAvgAlgebra, coeffs: Optional[RAvgBimodule] = None) -> RAvgCochain:
    """δ(f,g,γ) = (δ_Hoch f, δ^f_Hoch g, δ^P_Diass γ + h(f,g))."""
    B = _coefficients(R, coeffs)
    f_next, g_next = hoch_coboundary(c.f, c.g, R, B)
    gamma_next = h_map(c.f, c.g, R, B)
    if c.gamma is not None:
        gamma_next = gamma_next.add(delta_diass_P(c.gamma, R, B))
    return RAvgCochain(c.n + 1, f_next, g_next, gamma_next)


def require_cocycle(c: RAvgCochain, R: RAvgAlgebra, coeffs: Optional[RAvgBimodule] = None) -> None:
    bad = ravg_coboundary(c, R, coeffs).nonzero_components()
    if bad:
        raise NotACocycleError(f"δ of the degree {c.n} cochain is nonzero in {', '.join(bad)}", component=bad[0])


# ---------------------------------------------------------------------------
# averaging algebras


def require_averaging(R: RAvgAlgebra) -> None:
    A, M = R.A, R.M
    if M.dim != A.dim or M.left != A.mu or M.right != A.mu:
        raise InvalidStructureError("averaging cohomology needs M to be A with its own multiplication")


def embed_avg(f: Cochain, gamma: Optional[Cochain], R: RAvgAlgebra) -> RAvgCochain:
    """i(f, γ) = (f, f, γ) with the second copy of f read on tuples with one M slot."""
    da = R.A.dim
    g_table = {}
    for (t, idx), vec in f.table.items():
        for slot in range(len(idx)):
            moved = idx[:slot] + (idx[slot] + da,) + idx[slot + 1:]
            g_table[(0, moved)] = dict(vec)
    g = Cochain(f.arity, da + R.M.dim, R.M.dim, g_table, tree_indexed=False)
    return RAvgCochain(f.arity, f, g, gamma)


def avg_coboundary(f: Cochain, gamma: Optional[Cochain], R: RAvgAlgebra) -> Tuple[Cochain, Cochain]:
    """δ_Avg(f, γ) = (δ_Hoch f, δ^P_Diass γ + h_P(f, f))."""
    require_averaging(R)
    image = ravg_coboundary(embed_avg(f, gamma, R), R)
    return image.f, image.gamma  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# complexes


class _Builder:
    """Per-degree spaces and coboundaries of one complex."""

    name = "complex"

    def spaces(self, n: int) -> List[CochainSpace]:
        raise NotImplementedError

    def apply(self, n: int, cochains: List[Cochain]) -> List[Cochain]:
        raise NotImplementedError

    def layout(self, n: int) -> CochainLayout:
        return CochainLayout(self.spaces(n))

    def matrix(self, n: int) -> Matrix:
        source, target = self.layout(n), self.layout(n + 1)
        if source.dim == 0 or target.dim == 0:
            return Matrix.zeros(target.dim, source.dim)
        return operator_matrix(lambda cs: self.apply(n, cs), source, target)


class _OperatorBuilder(_Builder):
    name = "operator"

    def __init__(self, R: RAvgAlgebra) -> None:
        self.R = R

    def spaces(self, n: int) -> List[CochainSpace]:
        return [CochainSpace(n, self.R.M.dim, self.R.A.dim)] if n >= 0 else []

    def apply(self, n: int, cochains: List[Cochain]) -> List[Cochain]:
        return [d_P(cochains[0], self.R)]


class _DiassBuilder(_Builder):
    name = "diass"

    def __init__(self, D: DiassData, rep: DiassRepData, *, shift_degree: int = 0, name: str = "diass") -> None:
        self.D, self.rep, self.shift_degree, self.name = D, rep, shift_degree, name

    def spaces(self, n: int) -> List[CochainSpace]:
        arity = n - self.shift_degree
        if arity < 0 or (self.shift_degree and n < 2):
            return []
        return [CochainSpace(arity, self.D.dim, self.rep.dim)]

    def apply(self, n: int, cochains: List[Cochain]) -> List[Cochain]:
        return [delta_diass(cochains[0], self.D, self.rep)]


class _RAvgBuilder(_Builder):
    name = "ravg"

    def __init__(self, R: RAvgAlgebra, coeffs: Optional[RAvgBimodule]) -> None:
        self.R, self.coeffs = R, _coefficients(R, coeffs)

    def spaces(self, n: int) -> List[CochainSpace]:
        return ravg_spaces(self.R, n, self.coeffs)

    def apply(self, n: int, cochains: List[Cochain]) -> List[Cochain]:
        gamma = cochains[2] if len(cochains) > 2 else None
        image = ravg_coboundary(RAvgCochain(n, cochains[0], cochains[1], gamma), self.R, self.coeffs)
        return image.components()


class _AssBimodBuilder(_RAvgBuilder):
    name = "assbimod"

    def spaces(self, n: int) -> List[CochainSpace]:
        return ravg_spaces(self.R, n, self.coeffs)[:2]

    def apply(self, n: int, cochains: List[Cochain]) -> List[Cochain]:
        return list(hoch_coboundary(cochains[0], cochains[1], self.R, self.coeffs))


class _AvgBuilder(_Builder):
    name = "avg"

    def __init__(self, R: RAvgAlgebra) -> None:
        require_averaging(R)
        self.R = R

    def spaces(self, n: int) -> List[CochainSpace]:
        if n < 1:
            return []
        d = self.R.A.dim
        spaces = [CochainSpace(n, d, d, tree_indexed=False)]
        if n >= 2:
            spaces.append(CochainSpace(n - 1, d, d))
        return spaces

    def apply(self, n: int, cochains: List[Cochain]) -> List[Cochain]:
        gamma = cochains[1] if len(cochains) > 1 else None
        f_next, gamma_next = avg_coboundary(cochains[0], gamma, self.R)
        return [f_next, gamma_next]


def _assemble_degree(builder: _Builder, n: int) -> Matrix:
    return builder.matrix(n)


@dataclass
class ComplexSpec:
    """Degrees 0..nmax with their coboundaries; ``layouts`` runs to nmax+1."""

    name: str
    nmax: int
    layouts: List[CochainLayout]
    coboundaries: List[Matrix]

    @property
    def dims(self) -> List[int]:
        return [layout.dim for layout in self.layouts]

    def check(self) -> None:
        for n in range(len(self.coboundaries) - 1):
            first, second = self.coboundaries[n], self.coboundaries[n + 1]
            if not second.matmul(first).is_zero():
                raise NotAComplexError(f"{self.name}: δ^{n + 1}∘δ^{n} is not zero")

    def coboundary(self, n: int) -> Matrix:
        if n < 0:
            return Matrix.zeros(self.layouts[0].dim, 0)
        return self.coboundaries[n]


def build_complex(builder: _Builder, nmax: int, *, jobs: int = 1) -> ComplexSpec:
    layouts = [builder.layout(n) for n in range(nmax + 2)]
    LOGGER.debug("Assembling complex | name=%s nmax=%s dims=%s jobs=%s", builder.name, nmax, [l.dim for l in layouts], jobs)
    if jobs == 1:
        matrices = [_assemble_degree(builder, n) for n in range(nmax + 1)]
    else:
        matrices = Parallel(n_jobs=jobs)(delayed(_assemble_degree)(builder, n) for n in range(nmax + 1))
    spec = ComplexSpec(name=builder.name, nmax=nmax, layouts=layouts, coboundaries=list(matrices))
    spec.check()
    LOGGER.info("Complex assembled | name=%s nmax=%s dims=%s", spec.name, nmax, spec.dims)
    return spec


def _builder_for(kind: str, structure: Any, coeffs: Optional[RAvgBimodule]) -> _Builder:
    if kind == "diass" and isinstance(structure, tuple):
        D, rep = structure
        return _DiassBuilder(D, rep)
    R = structure
    if not isinstance(R, RAvgAlgebra):
        raise InvalidStructureError(f"the {kind} complex needs a relative averaging algebra")
    if kind == "operator":
        return _OperatorBuilder(R)
    if kind == "diass":
        return _DiassBuilder(induced_diass(R, check=False), induced_rep_on_B(R, _coefficients(R, coeffs), check=False))
    if kind == "ravg":
        return _RAvgBuilder(R, coeffs)
    if kind == "assbimod":
        return _AssBimodBuilder(R, coeffs)
    if kind == "avg":
        return _AvgBuilder(R)
    if kind == "kernel":
        B = _coefficients(R, coeffs)
        return _DiassBuilder(induced_diass(R, check=False), induced_rep_on_B(R, B, check=False), shift_degree=1, name="kernel")
    raise ValueError(f"unknown complex kind {kind!r}; expected one of {', '.join(COMPLEX_KINDS)}")


def _build_uncached(kind: str, structure: Any, nmax: int, coeffs: Optional[RAvgBimodule], jobs: int) -> ComplexSpec:
    return build_complex(_builder_for(kind, structure, coeffs), nmax, jobs=jobs)


def assemble_complex(
    kind: str,
    structure: Any,
    nmax: int = DEFAULT_NMAX,
    *,
    coeffs: Optional[RAvgBimodule] = None,
    jobs: int = 1,
    cache_dir: Optional[str] = None,
) -> ComplexSpec:
    """Build the named complex; ``structure`` is an RAvgAlgebra, or (D, rep) for a plain diass complex."""
    if isinstance(structure, RAvgAlgebra):
        require_valid(verify_relative_averaging(structure), "relative averaging algebra")
    if cache_dir:
        memory = Memory(location=cache_dir, verbose=0)
        return memory.cache(_build_uncached, ignore=["jobs"])(kind, structure, nmax, coeffs, jobs)
    return _build_uncached(kind, structure, nmax, coeffs, jobs)


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class BettiResult:
    degree: int
    dim: int
    representatives: List[SparseVec]
    boundary_map: Matrix = field(repr=False)
    coboundary_map: Matrix = field(repr=False)

    def is_cocycle(self, vec: SparseVec) -> bool:
        return not self.coboundary_map.apply(vec)

    def is_coboundary(self, vec: SparseVec) -> bool:
        """True when vec lies in the image of the incoming coboundary."""
        if not vec:
            return True
        if self.boundary_map.cols == 0:
            return False
        return coset_solve(self.boundary_map, vec) is not None

    def preimage(self, vec: SparseVec) -> Optional[SparseVec]:
        if self.boundary_map.cols == 0:
            return {} if not vec else None
        solution = coset_solve(self.boundary_map, vec)
        return None if solution is None else {k: v for k, v in enumerate(solution) if v}


def betti(spec: ComplexSpec, n: int) -> BettiResult:
    """dim H^n with representatives taken as normal forms of cocycles modulo coboundaries."""
    if not 0 <= n <= spec.nmax:
        raise ArityError(f"degree {n} outside 0..{spec.nmax}")
    outgoing = spec.coboundary(n)
    incoming = spec.coboundary(n - 1)
    cocycles = kernel_basis_sparse(outgoing)
    image = EchelonBasis(spec.layouts[n].dim)
    for column in incoming.sparse_columns:
        image.add(column)
    representatives = []
    for z in cocycles:
        residual = image.normal_form(z)
        if residual:
            image.add(z)
            representatives.append(residual)
    LOGGER.debug("Betti number | complex=%s degree=%s dim=%s", spec.name, n, len(representatives))
    return BettiResult(
        degree=n, dim=len(representatives), representatives=representatives,
        boundary_map=incoming, coboundary_map=outgoing,
    )


def betti_table(spec: ComplexSpec) -> pd.DataFrame:
    records = []
    for n in range(spec.nmax + 1):
        dim_c = spec.layouts[n].dim
        rank_out = rank(spec.coboundary(n))
        rank_in = rank(spec.coboundary(n - 1)) if n > 0 else 0
        records.append(
            {
                "degree": n,
                "dim_C": dim_c,
                "rank_delta": rank_out,
                "dim_Z": dim_c - rank_out,
                "dim_B": rank_in,
                "dim_H": dim_c - rank_out - rank_in,
            }
        )
    table = pd.DataFrame.from_records(records, columns=["degree", "dim_C", "rank_delta", "dim_Z", "dim_B", "dim_H"])
    LOGGER.info("Betti numbers computed | complex=%s nmax=%s dims=%s", spec.name, spec.nmax, table["dim_H"].tolist())
    return table


def euler_report(spec: ComplexSpec) -> pd.DataFrame:
    """χ of the truncated complex against χ of its cohomology; they differ by (−1)^N rank δ^N."""
    table = betti_table(spec)
    signs = [(-1) ** n for n in table["degree"]]
    chi_c = sum(s * d for s, d in zip(signs, table["dim_C"]))
    chi_h = sum(s * d for s, d in zip(signs, table["dim_H"]))
    edge = int(table["rank_delta"].iloc[-1]) * (-1) ** spec.nmax
    return pd.DataFrame(
        [
            {
                "complex": spec.name,
                "nmax": spec.nmax,
                "chi_C": int(chi_c),
                "chi_H": int(chi_h),
                "edge_correction": int(edge),
                "consistent": int(chi_c - chi_h) == int(edge),
            }
        ]
    )


# ---------------------------------------------------------------------------
# long exact sequence


@dataclass
class LESReport:
    nodes: pd.DataFrame
    failures: List[str]

    @property
    def exact(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {"exact": self.exact, "failures": list(self.failures), "nodes": self.nodes.to_dict(orient="records")}


def _span(vectors: Sequence[SparseVec], dim: int) -> EchelonBasis:
    basis = EchelonBasis(dim)
    for v in vectors:
        basis.add(v)
    return basis


def _kernel_dim_modulo(sources: Sequence[SparseVec], images: Sequence[SparseVec], target: EchelonBasis) -> int:
    """dim {z ∈ span(sources) : image(z) ∈ target}, for linearly independent sources."""
    extended = target.copy()
    gained = sum(1 for v in images if extended.add(v))
    return len(sources) - gained


def les_check(
    R: RAvgAlgebra,
    nmax: int = DEFAULT_NMAX,
    *,
    coeffs: Optional[RAvgBimodule] = None,
    jobs: int = 1,
    cache_dir: Optional[str] = None,
) -> LESReport:
    """Exactness of H^n(K) → H^n(rAvg) → H^n(AssBimod) → H^{n+1}(K) for 1 ≤ n ≤ nmax."""
    K = assemble_complex("kernel", R, nmax, coeffs=coeffs, jobs=jobs, cache_dir=cache_dir)
    C = assemble_complex("ravg", R, nmax, coeffs=coeffs, jobs=jobs, cache_dir=cache_dir)
    AB = assemble_complex("assbimod", R, nmax, coeffs=coeffs, jobs=jobs, cache_dir=cache_dir)

    def cocycles(spec: ComplexSpec, n: int) -> List[SparseVec]:
        return kernel_basis_sparse(spec.coboundary(n))

    def coboundaries(spec: ComplexSpec, n: int) -> List[SparseVec]:
        return [c for c in spec.coboundary(n - 1).sparse_columns if c] if n > 0 else []

    def include(n: int, vec: SparseVec) -> SparseVec:
        if not vec:
            return {}
        return shift(vec, C.layouts[n].offsets[2])

    def project(n: int, vec: SparseVec) -> SparseVec:
        bound = AB.layouts[n].dim
        return {k: v for k, v in vec.items() if k < bound}

    def connect(n: int, vec: SparseVec) -> SparseVec:
        image = C.coboundary(n).apply(vec)
        if n + 1 < 2:
            return {}
        offset = C.layouts[n + 1].offsets[2]
        stray = {k: v for k, v in image.items() if k < offset}
        if stray:
            raise NotAComplexError(f"lift of an AssBimod cocycle in degree {n} has a nonzero Hochschild part")
        return {k - offset: v for k, v in image.items()}

    records = []
    failures: List[str] = []

    def record(node: str, n: int, dim_h: int, ker_dim: int, im_dim: int, contained: bool) -> None:
        exact = contained and ker_dim == im_dim
        records.append({"node": node, "degree": n, "dim_H": dim_h, "dim_ker": ker_dim, "dim_im": im_dim, "exact": exact})
        if not exact:
            failures.append(f"{node}: kernel has dimension {ker_dim}, image has dimension {im_dim}")
            LOGGER.warning("Sequence not exact | node=%s ker=%s im=%s", node, ker_dim, im_dim)

    for n in range(1, nmax + 1):
        zk, bk = cocycles(K, n), coboundaries(K, n)
        zc, bc = cocycles(C, n), coboundaries(C, n)
        zab, bab = cocycles(AB, n), coboundaries(AB, n)
        dim_k, dim_c, dim_ab = K.layouts[n].dim, C.layouts[n].dim, AB.layouts[n].dim
        span_bk, span_bc, span_bab = _span(bk, dim_k), _span(bc, dim_c), _span(bab, dim_ab)

        # H^n(K): ker i_* against im ∂ from H^{n-1}(AssBimod)
        ker_i = _kernel_dim_modulo(zk, [include(n, z) for z in zk], span_bc)
        incoming = [connect(n - 1, z) for z in cocycles(AB, n - 1)] if n >= 2 else []
        im_d = _span(list(bk) + incoming, dim_k)
        contained = all(span_bc.contains(include(n, v)) for v in incoming)
        record(f"H^{n}(K)", n, len(zk) - len(span_bk), ker_i - len(span_bk), len(im_d) - len(span_bk), contained)

        # H^n(rAvg): ker p_* against im i_*
        ker_p = _kernel_dim_modulo(zc, [project(n, z) for z in zc], span_bab)
        im_i = _span([include(n, z) for z in zk] + list(bc), dim_c)
        contained = all(span_bab.contains(project(n, include(n, z))) for z in zk)
        record(f"H^{n}(rAvg)", n, len(zc) - len(span_bc), ker_p - len(span_bc), len(im_i) - len(span_bc), contained)

        # H^n(AssBimod): ker ∂ against im p_*
        next_bk = _span(coboundaries(K, n + 1), K.layouts[n + 1].dim)
        ker_d = _kernel_dim_modulo(zab, [connect(n, z) for z in zab], next_bk)
        im_p = _span([project(n, z) for z in zc] + list(bab), dim_ab)
        contained = all(next_bk.contains(connect(n, project(n, z))) for z in zc)
        record(f"H^{n}(AssBimod)", n, len(zab) - len(span_bab), ker_d - len(span_bab), len(im_p) - len(span_bab), contained)

    nodes = pd.DataFrame.from_records(records, columns=["node", "degree", "dim_H", "dim_ker", "dim_im", "exact"])
    LOGGER.info("Long exact sequence checked | nodes=%s exact=%s", len(records), not failures)
    return LESReport(nodes=nodes, failures=failures)


__all__ = [
    "BettiResult",
    "COMPLEX_KINDS",
    "ComplexSpec",
    "LESReport",
    "OneModuleSlot",
    "RAvgCochain",
    "assemble_complex",
    "avg_coboundary",
    "betti",
    "betti_table",
    "build_complex",
    "embed_avg",
    "euler_report",
    "h_map",
    "hoch_coboundary",
    "les_check",
    "ravg_coboundary",
    "ravg_spaces",
    "require_averaging",
    "require_cocycle",
    "zero_ravg_cochain",
]
