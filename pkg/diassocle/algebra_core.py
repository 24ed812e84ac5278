"""Finite-dimensional structures given by structure constants, and verifiers for their identities."""

from __future__ import annotations

import itertools
import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatchError
from .exact_linalg import (
    Matrix,
    SparseVec,
    basis_vector,
    coset_solve,
    format_fraction,
    to_dense,
    to_sparse,
    vec_axpy,
    vec_sub,
)

LOGGER = logging.getLogger(__name__)

Table = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


# ---------------------------------------------------------------------------
# bilinear maps


@dataclass(frozen=True, eq=False)
class BilinearMap:
    """A bilinear map X×Y→Z stored as ``table[i][j]`` = coordinates of the image of (eᵢ, eⱼ)."""

    left_dim: int
    right_dim: int
    out_dim: int
    table: Table

    def __post_init__(self) -> None:
        if len(self.table) != self.left_dim:
            raise DimensionMismatchError(f"bilinear table has {len(self.table)} rows, expected {self.left_dim}")
        for row in self.table:
            if len(row) != self.right_dim or any(len(v) != self.out_dim for v in row):
                raise DimensionMismatchError(
                    f"bilinear table does not have shape {self.left_dim}x{self.right_dim}x{self.out_dim}"
                )

    @classmethod
    def zeros(cls, left_dim: int, right_dim: int, out_dim: int) -> "BilinearMap":
        zero = tuple(Fraction(0) for _ in range(out_dim))
        return cls(left_dim, right_dim, out_dim, tuple(tuple(zero for _ in range(right_dim)) for _ in range(left_dim)))

    @classmethod
    def from_function(
        cls, left_dim: int, right_dim: int, out_dim: int, fn: Callable[[int, int], Any]
    ) -> "BilinearMap":
        """Build from ``fn(i, j)`` returning a sparse dict or a dense sequence."""
        rows = []
        for i in range(left_dim):
            row = []
            for j in range(right_dim):
                value = fn(i, j)
                if isinstance(value, dict):
                    row.append(tuple(to_dense(value, out_dim)))
                else:
                    if len(value) != out_dim:
                        raise DimensionMismatchError(f"image of ({i},{j}) has length {len(value)}, expected {out_dim}")
                    row.append(tuple(Fraction(v) for v in value))
            rows.append(tuple(row))
        return cls(left_dim, right_dim, out_dim, tuple(rows))

    @classmethod
    def from_lists(cls, left_dim: int, right_dim: int, out_dim: int, data: Sequence[Sequence[Sequence[Any]]]) -> "BilinearMap":
        return cls.from_function(left_dim, right_dim, out_dim, lambda i, j: data[i][j])

    @cached_property
    def sparse(self) -> Dict[int, List[Tuple[int, SparseVec]]]:
        """Nonzero entries grouped by left index."""
        out: Dict[int, List[Tuple[int, SparseVec]]] = {}
        for i, row in enumerate(self.table):
            for j, value in enumerate(row):
                vec = {k: v for k, v in enumerate(value) if v}
                if vec:
                    out.setdefault(i, []).append((j, vec))
        return out

    @cached_property
    def entries(self) -> Dict[Tuple[int, int], SparseVec]:
        return {(i, j): vec for i, pairs in self.sparse.items() for j, vec in pairs}

    def basis(self, i: int, j: int) -> SparseVec:
        return dict(self.entries.get((i, j), {}))

    def __call__(self, x: SparseVec, y: SparseVec) -> SparseVec:
        out: SparseVec = {}
        if not x or not y:
            return out
        entries = self.entries
        for i, cx in x.items():
            for j, cy in y.items():
                vec = entries.get((i, j))
                if vec is not None:
                    vec_axpy(out, cx * cy, vec)
        return out

    def _check_shape(self, other: "BilinearMap") -> None:
        if (self.left_dim, self.right_dim, self.out_dim) != (other.left_dim, other.right_dim, other.out_dim):
            raise DimensionMismatchError("bilinear maps have different shapes")

    def add(self, other: "BilinearMap") -> "BilinearMap":
        self._check_shape(other)
        return BilinearMap.from_function(
            self.left_dim, self.right_dim, self.out_dim,
            lambda i, j: [a + b for a, b in zip(self.table[i][j], other.table[i][j])],
        )

    def sub(self, other: "BilinearMap") -> "BilinearMap":
        return self.add(other.scale(-1))

    def scale(self, c: Any) -> "BilinearMap":
        c = Fraction(c)
        return BilinearMap.from_function(
            self.left_dim, self.right_dim, self.out_dim, lambda i, j: [a * c for a in self.table[i][j]]
        )

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BilinearMap):
            return NotImplemented
        return (self.left_dim, self.right_dim, self.out_dim, self.table) == (
            other.left_dim, other.right_dim, other.out_dim, other.table,
        )

    def __hash__(self) -> int:
        return hash((self.left_dim, self.right_dim, self.out_dim, self.table))

    def to_strings(self) -> List[List[List[str]]]:
        return [[[format_fraction(v) for v in value] for value in row] for row in self.table]


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True, eq=False)
class AlgebraData:
    dim: int
    mu: BilinearMap

    def __post_init__(self) -> None:
        if (self.mu.left_dim, self.mu.right_dim, self.mu.out_dim) != (self.dim,) * 3:
            raise DimensionMismatchError(f"product table does not match algebra dimension {self.dim}")

    @classmethod
    def zero(cls, dim: int) -> "AlgebraData":
        return cls(dim, BilinearMap.zeros(dim, dim, dim))

    def mul(self, x: SparseVec, y: SparseVec) -> SparseVec:
        return self.mu(x, y)


@dataclass(frozen=True, eq=False)
class BimoduleData:
    """An A-bimodule M: ``left`` is A×M→M and ``right`` is M×A→M."""

    base: AlgebraData
    dim: int
    left: BilinearMap
    right: BilinearMap

    def __post_init__(self) -> None:
        a, m = self.base.dim, self.dim
        if (self.left.left_dim, self.left.right_dim, self.left.out_dim) != (a, m, m):
            raise DimensionMismatchError(f"left action table does not have shape {a}x{m}x{m}")
        if (self.right.left_dim, self.right.right_dim, self.right.out_dim) != (m, a, m):
            raise DimensionMismatchError(f"right action table does not have shape {m}x{a}x{m}")

    @classmethod
    def zero(cls, base: AlgebraData, dim: int) -> "BimoduleData":
        return cls(base, dim, BilinearMap.zeros(base.dim, dim, dim), BilinearMap.zeros(dim, base.dim, dim))

    def act_left(self, a: SparseVec, u: SparseVec) -> SparseVec:
        return self.left(a, u)

    def act_right(self, u: SparseVec, a: SparseVec) -> SparseVec:
        return self.right(u, a)


@dataclass(frozen=True, eq=False)
class DiassData:
    dim: int
    dashv: BilinearMap
    vdash: BilinearMap

    def __post_init__(self) -> None:
        for name, table in (("⊣", self.dashv), ("⊢", self.vdash)):
            if (table.left_dim, table.right_dim, table.out_dim) != (self.dim,) * 3:
                raise DimensionMismatchError(f"{name} table does not match dimension {self.dim}")

    @classmethod
    def zero(cls, dim: int) -> "DiassData":
        return cls(dim, BilinearMap.zeros(dim, dim, dim), BilinearMap.zeros(dim, dim, dim))

    @classmethod
    def from_algebra(cls, A: AlgebraData) -> "DiassData":
        return cls(A.dim, A.mu, A.mu)

    def product(self, star: str, x: SparseVec, y: SparseVec) -> SparseVec:
        return (self.dashv if star == "⊣" else self.vdash)(x, y)


@dataclass(frozen=True, eq=False)
class DiassRepData:
    """Representation of a diassociative algebra: ``left_*`` are D×M→M, ``right_*`` are M×D→M."""

    base: DiassData
    dim: int
    left_dashv: BilinearMap
    left_vdash: BilinearMap
    right_dashv: BilinearMap
    right_vdash: BilinearMap

    def __post_init__(self) -> None:
        d, m = self.base.dim, self.dim
        for name, table, shape in (
            ("left ⊣", self.left_dashv, (d, m, m)),
            ("left ⊢", self.left_vdash, (d, m, m)),
            ("right ⊣", self.right_dashv, (m, d, m)),
            ("right ⊢", self.right_vdash, (m, d, m)),
        ):
            if (table.left_dim, table.right_dim, table.out_dim) != shape:
                raise DimensionMismatchError(f"{name} action does not have shape {shape}")

    @classmethod
    def zero(cls, base: DiassData, dim: int) -> "DiassRepData":
        d = base.dim
        return cls(
            base, dim,
            BilinearMap.zeros(d, dim, dim), BilinearMap.zeros(d, dim, dim),
            BilinearMap.zeros(dim, d, dim), BilinearMap.zeros(dim, d, dim),
        )

    def act_left(self, star: str, x: SparseVec, u: SparseVec) -> SparseVec:
        return (self.left_dashv if star == "⊣" else self.left_vdash)(x, u)

    def act_right(self, star: str, u: SparseVec, x: SparseVec) -> SparseVec:
        return (self.right_dashv if star == "⊣" else self.right_vdash)(u, x)


@dataclass(frozen=True, eq=False)
class RAvgAlgebra:
    """A relative averaging algebra candidate (A, M, P) with P: M→A stored as a dim A × dim M matrix."""

    A: AlgebraData
    M: BimoduleData
    P: Matrix

    def __post_init__(self) -> None:
        if self.M.base is not self.A and self.M.base.dim != self.A.dim:
            raise DimensionMismatchError("bimodule is defined over a different algebra")
        if (self.P.rows, self.P.cols) != (self.A.dim, self.M.dim):
            raise DimensionMismatchError(
                f"operator has shape {self.P.rows}x{self.P.cols}, expected {self.A.dim}x{self.M.dim}"
            )

    def op(self, u: SparseVec) -> SparseVec:
        return self.P.apply(u)

    def with_operator(self, P: Matrix) -> "RAvgAlgebra":
        return RAvgAlgebra(self.A, self.M, P)


@dataclass(frozen=True, eq=False)
class RAvgBimodule:
    """A bimodule (B, N, Q, l, r) over a relative averaging algebra; Q: N→B, l: M×B→N, r: B×M→N."""

    base: RAvgAlgebra
    B: BimoduleData
    N: BimoduleData
    Q: Matrix
    l: BilinearMap
    r: BilinearMap

    def __post_init__(self) -> None:
        m = self.base.M.dim
        b, n = self.B.dim, self.N.dim
        if (self.Q.rows, self.Q.cols) != (b, n):
            raise DimensionMismatchError(f"coefficient operator has shape {self.Q.rows}x{self.Q.cols}, expected {b}x{n}")
        if (self.l.left_dim, self.l.right_dim, self.l.out_dim) != (m, b, n):
            raise DimensionMismatchError(f"left pairing does not have shape {m}x{b}x{n}")
        if (self.r.left_dim, self.r.right_dim, self.r.out_dim) != (b, m, n):
            raise DimensionMismatchError(f"right pairing does not have shape {b}x{m}x{n}")


# ---------------------------------------------------------------------------
# reports


@dataclass
class Violation:
    identity: str
    inputs: Tuple[str, ...]
    lhs: List[str]
    rhs: List[str]
    tree: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def describe(self) -> str:
        where = f" on tree {self.tree}" if self.tree else ""
        return f"{self.identity} fails at ({', '.join(self.inputs)}){where}: {self.lhs} != {self.rhs}"


@dataclass
class VerificationReport:
    """Outcome of checking a family of identities on basis tuples."""

    subject: str
    checks: int = 0
    violations: List[Violation] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    precondition: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.precondition is None and not self.violations

    def record(
        self,
        identity: str,
        inputs: Sequence[str],
        lhs: SparseVec,
        rhs: SparseVec,
        dim: int,
        tree: Optional[str] = None,
    ) -> bool:
        self.checks += 1
        if not vec_sub(lhs, rhs):
            return True
        self.violations.append(
            Violation(
                identity=identity,
                inputs=tuple(inputs),
                lhs=[format_fraction(v) for v in to_dense(lhs, dim)],
                rhs=[format_fraction(v) for v in to_dense(rhs, dim)],
                tree=tree,
            )
        )
        return False

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checks += other.checks
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        if other.precondition and not self.precondition:
            self.precondition = other.precondition
        return self

    def first_failure(self) -> Optional[str]:
        if self.precondition:
            return f"precondition failed: {self.precondition}"
        if self.violations:
            return self.violations[0].describe()
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "valid": self.valid,
            "checks": self.checks,
            "precondition": self.precondition,
            "violations": [v.to_dict() for v in self.violations],
            "notes": list(self.notes),
        }


def _labels(prefixes: str, indices: Sequence[int]) -> Tuple[str, ...]:
    return tuple(f"{p}{i}" for p, i in zip(prefixes, indices))


def _finish(report: VerificationReport) -> VerificationReport:
    if report.valid:
        LOGGER.debug("Verification passed | subject=%s checks=%s", report.subject, report.checks)
    else:
        LOGGER.warning("Verification failed | subject=%s detail=%s", report.subject, report.first_failure())
    return report


# ---------------------------------------------------------------------------
# associative algebras and bimodules


def verify_algebra(A: AlgebraData) -> VerificationReport:
    report = VerificationReport(subject="associative algebra")
    e = basis_vector
    for i, j, k in itertools.product(range(A.dim), repeat=3):
        lhs = A.mul(A.mul(e(i), e(j)), e(k))
        rhs = A.mul(e(i), A.mul(e(j), e(k)))
        report.record("(a·b)·c = a·(b·c)", _labels("abc", (i, j, k)), lhs, rhs, A.dim)
    return _finish(report)


def _bimodule_checks(report: VerificationReport, A: AlgebraData, M: BimoduleData, prefix: str = "") -> None:
    e = basis_vector
    for i, j, k in itertools.product(range(A.dim), range(A.dim), range(M.dim)):
        lhs = M.act_left(A.mul(e(i), e(j)), e(k))
        rhs = M.act_left(e(i), M.act_left(e(j), e(k)))
        report.record(f"{prefix}(a·b)·u = a·(b·u)", _labels("abu", (i, j, k)), lhs, rhs, M.dim)
    for i, k, j in itertools.product(range(A.dim), range(M.dim), range(A.dim)):
        lhs = M.act_right(M.act_left(e(i), e(k)), e(j))
        rhs = M.act_left(e(i), M.act_right(e(k), e(j)))
        report.record(f"{prefix}(a·u)·b = a·(u·b)", _labels("aub", (i, k, j)), lhs, rhs, M.dim)
    for k, i, j in itertools.product(range(M.dim), range(A.dim), range(A.dim)):
        lhs = M.act_right(M.act_right(e(k), e(i)), e(j))
        rhs = M.act_right(e(k), A.mul(e(i), e(j)))
        report.record(f"{prefix}(u·a)·b = u·(a·b)", _labels("uab", (k, i, j)), lhs, rhs, M.dim)


def verify_associative_bimodule(A: AlgebraData, M: BimoduleData) -> VerificationReport:
    """Check the three bimodule axioms on all basis triples; associativity of A is a precondition."""
    if M.base.dim != A.dim:
        raise DimensionMismatchError(f"bimodule is over a {M.base.dim}-dimensional algebra, not {A.dim}")
    report = VerificationReport(subject="associative bimodule")
    base = verify_algebra(A)
    report.checks += base.checks
    report.violations.extend(base.violations)
    _bimodule_checks(report, A, M)
    return _finish(report)


def regular_bimodule(A: AlgebraData) -> BimoduleData:
    """A as a bimodule over itself."""
    return BimoduleData(A, A.dim, A.mu, A.mu)


def find_unit(A: AlgebraData) -> Optional[SparseVec]:
    """Return the unit of A, or ``None`` when A is not unital."""
    if A.dim == 0:
        return {}
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for j in range(A.dim):
        for side in (0, 1):
            for k in range(A.dim):
                row = []
                for i in range(A.dim):
                    vec = A.mu.table[i][j] if side == 0 else A.mu.table[j][i]
                    row.append(vec[k])
                rows.append(row)
                rhs.append(Fraction(int(j == k)))
    solution = coset_solve(Matrix.from_rows(rows, A.dim), rhs)
    if solution is None:
        return None
    return to_sparse(solution)


# ---------------------------------------------------------------------------
# diassociative algebras and representations

DIASS_IDENTITIES: Tuple[Tuple[str, str, str, str, str], ...] = (
    # (name, outer-left, inner-left, inner-right, outer-right) for (x s1 y) s2 z = x s3 (y s4 z)
    ("(x⊣y)⊣z = x⊣(y⊣z)", "⊣", "⊣", "⊣", "⊣"),
    ("(x⊣y)⊣z = x⊣(y⊢z)", "⊣", "⊣", "⊣", "⊢"),
    ("(x⊢y)⊣z = x⊢(y⊣z)", "⊢", "⊣", "⊢", "⊣"),
    ("(x⊣y)⊢z = x⊢(y⊢z)", "⊣", "⊢", "⊢", "⊢"),
    ("(x⊢y)⊢z = x⊢(y⊢z)", "⊢", "⊢", "⊢", "⊢"),
)


def verify_diass(D: DiassData) -> VerificationReport:
    report = VerificationReport(subject="diassociative algebra")
    e = basis_vector
    for name, s1, s2, s3, s4 in DIASS_IDENTITIES:
        for i, j, k in itertools.product(range(D.dim), repeat=3):
            lhs = D.product(s2, D.product(s1, e(i), e(j)), e(k))
            rhs = D.product(s3, e(i), D.product(s4, e(j), e(k)))
            report.record(name, _labels("xyz", (i, j, k)), lhs, rhs, D.dim)
    return _finish(report)


def _mixed_product(R: DiassRepData, star: str, x: Tuple[str, SparseVec], y: Tuple[str, SparseVec]) -> Tuple[str, SparseVec]:
    (kx, vx), (ky, vy) = x, y
    if kx == "d" and ky == "d":
        return "d", R.base.product(star, vx, vy)
    if kx == "d":
        return "m", R.act_left(star, vx, vy)
    if ky == "d":
        return "m", R.act_right(star, vx, vy)
    raise ValueError("a representation cannot multiply two module elements")


def verify_diass_rep(R: DiassRepData) -> VerificationReport:
    """The five diassociative identities with exactly one argument from the module."""
    report = VerificationReport(subject="diassociative representation")
    base = verify_diass(R.base)
    if not base.valid:
        report.precondition = base.first_failure()
    e = basis_vector
    d, m = R.base.dim, R.dim
    for name, s1, s2, s3, s4 in DIASS_IDENTITIES:
        for slot in range(3):
            kinds = ["d", "d", "d"]
            kinds[slot] = "m"
            ranges = [range(m) if k == "m" else range(d) for k in kinds]
            for idx in itertools.product(*ranges):
                x, y, z = ((k, e(i)) for k, i in zip(kinds, idx))
                lhs = _mixed_product(R, s2, _mixed_product(R, s1, x, y), z)[1]
                rhs = _mixed_product(R, s3, x, _mixed_product(R, s4, y, z))[1]
                labels = tuple(("u" if k == "m" else "x") + str(i) for k, i in zip(kinds, idx))
                report.record(name, labels, lhs, rhs, m)
    return _finish(report)


def adjoint_representation(D: DiassData) -> DiassRepData:
    return DiassRepData(D, D.dim, D.dashv, D.vdash, D.dashv, D.vdash)


def verify_diass_morphism(src: DiassData, dst: DiassData, psi: Matrix) -> VerificationReport:
    if (psi.rows, psi.cols) != (dst.dim, src.dim):
        raise DimensionMismatchError(f"morphism has shape {psi.rows}x{psi.cols}, expected {dst.dim}x{src.dim}")
    report = VerificationReport(subject="diassociative morphism")
    e = basis_vector
    for star in ("⊣", "⊢"):
        for i, j in itertools.product(range(src.dim), repeat=2):
            lhs = psi.apply(src.product(star, e(i), e(j)))
            rhs = dst.product(star, psi.apply(e(i)), psi.apply(e(j)))
            report.record(f"ψ(x{star}y) = ψx{star}ψy", _labels("xy", (i, j)), lhs, rhs, dst.dim)
    return _finish(report)


# ---------------------------------------------------------------------------
# relative averaging algebras


def _precondition(A: AlgebraData, M: BimoduleData) -> Optional[str]:
    base = verify_associative_bimodule(A, M)
    return None if base.valid else base.first_failure()


def verify_relative_averaging(R: RAvgAlgebra, *, check_base: bool = True) -> VerificationReport:
    """Check P(u)·P(v) = P(P(u)·v) = P(u·P(v)) on all basis pairs of M."""
    report = VerificationReport(subject="relative averaging algebra")
    if check_base:
        report.precondition = _precondition(R.A, R.M)
    e = basis_vector
    P, A, M = R.P, R.A, R.M
    images = [P.apply(e(k)) for k in range(M.dim)]
    for i, j in itertools.product(range(M.dim), repeat=2):
        lhs = A.mul(images[i], images[j])
        left = P.apply(M.act_left(images[i], e(j)))
        right = P.apply(M.act_right(e(i), images[j]))
        report.record("P(u)·P(v) = P(P(u)·v)", _labels("uv", (i, j)), lhs, left, A.dim)
        report.record("P(u)·P(v) = P(u·P(v))", _labels("uv", (i, j)), lhs, right, A.dim)
    return _finish(report)


def verify_ravg_bimodule(B: RAvgBimodule) -> VerificationReport:
    """Pairing identities and operator compatibilities of a bimodule over a relative averaging algebra."""
    report = VerificationReport(subject="relative averaging bimodule")
    base = verify_relative_averaging(B.base)
    if not base.valid:
        report.precondition = base.first_failure()
    R = B.base
    A, M, P = R.A, R.M, R.P
    e = basis_vector
    n_dim = B.N.dim
    _bimodule_checks(report, A, B.B, prefix="B: ")
    _bimodule_checks(report, A, B.N, prefix="N: ")
    l, r = B.l, B.r
    for a, u, b in itertools.product(range(A.dim), range(M.dim), range(B.B.dim)):
        labels = _labels("aub", (a, u, b))
        report.record("l(a·u, b) = a·l(u, b)", labels, l(M.act_left(e(a), e(u)), e(b)), B.N.act_left(e(a), l(e(u), e(b))), n_dim)
        report.record("l(u·a, b) = l(u, a·b)", labels, l(M.act_right(e(u), e(a)), e(b)), l(e(u), B.B.act_left(e(a), e(b))), n_dim)
        report.record("l(u, b·a) = l(u, b)·a", labels, l(e(u), B.B.act_right(e(b), e(a))), B.N.act_right(l(e(u), e(b)), e(a)), n_dim)
        report.record("r(a·b, u) = a·r(b, u)", labels, r(B.B.act_left(e(a), e(b)), e(u)), B.N.act_left(e(a), r(e(b), e(u))), n_dim)
        report.record("r(b·a, u) = r(b, a·u)", labels, r(B.B.act_right(e(b), e(a)), e(u)), r(e(b), M.act_left(e(a), e(u))), n_dim)
        report.record("r(b, u·a) = r(b, u)·a", labels, r(e(b), M.act_right(e(u), e(a))), B.N.act_right(r(e(b), e(u)), e(a)), n_dim)
    Q = B.Q
    b_dim = B.B.dim
    for u, k in itertools.product(range(M.dim), range(n_dim)):
        labels = _labels("un", (u, k))
        pu, qn = P.apply(e(u)), Q.apply(e(k))
        left = B.B.act_left(pu, qn)
        right = B.B.act_right(qn, pu)
        report.record("P(u)·Q(n) = Q(P(u)·n)", labels, left, Q.apply(B.N.act_left(pu, e(k))), b_dim)
        report.record("P(u)·Q(n) = Q(l(u, Q(n)))", labels, left, Q.apply(l(e(u), qn)), b_dim)
        report.record("Q(n)·P(u) = Q(r(Q(n), u))", labels, right, Q.apply(r(qn, e(u))), b_dim)
        report.record("Q(n)·P(u) = Q(n·P(u))", labels, right, Q.apply(B.N.act_right(e(k), pu)), b_dim)
    return _finish(report)


def verify_morphism(
    src: RAvgAlgebra,
    dst: RAvgAlgebra,
    phi: Matrix,
    psi: Matrix,
    *,
    degree_filter: Optional[Callable[[str, Tuple[int, ...]], bool]] = None,
) -> VerificationReport:
    """Check that (φ, ψ) is a morphism of relative averaging algebras.

    ``degree_filter(identity, indices)`` may skip basis tuples, which the truncated
    free object uses to ignore products that overflow its degree bound.
    """
    if (phi.rows, phi.cols) != (dst.A.dim, src.A.dim):
        raise DimensionMismatchError(f"φ has shape {phi.rows}x{phi.cols}, expected {dst.A.dim}x{src.A.dim}")
    if (psi.rows, psi.cols) != (dst.M.dim, src.M.dim):
        raise DimensionMismatchError(f"ψ has shape {psi.rows}x{psi.cols}, expected {dst.M.dim}x{src.M.dim}")
    report = VerificationReport(subject="relative averaging morphism")
    keep = degree_filter or (lambda name, idx: True)
    e = basis_vector
    for i, j in itertools.product(range(src.A.dim), repeat=2):
        if keep("φ(ab)", (i, j)):
            report.record(
                "φ(a·b) = φ(a)·φ(b)", _labels("ab", (i, j)),
                phi.apply(src.A.mul(e(i), e(j))), dst.A.mul(phi.apply(e(i)), phi.apply(e(j))), dst.A.dim,
            )
    for i, k in itertools.product(range(src.A.dim), range(src.M.dim)):
        if keep("ψ(au)", (i, k)):
            report.record(
                "ψ(a·u) = φ(a)·ψ(u)", _labels("au", (i, k)),
                psi.apply(src.M.act_left(e(i), e(k))), dst.M.act_left(phi.apply(e(i)), psi.apply(e(k))), dst.M.dim,
            )
        if keep("ψ(ua)", (i, k)):
            report.record(
                "ψ(u·a) = ψ(u)·φ(a)", _labels("ua", (k, i)),
                psi.apply(src.M.act_right(e(k), e(i))), dst.M.act_right(psi.apply(e(k)), phi.apply(e(i))), dst.M.dim,
            )
    for k in range(src.M.dim):
        report.record(
            "φ∘P = P′∘ψ", (f"u{k}",), phi.apply(src.P.apply(e(k))), dst.P.apply(psi.apply(e(k))), dst.A.dim
        )
    return _finish(report)


# ---------------------------------------------------------------------------
# averaging elements


@dataclass
class AveragingElementResult:
    valid: bool
    operator: Matrix
    report: VerificationReport

    def to_dict(self) -> Dict[str, Any]:
        return {"valid": self.valid, "operator": self.operator.to_strings(), "report": self.report.to_dict()}


def averaging_from_element(A: AlgebraData, r: Sequence[Any]) -> AveragingElementResult:
    """Test r ∈ A⊗A (coordinates r[i*dim+j] on eᵢ⊗eⱼ) for r₁₃r₁₂ = r₁₂r₂₃ = r₂₃r₁₃ and build P(a) = Σ r₁·a·r₂."""
    d = A.dim
    if len(r) != d * d:
        raise DimensionMismatchError(f"element of A⊗A needs {d * d} coordinates, got {len(r)}")
    coeffs = {(i, j): Fraction(c) for (i, j), c in zip(itertools.product(range(d), repeat=2), r) if c}
    e = basis_vector

    def triple(fn: Callable[[int, int, int, int], Tuple[SparseVec, SparseVec, SparseVec]]) -> SparseVec:
        out: SparseVec = {}
        for (i, j), c1 in coeffs.items():
            for (k, l), c2 in coeffs.items():
                x, y, z = fn(i, j, k, l)
                for p, cx in x.items():
                    for q, cy in y.items():
                        for s, cz in z.items():
                            key = (p * d + q) * d + s
                            new = out.get(key, 0) + c1 * c2 * cx * cy * cz
                            if new:
                                out[key] = new
                            else:
                                out.pop(key, None)
        return out

    r13r12 = triple(lambda i, j, k, l: (A.mul(e(i), e(k)), e(l), e(j)))
    r12r23 = triple(lambda i, j, k, l: (e(i), A.mul(e(j), e(k)), e(l)))
    r23r13 = triple(lambda i, j, k, l: (e(i), e(k), A.mul(e(l), e(j))))

    report = VerificationReport(subject="averaging element")
    report.record("r13·r12 = r12·r23", ("r",), r13r12, r12r23, d ** 3)
    report.record("r12·r23 = r23·r13", ("r",), r12r23, r23r13, d ** 3)

    def image(a: int) -> SparseVec:
        out: SparseVec = {}
        for (i, j), c in coeffs.items():
            vec_axpy(out, c, A.mul(A.mul(e(i), e(a)), e(j)))
        return out

    operator = Matrix.from_sparse_columns(d, [image(a) for a in range(d)])
    if report.valid:
        induced = verify_relative_averaging(RAvgAlgebra(A, regular_bimodule(A), operator))
        report.merge(induced)
    return AveragingElementResult(valid=report.valid, operator=operator, report=_finish(report))


__all__ = [
    "AlgebraData",
    "AveragingElementResult",
    "BilinearMap",
    "BimoduleData",
    "DIASS_IDENTITIES",
    "DiassData",
    "DiassRepData",
    "RAvgAlgebra",
    "RAvgBimodule",
    "VerificationReport",
    "Violation",
    "adjoint_representation",
    "averaging_from_element",
    "find_unit",
    "regular_bimodule",
    "verify_algebra",
    "verify_associative_bimodule",
    "verify_diass",
    "verify_diass_morphism",
    "verify_diass_rep",
    "verify_morphism",
    "verify_ravg_bimodule",
    "verify_relative_averaging",
]
