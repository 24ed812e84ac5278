"""Exact rational linear algebra: sparse vectors, dense matrices, echelon forms and kernels."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatchError, FixtureError, NotAComplexError

LOGGER = logging.getLogger(__name__)

# Matrices with at most this many entries are ranked by dense fraction-free elimination.
DENSE_ELIMINATION_LIMIT = 10_000

Scalar = Union[int, Fraction]
SparseVec = Dict[int, Any]


def to_fraction(value: Any, *, path: Optional[str] = None) -> Fraction:
    """Parse an int, a Fraction or a string like ``"-3/4"`` into an exact rational."""
    if isinstance(value, bool):
        raise FixtureError(f"expected a rational number, got {value!r}", path=path)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                numerator, denominator = int(num), int(den)
            except ValueError as exc:
                raise FixtureError(f"malformed rational {value!r}", path=path) from exc
            if denominator == 0:
                raise FixtureError(f"zero denominator in {value!r}", path=path)
            return Fraction(numerator, denominator)
        try:
            return Fraction(int(text))
        except ValueError as exc:
            raise FixtureError(f"malformed rational {value!r}", path=path) from exc
    raise FixtureError(f"expected a rational number, got {value!r}", path=path)


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# sparse vectors


def vec_add(x: SparseVec, y: SparseVec) -> SparseVec:
    out = dict(x)
    vec_axpy(out, 1, y)
    return out


def vec_sub(x: SparseVec, y: SparseVec) -> SparseVec:
    out = dict(x)
    vec_axpy(out, -1, y)
    return out


def vec_scale(x: SparseVec, c: Any) -> SparseVec:
    if not c:
        return {}
    out = {}
    for k, v in x.items():
        prod = v * c
        if prod:
            out[k] = prod
    return out


def vec_axpy(target: SparseVec, c: Any, x: SparseVec) -> None:
    """target += c * x, in place, dropping zero entries."""
    if not c:
        return
    for k, v in x.items():
        new = target.get(k, 0) + c * v
        if new:
            target[k] = new
        else:
            target.pop(k, None)


def to_dense(x: SparseVec, dim: int) -> List[Fraction]:
    out = [Fraction(0)] * dim
    for k, v in x.items():
        if not 0 <= k < dim:
            raise DimensionMismatchError(f"index {k} outside dimension {dim}")
        out[k] = Fraction(v)
    return out


def to_sparse(values: Sequence[Any]) -> SparseVec:
    return {k: Fraction(v) for k, v in enumerate(values) if v}


def basis_vector(index: int) -> SparseVec:
    return {index: Fraction(1)}


# ---------------------------------------------------------------------------
# linear forms over cochain coordinates


class LinearForm:
    """A formal ℚ-linear combination of variables, used to read off operator matrices."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[int, Fraction]] = None) -> None:
        self.terms: Dict[int, Fraction] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def variable(cls, index: int) -> "LinearForm":
        return cls({index: Fraction(1)})

    def _combine(self, other: Any, sign: int) -> "LinearForm":
        if isinstance(other, LinearForm):
            out = dict(self.terms)
            for k, v in other.terms.items():
                new = out.get(k, 0) + sign * v
                if new:
                    out[k] = new
                else:
                    out.pop(k, None)
            return LinearForm(out)
        if other == 0:
            return self
        raise TypeError("a linear form can only be combined with another form or zero")

    def __add__(self, other: Any) -> "LinearForm":
        return self._combine(other, 1)

    def __radd__(self, other: Any) -> "LinearForm":
        return self._combine(other, 1)

    def __sub__(self, other: Any) -> "LinearForm":
        return self._combine(other, -1)

    def __rsub__(self, other: Any) -> "LinearForm":
        return (-self)._combine(other, 1)

    def __neg__(self) -> "LinearForm":
        return LinearForm({k: -v for k, v in self.terms.items()})

    def __mul__(self, scalar: Any) -> "LinearForm":
        if isinstance(scalar, LinearForm):
            raise TypeError("linear forms cannot be multiplied together")
        if not scalar:
            return LinearForm()
        return LinearForm({k: v * scalar for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Any) -> "LinearForm":
        return self * (Fraction(1) / Fraction(scalar))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinearForm):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self) -> str:
        return f"LinearForm({self.terms!r})"


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense exact matrix; sparse row and column views are cached on demand."""

    rows: int
    cols: int
    data: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows or any(len(row) != self.cols for row in self.data):
            raise DimensionMismatchError(f"matrix data does not have shape {self.rows}x{self.cols}")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        zero = Fraction(0)
        return cls(rows, cols, tuple(tuple(zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        data = tuple(tuple(to_fraction(v) for v in row) for row in rows)
        width = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), width, data)

    @classmethod
    def from_sparse_columns(cls, rows: int, columns: Sequence[SparseVec]) -> "Matrix":
        grid = [[Fraction(0)] * len(columns) for _ in range(rows)]
        for j, column in enumerate(columns):
            for i, v in column.items():
                if not 0 <= i < rows:
                    raise DimensionMismatchError(f"row index {i} outside {rows}")
                grid[i][j] = Fraction(v)
        return cls(rows, len(columns), tuple(tuple(row) for row in grid))

    @classmethod
    def from_sparse_rows(cls, cols: int, rows: Sequence[SparseVec]) -> "Matrix":
        return cls(len(rows), cols, tuple(tuple(to_dense(row, cols)) for row in rows))

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable[[int, int], Any]) -> "Matrix":
        return cls(rows, cols, tuple(tuple(Fraction(fn(i, j)) for j in range(cols)) for i in range(rows)))

    @cached_property
    def sparse_rows(self) -> Tuple[SparseVec, ...]:
        return tuple({j: v for j, v in enumerate(row) if v} for row in self.data)

    @cached_property
    def sparse_columns(self) -> Tuple[SparseVec, ...]:
        cols: List[SparseVec] = [{} for _ in range(self.cols)]
        for i, row in enumerate(self.sparse_rows):
            for j, v in row.items():
                cols[j][i] = v
        return tuple(cols)

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def column(self, j: int) -> SparseVec:
        return dict(self.sparse_columns[j])

    def apply(self, x: Union[SparseVec, Sequence[Any]]) -> SparseVec:
        """Return M·x for a sparse (dict) or dense (sequence) vector; entries may be linear forms."""
        if not isinstance(x, dict):
            if len(x) != self.cols:
                raise DimensionMismatchError(f"vector of length {len(x)} applied to a {self.rows}x{self.cols} matrix")
            x = {k: v for k, v in enumerate(x) if v}
        out: SparseVec = {}
        columns = self.sparse_columns
        for j, c in x.items():
            if not 0 <= j < self.cols:
                raise DimensionMismatchError(f"index {j} outside {self.cols} columns")
            vec_axpy(out, c, columns[j])
        return out

    def apply_dense(self, x: Sequence[Any]) -> List[Fraction]:
        return to_dense(self.apply(x), self.rows)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [self.apply(col) for col in other.sparse_columns]
        return Matrix.from_sparse_columns(self.rows, columns)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.matmul(other)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def _check_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(f"shape {self.rows}x{self.cols} differs from {other.rows}x{other.cols}")

    def add(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix(self.rows, self.cols, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def sub(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix(self.rows, self.cols, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def scale(self, c: Any) -> "Matrix":
        c = Fraction(c)
        return Matrix(self.rows, self.cols, tuple(tuple(a * c for a in row) for row in self.data))

    def is_zero(self) -> bool:
        return not any(self.sparse_rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def to_strings(self) -> List[List[str]]:
        return [[format_fraction(v) for v in row] for row in self.data]

    def to_lists(self) -> List[List[Fraction]]:
        return [list(row) for row in self.data]

    def rank(self) -> int:
        return rank(self)


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, 0)
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise DimensionMismatchError("hstack needs blocks with equal row counts")
    data = tuple(tuple(v for b in blocks for v in b.data[i]) for i in range(rows))
    return Matrix(rows, sum(b.cols for b in blocks), data)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, 0)
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise DimensionMismatchError("vstack needs blocks with equal column counts")
    return Matrix(sum(b.rows for b in blocks), cols, tuple(row for b in blocks for row in b.data))


def block_matrix(grid: Sequence[Sequence[Optional[Matrix]]], row_dims: Sequence[int], col_dims: Sequence[int]) -> Matrix:
    """Assemble a block matrix; ``None`` entries are zero blocks of the implied shape."""
    rows = []
    for i, line in enumerate(grid):
        blocks = [b if b is not None else Matrix.zeros(row_dims[i], col_dims[j]) for j, b in enumerate(line)]
        rows.append(hstack(blocks) if blocks else Matrix.zeros(row_dims[i], 0))
    return vstack(rows) if rows else Matrix.zeros(0, sum(col_dims))


# ---------------------------------------------------------------------------
# elimination


def _rref_sparse(rows: Iterable[SparseVec]) -> Tuple[List[SparseVec], List[int]]:
    """Gauss-Jordan on sparse Fraction rows; returns reduced rows and their pivot columns."""
    reduced: List[SparseVec] = []
    pivots: List[int] = []
    for raw in rows:
        row = {k: Fraction(v) for k, v in raw.items() if v}
        for r, p in zip(reduced, pivots):
            c = row.get(p)
            if c:
                vec_axpy(row, -c, r)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        for r in reduced:
            c = r.get(p)
            if c:
                vec_axpy(r, -c, row)
        reduced.append(row)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [reduced[i] for i in order], [pivots[i] for i in order]


def _integer_rows(matrix: Matrix) -> Tuple[List[List[int]], int]:
    """Clear denominators row by row; returns the integer rows and the product of the multipliers."""
    rows: List[List[int]] = []
    scale = 1
    for row in matrix.data:
        m = math.lcm(*(v.denominator for v in row))
        rows.append([int(v * m) for v in row])
        scale *= m
    return rows, scale


def _bareiss(rows: List[List[int]], cols: int) -> Tuple[List[List[int]], List[int], int]:
    """Fraction-free echelon form; every division by the previous pivot is exact."""
    pivots: List[int] = []
    sign, previous, r = 1, 1, 0
    for c in range(cols):
        if r == len(rows):
            break
        found = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if found is None:
            continue
        if found != r:
            rows[r], rows[found] = rows[found], rows[r]
            sign = -sign
        top = rows[r]
        p = top[c]
        for i in range(r + 1, len(rows)):
            a = rows[i][c]
            rows[i] = [(p * x - a * y) // previous for x, y in zip(rows[i], top)]
        previous = p
        pivots.append(c)
        r += 1
    return rows[:r], pivots, sign


def bareiss(matrix: Matrix) -> Tuple[List[List[int]], List[int]]:
    """Integer row echelon form of the denominator-cleared rows, with its pivot columns."""
    rows, _ = _integer_rows(matrix)
    echelon, pivots, _ = _bareiss(rows, matrix.cols)
    return echelon, pivots


def determinant(matrix: Matrix) -> Fraction:
    if matrix.rows != matrix.cols:
        raise DimensionMismatchError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    if matrix.rows == 0:
        return Fraction(1)
    rows, scale = _integer_rows(matrix)
    echelon, pivots, sign = _bareiss(rows, matrix.cols)
    if len(pivots) < matrix.rows:
        return Fraction(0)
    return Fraction(sign * echelon[-1][-1], scale)


def rref(matrix: Matrix) -> Tuple[List[SparseVec], List[int]]:
    return _rref_sparse(matrix.sparse_rows)


def rank(matrix: Matrix) -> int:
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    if matrix.rows * matrix.cols <= DENSE_ELIMINATION_LIMIT:
        return len(bareiss(matrix)[1])
    _, pivots = rref(matrix)
    return len(pivots)


def kernel_basis_sparse(matrix: Matrix) -> List[SparseVec]:
    rows, pivots = rref(matrix)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        vec: SparseVec = {free: Fraction(1)}
        for row, p in zip(rows, pivots):
            c = row.get(free)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def kernel_basis(matrix: Matrix) -> List[List[Fraction]]:
    """Basis of ker M; free variables set to 1 one at a time."""
    return [to_dense(v, matrix.cols) for v in kernel_basis_sparse(matrix)]


def nullity(matrix: Matrix) -> int:
    return matrix.cols - rank(matrix)


def coset_solve(matrix: Matrix, rhs: Union[SparseVec, Sequence[Any]]) -> Optional[List[Fraction]]:
    """Return one x with M·x = rhs (free variables 0), or ``None`` when rhs is outside the image."""
    if not isinstance(rhs, dict):
        if len(rhs) != matrix.rows:
            raise DimensionMismatchError(f"right-hand side has length {len(rhs)}, matrix has {matrix.rows} rows")
        rhs = to_sparse(rhs)
    elif any(not 0 <= k < matrix.rows for k in rhs):
        raise DimensionMismatchError("right-hand side index outside the row range")
    aug = matrix.cols
    augmented = []
    for i, row in enumerate(matrix.sparse_rows):
        r = dict(row)
        if rhs.get(i):
            r[aug] = Fraction(rhs[i])
        augmented.append(r)
    reduced, pivots = _rref_sparse(augmented)
    solution = [Fraction(0)] * matrix.cols
    for row, p in zip(reduced, pivots):
        if p == aug:
            return None
        solution[p] = row.get(aug, Fraction(0))
    return solution


def quotient_dim(outgoing: Matrix, incoming: Matrix) -> int:
    """dim ker(outgoing) / im(incoming), after checking outgoing·incoming = 0."""
    if incoming.rows != outgoing.cols:
        raise DimensionMismatchError(f"incoming map lands in dimension {incoming.rows}, outgoing starts at {outgoing.cols}")
    if outgoing.rows and incoming.cols and not outgoing.matmul(incoming).is_zero():
        raise NotAComplexError("composite of consecutive maps is not zero")
    return nullity(outgoing) - rank(incoming)


# ---------------------------------------------------------------------------
# incremental echelon basis


class EchelonBasis:
    """An incrementally built, fully reduced basis of a subspace of ℚ^dim.

    Rows have a leading 1 at their minimal index. When ``track`` is set, each row keeps
    the combination of added labels that produced it, so membership tests can also
    express a vector in terms of the generators.
    """

    def __init__(self, dim: int, *, track: bool = False) -> None:
        self.dim = dim
        self.track = track
        self._rows: Dict[int, SparseVec] = {}
        self._combos: Dict[int, SparseVec] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def rows(self) -> List[SparseVec]:
        return [dict(self._rows[p]) for p in self.pivots]

    def complement_indices(self) -> List[int]:
        return [i for i in range(self.dim) if i not in self._rows]

    def reduce(self, vec: SparseVec) -> Tuple[SparseVec, SparseVec]:
        """Return (residual, combo) with vec = residual + Σ combo[label]·generator[label]."""
        residual = {k: Fraction(v) for k, v in vec.items() if v}
        combo: SparseVec = {}
        for p in sorted(self._rows):
            c = residual.get(p)
            if c:
                vec_axpy(residual, -c, self._rows[p])
                if self.track:
                    vec_axpy(combo, c, self._combos[p])
        return residual, combo

    def add(self, vec: SparseVec, label: Optional[int] = None) -> bool:
        """Insert vec; return True when it enlarged the span."""
        if any(not 0 <= k < self.dim for k in vec):
            raise DimensionMismatchError(f"vector index outside dimension {self.dim}")
        residual, combo = self.reduce(vec)
        if not residual:
            return False
        combo = {k: -v for k, v in combo.items()}
        if self.track:
            if label is None:
                raise ValueError("tracked echelon bases need a label for each generator")
            vec_axpy(combo, 1, {label: Fraction(1)})
        p = min(residual)
        inv = 1 / residual[p]
        row = vec_scale(residual, inv)
        combo = vec_scale(combo, inv)
        for q, other in self._rows.items():
            c = other.get(p)
            if c:
                vec_axpy(other, -c, row)
                if self.track:
                    vec_axpy(self._combos[q], -c, combo)
        self._rows[p] = row
        if self.track:
            self._combos[p] = combo
        return True

    def contains(self, vec: SparseVec) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def express(self, vec: SparseVec) -> Optional[SparseVec]:
        """Coefficients over the generator labels, or ``None`` if vec is outside the span."""
        if not self.track:
            raise ValueError("express needs a tracked echelon basis")
        residual, combo = self.reduce(vec)
        return None if residual else combo

    def normal_form(self, vec: SparseVec) -> SparseVec:
        return self.reduce(vec)[0]

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis(self.dim, track=self.track)
        other._rows = {p: dict(r) for p, r in self._rows.items()}
        other._combos = {p: dict(c) for p, c in self._combos.items()}
        return other


def span_rank(vectors: Iterable[SparseVec], dim: int) -> int:
    basis = EchelonBasis(dim)
    for v in vectors:
        basis.add(v)
    return len(basis)


def column_space(matrix: Matrix) -> EchelonBasis:
    basis = EchelonBasis(matrix.rows)
    for column in matrix.sparse_columns:
        basis.add(column)
    return basis


__all__ = [
    "EchelonBasis",
    "DENSE_ELIMINATION_LIMIT",
    "LinearForm",
    "Matrix",
    "SparseVec",
    "bareiss",
    "basis_vector",
    "block_matrix",
    "column_space",
    "coset_solve",
    "determinant",
    "format_fraction",
    "hstack",
    "kernel_basis",
    "kernel_basis_sparse",
    "nullity",
    "quotient_dim",
    "rank",
    "rref",
    "span_rank",
    "to_dense",
    "to_fraction",
    "to_sparse",
    "vec_add",
    "vec_axpy",
    "vec_scale",
    "vec_sub",
    "vstack",
]
