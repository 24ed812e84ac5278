"""JSON fixture files: exact structures written with fraction strings, loaded with eager verification.

A fixture is a UTF-8 JSON object with a declared ``kind``. Structure tables are nested
lists where ``table[i][j]`` holds the coordinates of the image of (eᵢ, eⱼ); operators are
row lists. Multilinear cochains are lists of entries ``{"tree", "inputs", "value"}`` whose
inputs are labels such as ``"a0"`` (algebra basis) or ``"u1"`` (module basis). A section
that needs another structure names it with a path relative to the file or embeds it.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from . import FIXTURES_DIR
from .algebra_core import (
    AlgebraData,
    BilinearMap,
    BimoduleData,
    DiassData,
    DiassRepData,
    RAvgAlgebra,
    RAvgBimodule,
    VerificationReport,
    adjoint_representation,
    verify_algebra,
    verify_associative_bimodule,
    verify_diass,
    verify_diass_rep,
    verify_ravg_bimodule,
    verify_relative_averaging,
)
from .cochain_engine import Cochain
from .cohomology import RAvgCochain, ravg_coboundary, ravg_spaces
from .deformations import DeformationJet, EquivalenceJet, verify_deformation
from .errors import ArityError, DimensionMismatchError, FixtureError, GradingError, InvalidStructureError
from .exact_linalg import Matrix, format_fraction, to_fraction
from .extensions import AbelianExtension, Section, verify_extension, verify_section
from .homotopy import (
    AINF,
    AINF_REP,
    GradedOps,
    GradedSpace,
    MCElement,
    self_representation,
    strict_homotopy_check,
    verify_ainf,
    verify_ainf_rep,
)
from .trees import canonical_index, decode, encode, tree_at, tree_count

LOGGER = logging.getLogger(__name__)

FIELD = "rationals"
FIXTURE_KINDS = (
    "algebra",
    "bimodule",
    "diass",
    "ravg",
    "ravg-bimodule",
    "jet",
    "cocycle",
    "equivalence",
    "extension",
    "section",
    "graded-ops",
)

_LABEL = re.compile(r"^([aue])(\d+)$")
_NEEDS_BASE = ("cocycle", "jet", "equivalence", "section")

Reference = Union[str, Mapping[str, Any]]


@dataclass
class GradedFixture:
    """A truncated A∞ algebra, a representation of it and an optional strict operator P: M → A."""

    algebra: GradedOps
    rep: GradedOps
    operator: Optional[MCElement] = None


@dataclass
class Fixture:
    kind: str
    name: str
    value: Any
    report: VerificationReport
    source: Optional[str] = None
    extras: Dict[str, Any] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.report.valid

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "name": self.name, "source": self.source, "report": self.report.to_dict()}


# ---------------------------------------------------------------------------
# low-level readers


def _get(doc: Mapping[str, Any], key: str, where: str) -> Any:
    if not isinstance(doc, Mapping):
        raise FixtureError("expected an object", path=where)
    if key not in doc:
        raise FixtureError(f"missing {key!r}", path=where)
    return doc[key]


def _int(value: Any, where: str, *, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise FixtureError(f"expected an integer ≥ {minimum}, got {value!r}", path=where)
    return value


def _list(value: Any, where: str, length: Optional[int] = None) -> List[Any]:
    if not isinstance(value, list):
        raise FixtureError(f"expected a list, got {type(value).__name__}", path=where)
    if length is not None and len(value) != length:
        raise FixtureError(f"expected {length} items, got {len(value)}", path=where)
    return value


def _vector(raw: Any, dim: int, where: str) -> List[Any]:
    return [to_fraction(v, path=f"{where}[{k}]") for k, v in enumerate(_list(raw, where, dim))]


def _matrix(raw: Any, rows: int, cols: int, where: str) -> Matrix:
    data = [_vector(row, cols, f"{where}[{i}]") for i, row in enumerate(_list(raw, where, rows))]
    return Matrix.from_rows(data, cols)


def _bilinear(raw: Any, left: int, right: int, out: int, where: str) -> BilinearMap:
    data = [
        [_vector(value, out, f"{where}[{i}][{j}]") for j, value in enumerate(_list(row, f"{where}[{i}]", right))]
        for i, row in enumerate(_list(raw, where, left))
    ]
    return BilinearMap.from_lists(left, right, out, data)


def _space(doc: Mapping[str, Any], name: str, where: str) -> GradedSpace:
    spec = _get(_get(doc, "spaces", where), name, f"{where}.spaces")
    here = f"{where}.spaces.{name}"
    if "degrees" in spec:
        degrees = _list(spec["degrees"], f"{here}.degrees")
        if any(isinstance(d, bool) or not isinstance(d, int) for d in degrees):
            raise FixtureError("degrees must be integers", path=f"{here}.degrees")
        if "dim" in spec and _int(spec["dim"], f"{here}.dim") != len(degrees):
            raise FixtureError(f"dim {spec['dim']} disagrees with {len(degrees)} degrees", path=here)
        return GradedSpace(tuple(degrees))
    return GradedSpace.concentrated(_int(_get(spec, "dim", here), f"{here}.dim"))


def _dim(doc: Mapping[str, Any], name: str, where: str) -> int:
    return _space(doc, name, where).dim


def _index(label: Any, where: str, *, module_offset: int, source_dim: int) -> int:
    if isinstance(label, int) and not isinstance(label, bool):
        index = label
    elif isinstance(label, str) and _LABEL.match(label):
        prefix, number = _LABEL.match(label).groups()  # type: ignore[union-attr]
        index = int(number) + (module_offset if prefix == "u" else 0)
    else:
        raise FixtureError(f"malformed input label {label!r}", path=where)
    if not 0 <= index < source_dim:
        raise FixtureError(f"input {label!r} is outside a source of dimension {source_dim}", path=where)
    return index


def _tree(raw: Any, arity: int, where: str) -> int:
    if isinstance(raw, int) and not isinstance(raw, bool):
        if not 0 <= raw < tree_count(arity):
            raise FixtureError(f"tree index {raw} out of range for arity {arity}", path=where)
        return raw
    if isinstance(raw, str):
        try:
            tree = decode(raw)
        except ValueError as exc:
            raise FixtureError(str(exc), path=where) from exc
        if tree.leaves != arity + 1:
            raise FixtureError(f"tree {raw!r} has {tree.leaves} leaves, expected {arity + 1}", path=where)
        return canonical_index(tree)
    raise FixtureError(f"expected a tree string or index, got {raw!r}", path=where)


def _cochain(
    raw: Any,
    arity: int,
    source_dim: int,
    target_dim: int,
    where: str,
    *,
    tree_indexed: bool,
    module_offset: int = 0,
) -> Cochain:
    table: Dict[Tuple[int, Tuple[int, ...]], Dict[int, Any]] = {}
    for n, entry in enumerate(_list(raw, where)):
        here = f"{where}[{n}]"
        inputs = _list(_get(entry, "inputs", here), f"{here}.inputs", arity)
        idx = tuple(
            _index(label, f"{here}.inputs[{k}]", module_offset=module_offset, source_dim=source_dim)
            for k, label in enumerate(inputs)
        )
        tree = _tree(entry["tree"], arity, f"{here}.tree") if tree_indexed and "tree" in entry else 0
        if tree_indexed and "tree" not in entry and tree_count(arity) > 1:
            raise FixtureError(f"arity {arity} entries need a tree", path=here)
        key = (tree, idx)
        if key in table:
            raise FixtureError(f"duplicate entry for inputs {inputs}", path=here)
        vec = {c: v for c, v in enumerate(_vector(_get(entry, "value", here), target_dim, f"{here}.value")) if v}
        if vec:
            table[key] = vec
    return Cochain(arity, source_dim, target_dim, table, tree_indexed)


# ---------------------------------------------------------------------------
# kinds


@dataclass
class _Context:
    """Where a document came from, for resolving relative references and naming errors."""

    directory: Path
    source: Optional[str]
    loaded: Dict[Path, "Fixture"] = field(default_factory=dict)


def _reference(ref: Reference, expected: Sequence[str], where: str, ctx: _Context) -> Fixture:
    if isinstance(ref, str):
        path = (ctx.directory / ref).resolve()
        if path not in ctx.loaded:
            ctx.loaded[path] = load_fixture(path)
        fixture = ctx.loaded[path]
    elif isinstance(ref, Mapping):
        fixture = _parse(ref, ctx, where)
    else:
        raise FixtureError("expected a relative path or an embedded fixture", path=where)
    if fixture.kind not in expected:
        raise FixtureError(f"references a {fixture.kind} fixture, expected {' or '.join(expected)}", path=where)
    return fixture


def _algebra(doc: Mapping[str, Any], where: str, name: str = "A") -> AlgebraData:
    da = _dim(doc, name, where)
    mu = _bilinear(_get(_get(doc, "structures", where), "mu", f"{where}.structures"), da, da, da, f"{where}.structures.mu")
    return AlgebraData(da, mu)


def _bimodule(doc: Mapping[str, Any], A: AlgebraData, where: str, *, name: str = "M", prefix: str = "") -> BimoduleData:
    dm = _dim(doc, name, where)
    structures = _get(doc, "structures", where)
    here = f"{where}.structures"
    left = _bilinear(_get(structures, f"{prefix}left", here), A.dim, dm, dm, f"{here}.{prefix}left")
    right = _bilinear(_get(structures, f"{prefix}right", here), dm, A.dim, dm, f"{here}.{prefix}right")
    return BimoduleData(A, dm, left, right)


def _load_algebra(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    A = _algebra(doc, where)
    return A, verify_algebra(A), {}


def _load_bimodule(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    A = _algebra(doc, where)
    M = _bimodule(doc, A, where)
    return M, verify_associative_bimodule(A, M), {}


def _load_diass(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    dd = _dim(doc, "D", where)
    structures = _get(doc, "structures", where)
    here = f"{where}.structures"
    D = DiassData(
        dd,
        _bilinear(_get(structures, "dashv", here), dd, dd, dd, f"{here}.dashv"),
        _bilinear(_get(structures, "vdash", here), dd, dd, dd, f"{here}.vdash"),
    )
    report = verify_diass(D)
    if "left_dashv" in structures:
        dm = _dim(doc, "M", where)
        rep = DiassRepData(
            D,
            dm,
            _bilinear(_get(structures, "left_dashv", here), dd, dm, dm, f"{here}.left_dashv"),
            _bilinear(_get(structures, "left_vdash", here), dd, dm, dm, f"{here}.left_vdash"),
            _bilinear(_get(structures, "right_dashv", here), dm, dd, dm, f"{here}.right_dashv"),
            _bilinear(_get(structures, "right_vdash", here), dm, dd, dm, f"{here}.right_vdash"),
        )
        report.merge(verify_diass_rep(rep))
    else:
        rep = adjoint_representation(D)
    return D, report, {"rep": rep}


def _ravg(doc: Mapping[str, Any], where: str) -> RAvgAlgebra:
    A = _algebra(doc, where)
    M = _bimodule(doc, A, where)
    operators = _get(doc, "operators", where)
    P = _matrix(_get(operators, "P", f"{where}.operators"), A.dim, M.dim, f"{where}.operators.P")
    return RAvgAlgebra(A, M, P)


def _load_ravg(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    R = _ravg(doc, where)
    return R, verify_relative_averaging(R), {}


def _load_ravg_bimodule(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    R = _reference(_get(doc, "base", where), ("ravg",), f"{where}.base", ctx).value
    B = _bimodule(doc, R.A, where, name="B", prefix="B_")
    N = _bimodule(doc, R.A, where, name="N", prefix="N_")
    structures = _get(doc, "structures", where)
    here = f"{where}.structures"
    l = _bilinear(_get(structures, "l", here), R.M.dim, B.dim, N.dim, f"{here}.l")
    r = _bilinear(_get(structures, "r", here), B.dim, R.M.dim, N.dim, f"{here}.r")
    Q = _matrix(_get(_get(doc, "operators", where), "Q", f"{where}.operators"), B.dim, N.dim, f"{where}.operators.Q")
    coeffs = RAvgBimodule(R, B, N, Q, l, r)
    return coeffs, verify_ravg_bimodule(coeffs), {"base": R}


def _terms(doc: Mapping[str, Any], key: str, where: str) -> List[Any]:
    terms = doc.get("terms", {})
    return _list(terms.get(key, []), f"{where}.terms.{key}")


def _load_jet(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    R = _reference(_get(doc, "base", where), ("ravg",), f"{where}.base", ctx).value
    order = _int(_get(doc, "order", where), f"{where}.order", minimum=1)
    da, dm = R.A.dim, R.M.dim
    here = f"{where}.terms"
    jet = DeformationJet.from_terms(
        R,
        order=order,
        mus=[_bilinear(t, da, da, da, f"{here}.mu[{k}]") for k, t in enumerate(_terms(doc, "mu", where))],
        lefts=[_bilinear(t, da, dm, dm, f"{here}.left[{k}]") for k, t in enumerate(_terms(doc, "left", where))],
        rights=[_bilinear(t, dm, da, dm, f"{here}.right[{k}]") for k, t in enumerate(_terms(doc, "right", where))],
        operators=[_matrix(t, da, dm, f"{here}.P[{k}]") for k, t in enumerate(_terms(doc, "P", where))],
    )
    return jet, verify_deformation(jet), {"base": R}


def _load_equivalence(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    R = _reference(_get(doc, "base", where), ("ravg",), f"{where}.base", ctx).value
    order = _int(_get(doc, "order", where), f"{where}.order", minimum=1)
    da, dm = R.A.dim, R.M.dim
    equivalence = EquivalenceJet.from_terms(
        R,
        order=order,
        phis=[_matrix(t, da, da, f"{where}.terms.phi[{k}]") for k, t in enumerate(_terms(doc, "phi", where))],
        psis=[_matrix(t, dm, dm, f"{where}.terms.psi[{k}]") for k, t in enumerate(_terms(doc, "psi", where))],
    )
    report = VerificationReport(subject="formal equivalence")
    report.notes.append("an equivalence is checked against a pair of jets by the deform command")
    return equivalence, report, {"base": R}


def cocycle_report(c: RAvgCochain, R: RAvgAlgebra, coeffs: Optional[RAvgBimodule] = None) -> VerificationReport:
    """Every entry of δ_rAvg c recorded as a failed instance of the cocycle condition."""
    report = VerificationReport(subject=f"relative averaging {c.n}-cocycle")
    image = ravg_coboundary(c, R, coeffs)
    for name, component in zip(("f", "g", "gamma"), image.components()):
        if component.is_zero():
            report.checks += 1
            continue
        for (t, idx), vec in sorted(component.table.items()):
            tree = encode(tree_at(component.arity, t)) if component.tree_indexed else None
            report.record(f"δ_rAvg c = 0 in component {name}", [f"e{i}" for i in idx], vec, {}, component.target_dim, tree=tree)
    if not report.valid:
        LOGGER.warning("Cochain is not closed | degree=%s detail=%s", c.n, report.first_failure())
    return report


def _load_cocycle(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    R = _reference(_get(doc, "base", where), ("ravg",), f"{where}.base", ctx).value
    coeffs = None
    if "coeffs" in doc:
        coeffs = _reference(doc["coeffs"], ("ravg-bimodule",), f"{where}.coeffs", ctx).value
    n = _int(_get(doc, "degree", where), f"{where}.degree", minimum=1)
    spaces = ravg_spaces(R, n, coeffs)
    components = _get(doc, "components", where)
    here = f"{where}.components"
    da = R.A.dim
    f = _cochain(components.get("f", []), n, spaces[0].source_dim, spaces[0].target_dim, f"{here}.f", tree_indexed=False)
    g = _cochain(
        components.get("g", []), n, spaces[1].source_dim, spaces[1].target_dim, f"{here}.g",
        tree_indexed=False, module_offset=da,
    )
    for _, idx in g.table:
        if sum(1 for i in idx if i >= da) != 1:
            raise FixtureError(f"g entry {idx} does not have exactly one module input", path=f"{here}.g")
    gamma = None
    if n >= 2:
        gamma = _cochain(components.get("gamma", []), n - 1, spaces[2].source_dim, spaces[2].target_dim, f"{here}.gamma", tree_indexed=True)
    elif components.get("gamma"):
        raise FixtureError("a 1-cochain has no gamma component", path=f"{here}.gamma")
    c = RAvgCochain(n, f, g, gamma)
    return c, cocycle_report(c, R, coeffs), {"base": R, "coeffs": coeffs}


def _load_extension(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    R = _reference(_get(doc, "base", where), ("ravg",), f"{where}.base", ctx).value
    total = _reference(_get(doc, "total", where), ("ravg",), f"{where}.total", ctx).value
    db, dn = _dim(doc, "B", where), _dim(doc, "N", where)
    operators = _get(doc, "operators", where)
    here = f"{where}.operators"
    ta, tm = total.A.dim, total.M.dim
    E = AbelianExtension(
        total=total,
        base=R,
        i=_matrix(_get(operators, "i", here), ta, db, f"{here}.i"),
        p=_matrix(_get(operators, "p", here), R.A.dim, ta, f"{here}.p"),
        i_bar=_matrix(_get(operators, "i_bar", here), tm, dn, f"{here}.i_bar"),
        p_bar=_matrix(_get(operators, "p_bar", here), R.M.dim, tm, f"{here}.p_bar"),
        kernel_operator=_matrix(_get(operators, "Q", here), db, dn, f"{here}.Q"),
    )
    return E, verify_extension(E), {"base": R}


def _load_section(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    E = _reference(_get(doc, "extension", where), ("extension",), f"{where}.extension", ctx).value
    operators = _get(doc, "operators", where)
    here = f"{where}.operators"
    sec = Section(
        s=_matrix(_get(operators, "s", here), E.total.A.dim, E.base.A.dim, f"{here}.s"),
        s_bar=_matrix(_get(operators, "s_bar", here), E.total.M.dim, E.base.M.dim, f"{here}.s_bar"),
    )
    return sec, verify_section(E, sec), {"extension": E}


def _graded_ops(raw: Any, kind: str, space: GradedSpace, base: Optional[GradedSpace], max_arity: int, where: str) -> GradedOps:
    source = base.direct_sum(space) if base is not None else space
    offset = base.dim if base is not None else 0
    ops: Dict[int, Cochain] = {}
    if not isinstance(raw, Mapping):
        raise FixtureError("expected an object keyed by arity", path=where)
    for key, entries in sorted(raw.items()):
        if not str(key).isdigit():
            raise FixtureError(f"arity key {key!r} is not a positive integer", path=where)
        k = int(key)
        if not 1 <= k <= max_arity:
            raise FixtureError(f"arity {k} outside 1..{max_arity}", path=where)
        ops[k] = _cochain(entries, k, source.dim, space.dim, f"{where}.{key}", tree_indexed=False, module_offset=offset)
    return GradedOps(kind, space, ops, max_arity, base=base)


def _load_graded(doc: Mapping[str, Any], ctx: _Context, where: str) -> Tuple[Any, VerificationReport, Dict[str, Any]]:
    max_arity = _int(_get(doc, "max_arity", where), f"{where}.max_arity", minimum=1)
    space_a = _space(doc, "A", where)
    operations = _get(doc, "operations", where)
    here = f"{where}.operations"
    algebra = _graded_ops(_get(operations, "mu", here), AINF, space_a, None, max_arity, f"{here}.mu")
    if "eta" in operations:
        space_m = _space(doc, "M", where)
        rep = _graded_ops(operations["eta"], AINF_REP, space_m, space_a, max_arity, f"{here}.eta")
    else:
        rep = self_representation(algebra)
    report = verify_ainf(algebra).merge(verify_ainf_rep(algebra, rep))
    operator = None
    if "operators" in doc:
        P = _matrix(_get(doc["operators"], "P", f"{where}.operators"), space_a.dim, rep.space.dim, f"{where}.operators.P")
        operator = MCElement.strict(rep.space, space_a, P)
        if report.valid:
            report.merge(strict_homotopy_check(algebra, rep, operator))
    return GradedFixture(algebra, rep, operator), report, {}


_LOADERS: Dict[str, Callable[[Mapping[str, Any], _Context, str], Tuple[Any, VerificationReport, Dict[str, Any]]]] = {
    "algebra": _load_algebra,
    "bimodule": _load_bimodule,
    "diass": _load_diass,
    "ravg": _load_ravg,
    "ravg-bimodule": _load_ravg_bimodule,
    "jet": _load_jet,
    "cocycle": _load_cocycle,
    "equivalence": _load_equivalence,
    "extension": _load_extension,
    "section": _load_section,
    "graded-ops": _load_graded,
}


def _parse(doc: Any, ctx: _Context, where: str = "$") -> Fixture:
    if not isinstance(doc, Mapping):
        raise FixtureError("a fixture is a JSON object", path=where)
    kind = _get(doc, "kind", where)
    if kind not in _LOADERS:
        raise FixtureError(f"unknown kind {kind!r}; expected one of {', '.join(FIXTURE_KINDS)}", path=f"{where}.kind")
    if doc.get("field", FIELD) != FIELD:
        raise FixtureError(f"only the field {FIELD!r} is supported", path=f"{where}.field")
    name = str(doc.get("name", ctx.source or kind))
    try:
        value, report, extras = _LOADERS[kind](doc, ctx, where)
    except (ArityError, DimensionMismatchError, GradingError, InvalidStructureError) as exc:
        raise FixtureError(str(exc), path=where) from exc
    return Fixture(kind=kind, name=name, value=value, report=report, source=ctx.source, extras=extras)


def loads_fixture(text: str, *, directory: Optional[Path] = None, source: Optional[str] = None) -> Fixture:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{source or 'fixture'}: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return _parse(doc, _Context(directory or Path.cwd(), source))


def load_fixture(path: Union[str, Path]) -> Fixture:
    """Parse, build and verify the fixture at ``path``; a bare name is looked up in the shipping directory."""
    path = Path(path)
    if not path.exists() and not path.is_absolute() and (FIXTURES_DIR / path).exists():
        path = FIXTURES_DIR / path
    text = path.read_text(encoding="utf-8")
    fixture = loads_fixture(text, directory=path.resolve().parent, source=path.name)
    LOGGER.info("Fixture loaded | source=%s kind=%s valid=%s checks=%s", path.name, fixture.kind, fixture.valid, fixture.report.checks)
    return fixture


# ---------------------------------------------------------------------------
# emitting


def _vector_strings(vec: Mapping[int, Any], dim: int) -> List[str]:
    return [format_fraction(vec.get(k, 0)) for k in range(dim)]


def _label(index: int, module_offset: Optional[int], prefix: str) -> str:
    if module_offset is None:
        return f"{prefix}{index}"
    return f"a{index}" if index < module_offset else f"u{index - module_offset}"


def cochain_entries(c: Cochain, *, module_offset: Optional[int] = None, prefix: str = "a") -> List[Dict[str, Any]]:
    entries = []
    for (t, idx), vec in sorted(c.table.items()):
        if not vec:
            continue
        entry: Dict[str, Any] = {
            "inputs": [_label(i, module_offset, prefix) for i in idx],
            "value": _vector_strings(vec, c.target_dim),
        }
        if c.tree_indexed and c.arity > 0:
            entry["tree"] = encode(tree_at(c.arity, t))
        entries.append(entry)
    return entries


def _ravg_document(R: RAvgAlgebra, name: str) -> Dict[str, Any]:
    return {
        "kind": "ravg",
        "name": name,
        "field": FIELD,
        "spaces": {"A": {"dim": R.A.dim}, "M": {"dim": R.M.dim}},
        "structures": {"mu": R.A.mu.to_strings(), "left": R.M.left.to_strings(), "right": R.M.right.to_strings()},
        "operators": {"P": R.P.to_strings()},
    }


def to_document(kind: str, value: Any, *, name: str, base: Optional[Reference] = None, coeffs: Optional[Reference] = None) -> Dict[str, Any]:
    """The JSON object of a structure; ``base`` is a path or document for kinds that reference one."""
    if kind in _NEEDS_BASE and base is None:
        raise FixtureError(f"a {kind} fixture needs a base reference")
    doc: Dict[str, Any] = {"kind": kind, "name": name, "field": FIELD}
    if kind == "algebra":
        doc.update(spaces={"A": {"dim": value.dim}}, structures={"mu": value.mu.to_strings()})
    elif kind == "bimodule":
        doc.update(
            spaces={"A": {"dim": value.base.dim}, "M": {"dim": value.dim}},
            structures={"mu": value.base.mu.to_strings(), "left": value.left.to_strings(), "right": value.right.to_strings()},
        )
    elif kind == "diass":
        doc.update(spaces={"D": {"dim": value.dim}}, structures={"dashv": value.dashv.to_strings(), "vdash": value.vdash.to_strings()})
    elif kind == "ravg":
        doc = _ravg_document(value, name)
    elif kind == "cocycle":
        c: RAvgCochain = value
        components = {"f": cochain_entries(c.f), "g": cochain_entries(c.g, module_offset=c.f.source_dim)}
        if c.gamma is not None:
            components["gamma"] = cochain_entries(c.gamma, prefix="u")
        doc.update(base=base, degree=c.n, components=components)
        if coeffs is not None:
            doc["coeffs"] = coeffs
    elif kind == "jet":
        J: DeformationJet = value
        doc.update(
            base=base,
            order=J.order,
            terms={
                "mu": [m.to_strings() for m in J.mus[1:]],
                "left": [m.to_strings() for m in J.lefts[1:]],
                "right": [m.to_strings() for m in J.rights[1:]],
                "P": [m.to_strings() for m in J.operators[1:]],
            },
        )
    elif kind == "equivalence":
        E: EquivalenceJet = value
        doc.update(base=base, order=E.order, terms={"phi": [m.to_strings() for m in E.phis[1:]], "psi": [m.to_strings() for m in E.psis[1:]]})
    elif kind == "extension":
        X: AbelianExtension = value
        db, dn = X.kernel_dims
        doc.update(
            base=base if base is not None else _ravg_document(X.base, f"{name} base"),
            total=_ravg_document(X.total, f"{name} total"),
            spaces={"B": {"dim": db}, "N": {"dim": dn}},
            operators={
                "i": X.i.to_strings(),
                "p": X.p.to_strings(),
                "i_bar": X.i_bar.to_strings(),
                "p_bar": X.p_bar.to_strings(),
                "Q": X.kernel_operator.to_strings(),
            },
        )
    elif kind == "section":
        S: Section = value
        doc.update(extension=base, operators={"s": S.s.to_strings(), "s_bar": S.s_bar.to_strings()})
    elif kind == "graded-ops":
        G: GradedFixture = value
        da = G.algebra.space.dim
        doc.update(
            max_arity=G.algebra.max_arity,
            spaces={"A": {"degrees": list(G.algebra.space.degrees)}, "M": {"degrees": list(G.rep.space.degrees)}},
            operations={
                "mu": {str(k): cochain_entries(op) for k, op in sorted(G.algebra.ops.items()) if not op.is_zero()},
                "eta": {str(k): cochain_entries(op, module_offset=da) for k, op in sorted(G.rep.ops.items()) if not op.is_zero()},
            },
        )
        if G.operator is not None:
            doc["operators"] = {"P": G.operator.linear_part().to_strings()}
    else:
        raise FixtureError(f"cannot emit kind {kind!r}")
    return doc


def _plain(value: Any) -> Any:
    """numpy scalars from DataFrame records as plain Python values."""
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def canonical_json(doc: Any) -> str:
    """UTF-8 JSON with sorted keys and a trailing newline; equal inputs give equal bytes."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, default=_plain) + "\n"


def dumps_fixture(kind: str, value: Any, *, name: str, base: Optional[Reference] = None, coeffs: Optional[Reference] = None) -> str:
    return canonical_json(to_document(kind, value, name=name, base=base, coeffs=coeffs))


def write_fixture(path: Union[str, Path], kind: str, value: Any, *, name: str, base: Optional[Reference] = None) -> Path:
    path = Path(path)
    path.write_text(dumps_fixture(kind, value, name=name, base=base), encoding="utf-8")
    LOGGER.info("Fixture written | path=%s kind=%s", path, kind)
    return path


def fixture_catalog(directory: Path = FIXTURES_DIR) -> pd.DataFrame:
    """Every shipping fixture with its kind, verification outcome and number of checked identities."""
    records = []
    for path in sorted(directory.glob("*.json")):
        fixture = load_fixture(path)
        records.append(
            {
                "file": path.name,
                "kind": fixture.kind,
                "name": fixture.name,
                "valid": fixture.valid,
                "checks": fixture.report.checks,
            }
        )
    return pd.DataFrame.from_records(records, columns=["file", "kind", "name", "valid", "checks"])


__all__ = [
    "FIELD",
    "FIXTURE_KINDS",
    "Fixture",
    "GradedFixture",
    "canonical_json",
    "cochain_entries",
    "cocycle_report",
    "dumps_fixture",
    "fixture_catalog",
    "load_fixture",
    "loads_fixture",
    "to_document",
    "write_fixture",
]
