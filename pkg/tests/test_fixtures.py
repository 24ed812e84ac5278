from __future__ import annotations

import json

import pytest

from diassocle import FIXTURES_DIR
from diassocle.deformations import scale_jet
from diassocle.errors import FixtureError
from diassocle.exact_linalg import Matrix
from diassocle.fixtures import (
    FIXTURE_KINDS,
    canonical_json,
    dumps_fixture,
    fixture_catalog,
    load_fixture,
    loads_fixture,
    to_document,
    write_fixture,
)

KX2_DOC = {
    "kind": "ravg",
    "name": "dual numbers",
    "field": "rationals",
    "spaces": {"A": {"dim": 2}, "M": {"dim": 2}},
    "structures": {
        "mu": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        "left": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
        "right": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    },
    "operators": {"P": [[1, 0], [0, 1]]},
}


def with_changes(**changes) -> str:
    doc = json.loads(json.dumps(KX2_DOC))
    doc.update(changes)
    return json.dumps(doc)


def test_catalog_lists_valid_fixtures() -> None:
    catalog = fixture_catalog()
    assert list(catalog.columns) == ["file", "kind", "name", "valid", "checks"]
    assert len(catalog) == len(list(FIXTURES_DIR.glob("*.json")))
    assert catalog["valid"].all()
    assert set(catalog["kind"]) <= set(FIXTURE_KINDS)


def test_bare_name_resolves_to_shipping_directory() -> None:
    fixture = load_fixture("kx2_adjoint.json")
    assert fixture.kind == "ravg"
    assert fixture.source == "kx2_adjoint.json"
    assert fixture.value.P == Matrix.identity(2)


def test_invalid_operator_loads_with_report() -> None:
    fixture = loads_fixture(with_changes(operators={"P": [[1, 0], [1, 0]]}))
    assert not fixture.valid
    first = fixture.report.violations[0]
    assert first.inputs == ("u0", "v0")
    assert first.lhs == ["1", "2"]
    assert first.rhs == ["1", "1"]


def test_malformed_json_names_line() -> None:
    with pytest.raises(FixtureError) as excinfo:
        loads_fixture('{\n  "kind": "ravg",\n  "name": \n}', source="broken.json")
    assert excinfo.value.line == 4
    assert "broken.json" in str(excinfo.value)


@pytest.mark.parametrize(
    "text, path",
    [
        (with_changes(operators={"P": [[1, 0]]}), "$.operators.P"),
        (with_changes(operators={"P": [[1, 0], [0, "x"]]}), "$.operators.P[1][1]"),
        (with_changes(field="reals"), "$.field"),
        (with_changes(kind="lie"), "$.kind"),
        (json.dumps({"kind": "ravg"}), "$"),
    ],
)
def test_structural_errors_carry_path(text, path) -> None:
    with pytest.raises(FixtureError) as excinfo:
        loads_fixture(text)
    assert excinfo.value.path == path


def test_cocycle_resolves_relative_base(tmp_path) -> None:
    (tmp_path / "base.json").write_text(json.dumps(KX2_DOC), encoding="utf-8")
    cocycle = {
        "kind": "cocycle",
        "base": "base.json",
        "degree": 2,
        "components": {"gamma": [{"inputs": ["u0"], "value": [1, 0]}, {"inputs": ["u1"], "value": [0, 1]}]},
    }
    path = tmp_path / "cocycle.json"
    path.write_text(json.dumps(cocycle), encoding="utf-8")
    fixture = load_fixture(path)
    assert fixture.valid
    assert fixture.extras["base"].A.dim == 2
    assert fixture.value.nonzero_components() == ["gamma"]


def test_open_cochain_reported(tmp_path) -> None:
    doc = {
        "kind": "cocycle",
        "base": KX2_DOC,
        "degree": 2,
        "components": {"f": [{"inputs": ["a1", "a1"], "value": [1, 0]}]},
    }
    fixture = loads_fixture(json.dumps(doc), directory=tmp_path)
    assert not fixture.valid
    assert fixture.report.violations[0].identity.startswith("δ_rAvg c = 0")


def test_module_label_outside_source(tmp_path) -> None:
    doc = {
        "kind": "cocycle",
        "base": KX2_DOC,
        "degree": 1,
        "components": {"g": [{"inputs": ["u5"], "value": [1, 0]}]},
    }
    with pytest.raises(FixtureError) as excinfo:
        loads_fixture(json.dumps(doc), directory=tmp_path)
    assert excinfo.value.path == "$.components.g[0].inputs[0]"


def test_canonical_json_is_deterministic() -> None:
    first = canonical_json({"b": 1, "a": [1, 2]})
    assert first == canonical_json({"a": [1, 2], "b": 1})
    assert first.endswith("\n")
    assert first.index('"a"') < first.index('"b"')


def test_written_fixture_reloads(tmp_path, kx2) -> None:
    path = write_fixture(tmp_path / "kx2.json", "ravg", kx2, name="kx2")
    fixture = load_fixture(path)
    assert fixture.valid
    assert fixture.value.P == kx2.P
    assert path.read_text(encoding="utf-8") == dumps_fixture("ravg", kx2, name="kx2")


def test_jet_document_needs_base(kx2) -> None:
    with pytest.raises(FixtureError):
        to_document("jet", scale_jet(kx2, 1), name="scale")
    doc = to_document("jet", scale_jet(kx2, 1), name="scale", base=KX2_DOC)
    fixture = loads_fixture(canonical_json(doc))
    assert fixture.valid
    assert fixture.value.operators[1] == kx2.P
