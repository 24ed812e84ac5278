from __future__ import annotations

import itertools

import pytest

from conftest import RAVG_FIXTURES
from diassocle.cohomology import RAvgCochain, assemble_complex, betti, ravg_coboundary, require_cocycle
from diassocle.constructions import adjoint_bimodule
from diassocle.deformations import (
    DeformationJet,
    EquivalenceJet,
    apply_equivalence,
    bijection_check,
    cocycle_to_deformation,
    deformation_to_cocycle,
    equivalence_check,
    equivalence_from_coboundary,
    is_trivial_deformation,
    scale_jet,
    verify_deformation,
)
from diassocle.errors import ArityError, DimensionMismatchError, InvalidStructureError
from diassocle.exact_linalg import Matrix
from diassocle.fixtures import load_fixture
from diassocle.samples import random_ravg_cochain


def test_trivial_jet_is_a_deformation(kx2) -> None:
    J = DeformationJet.trivial(kx2, 2)
    assert J.is_trivial()
    assert verify_deformation(J).valid


@pytest.mark.parametrize("order", [1, 2, 3])
def test_scale_jet_is_a_deformation(order, kx2) -> None:
    J = scale_jet(kx2, order)
    assert not J.is_trivial()
    assert verify_deformation(J).valid


def test_scale_jet_fixture_matches(kx2) -> None:
    J = load_fixture("kx2_scale_jet.json").value
    assert J.order == 1
    assert J.operators[1] == scale_jet(kx2, 1).operators[1]


def test_broken_operator_term_reported(kx2) -> None:
    J = DeformationJet.from_terms(kx2, order=1, operators=[Matrix.from_rows([[0, 1], [0, 0]], 2)])
    report = verify_deformation(J)
    assert not report.valid
    assert report.violations[0].identity.endswith("at order 1")
    with pytest.raises(InvalidStructureError):
        deformation_to_cocycle(J)


def test_constant_terms_must_match_base(kx2) -> None:
    J = DeformationJet.trivial(kx2, 1)
    with pytest.raises(InvalidStructureError):
        DeformationJet(1, kx2, J.mus, J.lefts, J.rights, [Matrix.zeros(2, 2), Matrix.zeros(2, 2)])


def test_jet_shape_errors(kx2) -> None:
    J = DeformationJet.trivial(kx2, 1)
    with pytest.raises(DimensionMismatchError):
        DeformationJet(2, kx2, J.mus, J.lefts, J.rights, J.operators)
    with pytest.raises(ArityError):
        J.truncate(3)


def test_scale_cocycle_lives_in_gamma(kx2) -> None:
    c = deformation_to_cocycle(scale_jet(kx2, 1))
    assert c.nonzero_components() == ["gamma"]
    require_cocycle(c, kx2)


def test_cocycle_round_trip(kx2) -> None:
    c = deformation_to_cocycle(scale_jet(kx2, 2))
    J = cocycle_to_deformation(c, kx2)
    assert J.order == 1
    assert J.operators[1] == kx2.P
    assert deformation_to_cocycle(J).gamma.table == c.gamma.table


def test_order_zero_has_no_cocycle(kx2) -> None:
    with pytest.raises(ArityError):
        deformation_to_cocycle(DeformationJet.trivial(kx2, 0))


def test_scale_jet_is_trivial(kx2) -> None:
    assert is_trivial_deformation(scale_jet(kx2, 1))
    assert is_trivial_deformation(DeformationJet.trivial(kx2, 1))


def test_equivalence_fixture_trivialises_scale_jet(kx2) -> None:
    E = load_fixture("kx2_scale_equivalence.json").value
    J = scale_jet(kx2, 1)
    moved = apply_equivalence(J, E)
    assert moved.is_trivial()
    assert equivalence_check(J, moved, E).valid


def test_equivalence_found_from_coboundary(kx2) -> None:
    J = scale_jet(kx2, 1)
    trivial = DeformationJet.trivial(kx2, 1)
    E = equivalence_from_coboundary(deformation_to_cocycle(J), deformation_to_cocycle(trivial, check=False), kx2)
    assert E is not None
    assert equivalence_check(J, trivial, E).valid


def test_wrong_equivalence_rejected(kx2) -> None:
    J = scale_jet(kx2, 1)
    wrong = EquivalenceJet.identity(kx2, 1)
    assert not equivalence_check(J, DeformationJet.trivial(kx2, 1), wrong).valid


def test_equivalence_must_start_at_identity() -> None:
    with pytest.raises(InvalidStructureError):
        EquivalenceJet(0, [Matrix.zeros(2, 2)], [Matrix.identity(2)])


@pytest.mark.parametrize("order", [2, 3])
def test_equivalence_preserves_deformations(order, kx2) -> None:
    E = EquivalenceJet.from_terms(kx2, order=order, psis=[Matrix.from_rows([[1, 0], [1, 1]], 2)])
    moved = apply_equivalence(scale_jet(kx2, order), E)
    assert verify_deformation(moved).valid


def test_bijection_sample(kx2) -> None:
    scale = deformation_to_cocycle(scale_jet(kx2, 1))
    zero = deformation_to_cocycle(DeformationJet.trivial(kx2, 1), check=False)
    E = load_fixture("kx2_scale_equivalence.json").value
    report = bijection_check(kx2, [scale, zero], [E])
    assert report.valid, report.notes
    assert report.samples == 2


def _second_classes(R, coeffs) -> list:
    spec = assemble_complex("ravg", R, 2, coeffs=coeffs)
    layout = spec.layouts[2]
    return [RAvgCochain(2, *layout.unflatten(rep)) for rep in betti(spec, 2).representatives]


@pytest.mark.parametrize("name", RAVG_FIXTURES)
@pytest.mark.parametrize("explicit", [False, True], ids=["default", "adjoint"])
def test_bijection_on_every_second_class(name, explicit, request, rng) -> None:
    R = request.getfixturevalue(name)
    classes = _second_classes(R, adjoint_bimodule(R) if explicit else None)
    shifted = [c.add(ravg_coboundary(random_ravg_cochain(R, 1, rng), R)) for c in classes]
    report = bijection_check(R, classes + shifted, [])
    assert report.valid, report.notes
    assert report.samples == 2 * len(classes)
    for c, c2 in zip(classes, shifted):
        assert equivalence_from_coboundary(c, c2, R) is not None
    for c, c2 in itertools.combinations(classes, 2):
        assert equivalence_from_coboundary(c, c2, R) is None
