from __future__ import annotations

from fractions import Fraction

import pytest

from diassocle.cochain_engine import Cochain, CochainLayout
from diassocle.cohomology import RAvgCochain, assemble_complex, betti, ravg_coboundary, ravg_spaces, zero_ravg_cochain
from diassocle.constructions import adjoint_bimodule
from diassocle.errors import InvalidStructureError, NotACocycleError
from diassocle.exact_linalg import Matrix
from diassocle.extensions import (
    AbelianExtension,
    Section,
    any_section,
    canonical_section,
    cocycle_to_extension,
    extension_to_cocycle,
    induced_bimodule,
    isomorphism_between,
    same_bimodule,
    section_difference,
    split_extension,
    verify_extension,
    verify_extension_isomorphism,
    verify_section,
)
from diassocle.fixtures import load_fixture

from conftest import RAVG_FIXTURES


def flat(c: RAvgCochain, R, coeffs) -> dict:
    return CochainLayout(ravg_spaces(R, c.n, coeffs)).flatten(c.components())


@pytest.fixture
def scale_cocycle(kx2) -> RAvgCochain:
    fixture = load_fixture("kx2_cocycle.json")
    assert fixture.valid
    return fixture.value


def test_cocycle_builds_an_extension(kx2, scale_cocycle) -> None:
    coeffs = adjoint_bimodule(kx2)
    E = cocycle_to_extension(scale_cocycle, kx2, coeffs)
    assert (E.total.A.dim, E.total.M.dim) == (4, 4)
    assert E.kernel_dims == (2, 2)
    assert verify_extension(E).valid


def test_extension_round_trip(kx2, scale_cocycle) -> None:
    coeffs = adjoint_bimodule(kx2)
    E = cocycle_to_extension(scale_cocycle, kx2, coeffs)
    sec = canonical_section(E)
    assert same_bimodule(induced_bimodule(E, sec), coeffs)
    back = extension_to_cocycle(E, sec)
    assert flat(back, kx2, coeffs) == flat(scale_cocycle, kx2, coeffs)


def test_other_section_changes_cocycle_by_coboundary(kx2, scale_cocycle, rng) -> None:
    coeffs = adjoint_bimodule(kx2)
    E = cocycle_to_extension(scale_cocycle, kx2, coeffs)
    sec = canonical_section(E)
    other = any_section(E, rng)
    assert verify_section(E, other).valid
    assert same_bimodule(induced_bimodule(E, other), coeffs)
    difference = extension_to_cocycle(E, sec).sub(extension_to_cocycle(E, other))
    boundary = ravg_coboundary(section_difference(E, sec, other), kx2, coeffs)
    assert flat(difference, kx2, coeffs) == flat(boundary, kx2, coeffs)


def test_isomorphism_between_sections(kx2, scale_cocycle, rng) -> None:
    E = cocycle_to_extension(scale_cocycle, kx2, adjoint_bimodule(kx2))
    found = isomorphism_between(E, E, canonical_section(E), any_section(E, rng))
    assert found is not None
    phi, psi = found
    assert verify_extension_isomorphism(E, E, phi, psi).valid


def test_split_extension_has_zero_class(kx2) -> None:
    coeffs = adjoint_bimodule(kx2)
    E = split_extension(kx2, coeffs)
    assert verify_extension(E).valid
    assert extension_to_cocycle(E, canonical_section(E)).is_zero()


def test_scale_extension_isomorphic_to_split(kx2, scale_cocycle) -> None:
    coeffs = adjoint_bimodule(kx2)
    E = split_extension(kx2, coeffs)
    E2 = cocycle_to_extension(scale_cocycle, kx2, coeffs)
    found = isomorphism_between(E, E2)
    assert found is not None
    assert verify_extension_isomorphism(E, E2, *found).valid


def test_non_cocycle_rejected(kx2) -> None:
    zero = zero_ravg_cochain(kx2, 2)
    alpha = Cochain(2, 2, 2, {(0, (1, 1)): {0: Fraction(1)}}, False)
    with pytest.raises(NotACocycleError):
        cocycle_to_extension(RAvgCochain(2, alpha, zero.g, zero.gamma), kx2, adjoint_bimodule(kx2))


def test_bad_section_rejected(kx2, scale_cocycle) -> None:
    E = cocycle_to_extension(scale_cocycle, kx2, adjoint_bimodule(kx2))
    bad = Section(Matrix.zeros(4, 2), Matrix.zeros(4, 2))
    assert not verify_section(E, bad).valid
    with pytest.raises(InvalidStructureError):
        induced_bimodule(E, bad)


def test_wrong_projection_detected(kx2) -> None:
    E = split_extension(kx2, adjoint_bimodule(kx2))
    broken = AbelianExtension(E.total, E.base, E.i, Matrix.zeros(2, 4), E.i_bar, E.p_bar, E.kernel_operator)
    report = verify_extension(broken)
    assert not report.valid


@pytest.mark.parametrize("name", RAVG_FIXTURES)
@pytest.mark.parametrize("explicit", [False, True], ids=["default", "adjoint"])
def test_every_second_class_survives_the_extension_round_trip(name, explicit, request) -> None:
    R = request.getfixturevalue(name)
    coeffs = adjoint_bimodule(R)
    spec = assemble_complex("ravg", R, 2, coeffs=coeffs if explicit else None)
    split = split_extension(R, coeffs)
    for rep in betti(spec, 2).representatives:
        c = RAvgCochain(2, *spec.layouts[2].unflatten(rep))
        E = cocycle_to_extension(c, R, coeffs)
        assert verify_extension(E).valid
        sec = canonical_section(E)
        assert same_bimodule(induced_bimodule(E, sec), coeffs)
        assert flat(extension_to_cocycle(E, sec), R, coeffs) == flat(c, R, coeffs)
        assert isomorphism_between(split, E) is None
