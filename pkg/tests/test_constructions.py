from __future__ import annotations

import pytest

from diassocle.algebra_core import (
    AlgebraData,
    BilinearMap,
    BimoduleData,
    DiassData,
    RAvgAlgebra,
    verify_diass,
    verify_diass_rep,
    verify_morphism,
    verify_ravg_bimodule,
    verify_relative_averaging,
)
from diassocle.constructions import (
    adjoint_bimodule,
    bimodule_map_operator,
    diass_direct_sum,
    dual_bimodule,
    element_bimodule,
    free_ravg,
    graph_is_subalgebra,
    group_averaging,
    induced_diass,
    induced_rep_on_B,
    induced_rep_on_N,
    morphism_bimodule,
    nijenhuis_check,
    quotient_data,
    quotient_functor_morphism,
    quotient_ravg,
    semidirect,
    tensor_square_ravg,
    zero_bimodule,
)
from diassocle.errors import InvalidStructureError, TruncationError
from diassocle.exact_linalg import Matrix
from diassocle.extensions import same_bimodule
from diassocle.fixtures import load_fixture
from diassocle.samples import make_rng, operator_candidates

from conftest import RAVG_FIXTURES, adjoint_ravg, dual_numbers, functional_diass


def _scalars_on_plane() -> RAvgAlgebra:
    """ℚ acting on ℚ² by scalars, with P the functional φ(e0) = 1, φ(e1) = 0."""
    A = AlgebraData(1, BilinearMap.from_lists(1, 1, 1, [[[1]]]))
    left = BilinearMap.from_lists(1, 2, 2, [[[1, 0], [0, 1]]])
    right = BilinearMap.from_lists(2, 1, 2, [[[1, 0]], [[0, 1]]])
    return RAvgAlgebra(A, BimoduleData(A, 2, left, right), Matrix.from_rows([[1, 0]]))


def test_direct_sum_is_diassociative(kx2: RAvgAlgebra, a_plus_a_sum: RAvgAlgebra) -> None:
    for R in (kx2, a_plus_a_sum):
        assert verify_diass(diass_direct_sum(R.A, R.M)).valid


@pytest.mark.parametrize(
    "P, expected",
    [([[1, 0], [0, 1]], True), ([[2, 0], [0, 2]], True), ([[1, 0], [1, 0]], False)],
)
def test_graph_and_nijenhuis_agree_with_the_identities(P: list, expected: bool) -> None:
    R = adjoint_ravg(Matrix.from_rows(P))
    assert verify_relative_averaging(R).valid is expected
    assert graph_is_subalgebra(R) is expected
    assert nijenhuis_check(R) is expected


@pytest.mark.parametrize("name", RAVG_FIXTURES)
def test_graph_nijenhuis_and_identities_agree_on_random_operators(name: str, request: pytest.FixtureRequest) -> None:
    R = request.getfixturevalue(name)
    for P in operator_candidates(R, make_rng(3), 200):
        candidate = R.with_operator(P)
        expected = verify_relative_averaging(candidate).valid
        assert graph_is_subalgebra(candidate) is expected
        assert nijenhuis_check(candidate) is expected


def test_induced_diass_from_a_functional() -> None:
    D = induced_diass(_scalars_on_plane())
    expected = functional_diass()
    assert D.dashv == expected.dashv
    assert D.vdash == expected.vdash
    assert verify_diass(D).valid


def test_induced_diass_needs_a_valid_operator() -> None:
    with pytest.raises(InvalidStructureError):
        induced_diass(adjoint_ravg(Matrix.from_rows([[1, 0], [1, 0]])))


def test_quotient_of_the_functional_diass() -> None:
    quotient = quotient_data(functional_diass())
    assert len(quotient.ideal) == 1
    assert quotient.representatives == (0,)
    R = quotient.ravg
    assert R.A.dim == 1
    assert R.P == Matrix.from_rows([[1, 0]])
    assert verify_relative_averaging(R).valid


def test_quotient_of_an_induced_diass_is_valid(a_plus_a_sum: RAvgAlgebra) -> None:
    R = quotient_ravg(induced_diass(a_plus_a_sum))
    assert verify_relative_averaging(R).valid


def test_quotient_functor_on_the_identity() -> None:
    D = functional_diass()
    left, right, phi, psi = quotient_functor_morphism(D, D, Matrix.identity(2))
    assert phi == Matrix.identity(1)
    assert verify_morphism(left, right, phi, psi).valid


@pytest.mark.parametrize(
    "D",
    [functional_diass(), induced_diass(load_fixture("a_plus_a_sum.json").value)],
    ids=["functional", "induced"],
)
def test_quotient_then_induced_gives_back_the_products(D: DiassData) -> None:
    back = induced_diass(quotient_ravg(D))
    assert back.dim == D.dim
    assert back.dashv == D.dashv
    assert back.vdash == D.vdash


def test_adjoint_dual_and_zero_bimodules(kx2: RAvgAlgebra) -> None:
    adjoint = adjoint_bimodule(kx2)
    assert verify_ravg_bimodule(adjoint).valid
    assert verify_ravg_bimodule(dual_bimodule(adjoint)).valid
    assert verify_ravg_bimodule(zero_bimodule(kx2)).valid


@pytest.mark.parametrize("name", ["kx2", "a_plus_a_sum", "a_plus_a_projection"])
def test_double_dual_is_the_original_bimodule(name: str, request: pytest.FixtureRequest) -> None:
    B = adjoint_bimodule(request.getfixturevalue(name))
    dual = dual_bimodule(B)
    assert (dual.B.dim, dual.N.dim) == (B.N.dim, B.B.dim)
    assert same_bimodule(dual_bimodule(dual), B)


def test_semidirect_product_is_relative_averaging(kx2: RAvgAlgebra) -> None:
    R = semidirect(kx2, adjoint_bimodule(kx2))
    assert (R.A.dim, R.M.dim) == (4, 4)
    assert verify_relative_averaging(R).valid


def test_induced_representations(kx2: RAvgAlgebra) -> None:
    B = adjoint_bimodule(kx2)
    assert verify_diass_rep(induced_rep_on_N(kx2, B)).valid
    assert verify_diass_rep(induced_rep_on_B(kx2, B)).valid


def test_morphism_bimodule_of_the_identity(kx2: RAvgAlgebra) -> None:
    I = Matrix.identity(2)
    assert verify_ravg_bimodule(morphism_bimodule(kx2, kx2, I, I)).valid


def test_bimodule_maps_are_operators(a_plus_a_sum: RAvgAlgebra, rng) -> None:
    for _ in range(4):
        P = bimodule_map_operator(a_plus_a_sum.A, a_plus_a_sum.M, rng)
        assert verify_relative_averaging(a_plus_a_sum.with_operator(P)).valid


def test_tensor_square_and_group_averaging() -> None:
    assert verify_relative_averaging(tensor_square_ravg(dual_numbers())).valid
    _, result = group_averaging([[0, 1], [1, 0]])
    assert result.valid
    assert result.operator == Matrix.identity(2)
    assert verify_ravg_bimodule(element_bimodule(dual_numbers(), [1, 0, 0, 0])).valid


def test_group_table_without_identity_is_rejected() -> None:
    with pytest.raises(InvalidStructureError):
        group_averaging([[1, 0], [0, 0]])


def test_truncated_free_object_and_its_extension(kx2: RAvgAlgebra) -> None:
    free = free_ravg(Matrix.identity(1), 2)
    assert len(free.words) == 3
    assert len(free.module_words) == 3
    assert verify_relative_averaging(free.algebra).valid
    x = Matrix.from_rows([[0], [1]])
    phi, psi = free.extend(x, x, kx2)
    report = verify_morphism(free.algebra, kx2, phi, psi, degree_filter=free.within_bound)
    assert report.valid
    inc_phi, inc_psi = free.inclusions()
    assert phi.matmul(inc_phi) == x
    assert psi.matmul(inc_psi) == x


def test_free_object_rejects_bad_input(kx2: RAvgAlgebra) -> None:
    with pytest.raises(TruncationError):
        free_ravg(Matrix.identity(1), 0)
    free = free_ravg(Matrix.identity(1), 2)
    with pytest.raises(InvalidStructureError):
        free.extend(Matrix.from_rows([[0], [1]]), Matrix.from_rows([[1], [0]]), kx2)
