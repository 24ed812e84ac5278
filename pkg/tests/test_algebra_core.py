from __future__ import annotations

from fractions import Fraction

import pytest

from diassocle.algebra_core import (
    AlgebraData,
    BilinearMap,
    BimoduleData,
    DiassData,
    RAvgAlgebra,
    adjoint_representation,
    averaging_from_element,
    find_unit,
    regular_bimodule,
    verify_algebra,
    verify_associative_bimodule,
    verify_diass,
    verify_diass_morphism,
    verify_diass_rep,
    verify_morphism,
    verify_relative_averaging,
)
from diassocle.errors import DimensionMismatchError
from diassocle.exact_linalg import Matrix

from conftest import adjoint_ravg, dual_numbers, functional_diass


def _non_associative() -> AlgebraData:
    # e0·e0 = e1, e1·e0 = e0
    return AlgebraData(2, BilinearMap.from_lists(2, 2, 2, [[[0, 1], [0, 0]], [[1, 0], [0, 0]]]))


def test_dual_numbers_are_associative_with_unit() -> None:
    A = dual_numbers()
    assert verify_algebra(A).valid
    assert verify_associative_bimodule(A, regular_bimodule(A)).valid
    assert find_unit(A) == {0: Fraction(1)}
    assert find_unit(AlgebraData.zero(2)) is None


def test_non_associative_product_is_reported() -> None:
    report = verify_algebra(_non_associative())
    assert not report.valid
    assert report.violations[0].identity == "(a·b)·c = a·(b·c)"
    assert report.checks == 8


def test_identity_operator_on_the_adjoint_bimodule(kx2: RAvgAlgebra) -> None:
    report = verify_relative_averaging(kx2)
    assert report.valid
    assert report.checks == 8


def test_failing_operator_reports_the_first_basis_pair() -> None:
    R = adjoint_ravg(Matrix.from_rows([[1, 0], [1, 0]]))
    report = verify_relative_averaging(R)
    assert not report.valid
    first = report.violations[0]
    assert first.identity == "P(u)·P(v) = P(P(u)·v)"
    assert first.inputs == ("u0", "v0")
    assert first.lhs == ["1", "2"]
    assert first.rhs == ["1", "1"]
    assert "fails at (u0, v0)" in report.first_failure()


def test_non_associative_base_is_a_failed_precondition() -> None:
    A = _non_associative()
    R = RAvgAlgebra(A, BimoduleData.zero(A, 1), Matrix.zeros(2, 1))
    report = verify_relative_averaging(R)
    assert report.precondition is not None
    assert not report.valid
    assert verify_relative_averaging(R, check_base=False).valid


def test_any_operator_works_for_zero_products(zero_product: RAvgAlgebra) -> None:
    assert verify_relative_averaging(zero_product).valid


@pytest.mark.parametrize("name", ["a_plus_a_sum", "a_plus_a_projection"])
def test_operators_on_two_copies(name: str, request: pytest.FixtureRequest) -> None:
    R = request.getfixturevalue(name)
    assert verify_relative_averaging(R).valid


def test_operator_shape_is_checked() -> None:
    A = dual_numbers()
    with pytest.raises(DimensionMismatchError):
        RAvgAlgebra(A, regular_bimodule(A), Matrix.identity(3))


def test_functional_diass_and_its_adjoint_representation() -> None:
    D = functional_diass()
    assert verify_diass(D).valid
    assert verify_diass_rep(adjoint_representation(D)).valid
    assert verify_diass_morphism(D, D, Matrix.identity(2)).valid


def test_swapped_products_break_the_diass_identities() -> None:
    D = functional_diass()
    swapped = DiassData(2, D.vdash, D.dashv)
    report = verify_diass(swapped)
    assert not report.valid
    assert {v.identity for v in report.violations} >= {"(x⊣y)⊣z = x⊣(y⊢z)"}


def test_associative_algebra_is_diassociative() -> None:
    assert verify_diass(DiassData.from_algebra(dual_numbers())).valid


def test_identity_is_a_morphism(kx2: RAvgAlgebra) -> None:
    I = Matrix.identity(2)
    assert verify_morphism(kx2, kx2, I, I).valid
    report = verify_morphism(kx2, kx2, I, I.scale(2))
    assert not report.valid


def test_averaging_elements() -> None:
    A = dual_numbers()
    unit = averaging_from_element(A, [1, 0, 0, 0])
    assert unit.valid
    assert unit.operator == Matrix.identity(2)
    mixed = averaging_from_element(A, [0, 1, 0, 0])
    assert not mixed.valid
    with pytest.raises(DimensionMismatchError):
        averaging_from_element(A, [1, 0])


def test_report_serialization_is_plain_data(kx2: RAvgAlgebra) -> None:
    data = verify_relative_averaging(adjoint_ravg(Matrix.from_rows([[1, 0], [1, 0]]))).to_dict()
    assert data["valid"] is False
    assert data["violations"][0]["inputs"] == ("u0", "v0")
    assert verify_relative_averaging(kx2).to_dict()["violations"] == []
