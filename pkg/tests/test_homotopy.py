from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import adjoint_ravg, dual_numbers, functional_diass
from diassocle.algebra_core import regular_bimodule, verify_relative_averaging
from diassocle.cochain_engine import Cochain
from diassocle.errors import ArityError, GradingError, InvalidStructureError
from diassocle.exact_linalg import Matrix
from diassocle.fixtures import load_fixture
from diassocle.homotopy import (
    AINF,
    GradedOps,
    GradedSpace,
    MCElement,
    ainf_from_algebra,
    ainf_rep_from_bimodule,
    ainf_semidirect,
    differential_square_report,
    diass_inf_from_diass,
    diass_inf_semidirect,
    homotopy_ravg_check,
    induced_diass_inf,
    koszul_sign,
    mc_check_ravg,
    module_samples,
    quotient_ainf,
    ravg_linf,
    ravg_mc_element,
    read_off_semidirect,
    self_representation,
    strict_homotopy_check,
    transport,
    triple_bracket_vanishes,
    twist_linf,
    unshuffles,
    verify_ainf,
    verify_ainf_rep,
    verify_diass_inf,
)
from diassocle.samples import graded_example, operator_candidates, random_ainf


def diag(*values: int) -> Matrix:
    n = len(values)
    return Matrix.from_rows([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], n)


def test_koszul_signs() -> None:
    assert koszul_sign((1, 0), (1, 1)) == -1
    assert koszul_sign((1, 0), (1, 0)) == 1
    assert koszul_sign((2, 0, 1), (1, 1, 1)) == 1
    assert koszul_sign((0, 1, 2), (3, 5, 7)) == 1
    with pytest.raises(ArityError):
        koszul_sign((0, 0), (1, 1))


def test_unshuffles_count() -> None:
    assert len(list(unshuffles(4, 2))) == 6
    assert list(unshuffles(3, 0)) == [(0, 1, 2)]


def test_ungraded_algebra_is_ainf() -> None:
    A = dual_numbers()
    mu = ainf_from_algebra(A)
    assert verify_ainf(mu).valid
    assert verify_ainf_rep(mu, ainf_rep_from_bimodule(regular_bimodule(A))).valid


def test_graded_example_is_ainf() -> None:
    A = graded_example()
    report = verify_ainf(A)
    assert report.valid
    assert report.notes == ["identities checked up to arity 3; higher arities are truncated"]
    assert verify_ainf_rep(A, self_representation(A)).valid


def test_broken_graded_structure_reported() -> None:
    space = GradedSpace((-1, 0, -2))
    mu1 = Cochain(1, 3, 3, {(0, (0,)): {1: Fraction(1)}}, False)
    mu2 = Cochain(2, 3, 3, {(0, (0, 0)): {0: Fraction(1)}}, False)
    report = verify_ainf(GradedOps(AINF, space, {1: mu1, 2: mu2}, 3))
    assert not report.valid
    assert report.violations[0].identity == "higher associativity at arity 2"


def test_degree_violation_rejected() -> None:
    space = GradedSpace((-1, 0, -2))
    wrong = Cochain(1, 3, 3, {(0, (0,)): {2: Fraction(1)}}, False)
    with pytest.raises(GradingError):
        GradedOps(AINF, space, {1: wrong}, 3)


def test_transport_keeps_ainf(rng) -> None:
    assert verify_ainf(random_ainf(rng)).valid


def test_transport_needs_degree_preserving_map() -> None:
    with pytest.raises(GradingError):
        transport(graded_example(), Matrix.from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]], 3))


def test_semidirect_read_off() -> None:
    A = graded_example()
    M = self_representation(A)
    assert verify_ainf(ainf_semidirect(A, M)).valid
    D = diass_inf_semidirect(A, M)
    assert verify_diass_inf(D).valid
    A2, M2 = read_off_semidirect(D, A.space.dim)
    for k in (1, 2):
        assert A2.op(k).table == A.op(k).table
        assert M2.op(k).table == M.op(k).table


def test_graded_fixture_loads() -> None:
    fixture = load_fixture("ainf_graded.json")
    assert fixture.kind == "graded-ops"
    assert fixture.valid
    assert fixture.value.operator.linear_part() == diag(2, 2, 5)


@pytest.mark.parametrize("values, expected", [((2, 2, 5), True), ((1, 2, 0), False), ((1, 1, 1), True)])
def test_strict_homotopy_operator(values, expected) -> None:
    A = graded_example()
    M = self_representation(A)
    P = MCElement.strict(M.space, A.space, diag(*values))
    assert strict_homotopy_check(A, M, P).valid is expected
    assert homotopy_ravg_check(A, M, P) is expected


def test_induced_diass_inf_from_strict_operator() -> None:
    A = graded_example()
    M = self_representation(A)
    P = MCElement.strict(M.space, A.space, diag(2, 2, 5))
    D = induced_diass_inf(A, M, P)
    assert D.space == M.space
    assert verify_diass_inf(D).valid


def test_induced_diass_inf_rejects_non_operator() -> None:
    A = graded_example()
    M = self_representation(A)
    P = MCElement.strict(M.space, A.space, diag(1, 2, 0))
    with pytest.raises(InvalidStructureError):
        induced_diass_inf(A, M, P)


def test_quotient_of_ungraded_diass() -> None:
    D = diass_inf_from_diass(functional_diass())
    assert verify_diass_inf(D).valid
    Q = quotient_ainf(D)
    assert Q.ideal_dim == 1
    assert Q.ainf.space.dim == 1
    assert verify_ainf(Q.ainf).valid
    assert verify_ainf_rep(Q.ainf, Q.rep).valid


def test_mc_check_on_dual_numbers(kx2) -> None:
    assert mc_check_ravg(kx2.A, kx2.M, kx2.P)
    assert not mc_check_ravg(kx2.A, kx2.M, Matrix.from_rows([[1, 0], [1, 0]], 2))
    assert triple_bracket_vanishes(kx2.A, kx2.M, kx2.P)


def test_mc_check_agrees_with_identities(kx2, rng) -> None:
    for P in operator_candidates(kx2, rng, 9):
        R = adjoint_ravg(P)
        assert mc_check_ravg(R.A, R.M, P) == verify_relative_averaging(R).valid


def test_twisted_differential_squares_to_zero(kx2) -> None:
    L, _ = ravg_linf(kx2.A, kx2.M)
    twisted = twist_linf(L, ravg_mc_element(kx2.A, kx2.M, kx2.P))
    report = differential_square_report(twisted, module_samples(kx2.A.dim, kx2.M.dim))
    assert report.valid
    assert report.checks == len(module_samples(2, 2))


def test_twist_rejects_non_mc(kx2) -> None:
    L, _ = ravg_linf(kx2.A, kx2.M)
    with pytest.raises(InvalidStructureError):
        twist_linf(L, ravg_mc_element(kx2.A, kx2.M, Matrix.from_rows([[1, 0], [1, 0]], 2)))


def test_quotient_operations_are_well_defined() -> None:
    Q = quotient_ainf(diass_inf_from_diass(functional_diass()))
    assert Q.report.valid
    assert Q.report.checks > 0
    assert Q.to_dict()["well_defined"] is True
