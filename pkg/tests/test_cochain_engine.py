from __future__ import annotations

from fractions import Fraction

import pytest

from diassocle import cochain_engine
from diassocle.algebra_core import (
    AlgebraData,
    BilinearMap,
    DiassData,
    RAvgAlgebra,
    adjoint_representation,
    regular_bimodule,
    verify_diass,
    verify_relative_averaging,
)
from diassocle.cochain_engine import (
    Cochain,
    CochainLayout,
    CochainSpace,
    assemble_delta,
    bidegree_decompose,
    circ_i,
    cochain_from_linear,
    d_P,
    delta_diass,
    delta_diass_P,
    derived_bracket,
    is_homogeneous,
    lift,
    mm_bracket,
    operator_cochain,
    operator_matrix,
    perturbation_check,
    pi_of_diass,
    restrict,
    theta,
)
from diassocle.constructions import induced_diass
from diassocle.errors import ArityError, DimensionMismatchError
from diassocle.exact_linalg import Matrix
from diassocle.samples import diass_candidates, make_rng, operator_candidates, random_cochain
from diassocle.trees import Star, star_table

from conftest import RAVG_FIXTURES, adjoint_ravg, functional_diass


def _sign(m: int, n: int) -> int:
    return -1 if ((m - 1) * (n - 1)) % 2 else 1


def test_element_and_evaluation() -> None:
    c = Cochain.element({1: Fraction(2)}, 3)
    assert c.element_value() == {1: Fraction(2)}
    f = cochain_from_linear(Matrix.from_rows([[1, 2], [0, 3]]))
    assert f.evaluate(0, [{0: 1, 1: 1}]) == {0: Fraction(3), 1: Fraction(3)}
    with pytest.raises(ArityError):
        f.evaluate(0, [{0: 1}, {0: 1}])


def test_shapes_must_agree_for_sums() -> None:
    with pytest.raises(DimensionMismatchError):
        Cochain.zero(1, 2, 2).add(Cochain.zero(2, 2, 2))


def test_partial_composition_of_linear_maps() -> None:
    f = cochain_from_linear(Matrix.from_rows([[0, 1], [1, 0]]))
    g = cochain_from_linear(Matrix.from_rows([[2, 0], [0, 3]]))
    composite = circ_i(f, g, 1)
    assert composite.equals(cochain_from_linear(Matrix.from_rows([[0, 3], [2, 0]])))
    with pytest.raises(ArityError):
        circ_i(f, g, 2)


def test_pi_squares_to_zero_exactly_for_diassociative_products() -> None:
    D = functional_diass()
    pi = pi_of_diass(D)
    assert mm_bracket(pi, pi).is_zero()
    swapped = pi_of_diass(DiassData(2, D.vdash, D.dashv))
    assert not mm_bracket(swapped, swapped).is_zero()


def test_bracket_is_graded_antisymmetric(rng) -> None:
    for m, n in [(1, 1), (1, 2), (2, 2), (2, 3)]:
        f = random_cochain(CochainSpace(m, 2, 2), rng)
        g = random_cochain(CochainSpace(n, 2, 2), rng)
        assert mm_bracket(f, g).equals(mm_bracket(g, f).scale(-_sign(m, n)))


@pytest.mark.parametrize("arities", [(1, 1, 1), (1, 2, 1), (2, 1, 2), (3, 1, 2), (2, 2, 2)])
def test_bracket_satisfies_graded_jacobi(arities: tuple, rng) -> None:
    f, g, h = (random_cochain(CochainSpace(k, 2, 2), rng) for k in arities)
    m, n, _ = arities
    lhs = mm_bracket(f, mm_bracket(g, h))
    rhs = mm_bracket(mm_bracket(f, g), h).add(mm_bracket(g, mm_bracket(f, h)).scale(_sign(m, n)))
    assert lhs.equals(rhs)


@pytest.mark.parametrize("arities", [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1), (2, 1, 0)])
def test_derived_bracket_satisfies_graded_jacobi(arities: tuple, a_plus_a_sum: RAvgAlgebra, rng) -> None:
    R = a_plus_a_sum
    f, g, h = (random_cochain(CochainSpace(k, R.M.dim if k else 0, R.A.dim), rng) for k in arities)
    m, n, _ = arities
    sign = -1 if (m * n) % 2 else 1
    lhs = derived_bracket(f, derived_bracket(g, h, R), R)
    rhs = derived_bracket(derived_bracket(f, g, R), h, R).add(derived_bracket(g, derived_bracket(f, h, R), R).scale(sign))
    assert lhs.equals(rhs)


def test_delta_on_a_bimodule_squares_to_zero(kx2: RAvgAlgebra) -> None:
    delta = assemble_delta(kx2.A, kx2.M)
    assert mm_bracket(delta, delta).is_zero()
    assert is_homogeneous(delta, 1, 0, kx2.A.dim)


def test_coboundary_of_the_identity_is_the_structure() -> None:
    D = functional_diass()
    identity = cochain_from_linear(Matrix.identity(2))
    assert delta_diass(identity, D, adjoint_representation(D)).equals(pi_of_diass(D))


def test_coboundary_depends_on_the_star_labels(monkeypatch: pytest.MonkeyPatch) -> None:
    D = functional_diass()
    identity = cochain_from_linear(Matrix.identity(2))
    flip = {Star.LEFT: Star.RIGHT, Star.RIGHT: Star.LEFT}

    def swapped(n: int):
        return tuple(tuple(flip[s] for s in row) for row in star_table(n))

    monkeypatch.setattr(cochain_engine, "star_table", swapped)
    assert not delta_diass(identity, D, adjoint_representation(D)).equals(pi_of_diass(D))


SWEEP_DEGREES = [0, 1, pytest.param(2, marks=pytest.mark.slow), pytest.param(3, marks=pytest.mark.slow)]


def _samples(n: int) -> int:
    return 10 if n == 3 else 50


def _diass_fixtures(request: pytest.FixtureRequest) -> list:
    return [functional_diass()] + [induced_diass(request.getfixturevalue(name)) for name in RAVG_FIXTURES]


@pytest.mark.parametrize("n", SWEEP_DEGREES)
def test_diass_coboundary_squares_to_zero(n: int, request: pytest.FixtureRequest, rng) -> None:
    for D in _diass_fixtures(request):
        rep = adjoint_representation(D)
        for _ in range(_samples(n)):
            f = random_cochain(CochainSpace(n, D.dim, D.dim), rng)
            assert delta_diass(delta_diass(f, D, rep), D, rep).is_zero()


@pytest.mark.parametrize("P, valid", [([[1, 0], [0, 1]], True), ([[3, 0], [0, 3]], True), ([[1, 0], [1, 0]], False)])
def test_derived_self_bracket_detects_operators(P: list, valid: bool) -> None:
    R = adjoint_ravg(Matrix.from_rows(P))
    p = operator_cochain(R)
    assert derived_bracket(p, p, R).is_zero() is valid


@pytest.mark.parametrize("name", RAVG_FIXTURES)
def test_derived_self_bracket_agrees_with_the_verifier(name: str, request: pytest.FixtureRequest) -> None:
    R = request.getfixturevalue(name)
    for P in operator_candidates(R, make_rng(11), 100):
        candidate = R.with_operator(P)
        p = operator_cochain(candidate)
        assert derived_bracket(p, p, candidate).is_zero() is verify_relative_averaging(candidate).valid


@pytest.mark.parametrize("D", [functional_diass(), induced_diass(adjoint_ravg())], ids=["functional", "induced"])
def test_pi_squares_to_zero_on_random_structures(D: DiassData) -> None:
    outcomes = set()
    for candidate in diass_candidates(D, make_rng(13), 100):
        pi = pi_of_diass(candidate)
        valid = verify_diass(candidate).valid
        assert mm_bracket(pi, pi).is_zero() is valid
        outcomes.add(valid)
    assert outcomes == {True, False}


@pytest.mark.parametrize("n", SWEEP_DEGREES)
def test_d_P_squares_to_zero(n: int, request: pytest.FixtureRequest, rng) -> None:
    for name in RAVG_FIXTURES:
        R = request.getfixturevalue(name)
        for _ in range(_samples(n)):
            f = random_cochain(CochainSpace(n, R.M.dim, R.A.dim), rng)
            assert d_P(d_P(f, R), R).is_zero()


def test_derived_bracket_with_elements_is_antisymmetric(kx2: RAvgAlgebra, rng) -> None:
    a = Cochain.element({1: Fraction(1)}, 2)
    f = random_cochain(CochainSpace(1, 2, 2), rng)
    assert derived_bracket(f, a, kx2).equals(derived_bracket(a, f, kx2).neg())


def test_lift_and_restrict_are_inverse(kx2: RAvgAlgebra, rng) -> None:
    f = random_cochain(CochainSpace(2, 2, 2), rng)
    lifted = lift(f, kx2)
    assert restrict(lifted, kx2).equals(f)
    assert is_homogeneous(lifted, -1, 2, kx2.A.dim)


def test_bidegree_decomposition_of_delta(kx2: RAvgAlgebra) -> None:
    parts, remainder = bidegree_decompose(assemble_delta(kx2.A, kx2.M), kx2.A.dim)
    assert set(parts) == {(1, 0)}
    assert remainder.is_zero()


def test_operator_matrix_matches_direct_application(kx2: RAvgAlgebra, rng) -> None:
    source = CochainLayout([CochainSpace(1, 2, 2)])
    target = CochainLayout([CochainSpace(2, 2, 2)])
    matrix = operator_matrix(lambda cs: [d_P(cs[0], kx2)], source, target)
    f = random_cochain(CochainSpace(1, 2, 2), rng)
    image = matrix.apply(source.flatten([f]))
    assert image == target.flatten([d_P(f, kx2)])
    assert target.unflatten(image)[0].equals(d_P(f, kx2))


def test_theta_raises_arity_by_one(kx2: RAvgAlgebra, rng) -> None:
    f = random_cochain(CochainSpace(1, 2, 2), rng)
    image = theta(f, kx2)
    assert (image.arity, image.source_dim, image.target_dim) == (2, 2, 2)
    assert theta(Cochain.zero(1, 2, 2), kx2).is_zero()


def test_perturbations_agree_with_the_direct_check(kx2: RAvgAlgebra) -> None:
    good = perturbation_check(kx2, Matrix.identity(2))
    assert good.mc_equation_holds and good.direct_check
    bad = perturbation_check(kx2, Matrix.from_rows([[0, 0], [1, -1]]))
    assert not bad.mc_equation_holds and not bad.direct_check


def _upper_triangular() -> RAvgAlgebra:
    """Upper triangular 2×2 matrices on E11, E12, E22 acting on themselves, P = id."""
    zero = [0, 0, 0]
    mu = BilinearMap.from_lists(
        3, 3, 3,
        [[[1, 0, 0], [0, 1, 0], zero], [zero, zero, [0, 1, 0]], [zero, zero, [0, 0, 1]]],
    )
    A = AlgebraData(3, mu)
    return RAvgAlgebra(A, regular_bimodule(A), Matrix.identity(3))


def test_theta_of_an_element_is_a_commutator() -> None:
    R = _upper_triangular()
    image = theta(Cochain.element({0: Fraction(1)}, 3), R)
    assert image.arity == 1
    assert image.table == {(0, (1,)): {1: Fraction(1)}}


def test_theta_sends_the_operator_to_the_induced_structure(kx2: RAvgAlgebra) -> None:
    for R in (kx2, _upper_triangular()):
        assert theta(operator_cochain(R), R).equals(pi_of_diass(induced_diass(R)))


@pytest.mark.parametrize("m, n", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_theta_preserves_brackets(m: int, n: int, rng) -> None:
    R = _upper_triangular()
    f = random_cochain(CochainSpace(m, 3, 3), rng)
    g = random_cochain(CochainSpace(n, 3, 3), rng)
    assert mm_bracket(theta(f, R), theta(g, R)).equals(theta(derived_bracket(f, g, R), R))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_theta_is_a_chain_map(n: int, rng) -> None:
    R = _upper_triangular()
    D = induced_diass(R)
    f = random_cochain(CochainSpace(n, 3, 3), rng)
    image = theta(d_P(f, R), R)
    assert image.equals(mm_bracket(pi_of_diass(D), theta(f, R)))
    sign = -1 if n % 2 else 1
    assert image.equals(delta_diass(theta(f, R), D, adjoint_representation(D)).scale(sign))


@pytest.mark.parametrize("n", [0, 1, 2, pytest.param(3, marks=pytest.mark.slow)])
def test_operator_differential_matches_the_induced_coboundary(n: int, request: pytest.FixtureRequest, rng) -> None:
    for R in [request.getfixturevalue(name) for name in RAVG_FIXTURES] + [_upper_triangular()]:
        f = random_cochain(CochainSpace(n, R.M.dim, R.A.dim), rng)
        sign = -1 if n % 2 else 1
        assert d_P(f, R).equals(delta_diass_P(f, R).scale(sign))
