from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import RAVG_FIXTURES, adjoint_ravg, functional_diass
from diassocle.algebra_core import adjoint_representation
from diassocle.cohomology import (
    COMPLEX_KINDS,
    RAvgCochain,
    assemble_complex,
    avg_coboundary,
    betti,
    betti_table,
    euler_report,
    les_check,
    ravg_coboundary,
    ravg_spaces,
    require_cocycle,
    zero_ravg_cochain,
)
from diassocle.cochain_engine import Cochain
from diassocle.constructions import adjoint_bimodule, zero_bimodule
from diassocle.errors import ArityError, InvalidStructureError, NotACocycleError
from diassocle.exact_linalg import Matrix


def test_ravg_layout_dimensions(kx2) -> None:
    spec = assemble_complex("ravg", kx2, 2)
    assert spec.dims[:4] == [0, 8, 28, 80]
    assert [sum(s.dim for s in ravg_spaces(kx2, n)) for n in range(4)] == [0, 8, 28, 80]


@pytest.mark.parametrize("kind", [k for k in COMPLEX_KINDS if k != "avg"])
def test_every_complex_squares_to_zero(kind, kx2) -> None:
    spec = assemble_complex(kind, kx2, 2)
    assert len(spec.coboundaries) == 3
    for n in range(2):
        assert spec.coboundary(n + 1).matmul(spec.coboundary(n)).is_zero()


def test_operator_complex_degree_zero(kx2) -> None:
    spec = assemble_complex("operator", kx2, 1)
    assert betti(spec, 0).dim == 2


def test_diass_complex_of_functional_algebra() -> None:
    D = functional_diass()
    spec = assemble_complex("diass", (D, adjoint_representation(D)), 2)
    assert betti(spec, 0).dim == 2


def test_betti_table_matches_representatives(kx2) -> None:
    spec = assemble_complex("ravg", kx2, 2)
    table = betti_table(spec)
    assert list(table.columns) == ["degree", "dim_C", "rank_delta", "dim_Z", "dim_B", "dim_H"]
    for n in range(3):
        result = betti(spec, n)
        assert int(table.loc[n, "dim_H"]) == result.dim
        for rep in result.representatives:
            assert result.is_cocycle(rep)
            assert not result.is_coboundary(rep)


def test_coboundaries_are_recognised(kx2) -> None:
    spec = assemble_complex("ravg", kx2, 2)
    column = next(c for c in spec.coboundary(1).sparse_columns if c)
    result = betti(spec, 2)
    assert result.is_cocycle(column)
    assert result.is_coboundary(column)
    preimage = result.preimage(column)
    assert preimage is not None
    assert spec.coboundary(1).apply(preimage) == column


def test_betti_degree_out_of_range(kx2) -> None:
    spec = assemble_complex("operator", kx2, 1)
    with pytest.raises(ArityError):
        betti(spec, 2)


@pytest.mark.parametrize("kind", ["operator", "ravg", "avg", "assbimod"])
def test_euler_characteristic_consistent(kind, kx2) -> None:
    report = euler_report(assemble_complex(kind, kx2, 2))
    assert bool(report.loc[0, "consistent"])
    assert report.loc[0, "chi_C"] - report.loc[0, "chi_H"] == report.loc[0, "edge_correction"]


def test_avg_complex_needs_averaging_algebra(a_plus_a_sum) -> None:
    with pytest.raises(InvalidStructureError):
        assemble_complex("avg", a_plus_a_sum, 1)


def test_invalid_structure_rejected() -> None:
    bad = adjoint_ravg(Matrix.from_rows([[1, 0], [1, 0]], 2))
    with pytest.raises(InvalidStructureError):
        assemble_complex("ravg", bad, 1)


def test_unknown_kind(kx2) -> None:
    with pytest.raises(ValueError):
        assemble_complex("lie", kx2, 1)


def test_ravg_coboundary_squares_to_zero_on_identity(kx2) -> None:
    zero = zero_ravg_cochain(kx2, 1)
    f = Cochain(1, 2, 2, {(0, (0,)): {0: Fraction(1)}, (0, (1,)): {1: Fraction(1)}}, False)
    c = RAvgCochain(1, f, zero.g, None)
    once = ravg_coboundary(c, kx2)
    assert ravg_coboundary(once, kx2).is_zero()
    require_cocycle(once, kx2)


def test_require_cocycle_names_component(kx2) -> None:
    zero = zero_ravg_cochain(kx2, 1)
    f = Cochain(1, 2, 2, {(0, (1,)): {0: Fraction(1)}}, False)
    c = RAvgCochain(1, f, zero.g, None)
    with pytest.raises(NotACocycleError) as excinfo:
        require_cocycle(c, kx2)
    assert excinfo.value.component == "f"


def test_avg_coboundary_of_zero(kx2) -> None:
    zero = zero_ravg_cochain(kx2, 1)
    f_next, gamma_next = avg_coboundary(zero.f, None, kx2)
    assert f_next.is_zero()
    assert gamma_next.is_zero()


@pytest.mark.parametrize("name", ["kx2", "a_plus_a_sum", "a_plus_a_projection"])
@pytest.mark.parametrize("nmax", [1, 2, pytest.param(3, marks=pytest.mark.slow)])
def test_long_exact_sequence_is_exact(nmax, name, request) -> None:
    report = les_check(request.getfixturevalue(name), nmax)
    assert report.exact, report.failures
    assert len(report.nodes) == 3 * nmax
    assert report.to_dict()["exact"] is True


@pytest.mark.parametrize("name", RAVG_FIXTURES)
@pytest.mark.parametrize("nmax", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_ravg_complex_squares_to_zero_on_every_fixture(nmax, name, request) -> None:
    spec = assemble_complex("ravg", request.getfixturevalue(name), nmax)
    for n in range(nmax):
        assert spec.coboundary(n + 1).matmul(spec.coboundary(n)).is_zero()


def test_zero_coefficients_give_zero_complex(kx2) -> None:
    spec = assemble_complex("ravg", kx2, 1, coeffs=zero_bimodule(kx2))
    assert spec.dims == [0, 0, 0]


def test_explicit_adjoint_coefficients_match_default(kx2) -> None:
    default = assemble_complex("ravg", kx2, 1)
    explicit = assemble_complex("ravg", kx2, 1, coeffs=adjoint_bimodule(kx2))
    assert betti_table(default).equals(betti_table(explicit))


def test_cached_build(tmp_path, kx2) -> None:
    first = assemble_complex("operator", kx2, 2, cache_dir=str(tmp_path))
    second = assemble_complex("operator", kx2, 2, cache_dir=str(tmp_path))
    assert first.dims == second.dims
    assert betti_table(first).equals(betti_table(second))


@pytest.mark.slow
def test_parallel_build_matches_serial(kx2) -> None:
    serial = assemble_complex("ravg", kx2, 3)
    parallel = assemble_complex("ravg", kx2, 3, jobs=2)
    assert betti_table(serial).equals(betti_table(parallel))
