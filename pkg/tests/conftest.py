from __future__ import annotations

import pytest

from diassocle.algebra_core import AlgebraData, BilinearMap, DiassData, RAvgAlgebra, regular_bimodule
from diassocle.exact_linalg import Matrix
from diassocle.fixtures import load_fixture
from diassocle.samples import make_rng

RAVG_FIXTURES = ["kx2", "a_plus_a_sum", "a_plus_a_projection", "zero_product"]


def dual_numbers() -> AlgebraData:
    """ℚ[x]/(x²) on the basis 1, x."""
    mu = BilinearMap.from_lists(2, 2, 2, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    return AlgebraData(2, mu)


def adjoint_ravg(P: Matrix | None = None) -> RAvgAlgebra:
    A = dual_numbers()
    return RAvgAlgebra(A, regular_bimodule(A), P if P is not None else Matrix.identity(2))


def functional_diass() -> DiassData:
    """x ⊣ y = φ(y)x and x ⊢ y = φ(x)y with φ(e0) = 1, φ(e1) = 0."""
    dashv = BilinearMap.from_lists(2, 2, 2, [[[1, 0], [0, 0]], [[0, 1], [0, 0]]])
    vdash = BilinearMap.from_lists(2, 2, 2, [[[1, 0], [0, 1]], [[0, 0], [0, 0]]])
    return DiassData(2, dashv, vdash)


@pytest.fixture
def kx2() -> RAvgAlgebra:
    return adjoint_ravg()


@pytest.fixture
def a_plus_a_sum() -> RAvgAlgebra:
    return load_fixture("a_plus_a_sum.json").value


@pytest.fixture
def a_plus_a_projection() -> RAvgAlgebra:
    return load_fixture("a_plus_a_projection.json").value


@pytest.fixture
def zero_product() -> RAvgAlgebra:
    return load_fixture("zero_product_2dim.json").value


@pytest.fixture
def rng():
    return make_rng(7)
