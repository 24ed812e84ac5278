"""Seeded random structures for the property suites and the command line."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np

from . import DEFAULT_K, default_seed
from .algebra_core import BilinearMap, DiassData, RAvgAlgebra, RAvgBimodule
from .cochain_engine import Cochain, CochainSpace
from .cohomology import RAvgCochain, ravg_spaces
from .constructions import bimodule_map_operator
from .exact_linalg import Matrix
from .homotopy import AINF, GradedOps, GradedSpace, random_automorphism, transport

LOGGER = logging.getLogger(__name__)


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """A generator seeded with ``seed``, or with the default seed when none is given."""
    return np.random.default_rng(default_seed() if seed is None else seed)


def _entry(rng: np.random.Generator, bound: int, density: float) -> int:
    if rng.random() >= density:
        return 0
    return int(rng.integers(-bound, bound + 1))


def random_matrix(rows: int, cols: int, rng: np.random.Generator, *, bound: int = 2, density: float = 0.5) -> Matrix:
    return Matrix.from_rows([[_entry(rng, bound, density) for _ in range(cols)] for _ in range(rows)], cols)


def random_bilinear(
    left: int, right: int, out: int, rng: np.random.Generator, *, bound: int = 2, density: float = 0.3
) -> BilinearMap:
    return BilinearMap.from_function(left, right, out, lambda i, j: [_entry(rng, bound, density) for _ in range(out)])


def random_cochain(space: CochainSpace, rng: np.random.Generator, *, bound: int = 2, density: float = 0.3) -> Cochain:
    """Integer entries on the basis of ``space``, including its index filter."""
    table = {}
    for key in space.keys:
        vec = {c: Fraction(v) for c in range(space.target_dim) if (v := _entry(rng, bound, density))}
        if vec:
            table[key] = vec
    return Cochain(space.arity, space.source_dim, space.target_dim, table, space.tree_indexed)


def random_ravg_cochain(
    R: RAvgAlgebra, n: int, rng: np.random.Generator, coeffs: Optional[RAvgBimodule] = None, *, density: float = 0.3
) -> RAvgCochain:
    spaces = ravg_spaces(R, n, coeffs)
    parts = [random_cochain(space, rng, density=density) for space in spaces]
    return RAvgCochain(n, parts[0], parts[1], parts[2] if n >= 2 else None)


def operator_candidates(R: RAvgAlgebra, rng: np.random.Generator, count: int) -> List[Matrix]:
    """A mix of arbitrary matrices, bimodule maps and rescalings of P, in a seeded order.

    Bimodule maps and multiples of a relative averaging operator are relative averaging
    operators, so every family contributes both outcomes once ``count`` is large enough.
    """
    da, dm = R.A.dim, R.M.dim
    candidates: List[Matrix] = []
    for k in range(count):
        family = k % 3
        if family == 0:
            candidates.append(random_matrix(da, dm, rng))
        elif family == 1:
            candidates.append(bimodule_map_operator(R.A, R.M, rng))
        else:
            candidates.append(R.P.scale(int(rng.integers(-3, 4))).add(random_matrix(da, dm, rng, density=0.15)))
    LOGGER.debug("Operator candidates sampled | count=%s dim_A=%s dim_M=%s", count, da, dm)
    return candidates


def diass_candidates(D: DiassData, rng: np.random.Generator, count: int) -> List[DiassData]:
    """Perturbations of D, every third one left unperturbed or rescaled."""
    d = D.dim
    out: List[DiassData] = []
    for k in range(count):
        c = Fraction(int(rng.integers(-2, 3)))
        if k % 3 == 0:
            out.append(DiassData(d, D.dashv.scale(c), D.vdash.scale(c)))
        else:
            out.append(DiassData(d, D.dashv.add(random_bilinear(d, d, d, rng, density=0.2)), D.vdash))
    return out


def graded_example(max_arity: int = DEFAULT_K) -> GradedOps:
    """A∞ algebra on x, y, z in degrees −1, 0, −2 with μ₁(x) = y, μ₂(x,x) = x, μ₂(x,y) = y."""
    space = GradedSpace((-1, 0, -2))
    mu1 = Cochain(1, 3, 3, {(0, (0,)): {1: Fraction(1)}}, False)
    mu2 = Cochain(2, 3, 3, {(0, (0, 0)): {0: Fraction(1)}, (0, (0, 1)): {1: Fraction(1)}}, False)
    return GradedOps(AINF, space, {1: mu1, 2: mu2}, max_arity)


def random_ainf(rng: np.random.Generator, max_arity: int = DEFAULT_K, base: Optional[GradedOps] = None) -> GradedOps:
    """Transport of ``base`` (the graded example by default) along a random degree-preserving isomorphism."""
    base = graded_example(max_arity) if base is None else base
    return transport(base, random_automorphism(base.space, rng))


__all__ = [
    "diass_candidates",
    "graded_example",
    "make_rng",
    "operator_candidates",
    "random_ainf",
    "random_bilinear",
    "random_cochain",
    "random_matrix",
    "random_ravg_cochain",
]
