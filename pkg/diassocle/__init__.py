"""Exact-arithmetic engine for diassociative, relative averaging and averaging algebras."""

from __future__ import annotations

import os
from pathlib import Path

PACKAGE_ROOT = Path(__file__).resolve().parent
FIXTURES_DIR = PACKAGE_ROOT / "fixtures"

DEFAULT_SEED = 20240917
DEFAULT_NMAX = 3
DEFAULT_K = 3
MAX_TREE_ARITY = 14
SEED_ENV_VAR = "DIASSOCLE_SEED"


def default_seed() -> int:
    """Return the property-test seed, honouring ``DIASSOCLE_SEED`` when set."""
    raw = os.environ.get(SEED_ENV_VAR, "").strip()
    if not raw:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_SEED


__all__ = [
    "DEFAULT_K",
    "DEFAULT_NMAX",
    "DEFAULT_SEED",
    "FIXTURES_DIR",
    "MAX_TREE_ARITY",
    "PACKAGE_ROOT",
    "SEED_ENV_VAR",
    "default_seed",
]
