"""Shared fixtures: a persistent on-disk cache so the ladder-wide spectra
are computed once (a few minutes cold, seconds warm)."""

from __future__ import annotations

import os
from pathlib import Path

import pytest

from heckelab.cache import cached_eigensystem
from heckelab.ntutils import level_ladder

LADDER_BOUND = 2000
SEED = 0


@pytest.fixture(scope="session")
def cache_dir() -> Path:
    default = Path(__file__).resolve().parent.parent / ".heckelab-cache"
    return Path(os.environ.get("HECKELAB_TEST_CACHE", default))


@pytest.fixture(scope="session")
def ladder_levels() -> list[int]:
    return level_ladder(LADDER_BOUND)


@pytest.fixture(scope="session")
def ladder_systems(cache_dir, ladder_levels) -> dict:
    """Eigensystems (with graphs attached) for every ladder level."""
    out = {}
    for p in ladder_levels:
        out[p] = cached_eigensystem(p, seed=SEED, cache_dir=cache_dir, with_graphs=True)
    return out


@pytest.fixture(scope="session")
def es37(cache_dir):
    return cached_eigensystem(37, seed=SEED, cache_dir=cache_dir, with_graphs=True)
