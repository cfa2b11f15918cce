"""Shared fixtures for the tournament tests."""

import random

import pytest

from tournaments.digraph import (
    almost_transitive_tournament,
    build_cyclic,
    build_pseudo_cyclic,
    paley_tournament,
)
from utils.config import get_settings


@pytest.fixture
def t13():
    """T(13;{2,5,6}): neither half is rigid, Aut(T) is the rotation group."""
    return build_cyclic(6, [2, 5, 6])


@pytest.fixture
def p6():
    return build_pseudo_cyclic(6, [2, 5, 6])


@pytest.fixture
def three_cycle():
    return almost_transitive_tournament(3)


@pytest.fixture
def qr7():
    return paley_tournament(7)


@pytest.fixture
def rng():
    return random.Random(20240917)


@pytest.fixture
def fresh_settings():
    """Re-read settings from the (monkeypatched) environment, and forget them afterwards."""
    get_settings.cache_clear()
    yield get_settings
    get_settings.cache_clear()


def all_cyclic(p_max, p_min=1):
    """Every T(2p+1;S-) for p_min <= p <= p_max."""
    for p in range(p_min, p_max + 1):
        for mask in range(1 << p):
            yield build_cyclic(p, [b + 1 for b in range(p) if mask >> b & 1])


@pytest.fixture
def cyclic_space():
    return all_cyclic
