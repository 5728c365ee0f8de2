"""Shared fixtures: a seeded generator and random SL(2,R) elements."""

import numpy as np
import pytest

import config
from hypercomplex import GroupElement


@pytest.fixture
def rng():
    return np.random.default_rng(2008)


@pytest.fixture
def sl2(rng):
    """Draw random group elements: a, b, c uniform in [-2, 2], d = (1 + bc)/a."""
    def draw(bound=None):
        while True:
            g = GroupElement.random(rng)
            if bound is None or np.abs(g.as_array()).max() <= bound:
                return g
    return draw


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    for name in ("CYCLEKIT_CONFIG", "CYCLEKIT_LOG_LEVEL", "CYCLEKIT_LOG_FILE", "CYCLEKIT_SEED"):
        monkeypatch.delenv(name, raising=False)
    config.reset_settings()
    yield
    config.reset_settings()
