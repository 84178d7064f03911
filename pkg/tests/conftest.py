"""Shared fixtures: precision isolation and an expensive shared tau table."""

from __future__ import annotations

import pytest
from mpmath import mp

from eisenlab.eisenstein import EvalConfig


@pytest.fixture(autouse=True)
def _isolate_precision():
    """Every test starts from and restores the default global precision."""
    saved = mp.prec
    mp.prec = 53
    yield
    mp.prec = saved


@pytest.fixture(scope="session")
def cfg128():
    return EvalConfig(prec_bits=128)


@pytest.fixture(scope="session")
def tau6011():
    """tau(1..6011): enough for the 3000-term tails at n <= 10 plus doubling
    head-room at n = 2 (needs 6000 + 2).  Computed once per test session."""
    from eisenlab.modular import tau

    return tau(6011)
