from __future__ import annotations

import pytest

from spamlab import FixtureParams, generate_fixture_corpus

# Heavy shared vocabulary so the classes are not trivially separable;
# used wherever tests need real errors and mid-range posteriors.
HARD_PARAMS = FixtureParams(overlap=0.85, shared_fraction=0.5)


@pytest.fixture(scope="session")
def small_corpus():
    """90 legitimate / 10 spam, default (easily separable) vocabulary."""
    return generate_fixture_corpus(7, 90, 10)


@pytest.fixture(scope="session")
def hard_corpus():
    """200 legitimate / 40 spam with heavy class overlap."""
    return generate_fixture_corpus(7, 200, 40, HARD_PARAMS)


@pytest.fixture(scope="session")
def cv_corpus():
    """900 legitimate / 180 spam, the cross-validation regression corpus."""
    return generate_fixture_corpus(7, 900, 180)
