"""Shared fixtures: the built-in seed plans and the constructed families.

Construction is the expensive part (each family re-verifies itself), so
everything here is session-scoped and shared across test modules.
"""

import pytest

from orthoplan import (
    construct_asym,
    construct_potb2,
    construct_potb3,
    construct_potp,
    seed_plans,
)


@pytest.fixture(scope="session")
def seeds():
    return seed_plans()


@pytest.fixture(scope="session")
def potb27(seeds):
    return seeds["potb_2_7"]


@pytest.fixture(scope="session")
def ico26(seeds):
    return seeds["ico_2_6"]


@pytest.fixture(scope="session")
def potb33(seeds):
    return seeds["potb_3_3"]


@pytest.fixture(scope="session")
def potp34(seeds):
    return seeds["potp_3_4"]


@pytest.fixture(scope="session")
def potp43():
    return construct_potp(4, 3)


@pytest.fixture(scope="session")
def potp47():
    return construct_potp(4, 7)


@pytest.fixture(scope="session")
def potb2_14():
    return construct_potb2(2)


@pytest.fixture(scope="session")
def potb2_28():
    return construct_potb2(4)


@pytest.fixture(scope="session")
def potb3_15():
    return construct_potb3()


@pytest.fixture(scope="session")
def asym3():
    return construct_asym(3)


@pytest.fixture(scope="session")
def asym7():
    return construct_asym(7)
