"""Shared fixtures: the reference moduli vector and its line census."""

import pytest

from lines.census import full_census
from model.moduli import ModuliVector
from tropical.arrangements import classify_moduli
from tropical.examples import naruki_general_examples


@pytest.fixture(scope="session")
def d0() -> ModuliVector:
    return ModuliVector((0, 1, 2, 3, 4, 5))


@pytest.fixture(scope="session")
def census(d0):
    return full_census(d0)


@pytest.fixture(scope="session")
def aaaa_example():
    return naruki_general_examples()[0]


@pytest.fixture(scope="session")
def aaaa_report(aaaa_example):
    return classify_moduli(aaaa_example.moduli, aaaa_example.prime)
