import pytest

from helpers import load
from modules.plane_graph import build_from


@pytest.fixture
def fig1():
    return load("fig1.pg")


@pytest.fixture
def fig1_graph(fig1):
    return build_from(fig1.data)


@pytest.fixture
def square():
    return load("square.pg")


@pytest.fixture
def path1():
    return load("path1.pg")
