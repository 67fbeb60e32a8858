from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chiralia import constructions as K  # noqa: E402
from chiralia.group_engine import ConcreteGroup  # noqa: E402
from chiralia.words import parse_presentation  # noqa: E402


@pytest.fixture(scope="session")
def q322():
    return K.MaximalClassParams(3, 2, 2)


@pytest.fixture(scope="session")
def G322(q322):
    return K.build_G_case1(q322)


@pytest.fixture(scope="session")
def Gstar322(q322):
    return K.build_G_star(q322)


@pytest.fixture(scope="session")
def P322(q322):
    return K.build_P(q322)


@pytest.fixture(scope="session")
def tight311():
    return ConcreteGroup.from_presentation(K.build_tight(K.TightParams(3, 1, 1)))


def group(text: str, label: str = "") -> ConcreteGroup:
    return ConcreteGroup.from_presentation(parse_presentation(text, label))
