# -*- coding: utf-8 -*-
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from modules.notation import parse_link, parse_slope  # noqa: E402


@pytest.fixture
def link():
    """Fábrica: link("[2,3,-2]") ou link("5/12") -> CanonicalLink."""
    return parse_link


@pytest.fixture
def slope():
    return parse_slope


@pytest.fixture
def small_census():
    from modules.census import enumerate_census

    return enumerate_census(24)
