from __future__ import annotations

import functools

import pytest

from fibered_burnside.catalog import catalog
from fibered_burnside.fibers import parse_fiber
from fibered_burnside.groups import build_group
from fibered_burnside.subchars import build_table


@functools.lru_cache(maxsize=None)
def get_group(name: str):
    return build_group(catalog()[name])


@functools.lru_cache(maxsize=None)
def get_table(name: str, fiber: str):
    G = get_group(name)
    A = parse_fiber(fiber, G.exponent())
    return build_table(G, A)


@pytest.fixture
def group():
    return get_group


@pytest.fixture
def table():
    return get_table
