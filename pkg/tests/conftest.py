from __future__ import annotations

import pytest

from awarekit.fixtures import fig1L as _fig1L, fig1R as _fig1R
from awarekit.unawareness import StateRef


@pytest.fixture
def fig1L():
    return _fig1L()


@pytest.fixture
def fig1R():
    return _fig1R()


PQ = frozenset({"p", "q"})
P = frozenset({"p"})
Q = frozenset({"q"})
MEET = frozenset()


def ref(space: frozenset[str], state_id: str) -> StateRef:
    return StateRef(space, state_id)
