"""Shared fixtures: the bundled workspaces and a rank-2 free group over Z^2."""

import pytest

from config.settings import WORKSPACE_DIR
from config.workspace import load_workspace
from groups.group import Group


def _load(name: str):
    ws, msg = load_workspace(WORKSPACE_DIR / f"{name}.json")
    assert ws is not None, msg
    return ws


@pytest.fixture(scope="session")
def free_ab():
    return _load("free_ab")


@pytest.fixture(scope="session")
def not_min():
    return _load("not_min")


@pytest.fixture(scope="session")
def z_line():
    return _load("z")


@pytest.fixture(scope="session")
def f2_over_z2() -> Group:
    """F(a, b) with lengths read in Z^2."""
    return Group.from_texts(2, ["a", "b"], {"a": "a", "b": "b"})
