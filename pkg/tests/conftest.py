#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import pytest

from crownkit.catalog import build_group
from crownkit.permcore import PermGroup, Permutation
from crownkit.settings import load_config


@pytest.fixture(autouse=True)
def config(monkeypatch):
    # tests must not pick up settings from the environment they run in
    monkeypatch.delenv("CROWNKIT_SETTINGS", raising=False)
    config = load_config()
    yield config
    load_config()


def perm(text, degree):
    return Permutation.from_cycles(text, degree)


@pytest.fixture
def s3():
    return build_group("Sym(3)")


@pytest.fixture
def s4():
    return build_group("Sym(4)")


@pytest.fixture
def a4():
    return build_group("Alt(4)")


@pytest.fixture
def a5():
    return build_group("Alt(5)")


@pytest.fixture
def c4():
    return build_group("Cyclic(4)")


@pytest.fixture
def d8():
    # the dihedral group of order 8 on the vertices of a square
    return build_group("Dihedral(4)")


@pytest.fixture
def v4():
    return build_group("ElemAbelian(2,2)")


@pytest.fixture
def c2xc2():
    # intransitive, on two separate pairs of points
    return PermGroup([perm("(1 2)", 4), perm("(3 4)", 4)], name="C2xC2")


@pytest.fixture
def trivial_group():
    return PermGroup([], 3, name="1")
