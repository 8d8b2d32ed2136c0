#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import pytest

from crownkit.catalog import CatalogError, build_group, load_catalog
from crownkit.plugins import (
    chain_hooks,
    collect_families,
    hookimpl,
    plugin_manager,
)


def affine_line(p):
    translation = [(x + 1) % p for x in range(p)]
    doubling = [(2 * x) % p for x in range(p)]
    return p, [translation, doubling], {"soluble-expected"}


class AffineLinePlugin:
    @hookimpl
    def catalog_families(self):
        return {"AGL1": affine_line}


class DropLargeDegrees:
    @hookimpl
    def catalog_postprocess(self, entries):
        return [e for e in entries if e.degree <= 4]


class DropCyclic:
    @hookimpl
    def catalog_postprocess(self, entries):
        return [e for e in entries if not e.name.startswith("Cyclic")]


@pytest.fixture
def register():
    registered = []

    def _register(plugin):
        plugin_manager.register(plugin)
        registered.append(plugin)

    yield _register
    for plugin in registered:
        plugin_manager.unregister(plugin)


def test_builtin_families_are_registered():
    families = collect_families()
    for name in ("Sym", "Alt", "Cyclic", "Dihedral", "ElemAbelian"):
        assert name in families
    assert "CrownPower" in families
    assert "DirectProduct" in families


def test_builtin_families_are_registered_once():
    assert plugin_manager.has_plugin("crownkit-builtin")
    builtin = plugin_manager.get_plugin("crownkit-builtin")
    names = [
        name
        for name, plugin in plugin_manager.list_name_plugin()
        if plugin is builtin
    ]
    assert names == ["crownkit-builtin"]


def test_plugin_family(register):
    with pytest.raises(CatalogError):
        build_group("AGL1(5)")
    register(AffineLinePlugin())
    assert "AGL1" in collect_families()
    G = build_group("AGL1(5)")
    assert G.order == 20
    assert G.is_transitive()


def test_postprocess_hooks_are_chained(register):
    register(DropLargeDegrees())
    register(DropCyclic())
    entries = load_catalog("Sym(3);Sym(5);Cyclic(4);Dihedral(4)")
    assert [e.name for e in entries] == ["Sym(3)", "Dihedral(4)"]


def test_chain_hooks_without_implementations():
    assert chain_hooks("catalog_postprocess", [1, 2]) == [1, 2]
