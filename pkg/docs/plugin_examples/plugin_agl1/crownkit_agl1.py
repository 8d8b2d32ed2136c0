#!/usr/bin/env python3

"""
This is an example plugin for crownkit.

It adds the family AGL1(p), the affine group x -> ax + b of the prime field
GF(p) acting on its p elements. The hook is inside a class named
AffineLinePlugin, to make the plugin_manager find it, the class has to be
registered.
"""

import sympy

from crownkit.plugins import hookimpl, plugin_manager


def affine_line(p):
    if not sympy.isprime(p):
        raise ValueError("AGL1(p) needs a prime p, got {}".format(p))
    translation = [(x + 1) % p for x in range(p)]
    generators = [translation]
    if p > 2:
        root = sympy.primitive_root(p)
        generators.append([(root * x) % p for x in range(p)])
    return p, generators, {"soluble-expected", "transitive-expected"}


class AffineLinePlugin:
    @hookimpl
    def catalog_families(self):
        return {"AGL1": affine_line}


# register the plugin, once the module is loaded via the entry point
plugin_manager.register(AffineLinePlugin())


def test_affine_line():
    degree, generators, tags = affine_line(5)
    assert degree == 5
    assert generators[0] == [1, 2, 3, 4, 0]
    assert sorted(generators[1]) == list(range(5))
    assert "soluble-expected" in tags
