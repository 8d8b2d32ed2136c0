#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

"""
Catalog ingestion: JSON-lines group records and named group families such
as "Sym(4)" or "CrownPower(Sym(4),2)". Families come from plugins; the
builtin ones are registered here as an ordinary plugin.
"""

import json
import os
import re
from dataclasses import dataclass, field
from typing import FrozenSet, List, Tuple

import sympy

from crownkit import CrownkitError
from crownkit.crowns import crown_based_power, monolithic_group
from crownkit.permcore import PermGroup, Permutation, PermutationError
from crownkit.plugins import (
    chain_hooks,
    collect_families,
    hookimpl,
    plugin_manager,
)
from crownkit.settings import logger


class CatalogError(CrownkitError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line {}: {}".format(line, message)
        super().__init__(message)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    degree: int
    generators: Tuple[Tuple[int, ...], ...]
    tags: FrozenSet[str] = field(default_factory=frozenset)

    def group(self, element_cap=None) -> PermGroup:
        return PermGroup(
            [Permutation.trusted(g) for g in self.generators],
            self.degree,
            name=self.name,
            element_cap=element_cap,
        )


#
# builtin families
#


def _cycle(points, degree):
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return images


def symmetric(n):
    gens = [_cycle([0, 1], n), _cycle(list(range(n)), n)] if n > 1 else []
    tags = {"transitive-expected"}
    if n <= 4:
        tags.add("soluble-expected")
    return n, gens, tags


def alternating(n):
    gens = [_cycle([0, 1, i], n) for i in range(2, n)]
    tags = {"transitive-expected"} if n != 2 else set()
    if n <= 4:
        tags.add("soluble-expected")
    return n, gens, tags


def cyclic(n):
    gens = [_cycle(list(range(n)), n)] if n > 1 else []
    return n, gens, {"soluble-expected", "transitive-expected"}


def dihedral(n):
    if n < 3:
        raise CatalogError("Dihedral(n) needs n >= 3")
    rotation = _cycle(list(range(n)), n)
    reflection = [(-x) % n for x in range(n)]
    tags = {"soluble-expected", "transitive-expected"}
    return n, [rotation, reflection], tags


def elementary_abelian(p, k):
    """(C_p)^k in its regular action on the vectors of GF(p)^k."""
    if not sympy.isprime(p) or k < 1:
        raise CatalogError("ElemAbelian(p,k) needs a prime p and k >= 1")
    degree = p**k
    gens = []
    for i in range(k):
        step = p**i
        gens.append(
            [
                x - (x // step % p) * step + ((x // step + 1) % p) * step
                for x in range(degree)
            ]
        )
    return degree, gens, {"soluble-expected", "transitive-expected"}


def crown_power(base, k):
    power = crown_based_power(monolithic_group(build_group(base)), int(k))
    tags = set()
    if "soluble-expected" in build_entry(base).tags:
        tags.add("soluble-expected")
    return (
        power.degree,
        [list(g.images) for g in power.generators],
        tags,
    )


def direct_product_family(first, second):
    a, b = build_entry(first), build_entry(second)
    degree = a.degree + b.degree
    gens = [list(g) + list(range(a.degree, degree)) for g in a.generators]
    gens += [
        list(range(a.degree)) + [a.degree + x for x in g]
        for g in b.generators
    ]
    tags = set(a.tags & b.tags) - {"transitive-expected"}
    return degree, gens, tags


class BuiltinFamilies:
    @hookimpl
    def catalog_families(self):
        return {
            "Sym": symmetric,
            "Alt": alternating,
            "Cyclic": cyclic,
            "Dihedral": dihedral,
            "ElemAbelian": elementary_abelian,
            "CrownPower": crown_power,
            "DirectProduct": direct_product_family,
        }


if not plugin_manager.has_plugin("crownkit-builtin"):
    plugin_manager.register(BuiltinFamilies(), name="crownkit-builtin")


BUILTIN_CATALOG = (
    [f"Cyclic({n})" for n in range(1, 13)]
    + [f"Dihedral({n})" for n in range(3, 9)]
    + [f"Sym({n})" for n in range(2, 6)]
    + [f"Alt({n})" for n in range(3, 6)]
    + ["ElemAbelian(2,2)", "ElemAbelian(2,3)", "ElemAbelian(3,2)"]
    + [
        "DirectProduct(Sym(3),Cyclic(2))",
        "DirectProduct(Sym(3),Sym(3))",
        "DirectProduct(Alt(4),Cyclic(2))",
        "CrownPower(Sym(4),2)",
        "DirectProduct(Alt(5),Alt(5))",
    ]
)


#
# names
#

NAME_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_]*)\s*\((.*)\)\s*$")


def split_arguments(text: str) -> List[str]:
    """Split at the commas that are not nested inside parentheses."""
    args, depth, current = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            args.append("".join(current).strip())
            current = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise CatalogError(
                    "unbalanced parentheses in {!r}".format(text)
                )
        current.append(ch)
    if depth != 0:
        raise CatalogError("unbalanced parentheses in {!r}".format(text))
    args.append("".join(current).strip())
    return [a for a in args if a]


def parse_name(name: str):
    m = NAME_RE.match(name)
    if m is None:
        raise CatalogError("{!r} is not a group family name".format(name))
    family, body = m.groups()
    args = []
    for arg in split_arguments(body):
        args.append(int(arg) if re.fullmatch(r"-?\d+", arg) else arg)
    return family, args


def build_entry(name: str) -> CatalogEntry:
    family, args = parse_name(name)
    families = collect_families()
    if family not in families:
        raise CatalogError("unknown group family {!r}".format(family))
    try:
        degree, generators, tags = families[family](*args)
    except TypeError as e:
        raise CatalogError("{}: {}".format(name, e))
    name = name.replace(" ", "")
    return _validated(name, degree, generators, set(tags))


def build_group(name: str, element_cap=None) -> PermGroup:
    return build_entry(name).group(element_cap=element_cap)


def _validated(name, degree, generators, tags, line=None) -> CatalogEntry:
    if not isinstance(degree, int) or degree < 1:
        raise CatalogError(
            "{}: degree must be a positive integer".format(name), line
        )
    checked = []
    for g in generators:
        try:
            p = Permutation(g)
        except (PermutationError, TypeError, ValueError) as e:
            raise CatalogError("{}: {}".format(name, e), line)
        if p.degree != degree:
            raise CatalogError(
                "{}: generator of degree {} in a group of degree {}".format(
                    name, p.degree, degree
                ),
                line,
            )
        checked.append(p.images)
    return CatalogEntry(name, degree, tuple(checked), frozenset(tags))


#
# files
#


def read_catalog_file(path) -> List[CatalogEntry]:
    entries = []
    with open(path, encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise CatalogError("malformed JSON: {}".format(e.msg), number)
            if not isinstance(record, dict) or "name" not in record:
                raise CatalogError("record without a name", number)
            if "generators" not in record:
                try:
                    entries.append(build_entry(str(record["name"])))
                except CatalogError as e:
                    raise CatalogError(str(e), number)
                continue
            if not isinstance(record["generators"], list):
                raise CatalogError("generators must be a list", number)
            entries.append(
                _validated(
                    str(record["name"]),
                    record.get("degree"),
                    record["generators"],
                    set(record.get("tags", [])),
                    line=number,
                )
            )
    return entries


def load_catalog(source) -> List[CatalogEntry]:
    """
    A JSON-lines file, the word "builtin" for the builtin catalog, or family
    names separated by ";".
    """
    source = str(source)
    if os.path.isfile(source):
        entries = read_catalog_file(source)
    elif source == "builtin":
        entries = [build_entry(name) for name in BUILTIN_CATALOG]
    elif NAME_RE.match(source.split(";")[0]):
        entries = [build_entry(n) for n in source.split(";") if n.strip()]
    else:
        raise CatalogError(
            "no catalog file or group name {!r}".format(source)
        )
    entries = chain_hooks("catalog_postprocess", entries)
    logger.info(
        "catalog: loaded {} entries from {}".format(len(entries), source)
    )
    return entries
