#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import pytest

from crownkit.blocks import (
    BlockSystem,
    NotAPartition,
    NotTransitive,
    OracleTooLarge,
    all_block_systems,
    is_block_system,
    maximal_block_systems,
    oracle_maximal_system_count,
    partition_oracle_block_systems,
    setwise_stabilizer,
    subgroup_of_block_system,
    system_of_subgroup,
)
from crownkit.catalog import BUILTIN_CATALOG, build_group
from crownkit.lattice import maximal_overgroups, subgroup_interval
from crownkit.permcore import PermGroup, Permutation, point_stabilizer


def test_parse_and_format():
    P = BlockSystem.parse("{2,4}{3,1}", 4)
    assert P.blocks == ((0, 2), (1, 3))
    assert str(P) == "{1,3}{2,4}"
    assert P.block_containing(2) == (0, 2)
    assert P.block_of == (0, 1, 0, 1)
    assert not P.is_trivial()
    assert BlockSystem.parse("{1}{2}{3}", 3).is_trivial()
    assert BlockSystem.parse("{1,2,3}", 3).is_trivial()


@pytest.mark.parametrize(
    "text,degree",
    [
        ("{1,2}{2,3}", 3),
        ("{1,2}", 3),
        ("{1,2}{3,4}", 3),
        ("1,2", 2),
        ("{1,x}{2}", 2),
        ("{}{1,2}", 2),
    ],
)
def test_not_a_partition(text, degree):
    with pytest.raises(NotAPartition):
        BlockSystem.parse(text, degree)


def test_is_block_system(d8):
    assert is_block_system(d8, [[0, 2], [1, 3]])
    assert not is_block_system(d8, [[0, 1], [2, 3]])
    assert is_block_system(d8, [[0], [1], [2], [3]])
    assert is_block_system(d8, [[0, 1, 2, 3]])
    with pytest.raises(NotAPartition):
        is_block_system(d8, BlockSystem.parse("{1,2}{3}", 3))


def test_primitive_groups(s4, a5):
    for G in (s4, a5):
        systems = maximal_block_systems(G, 0)
        assert [str(P) for P in systems] == [
            "".join("{%d}" % (i + 1) for i in range(G.degree))
        ]
        assert maximal_block_systems(G, 0, exclude_trivial=True) == []


def test_square(d8):
    systems = maximal_block_systems(d8, 0)
    assert [str(P) for P in systems] == ["{1,3}{2,4}"]
    assert len(all_block_systems(d8, 0)) == 3


def test_cyclic_six():
    G = build_group("Cyclic(6)")
    systems = maximal_block_systems(G, 0)
    assert [str(P) for P in systems] == ["{1,4}{2,5}{3,6}", "{1,3,5}{2,4,6}"]
    assert len(all_block_systems(G, 0)) == 4
    assert len(partition_oracle_block_systems(G)) == 4


def test_maximal_systems_do_not_depend_on_the_point(d8):
    for omega in range(4):
        assert [str(P) for P in maximal_block_systems(d8, omega)] == [
            "{1,3}{2,4}"
        ]


def test_not_transitive():
    G = PermGroup([Permutation.from_cycles("(1 2)", 4)])
    with pytest.raises(NotTransitive):
        maximal_block_systems(G, 0)
    with pytest.raises(NotTransitive):
        all_block_systems(G, 0)


def test_subgroup_of_block_system(d8):
    (P,) = maximal_block_systems(d8, 0)
    M = subgroup_of_block_system(d8, P, 0)
    assert maximal_overgroups(d8, point_stabilizer(d8, 0)) == [M]
    assert setwise_stabilizer(d8, [0, 2]) == M


def test_oracle_too_large():
    with pytest.raises(OracleTooLarge):
        partition_oracle_block_systems(build_group("Cyclic(8)"))


@pytest.mark.parametrize(
    "name",
    [
        name
        for name in BUILTIN_CATALOG
        if not name.startswith(("DirectProduct", "CrownPower"))
    ],
)
def test_correspondence_with_partition_oracle(name):
    G = build_group(name)
    if G.degree > 7 or not G.is_transitive():
        pytest.skip("outside the partition oracle")
    found = maximal_block_systems(G, 0)
    assert len(found) == oracle_maximal_system_count(G, 0)
    oracle = partition_oracle_block_systems(G)
    assert all(P in oracle for P in found)
    assert sorted(oracle, key=str) == sorted(all_block_systems(G, 0), key=str)


@pytest.mark.parametrize(
    "name",
    [
        name
        for name in BUILTIN_CATALOG
        if not name.startswith(("DirectProduct", "CrownPower"))
    ],
)
def test_every_overgroup_of_a_point_stabilizer_is_a_block_stabilizer(name):
    G = build_group(name)
    if G.degree > 8 or not G.is_transitive():
        pytest.skip("only transitive groups up to degree 8")
    interval = subgroup_interval(G, point_stabilizer(G, 0))
    systems = set()
    for M in interval.members:
        P = system_of_subgroup(G, M, 0)
        assert is_block_system(G, P)
        assert len(P.block_containing(0)) == M.order // interval.bottom.order
        assert subgroup_of_block_system(G, P, 0) == M
        systems.add(str(P))
    assert len(systems) == len(interval.members)
