#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

"""
Block systems of imprimitivity of transitive groups.

A subgroup M with G_w <= M <= G corresponds to the block system formed by
the G-translates of the orbit w^M. The maximal systems are the ones coming
from maximal subgroups M; for a primitive group that is the singleton
partition (M = G_w).
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from crownkit import CrownkitError
from crownkit.lattice import is_maximal, maximal_overgroups, subgroup_interval
from crownkit.permcore import PermGroup, SubgroupHandle, point_stabilizer
from crownkit.settings import logger
from crownkit.util import bell_number, format_partition, set_partitions


class NotAPartition(CrownkitError):
    pass


class NotTransitive(CrownkitError):
    pass


class OracleTooLarge(CrownkitError):
    pass


BLOCK_RE = re.compile(r"\{([^{}]*)\}")


@dataclass(frozen=True)
class BlockSystem:
    blocks: Tuple[Tuple[int, ...], ...]
    degree: int

    @classmethod
    def from_blocks(
        cls, blocks: Iterable[Iterable[int]], degree: int
    ) -> "BlockSystem":
        canonical = sorted(tuple(sorted(int(p) for p in b)) for b in blocks)
        points = [p for b in canonical for p in b]
        if any(not b for b in canonical) or sorted(points) != list(
            range(degree)
        ):
            raise NotAPartition(
                "{} is not a partition of {} points".format(
                    format_partition(canonical), degree
                )
            )
        return cls(tuple(canonical), degree)

    @classmethod
    def parse(cls, text: str, degree: int) -> "BlockSystem":
        """Read the 1-based text form, e.g. "{1,3}{2,4}"."""
        if re.fullmatch(r"\s*(\{[^{}]*\}\s*)+", text) is None:
            raise NotAPartition("malformed partition {!r}".format(text))
        blocks = []
        for body in BLOCK_RE.findall(text):
            try:
                blocks.append(
                    [int(p) - 1 for p in body.split(",") if p.strip()]
                )
            except ValueError:
                raise NotAPartition("malformed block {{{}}}".format(body))
        return cls.from_blocks(blocks, degree)

    @property
    def partition(self) -> Tuple[Tuple[int, ...], ...]:
        return self.blocks

    @cached_property
    def block_of(self) -> Tuple[int, ...]:
        owner = [0] * self.degree
        for i, block in enumerate(self.blocks):
            for p in block:
                owner[p] = i
        return tuple(owner)

    def block_containing(self, point: int) -> Tuple[int, ...]:
        return self.blocks[self.block_of[point]]

    def is_trivial(self) -> bool:
        return len(self.blocks) in (1, self.degree)

    def __str__(self) -> str:
        return format_partition(self.blocks)


def _as_system(G: PermGroup, P) -> BlockSystem:
    if isinstance(P, BlockSystem):
        if P.degree != G.degree:
            raise NotAPartition("partition of the wrong degree")
        return P
    return BlockSystem.from_blocks(P, G.degree)


def is_block_system(G: PermGroup, P) -> bool:
    """True iff every generator maps every block onto a block."""
    system = _as_system(G, P)
    owner = system.block_of
    for g in G.generators:
        for block in system.blocks:
            targets = {owner[g.images[p]] for p in block}
            if len(targets) != 1:
                return False
            if len(system.blocks[targets.pop()]) != len(block):
                return False
    return True


def _require_transitive(G: PermGroup):
    if not G.is_transitive():
        raise NotTransitive("{} is not transitive".format(G.name))


def system_of_subgroup(
    G: PermGroup, M: SubgroupHandle, omega: int
) -> BlockSystem:
    """The G-translates of the orbit of omega under M."""
    block = np.unique(G.images[M.indexes, omega])
    translates = np.unique(np.sort(G.images[:, block], axis=1), axis=0)
    return BlockSystem.from_blocks(translates.tolist(), G.degree)


def setwise_stabilizer(G: PermGroup, block: Sequence[int]) -> SubgroupHandle:
    G.require_elements("setwise_stabilizer")
    block = np.asarray(sorted(block))
    return G.subgroup(np.isin(G.images[:, block], block).all(axis=1))


def subgroup_of_block_system(
    G: PermGroup, P: BlockSystem, omega: int
) -> SubgroupHandle:
    return setwise_stabilizer(G, P.block_containing(omega))


def maximal_block_systems(
    G: PermGroup, omega: int, exclude_trivial: bool = False
) -> List[BlockSystem]:
    _require_transitive(G)
    stabilizer = point_stabilizer(G, omega)
    systems = [
        system_of_subgroup(G, M, omega)
        for M in maximal_overgroups(G, stabilizer)
    ]
    if exclude_trivial:
        systems = [P for P in systems if len(P.blocks) != G.degree]
    return systems


def all_block_systems(G: PermGroup, omega: int) -> List[BlockSystem]:
    _require_transitive(G)
    interval = subgroup_interval(G, point_stabilizer(G, omega))
    systems = []
    for M in interval.members:
        P = system_of_subgroup(G, M, omega)
        if P not in systems:
            systems.append(P)
    return systems


def partition_oracle_block_systems(
    G: PermGroup, max_degree: int = 7
) -> List[BlockSystem]:
    """Every set partition of the domain that passes is_block_system."""
    if G.degree > max_degree:
        raise OracleTooLarge(
            "partition enumeration is limited to degree {}".format(max_degree)
        )
    logger.debug(
        "blocks: checking {} set partitions of degree {}".format(
            bell_number(G.degree), G.degree
        )
    )
    return [
        P
        for P in (
            BlockSystem.from_blocks(blocks, G.degree)
            for blocks in set_partitions(G.degree)
        )
        if is_block_system(G, P)
    ]


def oracle_maximal_system_count(G: PermGroup, omega: int) -> int:
    """
    Count the block systems whose stabilizer of the block through omega is a
    maximal subgroup, found without the interval search.
    """
    _require_transitive(G)
    count = 0
    for P in partition_oracle_block_systems(G):
        if is_maximal(G, subgroup_of_block_system(G, P, omega)):
            count += 1
    logger.debug(
        "blocks: partition oracle finds {} maximal systems of {}".format(
            count, G.name
        )
    )
    return count
