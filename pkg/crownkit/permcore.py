#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

"""
Permutations and permutation groups.

Composition is left-then-right everywhere: (p * q)(x) = q(p(x)). Points are
0-based internally; cycle notation is read and written 1-based.

A PermGroup eagerly builds a deterministic stabilizer chain. When its order
is within ELEMENT_CAP the elements are enumerated into an (order x degree)
numpy table, indexed by coset rank along the chain, so index 0 is the
identity. Subgroups of such a group are bitsets over that indexing.
"""

import math
import re
from collections import deque
from functools import cached_property, reduce
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from crownkit import CapExceeded, CrownkitError
from crownkit.settings import config, logger
from crownkit.util import (
    bits_to_indexes,
    bits_to_mask,
    instance_lru_cache,
    is_subset,
    iter_bits,
    make_bits,
    mask_to_bits,
)


class PermutationError(CrownkitError):
    pass


class NotInGroup(CrownkitError):
    pass


class NotASubgroup(CrownkitError):
    pass


class HomomorphismError(CrownkitError):
    pass


class ElementCapExceeded(CapExceeded):
    pass


CYCLE_RE = re.compile(r"\(([^()]*)\)")
CYCLES_RE = re.compile(r"\s*(?:\([^()]*\)\s*)+")
TERM_RE = re.compile(r"\s*((?:\([^()]*\)\s*)+)(?:\^\s*(-?\d+))?\s*")


def _mul(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple([q[i] for i in p])


def _inv(p: Tuple[int, ...]) -> Tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise PermutationError(
                "not a bijection on 0..{}: {}".format(
                    len(images) - 1, list(images)
                )
            )
        self.images = images
        self._hash = hash(images)

    @classmethod
    def trusted(cls, images) -> "Permutation":
        obj = object.__new__(cls)
        obj.images = tuple(int(i) for i in images)
        obj._hash = hash(obj.images)
        return obj

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls.trusted(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """
        Parse "(1 2 3)(4 5)" at the given degree. Cycles are multiplied
        left to right, so non-disjoint cycles are allowed.
        """
        if degree < 1:
            raise PermutationError("degree must be positive")
        if not text.strip():
            raise PermutationError("empty cycle string")
        if CYCLES_RE.fullmatch(text) is None:
            raise PermutationError("malformed cycle string {!r}".format(text))
        result = list(range(degree))
        for body in CYCLE_RE.findall(text):
            tokens = body.split()
            try:
                points = [int(t) - 1 for t in tokens]
            except ValueError:
                raise PermutationError(
                    "malformed cycle ({}) in {!r}".format(body, text)
                )
            if len(set(points)) != len(points):
                raise PermutationError(
                    "repeated point in cycle ({})".format(body)
                )
            for p in points:
                if not 0 <= p < degree:
                    raise PermutationError(
                        "point {} outside degree {}".format(p + 1, degree)
                    )
            cycle = list(range(degree))
            for a, b in zip(points, points[1:] + points[:1]):
                cycle[a] = b
            result = [cycle[x] for x in result]
        return cls.trusted(result)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def _check_degree(self, other: "Permutation"):
        if self.degree != other.degree:
            raise PermutationError(
                "degree mismatch: {} vs {}".format(self.degree, other.degree)
            )

    def __mul__(self, other: "Permutation") -> "Permutation":
        self._check_degree(other)
        return Permutation.trusted(_mul(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation.trusted(_inv(self.images))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Permutation.identity(self.degree)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """self^g = g^-1 self g"""
        return g.inverse() * self * g

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Permutation) and self.images == other.images
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for i, x in enumerate(self.images):
            if i in seen or x == i:
                continue
            cycle = [i]
            seen.add(i)
            j = x
            while j != i:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return reduce(math.lcm, (len(c) for c in self.cycles()), 1)

    def support(self) -> List[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join(
            "(" + " ".join(str(p + 1) for p in c) + ")" for c in cycles
        )

    def __repr__(self) -> str:
        return "Permutation('{}', degree={})".format(self, self.degree)


def perm_algebra(expr: str, degree: int) -> Permutation:
    """
    Evaluate products of cycle strings with optional integer powers, e.g.
    "(1 2)(3 4) * (1 3)^-1". Products are read left to right.
    """
    result = Permutation.identity(degree)
    for term in expr.split("*"):
        match = TERM_RE.fullmatch(term)
        if match is None:
            raise PermutationError("malformed term {!r}".format(term))
        p = Permutation.from_cycles(match.group(1), degree)
        if match.group(2) is not None:
            p = p ** int(match.group(2))
        result = result * p
    return result


def _orbit_transversal(gens, point: int, degree: int):
    ident = tuple(range(degree))
    transversal = {point: ident}
    queue = deque([point])
    while queue:
        gamma = queue.popleft()
        u = transversal[gamma]
        for s in gens:
            delta = s[gamma]
            if delta not in transversal:
                transversal[delta] = _mul(u, s)
                queue.append(delta)
    return transversal


class StabilizerChain:
    """
    Deterministic Schreier-Sims. Base points are taken as the smallest point
    moved by the generator that forces a new level, levels are scanned from
    the deepest one upwards.
    """

    def __init__(self, generators: Sequence[Tuple[int, ...]], degree: int):
        self.degree = degree
        ident = tuple(range(degree))
        gens = [g for g in generators if g != ident]
        base: List[int] = []
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(self._first_moved(g))
        levels = [
            [g for g in gens if all(g[base[m]] == base[m] for m in range(l))]
            for l in range(len(base))
        ]
        trans = [
            _orbit_transversal(levels[l], base[l], degree)
            for l in range(len(base))
        ]
        i = len(base) - 1
        while i >= 0:
            found = self._schreier_test(i, base, levels, trans)
            if found is None:
                i -= 1
                continue
            residue, j = found
            if j == len(base):
                base.append(self._first_moved(residue))
                levels.append([])
                trans.append({})
            for l in range(i + 1, j + 1):
                levels[l].append(residue)
                trans[l] = _orbit_transversal(levels[l], base[l], degree)
            i = j
        self.base = base
        self.strong_generators = levels
        self.transversals = trans
        self.inverse_transversals = [
            {beta: _inv(u) for beta, u in t.items()} for t in trans
        ]
        self.order = math.prod(len(t) for t in trans)
        self._build_arrays()

    @staticmethod
    def _first_moved(g) -> int:
        return next(i for i, x in enumerate(g) if i != x)

    def _schreier_test(self, i, base, levels, trans):
        ident = tuple(range(self.degree))
        for beta, u in list(trans[i].items()):
            for s in levels[i]:
                h = _mul(_mul(u, s), _inv(trans[i][s[beta]]))
                if h == ident:
                    continue
                residue, j = self._strip(h, base, trans, i + 1)
                if j < len(base) or residue != ident:
                    return residue, j
        return None

    @staticmethod
    def _strip(h, base, trans, start):
        for l in range(start, len(base)):
            u = trans[l].get(h[base[l]])
            if u is None:
                return h, l
            h = _mul(h, _inv(u))
        return h, len(base)

    def sift(self, images: Tuple[int, ...]):
        residue = images
        for l, b in enumerate(self.base):
            uinv = self.inverse_transversals[l].get(residue[b])
            if uinv is None:
                return residue, l
            residue = _mul(residue, uinv)
        return residue, len(self.base)

    def contains(self, images: Tuple[int, ...]) -> bool:
        residue, level = self.sift(images)
        return level == len(self.base) and all(
            i == x for i, x in enumerate(residue)
        )

    def _build_arrays(self):
        n = self.degree
        self.sizes = [len(t) for t in self.transversals]
        self.strides = [
            math.prod(self.sizes[:l]) for l in range(len(self.sizes))
        ]
        self.positions = []
        self.u_arrays = []
        self.uinv_arrays = []
        for t, tinv in zip(self.transversals, self.inverse_transversals):
            orbit = list(t.keys())
            pos = np.full(n, -1, dtype=np.int64)
            pos[orbit] = np.arange(len(orbit))
            self.positions.append(pos)
            self.u_arrays.append(np.array([t[b] for b in orbit], np.int32))
            self.uinv_arrays.append(
                np.array([tinv[b] for b in orbit], np.int32)
            )

    def rank(self, images: np.ndarray) -> np.ndarray:
        """Coset rank of every row; -1 marks rows outside the group."""
        g = np.asarray(images, dtype=np.int32).reshape(-1, self.degree)
        ranks = np.zeros(len(g), dtype=np.int64)
        ok = np.ones(len(g), dtype=bool)
        for l, b in enumerate(self.base):
            p = self.positions[l][g[:, b]]
            ok &= p >= 0
            p = np.where(p < 0, 0, p)
            ranks += p * self.strides[l]
            g = self.uinv_arrays[l][p[:, None], g]
        ok &= (g == np.arange(self.degree, dtype=np.int32)).all(axis=1)
        ranks[~ok] = -1
        return ranks

    def unrank(self, ranks: np.ndarray) -> np.ndarray:
        ranks = np.asarray(ranks, dtype=np.int64)
        g = np.tile(np.arange(self.degree, dtype=np.int32), (len(ranks), 1))
        for l in reversed(range(len(self.base))):
            digit = (ranks // self.strides[l]) % self.sizes[l]
            g = self.u_arrays[l][digit[:, None], g]
        return g

    def enumerate(self) -> np.ndarray:
        table = np.arange(self.degree, dtype=np.int32)[None, :]
        for u in reversed(self.u_arrays):
            table = u[:, table].transpose(1, 0, 2).reshape(-1, self.degree)
        return np.ascontiguousarray(table)


class PermGroup:
    def __init__(
        self,
        generators: Iterable[Permutation | Sequence[int]] = (),
        degree: Optional[int] = None,
        name: str = "",
        element_cap: Optional[int] = None,
        layout: Optional[Sequence[Tuple[int, int]]] = None,
    ):
        gens = [
            g if isinstance(g, Permutation) else Permutation(g)
            for g in generators
        ]
        if degree is None:
            if not gens:
                raise PermutationError(
                    "degree required for an empty generating set"
                )
            degree = gens[0].degree
        if degree < 1:
            raise PermutationError("degree must be positive")
        for g in gens:
            if g.degree != degree:
                raise PermutationError(
                    "generator {} does not have degree {}".format(g, degree)
                )
        self.degree = degree
        self.generators = tuple(gens)
        self.name = name or "<{}>".format(
            ",".join(str(g) for g in gens) or "()"
        )
        # (offset, degree) of each direct factor's domain, if known
        self.layout = tuple(layout) if layout is not None else None
        self.chain = StabilizerChain([g.images for g in gens], degree)
        self.order = self.chain.order
        cap = config["ELEMENT_CAP"] if element_cap is None else element_cap
        self.images: Optional[np.ndarray] = None
        if self.order <= cap:
            self.images = self.chain.enumerate()
            self.images.setflags(write=False)
        maxsize = max(16, 2**22 // self.order)
        self._right_map = instance_lru_cache(self._compute_right_map, maxsize)
        self._conj_map = instance_lru_cache(self._compute_conj_map, maxsize)

    def __repr__(self) -> str:
        return "<PermGroup {} degree={} order={}>".format(
            self.name, self.degree, self.order
        )

    def __str__(self) -> str:
        return self.name

    @property
    def has_elements(self) -> bool:
        return self.images is not None

    def require_elements(self, what: str = "this operation"):
        if self.images is None:
            raise ElementCapExceeded(
                "{} needs the element list of {} (order {} > cap {})".format(
                    what, self.name, self.order, config["ELEMENT_CAP"]
                )
            )

    @cached_property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    @cached_property
    def elements(self) -> List[Permutation]:
        self.require_elements("the element list")
        return [Permutation.trusted(row) for row in self.images]

    def element(self, index: int) -> Permutation:
        self.require_elements("element lookup")
        return Permutation.trusted(self.images[index])

    def _check(self, g: Permutation):
        if g.degree != self.degree:
            raise PermutationError(
                "degree mismatch: {} vs {}".format(g.degree, self.degree)
            )

    def __contains__(self, g: Permutation) -> bool:
        self._check(g)
        return self.chain.contains(g.images)

    def index(self, g: Permutation) -> int:
        self._check(g)
        rank = int(self.chain.rank(np.array(g.images))[0])
        if rank < 0:
            raise NotInGroup("{} is not an element of {}".format(g, self.name))
        return rank

    def rank_images(self, images: np.ndarray) -> np.ndarray:
        return self.chain.rank(images)

    def iter_images(self, chunk: int = 4096) -> Iterator[np.ndarray]:
        """Stream the elements in index order without keeping the table."""
        for start in range(0, self.order, chunk):
            stop = min(self.order, start + chunk)
            yield self.chain.unrank(np.arange(start, stop))

    def multiply(self, left: np.ndarray, right: int) -> np.ndarray:
        """Indexes of E[i] * E[right] for every i in left."""
        self.require_elements("multiplication tables")
        g = self.images[right]
        return self.chain.rank(g[self.images[left]])

    def _compute_right_map(self, j: int) -> np.ndarray:
        table = self.multiply(np.arange(self.order), j)
        table.setflags(write=False)
        return table

    def right_map(self, j: int) -> np.ndarray:
        return self._right_map(int(j))

    def conjugate_indexes(self, indexes: np.ndarray, j: int) -> np.ndarray:
        """Indexes of E[j]^-1 E[i] E[j] for every i in indexes."""
        self.require_elements("conjugation tables")
        g = self.images[j]
        ginv = np.argsort(g)
        return self.chain.rank(g[self.images[indexes][:, ginv]])

    def _compute_conj_map(self, j: int) -> np.ndarray:
        table = self.conjugate_indexes(np.arange(self.order), j)
        table.setflags(write=False)
        return table

    def conj_map(self, j: int) -> np.ndarray:
        return self._conj_map(int(j))

    @cached_property
    def generator_indexes(self) -> Tuple[int, ...]:
        return tuple(self.index(g) for g in self.generators)

    @cached_property
    def inverse_map(self) -> np.ndarray:
        self.require_elements("inverse tables")
        return self.chain.rank(np.argsort(self.images, axis=1))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    @cached_property
    def orbits(self) -> List[List[int]]:
        seen = [False] * self.degree
        orbits = []
        for start in range(self.degree):
            if seen[start]:
                continue
            orbit = [start]
            seen[start] = True
            for x in orbit:
                for g in self.generators:
                    y = g.images[x]
                    if not seen[y]:
                        seen[y] = True
                        orbit.append(y)
            orbits.append(sorted(orbit))
        return orbits

    def is_transitive(self) -> bool:
        return len(self.orbits) == 1

    @cached_property
    def whole(self) -> "SubgroupHandle":
        self.require_elements("subgroup handles")
        return SubgroupHandle(self, (1 << self.order) - 1, self.generators)

    @cached_property
    def trivial(self) -> "SubgroupHandle":
        self.require_elements("subgroup handles")
        return SubgroupHandle(self, make_bits([0]), ())

    def subgroup(self, mask: np.ndarray, generators=None) -> "SubgroupHandle":
        return SubgroupHandle(self, mask_to_bits(mask), generators)

    def contains_group(self, other: "PermGroup") -> bool:
        return other.degree == self.degree and all(
            g in self for g in other.generators
        )


def close_subgroup(
    G: PermGroup, generators: Iterable[int], seed: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Mask of the subgroup generated by the given element indexes. A seed mask
    must be a subgroup whose generators are among the given ones.
    """
    mask = np.zeros(G.order, dtype=bool) if seed is None else seed.copy()
    mask[0] = True
    gens = sorted({int(g) for g in generators if g != 0})
    frontier = np.flatnonzero(mask)
    while frontier.size and gens:
        new = np.concatenate([G.right_map(g)[frontier] for g in gens])
        new = np.unique(new[~mask[new]])
        mask[new] = True
        frontier = new
    return mask


class SubgroupHandle:
    """A subgroup of a parent PermGroup, stored as a bitset of indexes."""

    __slots__ = ("parent", "bits", "order", "_generators")

    def __init__(self, parent: PermGroup, bits: int, generators=None):
        self.parent = parent
        self.bits = int(bits)
        self.order = self.bits.bit_count()
        self._generators = (
            tuple(generators) if generators is not None else None
        )

    @classmethod
    def generated_by(
        cls, parent: PermGroup, elements: Iterable[Permutation]
    ) -> "SubgroupHandle":
        elements = list(elements)
        indexes = [parent.index(g) for g in elements]
        return parent.subgroup(close_subgroup(parent, indexes), elements)

    @property
    def mask(self) -> np.ndarray:
        return bits_to_mask(self.bits, self.parent.order)

    @property
    def indexes(self) -> np.ndarray:
        return bits_to_indexes(self.bits, self.parent.order)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        if self._generators is None:
            self._generators = self.canonical_generators()
        return self._generators

    def canonical_generators(self) -> Tuple[Permutation, ...]:
        """Greedy generating set: smallest index outside the span so far."""
        G = self.parent
        gens: List[int] = []
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        for i in iter_bits(self.bits):
            if not mask[i]:
                gens.append(i)
                mask = close_subgroup(G, gens, seed=mask)
        return tuple(G.element(i) for i in gens)

    def elements(self) -> List[Permutation]:
        return [self.parent.element(i) for i in iter_bits(self.bits)]

    def __contains__(self, g) -> bool:
        if isinstance(g, Permutation):
            if g not in self.parent:
                return False
            g = self.parent.index(g)
        return bool(self.bits >> int(g) & 1)

    def _check_parent(self, other: "SubgroupHandle"):
        if other.parent is not self.parent:
            raise NotASubgroup("subgroups of different parents")

    def __le__(self, other: "SubgroupHandle") -> bool:
        self._check_parent(other)
        return is_subset(self.bits, other.bits)

    def __lt__(self, other: "SubgroupHandle") -> bool:
        return self.bits != other.bits and self <= other

    def __and__(self, other: "SubgroupHandle") -> "SubgroupHandle":
        self._check_parent(other)
        return SubgroupHandle(self.parent, self.bits & other.bits)

    def join(self, other: "SubgroupHandle") -> "SubgroupHandle":
        self._check_parent(other)
        gens = [self.parent.index(g) for g in self.generators]
        gens += [self.parent.index(g) for g in other.generators]
        mask = close_subgroup(self.parent, gens, seed=self.mask)
        return self.parent.subgroup(
            mask, self.generators + other.generators
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubgroupHandle)
            and other.parent is self.parent
            and other.bits == self.bits
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.bits))

    def sort_key(self) -> Tuple[int, int]:
        return (self.order, self.bits)

    def is_trivial(self) -> bool:
        return self.bits == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def as_group(self, name: str = "", element_cap=None) -> PermGroup:
        return PermGroup(
            self.generators,
            self.parent.degree,
            name=name or self.describe(),
            element_cap=element_cap,
        )

    def describe(self) -> str:
        if self.is_trivial():
            return "1"
        gens = self.canonical_generators()
        return "<" + ",".join(str(g) for g in gens) + ">"

    def __repr__(self) -> str:
        return "<SubgroupHandle {} order={} of {}>".format(
            self.describe(), self.order, self.parent.name
        )


def extend_partial_map(
    source: PermGroup, target: PermGroup, table: np.ndarray, pairs
) -> bool:
    """
    Extend the index map table (-1 = unassigned) in place along the Cayley
    graph edges x -> x*g, where pairs holds (g, image of g) as indexes.
    Every edge leaving an assigned element is checked; False on the first
    inconsistency.
    """
    frontier = np.flatnonzero(table >= 0)
    while frontier.size:
        fresh = []
        for g, h in pairs:
            y = source.right_map(g)[frontier]
            z = target.right_map(h)[table[frontier]]
            known = table[y] >= 0
            if np.any(table[y[known]] != z[known]):
                return False
            table[y[~known]] = z[~known]
            fresh.append(y[~known])
        if not fresh:
            break
        frontier = np.unique(np.concatenate(fresh))
    return True


class GroupHom:
    """
    A homomorphism given by the images of the source generators. The full
    index table is built by a breadth-first walk of the Cayley graph, which
    checks every edge, so an inconsistent generator assignment is rejected.
    """

    def __init__(
        self,
        source: PermGroup,
        target: PermGroup,
        generator_images: Sequence[Permutation],
    ):
        if len(generator_images) != len(source.generators):
            raise HomomorphismError(
                "{} generator images for {} generators".format(
                    len(generator_images), len(source.generators)
                )
            )
        source.require_elements("a homomorphism table")
        target.require_elements("a homomorphism table")
        self.source = source
        self.target = target
        self.generator_images = tuple(generator_images)
        try:
            pairs = [
                (source.index(g), target.index(h))
                for g, h in zip(source.generators, generator_images)
            ]
        except (NotInGroup, PermutationError) as e:
            raise HomomorphismError(str(e))
        self.index_map = self._tabulate(pairs)
        self.index_map.setflags(write=False)

    def _tabulate(self, pairs) -> np.ndarray:
        table = np.full(self.source.order, -1, dtype=np.int64)
        table[0] = 0
        if not extend_partial_map(self.source, self.target, table, pairs):
            raise HomomorphismError(
                "generator images of {} do not define a "
                "homomorphism".format(self.source.name)
            )
        return table

    def __call__(self, g: Permutation) -> Permutation:
        return self.target.element(int(self.index_map[self.source.index(g)]))

    @cached_property
    def kernel(self) -> SubgroupHandle:
        return self.source.subgroup(self.index_map == 0)

    def image(self, H: Optional[SubgroupHandle] = None) -> SubgroupHandle:
        indexes = (
            self.index_map if H is None else self.index_map[H.indexes]
        )
        mask = np.zeros(self.target.order, dtype=bool)
        mask[indexes] = True
        return self.target.subgroup(mask)

    def preimage(self, K: SubgroupHandle) -> SubgroupHandle:
        if K.parent is not self.target:
            raise NotASubgroup("subgroup of another group than the target")
        return self.source.subgroup(K.mask[self.index_map])


def _check_subgroup(G: PermGroup, H: SubgroupHandle):
    if H.parent is not G:
        raise NotASubgroup(
            "{} is not a subgroup handle of {}".format(H.describe(), G.name)
        )


def group_order(gens: Sequence[Permutation], degree: int) -> int:
    if degree < 1:
        raise PermutationError("degree must be positive")
    return PermGroup(gens, degree, element_cap=0).order


def membership(g: Permutation, G: PermGroup) -> bool:
    return g in G


def orbit_partition(G: PermGroup) -> Tuple[List[List[int]], bool]:
    return G.orbits, G.is_transitive()


def point_stabilizer(G: PermGroup, omega: int) -> SubgroupHandle:
    if not 0 <= omega < G.degree:
        raise PermutationError(
            "point {} outside degree {}".format(omega + 1, G.degree)
        )
    G.require_elements("point_stabilizer")
    return G.subgroup(G.images[:, omega] == omega)


def coset_action(G: PermGroup, H: SubgroupHandle) -> GroupHom:
    """
    The action of G on the right cosets Hg. The returned homomorphism also
    carries coset_labels (element index -> coset) and coset_reps.
    """
    _check_subgroup(G, H)
    labels = np.full(G.order, -1, dtype=np.int64)
    reps = []
    members = H.indexes
    remaining = np.arange(G.order)
    while remaining.size:
        j = int(remaining[0])
        labels[G.multiply(members, j)] = len(reps)
        reps.append(j)
        remaining = remaining[labels[remaining] < 0]
    reps = np.array(reps)
    images = [
        Permutation.trusted(labels[G.multiply(reps, t)])
        for t in G.generator_indexes
    ]
    target = PermGroup(
        images,
        degree=len(reps),
        name="{} on cosets of {}".format(G.name, H.describe()),
    )
    hom = GroupHom(G, target, images)
    hom.coset_labels = labels
    hom.coset_reps = reps
    logger.debug(
        "permcore: coset action of {} has degree {} and image order {}".format(
            G.name, len(reps), target.order
        )
    )
    return hom


def is_normal(G: PermGroup, K: SubgroupHandle) -> bool:
    _check_subgroup(G, K)
    mask = K.mask
    members = K.indexes
    return all(mask[G.conj_map(t)[members]].all() for t in G.generator_indexes)


def quotient(G: PermGroup, N: SubgroupHandle) -> GroupHom:
    """G -> G/N realized on the cosets of N; the identity map if N = 1."""
    if not is_normal(G, N):
        raise NotASubgroup(
            "{} is not normal in {}".format(N.describe(), G.name)
        )
    if N.is_trivial():
        return GroupHom(G, G, G.generators)
    return coset_action(G, N)


def conjugate_subgroup(
    G: PermGroup, K: SubgroupHandle, j: int
) -> SubgroupHandle:
    mask = np.zeros(G.order, dtype=bool)
    mask[G.conj_map(j)[K.indexes]] = True
    return G.subgroup(mask)


def normal_closure(
    G: PermGroup, S: Iterable[Permutation | int]
) -> SubgroupHandle:
    G.require_elements("normal_closure")
    gens = []
    for s in S:
        if isinstance(s, Permutation):
            if s not in G:
                raise NotInGroup(
                    "{} is not an element of {}".format(s, G.name)
                )
            s = G.index(s)
        gens.append(int(s))
    mask = close_subgroup(G, gens)
    while True:
        extra = {
            int(c) for t in G.generator_indexes for c in G.conj_map(t)[gens]
        }
        extra = sorted(x for x in extra if not mask[x])
        if not extra:
            return G.subgroup(mask)
        gens += extra
        mask = close_subgroup(G, gens, seed=mask)


def core_of_subgroup(G: PermGroup, M: SubgroupHandle) -> SubgroupHandle:
    _check_subgroup(G, M)
    mask = M.mask
    while True:
        new = mask.copy()
        for t in G.generator_indexes:
            new &= mask[G.conj_map(t)]
        if (new == mask).all():
            return G.subgroup(mask)
        mask = new


def centralizer_of(
    G: PermGroup, S: Iterable[Permutation]
) -> SubgroupHandle:
    G.require_elements("centralizer_of")
    E = G.images
    mask = np.ones(G.order, dtype=bool)
    for s in S:
        G._check(s)
        arr = np.array(s.images, dtype=np.int32)
        mask &= (arr[E] == E[:, arr]).all(axis=1)
    return G.subgroup(mask)


def direct_product(*groups: PermGroup, name: str = "") -> PermGroup:
    """
    The direct product on the disjoint union of the domains. The layout
    records the (offset, degree) of every factor's domain.
    """
    degree = sum(G.degree for G in groups)
    gens = []
    layout = []
    offset = 0
    for G in groups:
        layout.append((offset, G.degree))
        for g in G.generators:
            images = list(range(degree))
            images[offset : offset + G.degree] = [
                offset + x for x in g.images
            ]
            gens.append(Permutation.trusted(images))
        offset += G.degree
    return PermGroup(
        gens,
        degree,
        name=name or "x".join(G.name for G in groups),
        layout=layout,
    )


def normal_closure_group(
    G: PermGroup, S: Iterable[Permutation], name: str = "", element_cap=0
) -> PermGroup:
    """Normal closure at generator level, usable above the element cap."""
    gens = [g for g in S if not g.is_identity()]
    closure = PermGroup(gens, G.degree, element_cap=0)
    queue = deque(gens)
    while queue:
        x = queue.popleft()
        for t in G.generators:
            y = x.conjugate(t)
            if y not in closure:
                gens.append(y)
                closure = PermGroup(gens, G.degree, element_cap=0)
                queue.append(y)
    return PermGroup(gens, G.degree, name=name, element_cap=element_cap)


def derived_subgroup(G: PermGroup, element_cap=0) -> PermGroup:
    commutators = [
        a.inverse() * b.inverse() * a * b
        for a in G.generators
        for b in G.generators
    ]
    return normal_closure_group(
        G,
        commutators,
        name="[{0},{0}]".format(G.name),
        element_cap=element_cap,
    )


def abelianization_order(G: PermGroup) -> int:
    return G.order // derived_subgroup(G).order


def is_soluble(G: PermGroup) -> bool:
    D = G
    while D.order > 1:
        derived = derived_subgroup(D)
        if derived.order == D.order:
            return False
        D = derived
    return True


def element_orders(G: PermGroup) -> np.ndarray:
    G.require_elements("element_orders")
    E = G.images
    ident = np.arange(G.degree, dtype=E.dtype)
    orders = np.zeros(G.order, dtype=np.int64)
    todo = np.arange(G.order)
    power = E.copy()
    k = 1
    while todo.size:
        done = (power == ident).all(axis=1)
        orders[todo[done]] = k
        todo, power = todo[~done], power[~done]
        power = np.take_along_axis(E[todo], power, axis=1)
        k += 1
    return orders
