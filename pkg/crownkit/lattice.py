#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

"""
Subgroup intervals, maximal subgroups and normal structure.

Every subgroup is a SubgroupHandle over the parent's element indexing, ties
are broken by (order, bitset) so results come out in a reproducible order.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import List, Sequence, Tuple

import numpy as np

from crownkit import CapExceeded, CrownkitError
from crownkit.permcore import (
    NotASubgroup,
    Permutation,
    PermGroup,
    SubgroupHandle,
    close_subgroup,
    conjugate_subgroup,
    core_of_subgroup,
    is_normal,
    normal_closure,
    normal_closure_group,
    quotient,
)
from crownkit.settings import config, logger
from crownkit.util import group_cache, is_subset, mask_to_bits

__all__ = [
    "SubgroupHandle",
    "SubgroupInterval",
    "ChiefFactor",
    "ChiefSeries",
    "generated_subgroup",
    "subgroup_interval",
    "maximal_overgroups",
    "greedy_maximal_overgroup",
    "frattini",
    "normal_subgroups",
    "minimal_normal_subgroups",
    "socle",
    "chief_series",
    "is_frattini_factor",
]


class IntervalCapExceeded(CapExceeded):
    pass


class NotAChiefFactor(CrownkitError):
    pass


class TrivialGroupError(CrownkitError):
    pass


class LatticeError(CrownkitError):
    pass


def _check_subgroup(G: PermGroup, H: SubgroupHandle):
    if H.parent is not G:
        raise NotASubgroup(
            "{} is not a subgroup handle of {}".format(H.describe(), G.name)
        )


def generated_subgroup(G: PermGroup, S) -> SubgroupHandle:
    G.require_elements("generated_subgroup")
    return SubgroupHandle.generated_by(G, S)


def double_coset(G: PermGroup, K: SubgroupHandle, j: int) -> np.ndarray:
    """Mask of K g K for the element g with index j."""
    start = G.multiply(K.indexes, j)
    mask = np.zeros(G.order, dtype=bool)
    mask[start] = True
    kgens = [G.index(g) for g in K.generators]
    frontier = start
    while frontier.size and kgens:
        new = np.concatenate([G.right_map(k)[frontier] for k in kgens])
        new = np.unique(new[~mask[new]])
        mask[new] = True
        frontier = new
    return mask


def one_step_extensions(G: PermGroup, K: SubgroupHandle):
    """
    The distinct subgroups <K, g> for g outside K, one candidate g per
    double coset KgK.
    """
    covered = K.mask
    seed = K.mask
    kgens = [G.index(g) for g in K.generators]
    seen = set()
    while True:
        rest = np.flatnonzero(~covered)
        if not rest.size:
            return
        j = int(rest[0])
        covered |= double_coset(G, K, j)
        mask = close_subgroup(G, kgens + [j], seed=seed)
        bits = mask_to_bits(mask)
        if bits in seen:
            continue
        seen.add(bits)
        yield SubgroupHandle(G, bits, K.generators + (G.element(j),))


@dataclass(frozen=True)
class SubgroupInterval:
    group: PermGroup
    bottom: SubgroupHandle
    members: Tuple[SubgroupHandle, ...]
    maximal: Tuple[SubgroupHandle, ...]

    def count_maximal_containing(self, H: SubgroupHandle) -> int:
        return sum(1 for M in self.maximal if H <= M)


@group_cache(maxsize=512)
def subgroup_interval(G: PermGroup, H: SubgroupHandle) -> SubgroupInterval:
    """
    Breadth-first search over [H, G]: every node is extended by one element
    per double coset, nodes are deduplicated by bitset, and a node is
    maximal iff none of its extensions is proper.
    """
    _check_subgroup(G, H)
    G.require_elements("subgroup interval search")
    cap = config["INTERVAL_CAP"]
    seen = {H.bits: H}
    queue = deque([H])
    maximal = []
    while queue:
        K = queue.popleft()
        if K.is_whole():
            continue
        proper = False
        for M in one_step_extensions(G, K):
            if M.is_whole():
                continue
            proper = True
            if M.bits not in seen:
                if len(seen) >= cap:
                    raise IntervalCapExceeded(
                        "interval [{}, {}] exceeds {} subgroups".format(
                            H.describe(), G.name, cap
                        )
                    )
                seen[M.bits] = M
                queue.append(M)
        if not proper:
            maximal.append(K)
    seen.setdefault(G.whole.bits, G.whole)
    members = tuple(sorted(seen.values(), key=SubgroupHandle.sort_key))
    maximal.sort(key=SubgroupHandle.sort_key)
    logger.debug(
        "lattice: interval [{}, {}] holds {} subgroups, {} maximal".format(
            H.describe(), G.name, len(members), len(maximal)
        )
    )
    return SubgroupInterval(G, H, members, tuple(maximal))


def maximal_overgroups(
    G: PermGroup, H: SubgroupHandle
) -> List[SubgroupHandle]:
    """The maximal subgroups of G containing H; their number is max(H,G)."""
    return list(subgroup_interval(G, H).maximal)


def all_subgroups(G: PermGroup) -> Tuple[SubgroupHandle, ...]:
    return subgroup_interval(G, G.trivial).members


def maximal_subgroups(G: PermGroup) -> List[SubgroupHandle]:
    if G.order == 1:
        return []
    return maximal_overgroups(G, G.trivial)


def is_maximal(G: PermGroup, M: SubgroupHandle) -> bool:
    _check_subgroup(G, M)
    if M.is_whole():
        return False
    return all(K.is_whole() for K in one_step_extensions(G, M))


def greedy_maximal_overgroup(
    G: PermGroup, K: SubgroupHandle
) -> SubgroupHandle:
    """
    Grow K by the first element, in index order, whose addition keeps the
    subgroup proper. Elements that generate G with the current subgroup go
    on generating G with any larger one, so one pass suffices.
    """
    _check_subgroup(G, K)
    if K.is_whole():
        raise NotASubgroup("K must be a proper subgroup of {}".format(G.name))
    current = K.mask
    gens = [G.index(g) for g in K.generators]
    witnesses = list(K.generators)
    generating = np.zeros(G.order, dtype=bool)
    j = 0
    while True:
        candidates = np.flatnonzero(~(current | generating))
        candidates = candidates[candidates >= j]
        if not candidates.size:
            break
        j = int(candidates[0])
        mask = close_subgroup(G, gens + [j], seed=current)
        if mask.all():
            handle = SubgroupHandle(G, mask_to_bits(current), witnesses)
            generating |= double_coset(G, handle, j)
        else:
            current = mask
            gens.append(j)
            witnesses.append(G.element(j))
        j += 1
    return SubgroupHandle(G, mask_to_bits(current), witnesses)


@group_cache(maxsize=512)
def frattini(G: PermGroup) -> SubgroupHandle:
    maximals = maximal_subgroups(G)
    if not maximals:
        return G.trivial
    bits = maximals[0].bits
    for M in maximals[1:]:
        bits &= M.bits
    return SubgroupHandle(G, bits)


def is_primitive(G: PermGroup) -> bool:
    """True iff G has a maximal subgroup with trivial core."""
    return any(
        core_of_subgroup(G, M).is_trivial() for M in maximal_subgroups(G)
    )


def conjugacy_classes(G: PermGroup) -> List[np.ndarray]:
    G.require_elements("conjugacy classes")
    label = np.full(G.order, -1, dtype=np.int64)
    classes = []
    while True:
        rest = np.flatnonzero(label < 0)
        if not rest.size:
            return classes
        frontier = rest[:1]
        label[frontier] = len(classes)
        members = [frontier]
        while frontier.size and G.generator_indexes:
            new = np.concatenate(
                [G.conj_map(t)[frontier] for t in G.generator_indexes]
            )
            new = np.unique(new[label[new] < 0])
            label[new] = len(classes)
            members.append(new)
            frontier = new
        classes.append(np.sort(np.concatenate(members)))


def conjugacy_class_representatives(
    G: PermGroup, subgroups: Sequence[SubgroupHandle]
) -> List[SubgroupHandle]:
    """The smallest member, by (order, bitset), of every conjugacy class."""
    assigned = set()
    reps = []
    for K in sorted(subgroups, key=SubgroupHandle.sort_key):
        if K.bits in assigned:
            continue
        reps.append(K)
        assigned.add(K.bits)
        queue = deque([K])
        while queue:
            L = queue.popleft()
            for t in G.generator_indexes:
                C = conjugate_subgroup(G, L, t)
                if C.bits not in assigned:
                    assigned.add(C.bits)
                    queue.append(C)
    return reps


@group_cache(maxsize=512)
def normal_subgroups(G: PermGroup) -> Tuple[SubgroupHandle, ...]:
    """
    Normal closures of single conjugacy classes, closed under joins, plus
    the trivial subgroup.
    """
    G.require_elements("normal_subgroups")
    normals = {G.trivial.bits: G.trivial}
    for members in conjugacy_classes(G)[1:]:
        N = normal_closure(G, [int(members[0])])
        normals.setdefault(N.bits, N)
    changed = True
    while changed:
        changed = False
        for A, B in combinations(list(normals.values()), 2):
            if is_subset(A.bits, B.bits) or is_subset(B.bits, A.bits):
                continue
            J = A.join(B)
            if J.bits not in normals:
                normals[J.bits] = J
                changed = True
    result = tuple(sorted(normals.values(), key=SubgroupHandle.sort_key))
    for N in result:
        if not is_normal(G, N):
            raise LatticeError(
                "{} is not conjugation invariant".format(N.describe())
            )
    logger.debug(
        "lattice: {} has {} normal subgroups".format(G.name, len(result))
    )
    return result


def normal_subgroups_above_cap(G: PermGroup) -> List[PermGroup]:
    """
    Normal subgroups of a group too large for an element table. Conjugacy
    class representatives are found by streaming the elements through the
    stabilizer chain; closures and joins work on generators only.
    """
    seen = set()
    reps: List[Permutation] = []
    gens = [g.images for g in G.generators]
    inverses = [g.inverse().images for g in G.generators]
    for chunk in G.iter_images():
        for row in chunk.tolist():
            x = tuple(row)
            if x in seen:
                continue
            reps.append(Permutation.trusted(x))
            seen.add(x)
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for t, tinv in zip(gens, inverses):
                    z = tuple([t[y[tinv[i]]] for i in range(G.degree)])
                    if z not in seen:
                        seen.add(z)
                        queue.append(z)
    logger.info(
        "lattice: {} has {} conjugacy classes".format(G.name, len(reps))
    )

    normals: List[PermGroup] = [PermGroup([], G.degree, element_cap=0)]

    def known(N):
        return any(
            M.order == N.order and M.contains_group(N) for M in normals
        )

    for x in reps[1:]:
        N = normal_closure_group(G, [x])
        if not known(N):
            normals.append(N)
    changed = True
    while changed:
        changed = False
        for A, B in combinations(list(normals), 2):
            if A.contains_group(B) or B.contains_group(A):
                continue
            J = PermGroup(
                A.generators + B.generators, G.degree, element_cap=0
            )
            if not known(J):
                normals.append(J)
                changed = True
    normals.sort(key=lambda N: N.order)
    return normals


def minimal_normal_subgroups(G: PermGroup) -> List[SubgroupHandle]:
    if G.order == 1:
        raise TrivialGroupError(
            "the trivial group has no minimal normal subgroup"
        )
    nontrivial = normal_subgroups(G)[1:]
    return [
        N for N in nontrivial if not any(M < N for M in nontrivial)
    ]


def socle(G: PermGroup) -> SubgroupHandle:
    minimal = minimal_normal_subgroups(G)
    result = minimal[0]
    for N in minimal[1:]:
        result = result.join(N)
    return result


class ChiefFactor:
    """
    A chief factor X/Y of G. The cosets of Y in X are labelled 0..|X:Y|-1
    (label 0 is Y itself); quotient is the regular action of X on them and
    action holds the permutation of the cosets induced by conjugation with
    each generator of G, in the order of G.generators.
    """

    def __init__(
        self, parent: PermGroup, upper: SubgroupHandle, lower: SubgroupHandle
    ):
        G = parent
        self.parent = parent
        self.upper = upper
        self.lower = lower
        labels = np.full(G.order, -1, dtype=np.int64)
        reps = []
        lower_members = lower.indexes
        rest = upper.indexes
        while rest.size:
            j = int(rest[0])
            labels[G.multiply(lower_members, j)] = len(reps)
            reps.append(j)
            rest = rest[labels[rest] < 0]
        self.coset_labels = labels
        self.coset_reps = np.array(reps)
        quotient_gens = [
            Permutation.trusted(
                labels[G.multiply(self.coset_reps, G.index(x))]
            )
            for x in upper.generators
        ]
        self.quotient = PermGroup(
            quotient_gens, degree=len(reps), name=self.describe()
        )
        self.action = tuple(
            Permutation.trusted(labels[G.conj_map(t)[self.coset_reps]])
            for t in G.generator_indexes
        )
        self.is_abelian = self.quotient.is_abelian()

    @property
    def order(self) -> int:
        return len(self.coset_reps)

    @cached_property
    def is_frattini(self) -> bool:
        return is_frattini_factor(self.parent, self)

    @cached_property
    def quotient_index_of_coset(self) -> np.ndarray:
        Q = self.quotient
        Q.require_elements("chief factor tables")
        table = np.empty(Q.order, dtype=np.int64)
        table[Q.images[:, 0]] = np.arange(Q.order)
        return table

    @cached_property
    def action_on_quotient(self) -> Tuple[np.ndarray, ...]:
        """Conjugation by each generator of G, on quotient element indexes."""
        Q = self.quotient
        coset_of = Q.images[:, 0]
        return tuple(
            self.quotient_index_of_coset[np.array(a.images)[coset_of]]
            for a in self.action
        )

    def describe(self) -> str:
        return "{}/{}".format(self.upper.describe(), self.lower.describe())

    def __repr__(self) -> str:
        return "<ChiefFactor {} order={}{}>".format(
            self.describe(), self.order, " abelian" if self.is_abelian else ""
        )


@group_cache(maxsize=4096)
def factor_of(
    G: PermGroup, X: SubgroupHandle, Y: SubgroupHandle
) -> ChiefFactor:
    """Shared ChiefFactor objects, so derived flags are computed once."""
    return ChiefFactor(G, X, Y)


def chief_factor(
    G: PermGroup, X: SubgroupHandle, Y: SubgroupHandle
) -> ChiefFactor:
    _check_subgroup(G, X)
    _check_subgroup(G, Y)
    normals = normal_subgroups(G)
    if X not in normals or Y not in normals or not Y < X:
        raise NotAChiefFactor(
            "{}/{} is not a factor of normal subgroups".format(
                X.describe(), Y.describe()
            )
        )
    if any(Y < N < X for N in normals):
        raise NotAChiefFactor(
            "a normal subgroup lies strictly between {} and {}".format(
                Y.describe(), X.describe()
            )
        )
    return factor_of(G, X, Y)


@dataclass(frozen=True)
class ChiefSeries:
    group: PermGroup
    factors: Tuple[ChiefFactor, ...]
    seed: int = 0

    @property
    def subgroups(self) -> List[SubgroupHandle]:
        if not self.factors:
            return [self.group.trivial]
        return [self.factors[0].lower] + [F.upper for F in self.factors]


def chief_series(G: PermGroup, seed: int = 0) -> ChiefSeries:
    """
    Greedy bottom-up: above the current term take a minimal normal subgroup
    of G containing it; the seed rotates the candidates at every step.
    """
    normals = normal_subgroups(G)
    current = G.trivial
    factors = []
    while not current.is_whole():
        above = [N for N in normals if current < N]
        minimal = [N for N in above if not any(M < N for M in above)]
        choice = minimal[seed % len(minimal)]
        factors.append(factor_of(G, choice, current))
        current = choice
    return ChiefSeries(G, tuple(factors), seed)


def is_frattini_factor(G: PermGroup, F: ChiefFactor) -> bool:
    """True iff F is abelian and X/Y lies in the Frattini subgroup of G/Y."""
    if F.parent is not G:
        raise NotAChiefFactor("chief factor of another group")
    if not F.is_abelian:
        return False
    hom = quotient(G, F.lower)
    return hom.image(F.upper) <= frattini(hom.target)
