#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

"""
Chief factors as G-groups: G-isomorphism and G-equivalence, the monolithic
primitive group L_A attached to a non-Frattini factor A, crown-based powers
L_k, crowns (R_G(A), I_G(A)) and strip decompositions of subgroups of a
direct product of nonabelian simple groups.
"""

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from crownkit import CapExceeded, CrownkitError
from crownkit.lattice import (
    ChiefFactor,
    NotAChiefFactor,
    chief_series,
    factor_of,
    frattini,
    maximal_overgroups,
    maximal_subgroups,
    minimal_normal_subgroups,
    normal_subgroups,
    socle,
)
from crownkit.permcore import (
    GroupHom,
    PermGroup,
    Permutation,
    SubgroupHandle,
    abelianization_order,
    core_of_subgroup,
    element_orders,
    extend_partial_map,
    quotient,
)
from crownkit.settings import config, logger
from crownkit.util import group_cache


class IsomorphismCapExceeded(CapExceeded):
    pass


class IntertwinerCapExceeded(CapExceeded):
    pass


class DegreeCapExceeded(CapExceeded):
    pass


class NotMonolithic(CrownkitError):
    pass


class FrattiniFactorError(CrownkitError):
    pass


class CrownError(CrownkitError):
    pass


class ScottLemmaViolation(CrownkitError):
    pass


class PreconditionError(CrownkitError):
    pass


#
# linear algebra over GF(p)
#


def gf_row_reduce(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of A mod p and its pivot columns."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(R[r:, c])
        if not nonzero.size:
            continue
        i = r + int(nonzero[0])
        R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        R[others] = (R[others] - np.outer(R[others, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def gf_rank(A: np.ndarray, p: int) -> int:
    return len(gf_row_reduce(A, p)[1])


def gf_nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Rows form a basis of {v : A v = 0} over GF(p)."""
    R, pivots = gf_row_reduce(A, p)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = (-R[i, f]) % p
    return basis


class FactorModule:
    """
    An abelian chief factor as a GF(p)-module: a basis of the quotient, the
    coordinates of every quotient element and one matrix per generator of
    G (row i is the image of basis vector i under conjugation).
    """

    def __init__(self, factor: ChiefFactor):
        if not factor.is_abelian:
            raise CrownError("{} is not abelian".format(factor.describe()))
        Q = factor.quotient
        Q.require_elements("module structure")
        primes = sympy.factorint(Q.order)
        if len(primes) != 1:
            raise NotAChiefFactor(
                "{} is not elementary abelian".format(factor.describe())
            )
        ((p, d),) = primes.items()
        self.p, self.dimension = int(p), int(d)

        basis: List[int] = []
        span = np.zeros(Q.order, dtype=bool)
        span[0] = True
        for i in range(Q.order):
            if not span[i]:
                basis.append(i)
                span = SubgroupHandle.generated_by(
                    Q, [Q.element(b) for b in basis]
                ).mask
        self.basis = basis

        coords = np.full((Q.order, d), -1, dtype=np.int64)
        coords[0] = 0
        frontier = np.array([0])
        while frontier.size:
            fresh = []
            for k, b in enumerate(basis):
                y = Q.right_map(b)[frontier]
                new = coords[y, 0] < 0
                step = coords[frontier[new]].copy()
                step[:, k] = (step[:, k] + 1) % p
                coords[y[new]] = step
                fresh.append(y[new])
            frontier = np.unique(np.concatenate(fresh))
        self.coords = coords

        self.matrices = tuple(
            coords[action[basis]] for action in factor.action_on_quotient
        )


#
# isomorphism search
#


def _check_iso_cap(*orders: int):
    cap = config["ISO_SEARCH_CAP"]
    if max(orders) > cap:
        raise IsomorphismCapExceeded(
            "isomorphism search is limited to order {}".format(cap)
        )


def _short_generators(H: SubgroupHandle) -> List[int]:
    G = H.parent
    given = [G.index(g) for g in H.generators if not g.is_identity()]
    greedy = [G.index(g) for g in H.canonical_generators()]
    return greedy if len(greedy) < len(given) else given


def _injective(table: np.ndarray) -> bool:
    values = table[table >= 0]
    return len(np.unique(values)) == len(values)


def _class_representatives(
    H: SubgroupHandle, candidates: np.ndarray
) -> np.ndarray:
    """One candidate per H-conjugacy class, the smallest index."""
    P = H.parent
    gens = [P.index(g) for g in H.generators if not g.is_identity()]
    seen = np.zeros(P.order, dtype=bool)
    reps = []
    for c in candidates:
        if seen[c]:
            continue
        reps.append(int(c))
        seen[c] = True
        frontier = np.array([c])
        while frontier.size and gens:
            new = np.concatenate([P.conj_map(t)[frontier] for t in gens])
            new = np.unique(new[~seen[new]])
            seen[new] = True
            frontier = new
    return np.array(reps, dtype=np.int64)


def iter_isomorphisms(
    H1: Union[PermGroup, SubgroupHandle],
    H2: Union[PermGroup, SubgroupHandle],
    up_to_inner: bool = False,
) -> Iterator[np.ndarray]:
    """
    Isomorphisms H1 -> H2, as index tables from H1's parent to H2's parent
    (-1 outside H1). Images of a short generating set are tried in index
    order among the elements of matching order; each partial assignment is
    pushed through the Cayley graph and abandoned as soon as it stops being
    an injective homomorphism. With up_to_inner, the first generator only
    goes to one element per conjugacy class of H2, which yields every
    isomorphism up to composition with an inner automorphism of H2.
    """
    if isinstance(H1, PermGroup):
        H1 = H1.whole
    if isinstance(H2, PermGroup):
        H2 = H2.whole
    if H1.order != H2.order:
        return
    _check_iso_cap(H1.order)
    P1, P2 = H1.parent, H2.parent
    ord1 = np.where(H1.mask, element_orders(P1), 0)
    ord2 = np.where(H2.mask, element_orders(P2), 0)
    if not np.array_equal(
        np.bincount(ord1[H1.indexes]), np.bincount(ord2[H2.indexes])
    ):
        return
    gens = _short_generators(H1)
    candidates = [np.flatnonzero(ord2 == ord1[g]) for g in gens]
    if up_to_inner and gens:
        candidates[0] = _class_representatives(H2, candidates[0])

    def search(level, table, pairs):
        if level == len(gens):
            yield table
            return
        g = gens[level]
        for c in candidates[level]:
            trial = table.copy()
            extended = pairs + [(g, int(c))]
            if extend_partial_map(P1, P2, trial, extended) and _injective(
                trial
            ):
                yield from search(level + 1, trial, extended)

    start = np.full(P1.order, -1, dtype=np.int64)
    start[0] = 0
    yield from search(0, start, [])


def iso_search(G1: PermGroup, G2: PermGroup) -> Optional[GroupHom]:
    """An isomorphism G1 -> G2 given by generator images, or None."""
    if G1.order != G2.order:
        return None
    _check_iso_cap(G1.order, G2.order)
    G1.require_elements("iso_search")
    G2.require_elements("iso_search")
    if G1.is_abelian() != G2.is_abelian():
        return None
    if abelianization_order(G1) != abelianization_order(G2):
        return None
    table = next(iter_isomorphisms(G1, G2, up_to_inner=True), None)
    if table is None:
        logger.debug(
            "crowns: {} and {} are not isomorphic".format(G1.name, G2.name)
        )
        return None
    return GroupHom(
        G1, G2, [G2.element(int(table[j])) for j in G1.generator_indexes]
    )


#
# G-isomorphism and G-equivalence
#


def _check_factors(G: PermGroup, *factors: ChiefFactor):
    for F in factors:
        if F.parent is not G:
            raise NotAChiefFactor(
                "{} is a chief factor of another group".format(F.describe())
            )


def _module_isomorphic(A: ChiefFactor, B: ChiefFactor) -> bool:
    MA, MB = FactorModule(A), FactorModule(B)
    if (MA.p, MA.dimension) != (MB.p, MB.dimension):
        return False
    p, d = MA.p, MA.dimension
    eye = np.eye(d, dtype=np.int64)
    # a M_A P = a P M_B for all t, with P flattened row-major
    system = np.vstack(
        [
            np.kron(Ma, eye) - np.kron(eye, Mb.T)
            for Ma, Mb in zip(MA.matrices, MB.matrices)
        ]
    )
    basis = gf_nullspace(system % p, p)
    if not len(basis):
        return False
    size = p ** len(basis)
    if size > config["INTERTWINER_CAP"]:
        raise IntertwinerCapExceeded(
            "{} intertwiners between {} and {}".format(
                size, A.describe(), B.describe()
            )
        )
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        P = (np.array(coeffs) @ basis % p).reshape(d, d)
        if gf_rank(P, p) == d:
            return True
    return False


def g_isomorphism(A: ChiefFactor, B: ChiefFactor) -> Optional[np.ndarray]:
    """
    A G-isomorphism between the quotients of A and B, as an index table.
    Because X/Y is generated by the G-orbit of any nontrivial element a,
    the image of a fixes the whole map: a^g must go to b^g.
    """
    QA, QB = A.quotient, B.quotient
    if QA.order != QB.order:
        return None
    _check_iso_cap(QA.order)
    actA, actB = A.action_on_quotient, B.action_on_quotient
    ordA, ordB = element_orders(QA), element_orders(QB)
    a = 1
    orbit = [a]
    seen = {a}
    for x in orbit:
        for act in actA:
            y = int(act[x])
            if y not in seen:
                seen.add(y)
                orbit.append(y)
    for b in np.flatnonzero(ordB == ordA[a]):
        image = {a: int(b)}
        consistent = True
        for x in orbit:
            for act_a, act_b in zip(actA, actB):
                y, z = int(act_a[x]), int(act_b[image[x]])
                if image.setdefault(y, z) != z:
                    consistent = False
                    break
            if not consistent:
                break
        if not consistent:
            continue
        table = np.full(QA.order, -1, dtype=np.int64)
        table[0] = 0
        pairs = [(x, image[x]) for x in orbit]
        if (
            extend_partial_map(QA, QB, table, pairs)
            and (table >= 0).all()
            and _injective(table)
        ):
            return table
    return None


@group_cache(maxsize=4096)
def _g_isomorphic(G, XA, YA, XB, YB) -> bool:
    A, B = factor_of(G, XA, YA), factor_of(G, XB, YB)
    if (XA, YA) == (XB, YB):
        return True
    if A.order != B.order or A.is_abelian != B.is_abelian:
        return False
    if A.is_abelian:
        return _module_isomorphic(A, B)
    return g_isomorphism(A, B) is not None


def g_isomorphic(G: PermGroup, A: ChiefFactor, B: ChiefFactor) -> bool:
    _check_factors(G, A, B)
    return _g_isomorphic(G, A.upper, A.lower, B.upper, B.lower)


@group_cache(maxsize=512)
def _quotient(G: PermGroup, N: SubgroupHandle) -> GroupHom:
    return quotient(G, N)


def _diagonal(
    Q: PermGroup, H1: SubgroupHandle, table: np.ndarray
) -> SubgroupHandle:
    """The subgroup {x psi(x)} for commuting H1, psi(H1)."""
    xs = H1.indexes
    E = Q.images
    product = np.take_along_axis(E[table[xs]], E[xs], axis=1)
    mask = np.zeros(Q.order, dtype=bool)
    mask[Q.rank_images(product)] = True
    return Q.subgroup(mask)


def _primitive_with_pair(
    G: PermGroup, C: SubgroupHandle, X1: SubgroupHandle, X2: SubgroupHandle
) -> bool:
    """
    True iff G/C has a core-free maximal subgroup. In G/C the images of X1
    and X2 are its two minimal normal subgroups; a core-free maximal meets
    their product in a diagonal {x psi(x)}, so the maximal overgroups of
    those diagonals are the only candidates.
    """
    hom = _quotient(G, C)
    Q = hom.target
    Y1, Y2 = hom.image(X1), hom.image(X2)
    for table in iter_isomorphisms(Y1, Y2, up_to_inner=True):
        D = _diagonal(Q, Y1, table)
        for M in maximal_overgroups(Q, D):
            if core_of_subgroup(Q, M).is_trivial():
                return True
    return False


@group_cache(maxsize=4096)
def _g_equivalent(G, XA, YA, XB, YB) -> bool:
    A, B = factor_of(G, XA, YA), factor_of(G, XB, YB)
    if g_isomorphic(G, A, B):
        return True
    if A.is_abelian or B.is_abelian or A.order != B.order:
        return False
    normals = normal_subgroups(G)
    for C in normals:
        above = [N for N in normals if C < N]
        minimal = [N for N in above if not any(M < N for M in above)]
        if len(minimal) != 2:
            continue
        X1, X2 = minimal
        F1, F2 = factor_of(G, X1, C), factor_of(G, X2, C)
        if F1.order != A.order or F2.order != A.order:
            continue
        matched = (g_isomorphic(G, F1, A) and g_isomorphic(G, F2, B)) or (
            g_isomorphic(G, F1, B) and g_isomorphic(G, F2, A)
        )
        if matched and _primitive_with_pair(G, C, X1, X2):
            logger.debug(
                "crowns: {} and {} share the primitive quotient by {}".format(
                    A.describe(), B.describe(), C.describe()
                )
            )
            return True
    return False


def g_equivalent(G: PermGroup, A: ChiefFactor, B: ChiefFactor) -> bool:
    _check_factors(G, A, B)
    return _g_equivalent(G, A.upper, A.lower, B.upper, B.lower)


def delta_count(G: PermGroup, A: ChiefFactor, seed: int = 0) -> int:
    """Non-Frattini factors of a chief series of G equivalent to A."""
    _check_factors(G, A)
    return sum(
        1
        for F in chief_series(G, seed).factors
        if not F.is_frattini and g_equivalent(G, F, A)
    )


def factor_classes(G: PermGroup, seed: int = 0) -> List[ChiefFactor]:
    """One representative per G-equivalence class of non-Frattini factors."""
    reps: List[ChiefFactor] = []
    for F in chief_series(G, seed).factors:
        if F.is_frattini:
            continue
        if not any(g_equivalent(G, F, E) for E in reps):
            reps.append(F)
    return reps


#
# monolithic groups and crown-based powers
#


@dataclass(frozen=True)
class MonolithicGroup:
    group: PermGroup
    socle_handle: SubgroupHandle
    socle_is_abelian: bool
    socle_simple_factors: Tuple[SubgroupHandle, ...] = ()

    @property
    def name(self) -> str:
        return self.group.name

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def socle_order(self) -> int:
        return self.socle_handle.order


def _simple_factors(
    G: PermGroup, N: SubgroupHandle
) -> Tuple[SubgroupHandle, ...]:
    S = N.as_group(name="soc({})".format(G.name))
    S.require_elements("socle factors")
    factors = []
    for K in minimal_normal_subgroups(S):
        mask = np.zeros(G.order, dtype=bool)
        mask[G.rank_images(S.images[K.indexes])] = True
        factors.append(G.subgroup(mask))
    return tuple(sorted(factors, key=SubgroupHandle.sort_key))


def monolithic_group(G: PermGroup) -> MonolithicGroup:
    G.require_elements("monolithic_group")
    minimal = minimal_normal_subgroups(G)
    if len(minimal) != 1:
        raise NotMonolithic(
            "{} has {} minimal normal subgroups".format(G.name, len(minimal))
        )
    (N,) = minimal
    # with a unique minimal normal N, a maximal subgroup is core-free iff it
    # misses N
    if not any(not N <= M for M in maximal_subgroups(G)):
        raise NotMonolithic(
            "{} has no core-free maximal subgroup".format(G.name)
        )
    abelian = N.as_group(element_cap=0).is_abelian()
    return MonolithicGroup(
        G, N, abelian, () if abelian else _simple_factors(G, N)
    )


def _affine_group(A: ChiefFactor) -> PermGroup:
    """A acting on its own elements by translations, G by its matrices."""
    module = FactorModule(A)
    p, d = module.p, module.dimension
    size = p**d
    weights = p ** np.arange(d, dtype=np.int64)
    vectors = (np.arange(size)[:, None] // weights) % p
    gens = []
    for k in range(d):
        shifted = vectors.copy()
        shifted[:, k] = (shifted[:, k] + 1) % p
        gens.append(Permutation.trusted((shifted @ weights).tolist()))
    for M in module.matrices:
        g = Permutation.trusted((((vectors @ M) % p) @ weights).tolist())
        if not g.is_identity() and g not in gens:
            gens.append(g)
    return PermGroup(gens, size, name="L[{}]".format(A.describe()))


def monolithic_associated(G: PermGroup, A: ChiefFactor) -> MonolithicGroup:
    """
    L_A: A ⋊ G/C_G(A) in its affine action when A is abelian, otherwise
    G/C_G(A), realized by the conjugation action of G on the cosets X/Y.
    """
    _check_factors(G, A)
    if A.is_frattini:
        raise FrattiniFactorError(
            "{} is a Frattini chief factor of {}".format(A.describe(), G.name)
        )
    if A.is_abelian:
        L = _affine_group(A)
    else:
        gens = [a for a in A.action if not a.is_identity()]
        L = PermGroup(gens, A.order, name="L[{}]".format(A.describe()))
    logger.debug(
        "crowns: L_A for {} has degree {} and order {}".format(
            A.describe(), L.degree, L.order
        )
    )
    return monolithic_group(L)


def _as_monolithic(L) -> MonolithicGroup:
    return L if isinstance(L, MonolithicGroup) else monolithic_group(L)


def _block_copy(g: Permutation, offset: int, degree: int) -> List[int]:
    images = list(range(degree))
    images[offset : offset + g.degree] = [offset + x for x in g.images]
    return images


def crown_socle_generators(L, k: int) -> List[List[Permutation]]:
    """Generators of soc(L) placed in each of the k coordinates."""
    L = _as_monolithic(L)
    n = L.group.degree
    return [
        [
            Permutation.trusted(_block_copy(s, i * n, n * k))
            for s in L.socle_handle.generators
        ]
        for i in range(k)
    ]


def crown_based_power(L, k: int, element_cap=None) -> PermGroup:
    """L_k = soc(L)^k diag(L^k) on k disjoint copies of L's domain."""
    L = _as_monolithic(L)
    if k < 1:
        raise CrownError("crown-based powers need k >= 1, got {}".format(k))
    n = L.group.degree
    degree = n * k
    if degree > config["DEGREE_CAP"]:
        raise DegreeCapExceeded(
            "({})_{} would have degree {} > {}".format(
                L.name, k, degree, config["DEGREE_CAP"]
            )
        )
    gens = []
    for g in L.group.generators:
        images = []
        for i in range(k):
            images += [i * n + x for x in g.images]
        gens.append(Permutation.trusted(images))
    for coordinate in crown_socle_generators(L, k):
        gens += coordinate
    power = PermGroup(
        gens,
        degree,
        name="({})_{}".format(L.name, k),
        element_cap=element_cap,
        layout=[(i * n, n) for i in range(k)],
    )
    expected = L.socle_order ** (k - 1) * L.order
    if power.order != expected:
        raise CrownError(
            "{} has order {}, expected {}".format(
                power.name, power.order, expected
            )
        )
    return power


#
# crowns
#


@dataclass(frozen=True)
class CrownRecord:
    factor_class: ChiefFactor
    delta: int
    R: SubgroupHandle
    I: SubgroupHandle
    L_A: MonolithicGroup
    members: Tuple[SubgroupHandle, ...] = ()

    @property
    def group(self) -> PermGroup:
        return self.factor_class.parent

    @cached_property
    def power(self) -> PermGroup:
        return crown_based_power(self.L_A, self.delta)


def _socle_preimage(G: PermGroup, N: SubgroupHandle) -> SubgroupHandle:
    hom = _quotient(G, N)
    return hom.preimage(socle(hom.target))


def compute_crown(G: PermGroup, A: ChiefFactor) -> CrownRecord:
    _check_factors(G, A)
    G.require_elements("compute_crown")
    L = monolithic_associated(G, A)
    members = []
    for N in normal_subgroups(G):
        if G.order != N.order * L.order:
            continue
        Q = _quotient(G, N).target
        if iso_search(Q, L.group) is None:
            continue
        if g_equivalent(G, factor_of(G, _socle_preimage(G, N), N), A):
            members.append(N)
    if not members:
        raise CrownError(
            "no normal subgroup of {} has quotient L_A for {}".format(
                G.name, A.describe()
            )
        )
    bits = members[0].bits
    for N in members[1:]:
        bits &= N.bits
    R = SubgroupHandle(G, bits)
    I = _socle_preimage(G, R)
    record = CrownRecord(A, delta_count(G, A), R, I, L, tuple(members))
    if iso_search(_quotient(G, R).target, record.power) is None:
        raise CrownError(
            "{}/{} is not isomorphic to {}".format(
                G.name, R.describe(), record.power.name
            )
        )
    logger.info(
        "crowns: {} crown of {}: delta={}, |R|={}, |I|={}".format(
            A.describe(), G.name, record.delta, R.order, I.order
        )
    )
    return record


@dataclass(frozen=True)
class SottoWitness:
    factor_class: ChiefFactor
    crown: CrownRecord
    D: SubgroupHandle

    @property
    def R(self) -> SubgroupHandle:
        return self.crown.R

    @property
    def I(self) -> SubgroupHandle:
        return self.crown.I

    def as_tuple(self):
        return (self.factor_class, self.R, self.I, self.D, self.crown)


def sotto_decomposition(G: PermGroup) -> SottoWitness:
    """
    The first factor class A, in chief series order, with a nontrivial
    normal D such that I_G(A) is the internal direct product R_G(A) x D.
    """
    G.require_elements("sotto_decomposition")
    if G.order == 1:
        raise PreconditionError("the trivial group has no chief factors")
    if not frattini(G).is_trivial():
        raise PreconditionError(
            "the Frattini subgroup of {} is not trivial".format(G.name)
        )
    for A in factor_classes(G):
        crown = compute_crown(G, A)
        for D in normal_subgroups(G):
            if D.is_trivial() or not D <= crown.I:
                continue
            if (D & crown.R).is_trivial() and (
                D.order * crown.R.order == crown.I.order
            ):
                return SottoWitness(A, crown, D)
    raise CrownError(
        "no factor class of {} splits its crown".format(G.name)
    )


#
# strips
#


@dataclass(frozen=True)
class StripDecomposition:
    factors: Tuple[PermGroup, ...]
    strips: Tuple[Tuple[Tuple[int, ...], SubgroupHandle], ...]
    is_subdirect: bool
    full: Tuple[bool, ...] = ()


def _is_nonabelian_simple(S: PermGroup) -> bool:
    return not S.is_abelian() and len(normal_subgroups(S)) == 2


def strip_decomposition(
    factors: Sequence[PermGroup], X: SubgroupHandle
) -> StripDecomposition:
    """
    Project X onto each factor. When every nontrivial projection is full,
    X is the direct product of full strips whose supports are the classes
    {j : pi_j(X ∩ Ker pi_i) = 1}; the product is checked, not assumed.
    """
    factors = tuple(factors)
    P = X.parent
    P.require_elements("strip_decomposition")
    if sum(S.degree for S in factors) != P.degree:
        raise CrownError("factor degrees do not add up to {}".format(P.degree))
    for S in factors:
        if not _is_nonabelian_simple(S):
            raise CrownError("{} is not nonabelian simple".format(S.name))
    if X.is_trivial():
        return StripDecomposition(factors, (), False, (False,) * len(factors))

    E = P.images[X.indexes]
    projections = []
    offset = 0
    for S in factors:
        block = E[:, offset : offset + S.degree] - offset
        if block.min() < 0 or block.max() >= S.degree:
            raise CrownError(
                "{} moves points between factors".format(X.describe())
            )
        ranks = S.rank_images(block)
        if (ranks < 0).any():
            raise CrownError(
                "{} does not project into {}".format(X.describe(), S.name)
            )
        projections.append(ranks)
        offset += S.degree
    projections = np.array(projections)
    full = tuple(
        len(np.unique(row)) == S.order for row, S in zip(projections, factors)
    )
    trivial = (projections == 0).all(axis=1)
    is_subdirect = all(full)
    if not all(f or t for f, t in zip(full, trivial)):
        return StripDecomposition(factors, (), is_subdirect, full)

    support_of = {}
    for i in np.flatnonzero(full):
        kernel = projections[i] == 0
        support_of[int(i)] = tuple(
            int(j)
            for j in np.flatnonzero(full)
            if (projections[j][kernel] == 0).all()
        )
    supports = sorted(set(support_of.values()))
    covered = [j for T in supports for j in T]
    if sorted(covered) != sorted(support_of) or len(covered) != len(
        set(covered)
    ):
        raise ScottLemmaViolation(
            "supports of {} overlap: {}".format(X.describe(), supports)
        )

    strips = []
    for T in supports:
        outside = [j for j in range(len(factors)) if j not in T]
        rows = (projections[outside] == 0).all(axis=0)
        mask = np.zeros(P.order, dtype=bool)
        mask[X.indexes[rows]] = True
        strip = P.subgroup(mask)
        for j in T:
            if strip.order != factors[j].order or len(
                np.unique(projections[j][rows])
            ) != factors[j].order:
                raise ScottLemmaViolation(
                    "strip on {} is not full".format([j + 1 for j in T])
                )
        strips.append((T, strip))

    product = strips[0][1]
    for _, strip in strips[1:]:
        product = product.join(strip)
    if product != X or math.prod(s.order for _, s in strips) != X.order:
        raise ScottLemmaViolation(
            "{} is not the direct product of its strips".format(X.describe())
        )
    return StripDecomposition(factors, tuple(strips), is_subdirect, full)
