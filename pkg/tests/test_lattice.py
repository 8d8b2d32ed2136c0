#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

from itertools import combinations, combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from crownkit.catalog import build_group
from crownkit.lattice import (
    IntervalCapExceeded,
    NotAChiefFactor,
    TrivialGroupError,
    all_subgroups,
    chief_factor,
    chief_series,
    conjugacy_class_representatives,
    conjugacy_classes,
    frattini,
    generated_subgroup,
    greedy_maximal_overgroup,
    is_frattini_factor,
    is_maximal,
    is_primitive,
    maximal_overgroups,
    maximal_subgroups,
    minimal_normal_subgroups,
    normal_subgroups,
    normal_subgroups_above_cap,
    socle,
    subgroup_interval,
)
from crownkit.permcore import (
    PermGroup,
    Permutation,
    SubgroupHandle,
    close_subgroup,
    conjugate_subgroup,
    is_soluble,
    point_stabilizer,
)
from crownkit.util import is_subset, mask_to_bits


def perm(text, degree):
    return Permutation.from_cycles(text, degree)


def test_maximal_subgroups_of_s4(s4):
    maximals = maximal_overgroups(s4, s4.trivial)
    assert len(maximals) == 8
    assert sorted(M.order for M in maximals) == [6, 6, 6, 6, 8, 8, 8, 12]
    assert maximals == sorted(maximals, key=lambda M: M.sort_key())
    assert maximal_subgroups(s4) == maximals


def test_maximal_overgroups_of_a_transposition(s4):
    H = generated_subgroup(s4, [perm("(1 2)", 4)])
    maximals = maximal_overgroups(s4, H)
    assert len(maximals) == 3
    assert sorted(M.order for M in maximals) == [6, 6, 8]
    assert all(H <= M for M in maximals)


def test_maximal_overgroups_of_a_maximal_subgroup(s4):
    H = point_stabilizer(s4, 0)
    assert maximal_overgroups(s4, H) == [H]


def test_klein_four(v4, c2xc2):
    for G in (v4, c2xc2):
        assert len(maximal_overgroups(G, G.trivial)) == 3
        assert len(all_subgroups(G)) == 5


def test_subgroup_counts(s4, a4, d8, a5):
    assert len(all_subgroups(s4)) == 30
    assert len(all_subgroups(a4)) == 10
    assert len(all_subgroups(d8)) == 10
    assert len(all_subgroups(a5)) == 59
    assert len(maximal_subgroups(a5)) == 21


def test_interval(s4):
    H = generated_subgroup(s4, [perm("(1 2)(3 4)", 4)])
    interval = subgroup_interval(s4, H)
    assert interval.bottom == H
    assert interval.members[0] == H
    assert interval.members[-1].is_whole()
    assert all(H <= K for K in interval.members)
    assert interval.count_maximal_containing(H) == len(interval.maximal)


def test_interval_cap(s4, config):
    config["INTERVAL_CAP"] = 3
    with pytest.raises(IntervalCapExceeded):
        subgroup_interval(s4, s4.trivial)


def test_is_maximal(s4):
    assert is_maximal(s4, point_stabilizer(s4, 0))
    assert not is_maximal(s4, s4.trivial)
    assert not is_maximal(s4, s4.whole)


def test_greedy_maximal_overgroup(s4, a5):
    for G in (s4, a5):
        M = greedy_maximal_overgroup(G, G.trivial)
        assert is_maximal(G, M)
    H = generated_subgroup(s4, [perm("(1 2 3)", 4)])
    M = greedy_maximal_overgroup(s4, H)
    assert H <= M and is_maximal(s4, M)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=23), max_size=2))
def test_maximal_overgroups_agree_with_maximal_subgroups(picks):
    G = build_group("Sym(4)")
    H = generated_subgroup(G, [G.element(i) for i in picks])
    expected = [M for M in maximal_subgroups(G) if H <= M]
    assert maximal_overgroups(G, H) == expected


def brute_force_subgroups(G):
    """Closures of all subsets of at most two elements, closed under joins."""
    found = {}
    for a, b in combinations_with_replacement(range(G.order), 2):
        found.setdefault(mask_to_bits(close_subgroup(G, [a, b])), (a, b))
    changed = True
    while changed:
        changed = False
        for (x, gx), (y, gy) in combinations(list(found.items()), 2):
            if is_subset(x, y) or is_subset(y, x):
                continue
            bits = mask_to_bits(close_subgroup(G, gx + gy))
            if bits not in found:
                found[bits] = gx + gy
                changed = True
    return set(found)


@pytest.mark.parametrize(
    "name",
    [
        "Sym(4)",
        "Alt(4)",
        "Cyclic(12)",
        "Dihedral(6)",
        "ElemAbelian(2,3)",
        "DirectProduct(Sym(3),Cyclic(2))",
        pytest.param(
            "DirectProduct(Sym(4),Cyclic(2))", marks=pytest.mark.slow
        ),
    ],
)
def test_maximal_overgroups_against_brute_force(name):
    G = build_group(name)
    subgroups = brute_force_subgroups(G)
    assert subgroups == {H.bits for H in all_subgroups(G)}
    proper = [b for b in subgroups if b != G.whole.bits]
    maximal = [
        b
        for b in proper
        if not any(b != c and is_subset(b, c) for c in proper)
    ]
    for bits in subgroups:
        H = SubgroupHandle(G, bits)
        expected = {b for b in maximal if is_subset(bits, b)}
        assert {M.bits for M in maximal_overgroups(G, H)} == expected


@pytest.mark.parametrize("name", ["Sym(4)", "Dihedral(4)", "Alt(5)"])
def test_maximal_overgroup_count_is_conjugation_invariant(name):
    G = build_group(name)
    for H in all_subgroups(G):
        count = len(maximal_overgroups(G, H))
        for t in G.generator_indexes:
            conjugate = conjugate_subgroup(G, H, t)
            assert len(maximal_overgroups(G, conjugate)) == count


def test_frattini(s4, c4, d8, v4):
    assert frattini(s4).is_trivial()
    assert frattini(v4).is_trivial()
    assert frattini(c4).order == 2
    assert frattini(d8).order == 2


def test_primitive(s4, c4, a5):
    assert is_primitive(s4)
    assert is_primitive(a5)
    assert not is_primitive(c4)


def test_conjugacy_classes(s4, a5):
    assert sorted(len(c) for c in conjugacy_classes(s4)) == [1, 3, 6, 6, 8]
    assert sorted(len(c) for c in conjugacy_classes(a5)) == [
        1,
        12,
        12,
        15,
        20,
    ]


def test_conjugacy_class_representatives(s4):
    proper = [H for H in all_subgroups(s4) if not H.is_whole()]
    reps = conjugacy_class_representatives(s4, proper)
    # 11 classes of subgroups in S4, one of them S4 itself
    assert len(reps) == 10


def test_normal_subgroups(s4, a5, d8):
    assert [N.order for N in normal_subgroups(s4)] == [1, 4, 12, 24]
    assert [N.order for N in normal_subgroups(a5)] == [1, 60]
    assert [N.order for N in normal_subgroups(d8)] == [1, 2, 4, 4, 4, 8]


@pytest.mark.parametrize(
    "name",
    [
        "Sym(4)",
        "Dihedral(4)",
        "ElemAbelian(2,3)",
        "DirectProduct(Sym(3),Sym(3))",
    ],
)
def test_normal_subgroups_are_closed_under_meet_and_join(name):
    G = build_group(name)
    normals = set(normal_subgroups(G))
    for A, B in combinations(normals, 2):
        assert (A & B) in normals
        assert A.join(B) in normals


def test_lattice_of_the_trivial_group(trivial_group):
    assert [len(c) for c in conjugacy_classes(trivial_group)] == [1]
    assert normal_subgroups(trivial_group) == (trivial_group.trivial,)
    assert chief_series(build_group("Cyclic(1)")).factors == ()


def test_normal_subgroups_above_cap(s4):
    G = PermGroup(s4.generators, element_cap=0)
    assert [N.order for N in normal_subgroups_above_cap(G)] == [1, 4, 12, 24]


def test_minimal_normal_subgroups(s4, v4, trivial_group):
    (N,) = minimal_normal_subgroups(s4)
    assert N.order == 4
    assert socle(s4) == N
    assert len(minimal_normal_subgroups(v4)) == 3
    assert socle(v4).is_whole()
    with pytest.raises(TrivialGroupError):
        minimal_normal_subgroups(trivial_group)


def test_chief_series(s4):
    series = chief_series(s4)
    assert [F.order for F in series.factors] == [4, 3, 2]
    assert all(F.is_abelian for F in series.factors)
    assert [K.order for K in series.subgroups] == [1, 4, 12, 24]
    for F, G in zip(series.factors, series.factors[1:]):
        assert F.upper == G.lower


def test_chief_series_of_simple_group(a5, trivial_group):
    series = chief_series(a5)
    (F,) = series.factors
    assert F.order == 60
    assert not F.is_abelian
    assert not F.is_frattini
    assert chief_series(trivial_group).factors == ()
    assert chief_series(trivial_group).subgroups == [trivial_group.trivial]


def test_chief_series_seed(v4):
    first = chief_series(v4, seed=0).factors[0].upper
    second = chief_series(v4, seed=1).factors[0].upper
    assert first != second
    assert first.order == second.order == 2


def test_chief_factor(s4):
    normals = normal_subgroups(s4)
    V, A = normals[1], normals[2]
    F = chief_factor(s4, V, s4.trivial)
    assert F.order == 4
    assert F.quotient.order == 4
    assert len(F.action) == len(s4.generators)
    with pytest.raises(NotAChiefFactor):
        chief_factor(s4, A, s4.trivial)
    with pytest.raises(NotAChiefFactor):
        chief_factor(s4, s4.trivial, V)
    with pytest.raises(NotAChiefFactor):
        chief_factor(s4, point_stabilizer(s4, 0), s4.trivial)


def test_frattini_factors(c4, s4):
    bottom, top = chief_series(c4).factors
    assert is_frattini_factor(c4, bottom)
    assert not is_frattini_factor(c4, top)
    assert not any(F.is_frattini for F in chief_series(s4).factors)


@pytest.mark.parametrize(
    "name, soluble",
    [
        ("Sym(3)", True),
        ("Sym(4)", True),
        ("Alt(4)", True),
        ("Dihedral(5)", True),
        ("ElemAbelian(3,2)", True),
        ("DirectProduct(Alt(4),Cyclic(2))", True),
        ("Alt(5)", False),
        ("Sym(5)", False),
    ],
)
def test_soluble_iff_chief_factors_are_abelian(name, soluble):
    G = build_group(name)
    assert is_soluble(G) == soluble
    assert all(F.is_abelian for F in chief_series(G).factors) == soluble


def test_results_are_cached_on_the_group(s4):
    first = subgroup_interval(s4, s4.trivial)
    assert subgroup_interval(s4, s4.trivial) is first
    other = build_group("Sym(4)")
    assert subgroup_interval(other, other.trivial) is not first
    assert normal_subgroups(s4) is normal_subgroups(s4)
