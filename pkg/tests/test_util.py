#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

import numpy as np
import sympy
from hypothesis import given, strategies as st

from crownkit.util import (
    bell_number,
    bits_to_indexes,
    bits_to_mask,
    format_partition,
    group_cache,
    instance_lru_cache,
    is_subset,
    iter_bits,
    make_bits,
    mask_to_bits,
    set_partitions,
)


def test_make_bits():
    assert make_bits([]) == 0
    assert make_bits([0, 2]) == 5
    assert make_bits(np.array([1, 3])) == 10


def test_iter_bits():
    assert list(iter_bits(0)) == []
    assert list(iter_bits(5)) == [0, 2]
    assert list(iter_bits(1 << 100)) == [100]


def test_is_subset():
    assert is_subset(1, 3)
    assert is_subset(0, 0)
    assert not is_subset(4, 3)


def test_mask_to_bits():
    mask = np.array([True, False, True, True] + [False] * 9 + [True])
    assert mask_to_bits(mask) == 0b10000000001101
    assert (bits_to_mask(0b10000000001101, len(mask)) == mask).all()
    assert list(bits_to_indexes(0b1101, 4)) == [0, 2, 3]


@given(st.sets(st.integers(min_value=0, max_value=199)))
def test_bits_and_masks_agree(indexes):
    bits = make_bits(indexes)
    assert set(iter_bits(bits)) == indexes
    assert set(bits_to_indexes(bits, 200).tolist()) == indexes
    assert mask_to_bits(bits_to_mask(bits, 200)) == bits


def test_bell_number():
    assert [bell_number(n) for n in range(8)] == [
        1,
        1,
        2,
        5,
        15,
        52,
        203,
        877,
    ]
    for n in range(12):
        assert bell_number(n) == sympy.bell(n)


def test_set_partitions():
    assert list(set_partitions(0)) == [[]]
    assert list(set_partitions(1)) == [[[0]]]
    partitions = list(set_partitions(3))
    assert partitions[0] == [[0, 1, 2]]
    assert partitions[-1] == [[0], [1], [2]]
    for n in range(7):
        found = [
            tuple(tuple(block) for block in P) for P in set_partitions(n)
        ]
        assert len(found) == bell_number(n)
        assert len(set(found)) == len(found)
        for P in found:
            assert sorted(p for block in P for p in block) == list(range(n))


def test_format_partition():
    assert format_partition([[0, 2], [1, 3]]) == "{1,3}{2,4}"
    assert format_partition([[0]]) == "{1}"


def test_instance_lru_cache():
    calls = []

    def square(x):
        calls.append(x)
        return x * x

    cached = instance_lru_cache(square, 2)
    assert cached(3) == 9
    assert cached(3) == 9
    assert calls == [3]
    cached(4)
    cached(5)
    cached(3)
    assert calls == [3, 4, 5, 3]


class Holder:
    def __init__(self, scale):
        self.scale = scale


def test_group_cache():
    calls = []

    @group_cache(maxsize=4)
    def scaled(holder, x):
        calls.append((holder.scale, x))
        return holder.scale * x

    first, second = Holder(2), Holder(3)
    assert scaled(first, 5) == 10
    assert scaled(first, 5) == 10
    assert scaled(second, 5) == 15
    assert calls == [(2, 5), (3, 5)]
    assert scaled.__name__ == "scaled"
    # the cache is stored on the instance it belongs to
    assert [k for k in vars(first) if k.startswith("_cache_")] == [
        "_cache_test_util_scaled"
    ]
