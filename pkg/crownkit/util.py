#!/usr/bin/env python
# vim: set et ts=8 sts=4 sw=4 ai:

from functools import lru_cache, partial, wraps
from typing import Iterable, Iterator, List

import numpy as np


def instance_lru_cache(method, maxsize: int):
    """
    Wrap a bound method into a private lru_cache, so the cache lives and dies
    with the instance and its size can depend on the instance.
    """

    @lru_cache(maxsize)
    def inner(*args):
        return method(*args)

    return inner


def group_cache(maxsize: int = 128):
    """
    Memoize a function of (group, *args) in a cache stored on the group
    instance, so results are released together with the group.
    """

    def decorator(func):
        attr = "_cache_{}_{}".format(
            func.__module__.rpartition(".")[2], func.__name__
        )

        @wraps(func)
        def wrapper(group, *args, **kwargs):
            cached = group.__dict__.get(attr)
            if cached is None:
                cached = lru_cache(maxsize)(partial(func, group))
                group.__dict__[attr] = cached
            return cached(*args, **kwargs)

        return wrapper

    return decorator


def make_bits(indexes: Iterable[int]) -> int:
    value = 0
    for idx in indexes:
        value |= 1 << int(idx)
    return value


def iter_bits(value: int) -> Iterator[int]:
    while value:
        low = value & -value
        yield low.bit_length() - 1
        value ^= low


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def mask_to_bits(mask: np.ndarray) -> int:
    packed = np.packbits(mask.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_to_mask(bits: int, length: int) -> np.ndarray:
    nbytes = (length + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little", count=length).astype(bool)


def bits_to_indexes(bits: int, length: int) -> np.ndarray:
    return np.flatnonzero(bits_to_mask(bits, length))


def set_partitions(n: int) -> Iterator[List[List[int]]]:
    """
    All set partitions of {0..n-1}, generated as restricted growth strings
    a[0]=0, a[i] <= 1 + max(a[:i]), in lexicographic order.
    """
    if n == 0:
        yield []
        return
    a = [0] * n
    m = [0] * n
    while True:
        blocks: List[List[int]] = [[] for _ in range(max(a) + 1)]
        for point, block in enumerate(a):
            blocks[block].append(point)
        yield blocks
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def bell_number(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def format_partition(blocks: Iterable[Iterable[int]]) -> str:
    return "".join(
        "{" + ",".join(str(p + 1) for p in block) + "}" for block in blocks
    )
