"""Small helpers for permutations stored as tuples of images (0-indexed)."""
from __future__ import annotations

from typing import Sequence


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Return p∘q, i.e. apply q first."""
    return tuple(p[j] for j in q)


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles of p, each starting at its smallest element, in order of that element."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def count_cycles(p: Sequence[int]) -> int:
    n = len(p)
    seen = bytearray(n)
    c = 0
    for start in range(n):
        if seen[start]:
            continue
        c += 1
        j = start
        while not seen[j]:
            seen[j] = 1
            j = p[j]
    return c


def is_permutation(p: Sequence[int], n: int | None = None) -> bool:
    n = len(p) if n is None else n
    return len(p) == n and sorted(p) == list(range(n))


def from_cycles(n: int, cycs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    p = list(range(n))
    for c in cycs:
        for a, b in zip(c, list(c[1:]) + [c[0]]):
            p[a] = b
    return tuple(p)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.classes = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.classes -= 1
        return True
