"""Finite sets {1..n} and equivalence relations on them.

A :class:`Partition` is stored in canonical block form: every block is a
sorted tuple and blocks are ordered by their least element. Two partitions
are equal exactly when their canonical forms coincide.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import InputError


class UnionFind:
    """Disjoint sets on 0..n-1 with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.unions = 0

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.unions += 1
        return True

    def groups(self) -> list[list[int]]:
        """Classes as sorted lists, ordered by least element."""
        by_root: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            by_root.setdefault(self.find(x), []).append(x)
        return sorted(by_root.values(), key=lambda g: g[0])


@dataclass(frozen=True)
class Partition:
    """An equivalence relation on {1..n} in canonical block form."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"negative carrier size {self.n}")
        seen = []
        last_min = 0
        for block in self.blocks:
            if not block:
                raise InputError("empty block")
            if list(block) != sorted(set(block)):
                raise InputError(f"block {block} is not strictly increasing")
            if block[0] <= last_min:
                raise InputError("blocks are not ordered by least element")
            last_min = block[0]
            seen.extend(block)
        if sorted(seen) != list(range(1, self.n + 1)):
            raise InputError(f"blocks do not partition 1..{self.n}")

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        """Canonicalize an arbitrary listing of blocks."""
        canon = sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else 0)
        return cls(n, tuple(canon))

    @classmethod
    def _canonical(cls, n: int, blocks: tuple[tuple[int, ...], ...]) -> "Partition":
        # caller guarantees canonical form; skips validation on hot paths
        p = object.__new__(cls)
        object.__setattr__(p, "n", n)
        object.__setattr__(p, "blocks", blocks)
        return p

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        """Partition of {1..len(labels)} grouping equal labels."""
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        return cls.from_blocks(len(labels), groups.values())

    def __len__(self) -> int:
        return len(self.blocks)

    def labels(self) -> tuple[int, ...]:
        """Block index (0-based) of each element 1..n."""
        cached = self.__dict__.get("_labels")
        if cached is None:
            out = [0] * self.n
            for k, block in enumerate(self.blocks):
                for i in block:
                    out[i - 1] = k
            cached = tuple(out)
            object.__setattr__(self, "_labels", cached)
        return cached

    def __str__(self) -> str:
        return format_partition(self)


def generate_equivalence(n: int, pairs: Iterable[tuple[int, int]]) -> Partition:
    """Smallest equivalence relation on {1..n} containing ``pairs``."""
    if n < 0:
        raise InputError(f"negative carrier size {n}")
    uf = UnionFind(n)
    for i, j in pairs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise InputError(f"pair ({i}, {j}) out of range 1..{n}")
        uf.union(i - 1, j - 1)
    return Partition(n, tuple(tuple(x + 1 for x in g) for g in uf.groups()))


def class_of(p: Partition, i: int) -> int:
    """Index into ``p.blocks`` of the block containing ``i``."""
    if not 1 <= i <= p.n:
        raise InputError(f"element {i} out of range 1..{p.n}")
    for k, block in enumerate(p.blocks):
        if i in block:
            return k
    raise AssertionError("unreachable: blocks cover 1..n")


def set_partitions(n: int) -> Iterator[Partition]:
    """All partitions of {1..n}, via restricted growth strings."""
    if n == 0:
        yield Partition(0, ())
        return
    rgs = [0] * n
    maxes = [0] * n

    def rec(i: int) -> Iterator[Partition]:
        if i == n:
            yield Partition.from_labels(rgs)
            return
        for v in range(maxes[i - 1] + 2):
            rgs[i] = v
            if i + 1 < n:
                maxes[i] = max(maxes[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def bell(n: int) -> int:
    """Number of partitions of an n-element set (Bell triangle)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def format_partition(p: Partition) -> str:
    inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in p.blocks)
    return f"n={p.n} R={{{inner}}}"


_PARTITION_RE = re.compile(r"^n=(\d+)R=\{(.*)\}$")


def parse_blocks(text: str) -> list[list[int]]:
    """Parse ``{1,2},{3}`` (already stripped of whitespace and outer braces)."""
    if text == "":
        return []
    if not (text.startswith("{") and text.endswith("}")):
        raise InputError(f"malformed block list {text!r}")
    blocks = []
    for chunk in text[1:-1].split("},{"):
        if "{" in chunk or "}" in chunk:
            raise InputError(f"malformed block list {text!r}")
        try:
            blocks.append([int(x) for x in chunk.split(",")] if chunk else [])
        except ValueError:
            raise InputError(f"non-integer entry in {text!r}") from None
    return blocks


def parse_partition(text: str) -> Partition:
    """Inverse of :func:`format_partition`; whitespace is ignored."""
    m = _PARTITION_RE.match(re.sub(r"\s+", "", text))
    if not m:
        raise InputError(f"cannot parse partition {text!r}")
    n = int(m.group(1))
    blocks = parse_blocks(m.group(2))
    flat = [x for b in blocks for x in b]
    if any(not b for b in blocks) or sorted(flat) != list(range(1, n + 1)):
        raise InputError(f"blocks do not partition 1..{n}: {text!r}")
    return Partition.from_blocks(n, blocks)
