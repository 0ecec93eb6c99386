"""Cospans of finite sets in the strict model ``A -> n/R <- B``.

The carrier of a cospan is a :class:`~cospanfib.finset.Partition`; legs map
points of ``A = {1..a}`` and ``B = {1..b}`` to 0-based block indices of the
carrier. Composition glues along the shared middle set using the
equivalence relation generated on the concatenated carrier, which makes it
strictly associative on the nose.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import InputError
from .finset import Partition, UnionFind, parse_blocks, set_partitions


@dataclass(frozen=True)
class Cospan:
    a: int
    b: int
    carrier: Partition
    leg_a: tuple[int, ...]
    leg_b: tuple[int, ...]

    def __post_init__(self):
        k = len(self.carrier.blocks)
        if len(self.leg_a) != self.a or len(self.leg_b) != self.b:
            raise InputError("leg lengths do not match a, b")
        for w in self.leg_a + self.leg_b:
            if not 0 <= w < k:
                raise InputError(f"leg value {w} is not a block index of the carrier")

    @property
    def width(self) -> int:
        """Number of points of the carrier quotient set."""
        return len(self.carrier.blocks)

    def hit(self) -> frozenset[int]:
        return frozenset(self.leg_a) | frozenset(self.leg_b)

    def is_reduced(self) -> bool:
        return len(self.hit()) == self.width

    def __str__(self) -> str:
        return format_cospan(self)


@dataclass(frozen=True)
class CospanIso:
    """A carrier bijection ``sigma`` commuting with both legs."""

    source: Cospan
    target: Cospan
    sigma: tuple[int, ...]

    def __post_init__(self):
        s, t = self.source, self.target
        if (s.a, s.b) != (t.a, t.b):
            raise InputError("isomorphic cospans must share their ends")
        if sorted(self.sigma) != list(range(t.width)) or len(self.sigma) != s.width:
            raise InputError("sigma is not a bijection of block indices")
        if tuple(self.sigma[w] for w in s.leg_a) != t.leg_a:
            raise InputError("sigma does not commute with the A-leg")
        if tuple(self.sigma[w] for w in s.leg_b) != t.leg_b:
            raise InputError("sigma does not commute with the B-leg")


@dataclass(frozen=True)
class HClass:
    """Isomorphism class of a cospan: induced partition of A + B and |c(W)|.

    Points of A are numbered 1..a and points of B follow as a+1..a+b.
    """

    a: int
    b: int
    partition: Partition
    closed: int

    def __post_init__(self):
        if self.partition.n != self.a + self.b:
            raise InputError("partition must live on a + b points")
        if self.closed < 0:
            raise InputError("negative closed count")

    def to_cospan(self) -> Cospan:
        """Representative with discrete carrier: hit points first, closed last."""
        labels = self.partition.labels()
        width = len(self.partition.blocks) + self.closed
        return Cospan(self.a, self.b, Partition.discrete(width), labels[: self.a], labels[self.a:])

    def __str__(self) -> str:
        return format_hclass(self)


def compose(g: Cospan, f: Cospan) -> Cospan:
    """The strict composite ``g o f`` of ``f: A -> B`` and ``g: B -> C``.

    The carrier is ``n + m`` with f's elements first: the equivalence
    relation generated by R, S shifted by n, and the gluing of each
    ``b in B`` across the legs. Gluing is done on blocks, and the result is
    read off in least-element order so it is already canonical.
    """
    if f.b != g.a:
        raise InputError(f"cannot compose: f ends at {f.b} points, g starts at {g.a}")
    n, m = f.carrier.n, g.carrier.n
    kf = len(f.carrier.blocks)
    uf = UnionFind(kf + len(g.carrier.blocks))
    for j, k in zip(f.leg_b, g.leg_a):
        uf.union(j, kf + k)
    roots = [uf.find(x) for x in f.carrier.labels()] + [uf.find(kf + x) for x in g.carrier.labels()]
    renumber: dict[int, int] = {}
    blocks: list[list[int]] = []
    for elem, r in enumerate(roots, start=1):
        k = renumber.get(r)
        if k is None:
            k = renumber[r] = len(blocks)
            blocks.append([])
        blocks[k].append(elem)
    carrier = Partition._canonical(n + m, tuple(map(tuple, blocks)))
    leg_a = tuple(renumber[uf.find(w)] for w in f.leg_a)
    leg_c = tuple(renumber[uf.find(kf + w)] for w in g.leg_b)
    return Cospan(f.a, g.b, carrier, leg_a, leg_c)


def opposite(f: Cospan) -> Cospan:
    return Cospan(f.b, f.a, f.carrier, f.leg_b, f.leg_a)


def closed_count(f: Cospan) -> int:
    return f.width - len(f.hit())


def canonical_class(f: Cospan) -> HClass:
    return HClass(f.a, f.b, Partition.from_labels(f.leg_a + f.leg_b), closed_count(f))


def reduce(f: Cospan) -> Cospan:
    """Drop the blocks no leg hits; surviving elements are renumbered in order."""
    hit = f.hit()
    kept = [blk for k, blk in enumerate(f.carrier.blocks) if k in hit]
    renumber = {x: i for i, x in enumerate(sorted(x for blk in kept for x in blk), start=1)}
    carrier = Partition(len(renumber), tuple(tuple(renumber[x] for x in blk) for blk in kept))
    reindex = {k: i for i, k in enumerate(sorted(hit))}
    return Cospan(f.a, f.b, carrier, tuple(reindex[w] for w in f.leg_a), tuple(reindex[w] for w in f.leg_b))


def find_isomorphism(f: Cospan, g: Cospan) -> CospanIso | None:
    """A witnessing bijection ``f -> g`` or ``None``.

    Hit blocks are forced by the legs; closed blocks are matched in order.
    """
    if (f.a, f.b) != (g.a, g.b) or canonical_class(f) != canonical_class(g):
        return None
    sigma = [-1] * f.width
    for w, v in zip(f.leg_a + f.leg_b, g.leg_a + g.leg_b):
        sigma[w] = v
    f_closed = [k for k in range(f.width) if sigma[k] < 0]
    g_hit = g.hit()
    g_closed = [k for k in range(g.width) if k not in g_hit]
    for k, v in zip(f_closed, g_closed):
        sigma[k] = v
    return CospanIso(f, g, tuple(sigma))


@lru_cache(maxsize=None)
def _permutations(k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(itertools.permutations(range(k))), dtype=np.int8)


def automorphism_order(f: Cospan) -> int:
    """Count carrier bijections fixing both legs, by enumerating all of them."""
    perms = _permutations(f.width)
    hit = np.array(sorted(f.hit()), dtype=np.int64)
    if hit.size == 0:
        return int(perms.shape[0])
    return int(np.all(perms[:, hit] == hit, axis=1).sum())


def automorphisms(f: Cospan) -> Iterator[CospanIso]:
    for perm in itertools.permutations(range(f.width)):
        if all(perm[w] == w for w in f.hit()):
            yield CospanIso(f, f, perm)


def identity_cospan(a: int) -> Cospan:
    return Cospan(a, a, Partition.discrete(a), tuple(range(a)), tuple(range(a)))


def enumerate_cospans(a: int, b: int, max_carrier: int) -> Iterator[Cospan]:
    """Every strict cospan ``a -> n/R <- b`` with ``n <= max_carrier``."""
    for n in range(max_carrier + 1):
        for carrier in set_partitions(n):
            k = len(carrier.blocks)
            for legs in itertools.product(range(k), repeat=a + b):
                yield Cospan(a, b, carrier, legs[:a], legs[a:])


def random_cospan(rng: random.Random, a: int, b: int, max_carrier: int) -> Cospan:
    lo = 1 if a + b > 0 else 0
    n = rng.randint(lo, max(lo, max_carrier))
    labels = [rng.randrange(n) for _ in range(n)]
    carrier = Partition.from_labels(labels)
    k = len(carrier.blocks)
    return Cospan(a, b, carrier, tuple(rng.randrange(k) for _ in range(a)), tuple(rng.randrange(k) for _ in range(b)))


def format_cospan(f: Cospan) -> str:
    blocks = ",".join("{" + ",".join(map(str, blk)) + "}" for blk in f.carrier.blocks)
    la = ",".join(str(w + 1) for w in f.leg_a)
    lb = ",".join(str(w + 1) for w in f.leg_b)
    return f"csp a={f.a} b={f.b} n={f.carrier.n} R={{{blocks}}} la=[{la}] lb=[{lb}]"


_CSP_RE = re.compile(r"^cspa=(\d+)b=(\d+)n=(\d+)R=\{(.*)\}la=\[([\d,]*)\]lb=\[([\d,]*)\]$")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",")] if text else []


def parse_cospan(text: str) -> Cospan:
    m = _CSP_RE.match(re.sub(r"\s+", "", text))
    if not m:
        raise InputError(f"cannot parse cospan {text!r}")
    a, b, n = int(m.group(1)), int(m.group(2)), int(m.group(3))
    blocks = parse_blocks(m.group(4))
    flat = sorted(x for blk in blocks for x in blk)
    if any(not blk for blk in blocks) or flat != list(range(1, n + 1)):
        raise InputError(f"R does not partition 1..{n}")
    carrier = Partition.from_blocks(n, blocks)
    # leg indices refer to the canonical block order
    if [tuple(sorted(blk)) for blk in blocks] != list(carrier.blocks):
        raise InputError("blocks of R must be listed in canonical order")
    try:
        return Cospan(a, b, carrier, tuple(w - 1 for w in _int_list(m.group(5))),
                      tuple(w - 1 for w in _int_list(m.group(6))))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def format_hclass(h: HClass) -> str:
    blocks = ",".join("{" + ",".join(map(str, blk)) + "}" for blk in h.partition.blocks)
    return f"hcsp a={h.a} b={h.b} P={{{blocks}}} closed={h.closed}"


_HCLASS_RE = re.compile(r"^hcspa=(\d+)b=(\d+)P=\{(.*)\}closed=(\d+)$")


def parse_hclass(text: str) -> HClass:
    m = _HCLASS_RE.match(re.sub(r"\s+", "", text))
    if not m:
        raise InputError(f"cannot parse class {text!r}")
    a, b = int(m.group(1)), int(m.group(2))
    blocks = parse_blocks(m.group(3))
    if sorted(x for blk in blocks for x in blk) != list(range(1, a + b + 1)):
        raise InputError("P does not partition the points of A + B")
    return HClass(a, b, Partition.from_blocks(a + b, blocks), int(m.group(4)))
