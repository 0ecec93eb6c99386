"""Hom-sets of hCsp, the reduced quotient Csp^red, and the reduction functor R.

hCsp is never materialized with unbounded closed counts. Finite categories
built here are either Csp^red (and its injective part) truncated to objects
``0..m``, or hCsp with closed counts *saturated* at a bound ``N``:
``closed(g o f) = min(true closed count, N)``. Saturation is a monotone
truncation of an additive grading, so the table stays associative and
unital.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

from .cospan import Cospan, HClass, automorphism_order, canonical_class, compose, reduce
from .errors import InputError
from .fincat import FinCategory, FunctorData, ordinal
from .finset import Partition, generate_equivalence, set_partitions


@dataclass(frozen=True)
class RedMorphism:
    """Iso class of a reduced cospan ``a -> W <- b``: a partition of A + B."""

    a: int
    b: int
    partition: Partition

    def __post_init__(self):
        if self.partition.n != self.a + self.b:
            raise InputError("partition must live on a + b points")

    def is_injective(self) -> bool:
        """Both legs injective: no block holds two points of A or two of B."""
        return all(
            sum(1 for x in blk if x <= self.a) <= 1 and sum(1 for x in blk if x > self.a) <= 1
            for blk in self.partition.blocks
        )

    def __str__(self) -> str:
        def name(x):
            return f"a{x}" if x <= self.a else f"b{x - self.a}"

        blocks = "".join("{" + ",".join(name(x) for x in blk) + "}" for blk in self.partition.blocks)
        return f"r{self.a}.{self.b}{blocks}"


def red_identity(a: int) -> RedMorphism:
    return RedMorphism(a, a, Partition(2 * a, tuple((i, i + a) for i in range(1, a + 1))))


def hclass_identity(a: int, closed: int = 0) -> HClass:
    return HClass(a, a, red_identity(a).partition, closed)


def enumerate_hcsp_hom(a: int, b: int, max_closed: int) -> list[HClass]:
    return [HClass(a, b, p, k) for p in set_partitions(a + b) for k in range(max_closed + 1)]


def compose_red(g: RedMorphism, f: RedMorphism) -> RedMorphism:
    """Glue on A + B + C and keep the induced partition of A + C."""
    if f.b != g.a:
        raise InputError(f"cannot compose: f ends at {f.b} points, g starts at {g.a}")
    a, b, c = f.a, f.b, g.b
    pairs = []
    for blk in f.partition.blocks:
        pairs.extend(zip(blk, blk[1:]))
    for blk in g.partition.blocks:
        pairs.extend((x + a, y + a) for x, y in zip(blk, blk[1:]))
    labels = generate_equivalence(a + b + c, pairs).labels()
    return RedMorphism(a, c, Partition.from_labels(labels[:a] + labels[a + b:]))


def functor_R(f: Cospan | HClass) -> RedMorphism:
    if isinstance(f, Cospan):
        f = canonical_class(reduce(f))
    return RedMorphism(f.a, f.b, f.partition)


def compose_hclass(g: HClass, f: HClass, saturate: int | None = None) -> HClass:
    h = canonical_class(compose(g.to_cospan(), f.to_cospan()))
    if saturate is not None and h.closed > saturate:
        h = HClass(h.a, h.b, h.partition, saturate)
    return h


def fiber_R(g: RedMorphism, max_closed: int) -> list[HClass]:
    """Classes over ``g``, ordered by closed count ``0..max_closed``."""
    return [HClass(g.a, g.b, g.partition, k) for k in range(max_closed + 1)]


def _as_class(f: Cospan | HClass) -> HClass:
    return canonical_class(f) if isinstance(f, Cospan) else f


def _graded_bijection(f: HClass, bound: int, post: bool) -> bool:
    if bound < 1:
        raise InputError("bound must be at least 1")
    end = f.a if post else f.b
    target_base = functor_R(f)
    images = []
    for e in fiber_R(red_identity(end), bound):
        h = compose_hclass(f, e) if post else compose_hclass(e, f)
        if functor_R(h) != target_base:
            raise AssertionError("R is not functorial on this input")
        images.append(h)
    # injectivity on the window and surjectivity onto the window of the target fiber
    return len(set(images)) == len(images) and set(fiber_R(target_base, bound)) <= set(images)


def is_locally_R_cartesian(f: Cospan | HClass, bound: int) -> bool:
    """Post-composition with ``[f]`` on the genuine fiber over ``id_A``, truncated at ``bound``."""
    return _graded_bijection(_as_class(f), bound, post=True)


def is_locally_R_cocartesian(f: Cospan | HClass, bound: int) -> bool:
    return _graded_bijection(_as_class(f), bound, post=False)


def fiber_automorphism_counts(g: RedMorphism, max_closed: int) -> list[int]:
    """Automorphism group orders along the fiber of R o P over ``g``."""
    return [automorphism_order(h.to_cospan()) for h in fiber_R(g, max_closed)]


def preserves_fiber_automorphisms(f: Cospan | HClass, bound: int) -> bool:
    """Post-composition with ``f`` matches fiber points over ``id_A`` with equal automorphism counts."""
    f = _as_class(f)
    rep = f.to_cospan()
    for e in fiber_R(red_identity(f.a), bound):
        if automorphism_order(compose(rep, e.to_cospan())) != factorial(e.closed):
            return False
    return True


# -- finite categories -------------------------------------------------


def _red_hom(a: int, b: int, injective: bool) -> list[RedMorphism]:
    homs = [RedMorphism(a, b, p) for p in set_partitions(a + b)]
    return [r for r in homs if r.is_injective()] if injective else homs


def _red_category(m: int, injective: bool) -> FinCategory:
    objects = list(range(m + 1))
    morphisms = [(r, a, b) for a in objects for b in objects for r in _red_hom(a, b, injective)]
    cache = lru_cache(maxsize=None)(compose_red)
    return FinCategory(objects, morphisms, cache, {a: red_identity(a) for a in objects})


def build_red_category(m: int) -> FinCategory:
    """Full subcategory of Csp^red on objects 0..m."""
    return _red_category(m, injective=False)


def build_red_inj_category(m: int) -> FinCategory:
    return _red_category(m, injective=True)


def build_hcsp_saturated(m: int, N: int) -> FinCategory:
    """hCsp on objects 0..m with closed counts saturated at ``N``."""
    objects = list(range(m + 1))
    morphisms = [(h, a, b) for a in objects for b in objects for h in enumerate_hcsp_hom(a, b, N)]
    return FinCategory(objects, morphisms, lambda g, f: compose_hclass(g, f, N),
                       {a: hclass_identity(a) for a in objects})


def saturated_R(m: int, N: int) -> FunctorData:
    """The reduction functor from saturated hCsp(0..m) to Csp^red(0..m)."""
    return FunctorData.from_labels(build_hcsp_saturated(m, N), build_red_category(m),
                                   lambda x: x, functor_R)


def chain_fibration(chain: Sequence[RedMorphism], N: int) -> FunctorData:
    """Pull saturated hCsp back along a composable chain ``[n] -> Csp^red``.

    Object ``i`` of the result sits over vertex ``i``; ``hom(i, j)`` is the
    saturated fiber of R over the composite ``chain[j-1] o ... o chain[i]``.
    """
    n = len(chain)
    for f, g in zip(chain, chain[1:]):
        if f.b != g.a:
            raise InputError("chain is not composable")
    ends = [chain[0].a if chain else 0] + [r.b for r in chain]
    over: dict[tuple[int, int], RedMorphism] = {}
    for i in range(n + 1):
        over[(i, i)] = red_identity(ends[i])
        for j in range(i + 1, n + 1):
            over[(i, j)] = compose_red(chain[j - 1], over[(i, j - 1)])
    morphisms = [((i, j, h), i, j) for (i, j), r in over.items() for h in fiber_R(r, N)]

    def comp(g, f):
        return (f[0], g[1], compose_hclass(g[2], f[2], N))

    E = FinCategory(list(range(n + 1)), morphisms, comp,
                    {i: (i, i, hclass_identity(ends[i])) for i in range(n + 1)})
    return FunctorData.from_labels(E, ordinal(n), lambda x: x, lambda m: (m[0], m[1]))
