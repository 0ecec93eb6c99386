"""Named finite functors used by the test suites and the CLI.

``corpus()`` is the mixed collection for cross-checking the three
(co)Cartesian deciders. ``fibration_fixtures()`` generates fibrations over
``[n]``: reductions pulled back along chains in Csp^red, plus hand-built
lax Grothendieck constructions whose composite lifts fail to compose.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .cospan_cats import RedMorphism, build_red_category, build_red_inj_category, chain_fibration, saturated_R
from .fincat import (
    FinCategory,
    FunctorData,
    cyclic_group,
    identity_functor,
    is_cocartesian_fibration,
    is_locally_cartesian_fibration,
    is_locally_cocartesian_fibration,
    lax_grothendieck,
    ordinal,
    poset_category,
    product_category,
    to_terminal,
)
from .finset import Partition

# the pair of reduced cospans 0 -> 1 <- 1 and 1 -> 2 <- 1 whose composite closes a component
CLOSING_F = RedMorphism(0, 1, Partition(1, ((1,),)))
CLOSING_G = RedMorphism(1, 1, Partition(2, ((1,), (2,))))


@dataclass(frozen=True)
class Fixture:
    name: str
    build: Callable[[], FunctorData] = field(compare=False, repr=False)
    over: int | None = None  # n when the codomain is the poset [n]

    def functor(self) -> FunctorData:
        return _cached(self)


@lru_cache(maxsize=None)
def _cached(fx: Fixture) -> FunctorData:
    return fx.build()


def group_quotient(n: int, m: int) -> FunctorData:
    if n % m:
        raise ValueError(f"{m} does not divide {n}")
    return FunctorData.from_labels(cyclic_group(n), cyclic_group(m), lambda x: x, lambda k: k % m)


def poset_collapse() -> FunctorData:
    """``[2] -> [1]`` sending 0, 1 to 0 and 2 to 1."""
    return FunctorData.from_labels(ordinal(2), ordinal(1), lambda x: 0 if x < 2 else 1,
                                   lambda f: (int(f[0] == 2), int(f[1] == 2)))


def poset_inclusion() -> FunctorData:
    """``{0 < 2} -> [2]``."""
    P = poset_category([0, 2], lambda x, y: x <= y)
    return FunctorData.from_labels(P, ordinal(2), lambda x: x, lambda f: f)


def _const_push(F: FinCategory, obj) -> tuple[Callable, Callable]:
    ident = F.labels[F.identity(F.obj(obj))]
    return (lambda a: obj), (lambda u: ident)


def lax_poset() -> FunctorData:
    """Fibers ``{0 < 1}`` over [2]; ``0 -> 1 -> 2`` act by the identity, ``0 -> 2`` collapses to 0."""
    F = ordinal(1)
    return lax_grothendieck([F, F, F], {(0, 1): (lambda a: a, lambda u: u), (1, 2): (lambda a: a, lambda u: u),
                                        (0, 2): _const_push(F, 0)},
                            {(0, 1, 2): lambda a: (0, a)})


def lax_z2() -> FunctorData:
    """Fibers ``Z/2 x [1]`` over [2]; ``0 -> 2`` keeps the group part and collapses to level 0."""
    F = product_category(cyclic_group(2), ordinal(1))
    ident = (lambda a: a, lambda u: u)
    collapse = (lambda a: ("*", 0), lambda u: (u[0], (0, 0)))
    return lax_grothendieck([F, F, F], {(0, 1): ident, (1, 2): ident, (0, 2): collapse},
                            {(0, 1, 2): lambda a: (0, (0, a[1]))})


def product_z2() -> FunctorData:
    """``Z/2 x [1] x [1] -> [1]``, a product hence a (co)Cartesian fibration."""
    F = product_category(cyclic_group(2), ordinal(1))
    ident = (lambda a: a, lambda u: u)
    return lax_grothendieck([F, F], {(0, 1): ident})


def cocartesian_poset() -> FunctorData:
    """Fibers ``{0 < 1}`` over [1], pushed forward by the constant functor at 0."""
    F = ordinal(1)
    return lax_grothendieck([F, F], {(0, 1): _const_push(F, 0)})


def corpus() -> list[Fixture]:
    """Mixed unital functors for decider cross-checks."""
    return [
        Fixture("poset-collapse", poset_collapse),
        Fixture("identity-[2]", lambda: identity_functor(ordinal(2)), over=2),
        Fixture("poset-inclusion", poset_inclusion, over=2),
        Fixture("Z4->Z2", lambda: group_quotient(4, 2)),
        Fixture("Z2->pt", lambda: to_terminal(cyclic_group(2))),
        Fixture("red-inj(1)->pt", lambda: to_terminal(build_red_inj_category(1))),
        Fixture("red(1)->pt", lambda: to_terminal(build_red_category(1))),
        Fixture("R:hCsp(1,N=2)->red(1)", lambda: saturated_R(1, 2)),
        Fixture("chain[f](N=2)", lambda: chain_fibration([CLOSING_F], 2), over=1),
        Fixture("chain[f,g](N=2)", lambda: chain_fibration([CLOSING_F, CLOSING_G], 2), over=2),
        Fixture("lax-poset", lax_poset, over=2),
        Fixture("lax-Z2", lax_z2, over=2),
        Fixture("cocart-poset", cocartesian_poset, over=1),
    ]


def red_chains(n: int, max_object: int) -> list[list[RedMorphism]]:
    """Composable chains of length ``n`` in Csp^red on objects ``0..max_object``."""
    if n == 0:
        return [[]]
    C = build_red_category(max_object)
    chains = [[C.labels[m]] for m in range(C.n_morphisms)]
    for _ in range(n - 1):
        chains = [ch + [C.labels[m]] for ch in chains for m in C.out_of(C.obj(ch[-1].b))]
    return chains


def _chain_name(chain: list[RedMorphism], N: int) -> str:
    return "chain[" + ",".join(map(str, chain)) + f"](N={N})"


def fibration_fixtures(n_max: int = 2, closed_bound: int = 3, max_object: int = 1) -> list[Fixture]:
    """Locally (co)Cartesian fibrations over ``[n]`` for ``n <= n_max``.

    Chain fibrations with saturation bounds ``1..closed_bound`` come first,
    then the hand-built lax examples; each is checked to be locally
    Cartesian and locally coCartesian before it is returned.
    """
    out = []
    for n in range(n_max + 1):
        for chain in red_chains(n, max_object):
            for N in range(1, closed_bound + 1):
                out.append(Fixture(_chain_name(chain, N), (lambda ch=chain, N=N: chain_fibration(ch, N)), over=n))
    out += [Fixture("cocart-poset", cocartesian_poset, over=1), Fixture("product-Z2", product_z2, over=1)]
    if n_max >= 2:
        out += [Fixture("lax-poset", lax_poset, over=2), Fixture("lax-Z2", lax_z2, over=2)]
    for fx in out:
        P = fx.functor()
        if not (is_locally_cocartesian_fibration(P) and is_locally_cartesian_fibration(P)):
            raise AssertionError(f"fixture {fx.name} is not a locally (co)Cartesian fibration")
    return out


def non_cocartesian(fixtures: list[Fixture]) -> list[Fixture]:
    return [fx for fx in fixtures if not is_cocartesian_fibration(fx.functor())]


def by_name(name: str) -> Fixture:
    for fx in corpus() + fibration_fixtures():
        if fx.name == name:
            return fx
    raise KeyError(name)
