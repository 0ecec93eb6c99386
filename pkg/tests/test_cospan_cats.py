import itertools
import math
import random

import pytest

from cospanfib.cospan import canonical_class, compose, parse_cospan, random_cospan, reduce
from cospanfib.cospan_cats import (
    RedMorphism,
    build_hcsp_saturated,
    build_red_category,
    build_red_inj_category,
    chain_fibration,
    compose_red,
    enumerate_hcsp_hom,
    fiber_R,
    fiber_automorphism_counts,
    functor_R,
    hclass_identity,
    is_locally_R_cartesian,
    is_locally_R_cocartesian,
    preserves_fiber_automorphisms,
    red_identity,
    saturated_R,
)
from cospanfib.errors import InputError
from cospanfib.fincat import has_terminal, is_locally_cocartesian_fibration
from cospanfib.finset import Partition, bell, set_partitions

CLOSING_COMPOSITE = parse_cospan("csp a=0 b=1 n=3 R={{1,2},{3}} la=[] lb=[2]")


def red_homs(a, b):
    return [RedMorphism(a, b, p) for p in set_partitions(a + b)]


@pytest.mark.parametrize("a,b,k,count", [(0, 0, 0, 1), (1, 1, 0, 2), (1, 1, 2, 6), (2, 1, 1, 10)])
def test_enumerate_hcsp_hom_counts(a, b, k, count):
    classes = enumerate_hcsp_hom(a, b, k)
    assert len(classes) == count == bell(a + b) * (k + 1) == len(set(classes))


def test_compose_red_unital_and_associative():
    for a, b in itertools.product(range(3), repeat=2):
        for f in red_homs(a, b):
            assert compose_red(red_identity(b), f) == f == compose_red(f, red_identity(a))
    for a, b, c, d in itertools.product(range(3), repeat=4):
        for f, g, h in itertools.product(red_homs(a, b), red_homs(b, c), red_homs(c, d)):
            assert compose_red(h, compose_red(g, f)) == compose_red(compose_red(h, g), f)


def test_R_is_functorial_on_random_pairs():
    rng = random.Random(11)
    for _ in range(1000):
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        f, g = random_cospan(rng, a, b, 5), random_cospan(rng, b, c, 5)
        assert functor_R(compose(g, f)) == compose_red(functor_R(g), functor_R(f))


def test_R_on_closing_composite():
    f = parse_cospan("csp a=0 b=1 n=1 R={{1}} la=[] lb=[1]")
    assert functor_R(CLOSING_COMPOSITE) == functor_R(f) == RedMorphism(0, 1, Partition(1, ((1,),)))
    assert functor_R(CLOSING_COMPOSITE) == functor_R(reduce(CLOSING_COMPOSITE))


def test_compose_red_size_mismatch():
    with pytest.raises(InputError):
        compose_red(red_identity(2), red_identity(1))


def test_fiber_R_contract():
    for a, b in itertools.product(range(3), repeat=2):
        for g in red_homs(a, b):
            fib = fiber_R(g, 3)
            assert [h.closed for h in fib] == [0, 1, 2, 3]
            # filter oracle over the whole hom-set
            assert set(fib) == {h for h in enumerate_hcsp_hom(a, b, 3) if functor_R(h) == g}
    assert fiber_R(red_identity(1), 0) == [hclass_identity(1)]


def test_locally_R_cartesian_iff_reduced():
    for a, b in itertools.product(range(3), repeat=2):
        for h in enumerate_hcsp_hom(a, b, 2):
            for bound in range(1, 5):
                assert is_locally_R_cartesian(h, bound) == (h.closed == 0)
                assert is_locally_R_cocartesian(h, bound) == (h.closed == 0)


def test_closing_composite_not_locally_cartesian():
    assert not is_locally_R_cartesian(CLOSING_COMPOSITE, 3)
    assert is_locally_R_cartesian(reduce(CLOSING_COMPOSITE), 3)


def test_bound_zero_rejected():
    with pytest.raises(InputError):
        is_locally_R_cartesian(hclass_identity(1), 0)


def test_fiber_automorphisms():
    assert fiber_automorphism_counts(red_identity(2), 4) == [math.factorial(k) for k in range(5)]
    for h in enumerate_hcsp_hom(1, 2, 0):
        assert preserves_fiber_automorphisms(h, 3)
    assert not preserves_fiber_automorphisms(canonical_class(CLOSING_COMPOSITE), 2)


def test_red_category_small_cases():
    C = build_red_category(0)
    assert (C.n_objects, C.n_morphisms) == (1, 1)
    C = build_red_category(2)
    assert all(len(C.hom(a, b)) == bell(a + b) for a in range(3) for b in range(3))


def partial_injections(a, b):
    return sum(math.comb(a, k) * math.comb(b, k) * math.factorial(k) for k in range(min(a, b) + 1))


def test_red_inj_hom_counts_are_partial_injections():
    C = build_red_inj_category(3)
    for a, b in itertools.product(range(4), repeat=2):
        assert len(C.hom(C.obj(a), C.obj(b))) == partial_injections(a, b)
    assert len(C.hom(C.obj(2), C.obj(0))) == 1
    assert len(C.hom(C.obj(2), C.obj(2))) == 7


@pytest.mark.parametrize("m", range(1, 5))
def test_red_inj_terminal_is_empty_set(m):
    C = build_red_inj_category(m)
    assert C.objects[has_terminal(C)] == 0


def test_red_category_has_no_terminal():
    # hom(1, 0) in Csp^red already has one element, but hom(2, 0) has bell(2)
    C = build_red_category(2)
    assert has_terminal(C) is None


def test_saturated_hcsp_is_a_category():
    C = build_hcsp_saturated(1, 2)  # validated on construction
    assert C.n_morphisms == sum(bell(a + b) * 3 for a in range(2) for b in range(2))
    P = saturated_R(1, 2)
    assert P.codomain.n_morphisms == sum(bell(a + b) for a in range(2) for b in range(2))


def test_chain_fibration_is_locally_cocartesian():
    f = RedMorphism(0, 1, Partition(1, ((1,),)))
    g = RedMorphism(1, 1, Partition(2, ((1,), (2,))))
    P = chain_fibration([f, g], 2)
    assert P.domain.n_objects == 3
    assert is_locally_cocartesian_fibration(P)
    with pytest.raises(InputError):
        chain_fibration([g, RedMorphism(2, 0, Partition(2, ((1, 2),)))], 1)


def test_injective_predicate():
    assert RedMorphism(1, 1, Partition(2, ((1, 2),))).is_injective()
    assert not RedMorphism(2, 0, Partition(2, ((1, 2),))).is_injective()
