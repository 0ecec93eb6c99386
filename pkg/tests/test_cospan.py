import math
import random

import pytest
from hypothesis import given

from cospanfib.cospan import (
    Cospan,
    CospanIso,
    HClass,
    automorphism_order,
    automorphisms,
    canonical_class,
    closed_count,
    compose,
    enumerate_cospans,
    find_isomorphism,
    format_cospan,
    format_hclass,
    identity_cospan,
    opposite,
    parse_cospan,
    parse_hclass,
    random_cospan,
    reduce,
)
from cospanfib.errors import InputError
from cospanfib.finset import Partition, generate_equivalence

from conftest import composable_triples, cospans

F = parse_cospan("csp a=0 b=1 n=1 R={{1}} la=[] lb=[1]")
G = parse_cospan("csp a=1 b=1 n=2 R={{1},{2}} la=[1] lb=[2]")


def naive_compose(g, f):
    """Element-level pushout: concatenate carriers and glue representatives of B."""
    n = f.carrier.n
    rep_f = [blk[0] for blk in f.carrier.blocks]
    rep_g = [blk[0] + n for blk in g.carrier.blocks]
    pairs = [(x, y) for blk in f.carrier.blocks for x, y in zip(blk, blk[1:])]
    pairs += [(x + n, y + n) for blk in g.carrier.blocks for x, y in zip(blk, blk[1:])]
    pairs += [(rep_f[u], rep_g[v]) for u, v in zip(f.leg_b, g.leg_a)]
    carrier = generate_equivalence(n + g.carrier.n, pairs)
    lab = carrier.labels()
    return Cospan(f.a, g.b, carrier, tuple(lab[rep_f[w] - 1] for w in f.leg_a),
                  tuple(lab[rep_g[w] - 1] for w in g.leg_b))


def test_compose_matches_naive_pushout_random():
    rng = random.Random(7)
    for _ in range(3000):
        a, b, c = (rng.randint(0, 3) for _ in range(3))
        f, g = random_cospan(rng, a, b, 6), random_cospan(rng, b, c, 6)
        assert compose(g, f) == naive_compose(g, f)


@given(composable_triples())
def test_strict_associativity(t):
    f, g, h = t
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


@given(cospans())
def test_identity_is_unital_up_to_iso(f):
    left = compose(identity_cospan(f.b), f)
    right = compose(f, identity_cospan(f.a))
    assert find_isomorphism(left, f) is not None
    assert find_isomorphism(right, f) is not None


def test_closing_composite_bit_exact():
    h = compose(G, F)
    assert h == Cospan(0, 1, Partition(3, ((1, 2), (3,))), (), (1,))
    assert F.is_reduced() and G.is_reduced() and not h.is_reduced()
    assert closed_count(h) == 1
    iso = find_isomorphism(h, parse_cospan("csp a=0 b=1 n=2 R={{1},{2}} la=[] lb=[2]"))
    assert iso is not None and iso.sigma == (0, 1)


@given(cospans(), cospans())
def test_isomorphism_iff_equal_classes(f, g):
    iso = find_isomorphism(f, g)
    assert (iso is not None) == ((f.a, f.b) == (g.a, g.b) and canonical_class(f) == canonical_class(g))


@given(cospans())
def test_isomorphic_to_class_representative(f):
    rep = canonical_class(f).to_cospan()
    assert canonical_class(rep) == canonical_class(f)
    assert isinstance(find_isomorphism(f, rep), CospanIso)


@given(cospans(max_carrier=5))
def test_automorphism_order_is_closed_factorial(f):
    assert automorphism_order(f) == math.factorial(closed_count(f)) == sum(1 for _ in automorphisms(f))


def test_automorphism_examples():
    # three closed points, one hit point: 3! automorphisms
    assert automorphism_order(parse_hclass("hcsp a=1 b=1 P={{1,2}} closed=3").to_cospan()) == 6
    assert automorphism_order(identity_cospan(3)) == 1


@given(cospans())
def test_reduce(f):
    r = reduce(f)
    assert r.is_reduced() and closed_count(r) == 0
    assert canonical_class(r).partition == canonical_class(f).partition
    assert reduce(r) == r


@given(cospans())
def test_opposite_is_an_involution(f):
    assert opposite(opposite(f)) == f
    assert closed_count(opposite(f)) == closed_count(f)


@given(composable_triples(max_carrier=4))
def test_opposite_reverses_composition_up_to_iso(t):
    f, g, _ = t
    assert find_isomorphism(opposite(compose(g, f)), compose(opposite(f), opposite(g))) is not None


@given(cospans())
def test_format_parse_roundtrip(f):
    assert parse_cospan(format_cospan(f)) == f
    h = canonical_class(f)
    assert parse_hclass(format_hclass(h)) == h


@pytest.mark.parametrize("text", [
    "csp a=1 b=0 n=1 R={{1}} la=[2] lb=[]",
    "csp a=0 b=0 n=2 R={{2},{1}} la=[] lb=[]",
    "csp a=0 b=0 n=2 R={{1}} la=[] lb=[]",
    "cospan a=0",
    "csp a=2 b=0 n=1 R={{1}} la=[1] lb=[]",
])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_cospan(text)


def test_enumeration_counts():
    # with empty ends a cospan is just a partition: sum of Bell numbers 1+1+2+5
    assert sum(1 for _ in enumerate_cospans(0, 0, 3)) == 9
    # a=1, b=0, n<=2: n=1 gives 1, n=2 gives 2 (discrete) + 1 (one block) = 3
    assert sum(1 for _ in enumerate_cospans(1, 0, 2)) == 4


def test_hclass_rejects_bad_partition():
    with pytest.raises(InputError):
        HClass(1, 1, Partition(1, ((1,),)), 0)
    with pytest.raises(InputError):
        HClass(0, 0, Partition(0, ()), -1)


def test_iso_rejects_non_commuting_sigma():
    f = parse_cospan("csp a=1 b=1 n=2 R={{1},{2}} la=[1] lb=[2]")
    with pytest.raises(InputError):
        CospanIso(f, f, (1, 0))
