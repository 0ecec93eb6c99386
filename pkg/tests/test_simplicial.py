import math

import numpy as np
import pytest

from cospanfib.errors import CapError, InputError
from cospanfib.fincat import FunctorData, cyclic_group, identity_functor, ordinal, poset_category
from cospanfib.fixtures import corpus, lax_poset
from cospanfib.homology import components, is_contractible_through
from cospanfib.simplicial import (
    SimplicialMap,
    SimplicialSet,
    apply_operator,
    boundary,
    boundary_failure,
    cocartesian_comparison,
    compose_maps,
    fiber,
    format_sset,
    horn,
    identity_map,
    inner_fibration_failure,
    injective_simplex,
    is_cartesian_edge,
    is_cocartesian_edge,
    is_cocartesian_fibration,
    is_inner_fibration,
    is_locally_cocartesian_edge,
    is_trivial_kan,
    key_lemma_object,
    nerve,
    nerve_map,
    opposite,
    opposite_map,
    parse_sset,
    pullback,
    restrict,
    simplex_cell,
    simplex_map,
    standard_simplex,
    to_point,
    truncate,
    under_category,
    under_iso,
    under_iso_check,
)
from cospanfib.simplicial.keylemma import is_levelwise_iso


# -- simplices, horns, boundaries --------------------------------------------


@pytest.mark.parametrize("n", range(4))
def test_standard_simplex_counts(n):
    X = standard_simplex(n, 4)
    # monotone maps [d] -> [n]
    assert X.counts() == [math.comb(n + d + 1, d + 1) for d in range(5)]
    assert X.identity_violation() is None
    assert [int(X.nondegenerate(d).sum()) for d in range(5)] == [math.comb(n + 1, d + 1) for d in range(5)]


def test_boundary_and_horn_counts():
    assert boundary(2).counts() == [3, 6, 9]
    assert horn(2, 1).counts() == [3, 5, 7]
    assert injective_simplex(2).counts() == [3, 3, 1]
    assert not injective_simplex(2).is_simplicial
    with pytest.raises(InputError):
        horn(2, 3)


def test_cap_is_enforced():
    X = standard_simplex(1, 2)
    with pytest.raises(CapError):
        X.count(3)
    assert truncate(X, 1).cap == 1


def test_operators_and_simplex_maps():
    Y = standard_simplex(2, 3)
    d, top = simplex_cell(2, (0, 1, 2))
    assert apply_operator(Y, 2, top, (0, 2)) == simplex_cell(2, (0, 2))[1]
    assert apply_operator(Y, 2, top, (1, 1)) == simplex_cell(2, (1, 1))[1]
    s = simplex_map(Y, 2, top, 3)
    assert s.violation() is None and s.is_bijective()
    e = simplex_map(Y, 1, simplex_cell(2, (0, 2))[1], 3)
    assert e.violation() is None and e.is_injective()


def test_opposite():
    X = nerve(ordinal(2), 3)
    Xop = opposite(opposite(X))
    assert all(np.array_equal(a, b) for a, b in zip(X.faces, Xop.faces))
    assert opposite(X).identity_violation() is None


def test_map_validation_rejects_non_simplicial_levels():
    X = standard_simplex(1, 2)
    bad = SimplicialMap(X, X, [np.array([1, 0])] + [np.arange(X.count(d)) for d in (1, 2)])
    assert bad.violation() is not None
    with pytest.raises(InputError):
        bad.validate()


# -- nerves and pullbacks ----------------------------------------------------


def test_nerve_of_ordinal_is_a_simplex():
    assert nerve(ordinal(3), 4).counts() == standard_simplex(3, 4).counts()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_nerve_of_cyclic_group(n):
    X = nerve(cyclic_group(n), 3)
    assert X.counts() == [n ** d for d in range(4)]
    assert X.identity_violation() is None


def test_nerve_map_is_simplicial():
    for fx in corpus():
        assert nerve_map(fx.functor(), 3).violation() is None


def test_pullback_counts_are_fiber_products():
    P = lax_poset()
    p = nerve_map(P, 3)
    q = simplex_map(p.codomain, 1, 1, 3)
    Pb = pullback(p, q)
    for d in range(4):
        want = sum(int((p.levels[d] == y).sum()) * int((q.levels[d] == y).sum()) for y in range(p.codomain.count(d)))
        assert Pb.sset.count(d) == want
    assert Pb.pr_left().violation() is None and Pb.pr_right().violation() is None


def test_fiber_counts():
    p = nerve_map(lax_poset(), 3)
    F = fiber(p, 1)
    assert F.sset.count(0) == 2
    assert F.pr_left().is_injective()


def test_restriction_maps_to_simplex():
    p = nerve_map(lax_poset(), 3)
    q = restrict(p, 1, 1)
    assert q.codomain.count(0) == 2 and q.violation() is None


# -- under-categories --------------------------------------------------------


def test_under_category_of_simplex_edge_is_a_point():
    X = standard_simplex(2, 3)
    U = under_category(X, 1, simplex_cell(2, (0, 2))[1])
    assert U.sset.counts() == [1, 1]


def test_under_category_of_vertex_in_simplex():
    # under vertex 0 of Delta^2 is again Delta^2
    U = under_category(standard_simplex(2, 4), 0, 0)
    assert U.sset.counts() == standard_simplex(2, 3).counts()
    assert U.projection().violation() is None


def test_under_category_needs_room():
    with pytest.raises(CapError):
        under_category(standard_simplex(2, 2), 2, 0)


# -- lifting -------------------------------------------------------------------


def test_inner_fibrations():
    assert inner_fibration_failure(to_point(horn(2, 1))) is not None
    for fx in corpus():
        assert is_inner_fibration(nerve_map(fx.functor(), 3))


def test_trivial_kan():
    assert is_trivial_kan(identity_map(standard_simplex(2, 3)))
    assert not is_trivial_kan(to_point(boundary(2)))
    assert boundary_failure(to_point(boundary(2)), 1) is not None


def test_identity_functor_edges_are_cocartesian():
    p = nerve_map(identity_functor(ordinal(2)), 3)
    for e in range(p.domain.count(1)):
        for mode in ("lifting", "trivial-kan"):
            assert is_cocartesian_edge(p, e, 3, mode) and is_cartesian_edge(p, e, 3, mode)


def test_lax_poset_composite_edge():
    P = lax_poset()
    p = nerve_map(P, 4)
    assert is_cocartesian_fibration(p, 4, local=True)
    assert not is_cocartesian_fibration(p, 4)
    locals_ = [e for e in range(p.domain.count(1)) if is_locally_cocartesian_edge(p, e, 4)]
    strict = [e for e in range(p.domain.count(1)) if is_cocartesian_edge(p, e, 4)]
    assert set(strict) < set(locals_)


def test_comparison_map_is_simplicial():
    p = nerve_map(lax_poset(), 4)
    assert cocartesian_comparison(p, 3).violation() is None


# -- fiber-under-vertex objects and the under-category comparison -----------------------


def test_key_lemma_negative_control():
    # two objects with no arrow between them, over [1]: nothing under a reaches the fiber over 1
    D = poset_category([0, 1], lambda x, y: x == y)
    P = FunctorData.from_labels(D, ordinal(1), lambda x: x, lambda f: f)
    p = nerve_map(P, 4)
    K = key_lemma_object(p, 0).sset
    assert K.count(0) == 0 and components(K) != 1
    assert not is_contractible_through(K, 2)


def test_key_lemma_object_of_simplex():
    p = nerve_map(identity_functor(ordinal(2)), 4)
    K = key_lemma_object(p, 0).sset
    assert is_contractible_through(K, 2)


def test_under_iso_on_lax_poset_and_corruption():
    p = nerve_map(lax_poset(), 4)
    Y = p.codomain
    for s in range(Y.count(1)):
        for x in np.flatnonzero(p.levels[0] == Y.faces[1][s, 1]).tolist():
            assert under_iso_check(p, s, x, 2)
    u = under_iso(p, 1, 0, 2)
    faces = [f.copy() for f in u.target.faces]
    faces[1][0, 0] = (faces[1][0, 0] + 1) % u.target.count(0)
    broken = SimplicialSet(faces, [d.copy() for d in u.target.degeneracies])
    assert not is_levelwise_iso(u.source, broken, u.map, 2)


def test_under_iso_requires_vertex_determined_codomain():
    p = nerve_map(FunctorData.from_labels(cyclic_group(4), cyclic_group(2), lambda x: x, lambda k: k % 2), 4)
    with pytest.raises(InputError):
        under_iso(p, 1, 0, 2)


def test_under_iso_cap_limit():
    p = nerve_map(lax_poset(), 4)
    with pytest.raises(CapError):
        under_iso(p, 1, 0, 3)


# -- dump format ------------------------------------------------------------


@pytest.mark.parametrize("X", [nerve(cyclic_group(2), 3), boundary(2), injective_simplex(2),
                               nerve(ordinal(1), 2)], ids=["Z2", "dD2", "semi", "D1"])
def test_dump_roundtrip(X):
    Y = parse_sset(format_sset(X))
    assert Y.counts() == X.counts() and Y.is_simplicial == X.is_simplicial
    assert all(np.array_equal(a, b) for a, b in zip(X.faces, Y.faces))
    assert format_sset(Y) == format_sset(X)


@pytest.mark.parametrize("text", [
    "",
    "sset kind=simplicial\n",
    "sset kind=semi cap=1 truncated=yes\ncells 0 1\n",
    "sset kind=semi cap=1 truncated=yes\ncells 0 1\ncells 1 1\nfaces 1 0,1\n",
    "sset kind=semi cap=1 truncated=yes\ncells 0 1\ncells 1 1\nfaces 1 0\n",
    "sset kind=odd cap=0 truncated=yes\ncells 0 1\n",
    "sset kind=semi cap=0 truncated=yes\ncells 0 1\nwhatever 0\n",
])
def test_dump_parse_errors(text):
    with pytest.raises(InputError):
        parse_sset(text)


def test_compose_maps():
    X = standard_simplex(1, 2)
    assert compose_maps(to_point(X), identity_map(X)).violation() is None
    assert opposite_map(identity_map(X)).violation() is None
