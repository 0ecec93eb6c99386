import pytest

from cospanfib import fincat
from cospanfib.errors import InputError
from cospanfib.fincat import (
    FinCategory,
    FunctorData,
    compose_functors,
    cyclic_group,
    format_category,
    genuine_fiber,
    has_terminal,
    identity_functor,
    opposite_category,
    ordinal,
    parse_category,
    poset_category,
    product_category,
    terminal_objects,
    to_terminal,
)
from cospanfib.fixtures import (
    cocartesian_poset,
    corpus,
    fibration_fixtures,
    lax_poset,
    lax_z2,
    non_cocartesian,
    poset_collapse,
    poset_inclusion,
    product_z2,
)


def verdicts(P):
    return [fincat.is_locally_cocartesian_fibration(P), fincat.is_cocartesian_fibration(P),
            fincat.is_locally_cartesian_fibration(P), fincat.is_cartesian_fibration(P)]


def test_ordinal_and_group_sizes():
    assert ordinal(3).n_morphisms == 10
    assert cyclic_group(5).n_morphisms == 5 and cyclic_group(5).n_objects == 1
    assert product_category(cyclic_group(2), ordinal(1)).n_morphisms == 6


def test_composition_table_validation():
    with pytest.raises(InputError):
        # subtraction mod 3 is neither unital nor associative
        FinCategory(["*"], [(i, "*", "*") for i in range(3)], lambda g, f: (g - f) % 3, {"*": 0})
    with pytest.raises(InputError):
        FinCategory(["x"], [("f", "x", "y")], {})


def test_text_roundtrip():
    C = cyclic_group(3)
    D = parse_category(format_category(C))
    assert (D.n_objects, D.n_morphisms) == (1, 3)
    assert (D.table >= 0).sum() == 9


def test_parse_category_example():
    text = """
    objects: x y
    idx: x -> x
    idy: y -> y
    f: x -> y
    idx = idx * idx
    idy = idy * idy
    f = f * idx
    f = idy * f
    id(x) = idx
    id(y) = idy
    """
    C = parse_category(text)
    assert C.is_unital and has_terminal(C) == C.obj("y")
    with pytest.raises(InputError):
        parse_category("objects: x\nf: x -> z\n")
    with pytest.raises(InputError):
        parse_category("objects: x\nwhat is this\n")


def test_opposite_twice():
    C = ordinal(2)
    assert opposite_category(opposite_category(C)).table.tolist() == C.table.tolist()


def test_terminal_objects():
    assert terminal_objects(ordinal(3)) == [3]
    assert has_terminal(cyclic_group(2)) is None
    assert has_terminal(poset_category([0, 1], lambda x, y: x == y)) is None


def test_genuine_fiber():
    P = lax_poset()
    F = genuine_fiber(P, 1)
    assert (F.n_objects, F.n_morphisms) == (2, 3)
    with pytest.raises(InputError):
        genuine_fiber(P, 5)


def test_functor_validation_and_composition():
    P = poset_collapse()
    Q = to_terminal(ordinal(1))
    R = compose_functors(Q, P)
    assert R.codomain.n_morphisms == 1
    FunctorData.from_labels(cyclic_group(2), ordinal(0), lambda x: 0, lambda k: (0, 0)).validate()
    with pytest.raises(InputError):
        # sends the generator of Z/2 to a non-invertible arrow
        FunctorData(cyclic_group(2), ordinal(1), [0], [0, 1]).validate()


# [DERIVED] verdicts, frozen from the deciders and cross-checked by the simplicial ones
@pytest.mark.parametrize("build,expected", [
    (lax_poset, [True, False, True, False]),
    (lax_z2, [True, False, True, False]),
    (product_z2, [True, True, True, True]),
    (cocartesian_poset, [True, True, True, True]),
    (poset_inclusion, [False, False, False, False]),
    (lambda: identity_functor(ordinal(2)), [True, True, True, True]),
])
def test_fibration_verdicts(build, expected):
    assert verdicts(build()) == expected


def test_fibration_failure_reports():
    P = lax_poset()
    assert fincat.fibration_failure(P, "locally-cocartesian") is None
    msg = fincat.fibration_failure(P, "cocartesian")
    assert msg.startswith("no cocartesian lift")
    with pytest.raises(InputError):
        fincat.fibration_failure(P, "sideways")


def test_locally_but_not_globally_cocartesian_exists():
    fixtures = fibration_fixtures(2, 3)
    assert len(fixtures) == 61
    assert len(non_cocartesian(fixtures)) == 14


def test_cartesian_morphism_implies_locally_cartesian():
    for fx in corpus():
        P = fx.functor()
        for m in range(P.domain.n_morphisms):
            if fincat.is_cartesian_morphism(P, m):
                assert fincat.is_locally_cartesian_morphism(P, m)
            if fincat.is_cocartesian_morphism(P, m):
                assert fincat.is_locally_cocartesian_morphism(P, m)
