import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cospanfib.errors import CapError, InputError
from cospanfib.fincat import cyclic_group, ordinal
from cospanfib.homology import (
    HomologyGroup,
    chain_complex,
    components,
    determinantal_factors,
    format_homology,
    homology,
    invariant_factors,
    is_contractible_through,
    is_homology_iso_through,
    smith_normal_form,
)
from cospanfib.simplicial import boundary, fiber, horn, identity_map, injective_simplex, nerve, nerve_map, standard_simplex
from cospanfib.fixtures import group_quotient, lax_z2

matrices = st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(matrices)
def test_smith_form_matches_determinantal_divisors(M):
    factors, rank = smith_normal_form(M)
    assert factors == determinantal_factors(M)
    assert rank == np.linalg.matrix_rank(np.array(M, dtype=float))
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@given(matrices)
def test_sparse_elimination_matches_dense(M):
    entries = {(i, j): v for i, row in enumerate(M) for j, v in enumerate(row) if v}
    shape = (len(M), len(M[0]))
    assert invariant_factors(entries, shape, "sparse") == invariant_factors(entries, shape, "dense")


def test_smith_examples():
    assert smith_normal_form([[2, 4], [6, 8]]) == ([2, 4], 2)
    assert smith_normal_form([[0, 0], [0, 0]]) == ([], 0)
    assert smith_normal_form([[2, 0], [0, 3]])[0] == [1, 6]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_spheres(n):
    X = boundary(n + 1)
    H = homology(X, n)
    assert H[0] == HomologyGroup(1) and H[n] == HomologyGroup(1)
    assert all(g.is_trivial() for g in H[1:n])


@pytest.mark.parametrize("m", [2, 3])
def test_nerve_of_cyclic_group(m):
    # H_odd = Z/m, H_even = 0 in positive degrees
    H = homology(nerve(cyclic_group(m), 5), 4)
    assert [str(g) for g in H] == ["Z", f"Z/{m}", "0", f"Z/{m}", "0"]


def test_methods_agree_on_lax_z2():
    X = nerve_map(lax_z2(), 4).domain
    assert homology(X, 3, method="sparse") == homology(X, 3, method="dense")
    assert [str(g) for g in homology(X, 3)] == ["Z", "Z/2", "0", "Z/2"]


def test_simplices_and_horns_contractible():
    assert is_contractible_through(standard_simplex(3, 4), 3)
    assert is_contractible_through(horn(3, 1, 4), 3)
    assert not is_contractible_through(boundary(2), 1)


def test_semi_simplicial_uses_all_cells():
    # the semi-simplicial 2-simplex is contractible as well
    H = homology(injective_simplex(2, 3), 2)
    assert H[0] == HomologyGroup(1) and all(g.is_trivial() for g in H[1:])


def test_refuses_degrees_at_cap():
    X = nerve(cyclic_group(2), 3)
    with pytest.raises(CapError):
        homology(X, 3)
    with pytest.raises(InputError):
        homology(X, -1)


def test_relative_chains_need_injective_maps():
    X = standard_simplex(1, 2)
    with pytest.raises(InputError):
        chain_complex(X, 1, relative_to=identity_map(standard_simplex(1, 2)))


def test_boundary_squares_to_zero():
    C = chain_complex(nerve(cyclic_group(3), 4))
    assert C.square_violation() is None


def test_homology_iso():
    p = nerve_map(lax_z2(), 4)
    for v in range(3):
        assert is_homology_iso_through(fiber(p, v).pr_left(), 2)
    # the kernel Z/2 of Z/4 -> Z/2: H_1 goes Z/2 -> Z/4
    q = nerve_map(group_quotient(4, 2), 4)
    i = fiber(q, 0).pr_left()
    assert is_homology_iso_through(i, 0) and not is_homology_iso_through(i, 1)
    assert is_homology_iso_through(identity_map(nerve(ordinal(2), 3)), 2)


def test_formatting():
    assert str(HomologyGroup(0)) == "0"
    assert str(HomologyGroup(1)) == "Z"
    assert str(HomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert format_homology([HomologyGroup(1), HomologyGroup(0, (3,))]) == "H_0 = Z\nH_1 = Z/3"


def test_components():
    assert components(boundary(1)) == 2
    assert components(nerve(ordinal(2), 2)) == 1
