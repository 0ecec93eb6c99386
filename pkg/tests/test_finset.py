import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cospanfib.errors import InputError
from cospanfib.finset import (
    Partition,
    UnionFind,
    bell,
    class_of,
    format_partition,
    generate_equivalence,
    parse_partition,
    set_partitions,
)

from conftest import partitions


def stirling_bell(n):
    # independent oracle: sum of Stirling numbers of the second kind
    def s2(n, k):
        return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)
    return sum(s2(n, k) for k in range(n + 1)) if n else 1


def closure(n, pairs):
    rel = {(i, i) for i in range(1, n + 1)} | set(pairs) | {(j, i) for i, j in pairs}
    while True:
        extra = {(i, k) for i, j in rel for j2, k in rel if j == j2} - rel
        if not extra:
            return rel
        rel |= extra


@pytest.mark.parametrize("n", range(9))
def test_bell_matches_stirling_sum(n):
    assert bell(n) == stirling_bell(n)


@pytest.mark.parametrize("n", range(7))
def test_set_partitions_are_distinct_and_complete(n):
    parts = list(set_partitions(n))
    assert len(parts) == bell(n) == len(set(parts))
    assert all(isinstance(p, Partition) and p.n == n for p in parts)


def test_set_partitions_canonical_blocks():
    for p in set_partitions(5):
        assert Partition.from_blocks(5, reversed(p.blocks)) == p
        assert [b[0] for b in p.blocks] == sorted(b[0] for b in p.blocks)


@given(st.integers(0, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(1, max(n, 1)), st.integers(1, max(n, 1))), max_size=8))))
def test_generate_equivalence_is_transitive_closure(arg):
    n, pairs = arg
    pairs = [(i, j) for i, j in pairs if i <= n and j <= n]
    p = generate_equivalence(n, pairs)
    rel = closure(n, pairs)
    lab = p.labels()
    assert all((lab[i - 1] == lab[j - 1]) == ((i, j) in rel) for i in range(1, n + 1) for j in range(1, n + 1))


@given(partitions())
def test_format_parse_roundtrip(p):
    assert parse_partition(format_partition(p)) == p


@given(partitions(max_n=8))
def test_labels_and_class_of_agree(p):
    assert all(class_of(p, i) == p.labels()[i - 1] for i in range(1, p.n + 1))
    assert Partition.from_labels(p.labels()) == p


def test_generate_equivalence_example():
    assert generate_equivalence(4, [(1, 3), (3, 4)]).blocks == ((1, 3, 4), (2,))


@pytest.mark.parametrize("n,blocks", [(3, ((1,), (3,))), (2, ((2,), (1,))), (2, ((1, 1), (2,))), (1, ((),))])
def test_invalid_partitions_rejected(n, blocks):
    with pytest.raises(InputError):
        Partition(n, blocks)


@pytest.mark.parametrize("text", ["n=2 R={{1}}", "n=2 R={{1},{3}}", "R={{1}}", "n=2 R={{1,x},{2}}"])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_partition(text)


def test_generate_equivalence_out_of_range():
    with pytest.raises(InputError):
        generate_equivalence(2, [(1, 3)])


def test_union_find_groups():
    uf = UnionFind(5)
    assert uf.union(0, 3) and uf.union(3, 4) and not uf.union(0, 4)
    assert uf.groups() == [[0, 3, 4], [1], [2]]
    assert uf.unions == 2
