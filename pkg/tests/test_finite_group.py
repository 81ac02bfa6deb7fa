import pytest
from hypothesis import given, strategies as st

from mackey.finite_group import (BUILTIN, GroupError, Group, all_subgroups, builtin_group, cyclic,
                                 direct_product, double_cosets, group_from_permutations, index,
                                 left_cosets, symmetric)


def test_builtins_are_groups():
    for name in BUILTIN:
        G = builtin_group(name)
        assert G.order == len(G.table)


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin_group("Q8")


def test_non_associative_table_names_triple():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4],
         [1, 0, 3, 4, 2],
         [2, 4, 0, 1, 3],
         [3, 2, 4, 0, 1],
         [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError, match="associative at"):
        Group(t)


def test_bad_identity():
    with pytest.raises(GroupError):
        Group([[1, 0], [0, 1]])


@pytest.mark.parametrize("name, subgroups, classes", [
    ("C1", 1, 1), ("C2", 2, 2), ("C3", 2, 2), ("C2xC2", 5, 5), ("S3", 6, 4), ("D8", 10, 8), ("C4", 3, 3),
])
def test_subgroup_counts(name, subgroups, classes):
    T = all_subgroups(builtin_group(name))
    assert len(T.subgroups) == subgroups
    assert T.num_classes == classes
    assert T.rep(0) == frozenset({0})
    assert len(T.rep(T.top)) == T.group.order


def test_subgroups_brute_force(s3):
    from itertools import combinations
    brute = {frozenset(c) for r in range(1, 7) for c in combinations(range(6), r) if s3.is_subgroup(c)}
    assert brute == set(all_subgroups(s3).subgroups)


def test_order_bound():
    G = symmetric(4)
    with pytest.raises(GroupError, match="bound"):
        all_subgroups(G, bound=12)
    assert all_subgroups(G, bound=24).num_classes == 11


def test_double_cosets_partition(s3):
    T = all_subgroups(s3)
    for H in T.subgroups:
        for K in T.subgroups:
            D = double_cosets(s3, H, K)
            assert sorted(x for d in D for x in d) == list(range(6))


def test_double_coset_example(s3):
    C2 = all_subgroups(s3).rep(1)
    assert len(double_cosets(s3, C2, C2)) == 2


def test_index():
    G = cyclic(4)
    assert index(G, range(4), {0, 2}) == 2
    with pytest.raises(GroupError):
        index(G, {0, 2}, range(4))


def test_cosets_start_with_subgroup(s3):
    for H in all_subgroups(s3).subgroups:
        cs = left_cosets(s3, H)
        assert cs[0] == H and len(cs) * len(H) == 6


@given(st.sampled_from(list(BUILTIN)), st.data())
def test_inverse_and_conjugation(name, data):
    G = builtin_group(name)
    g = data.draw(st.integers(0, G.order - 1))
    x = data.draw(st.integers(0, G.order - 1))
    assert G.mul(g, G.inv(g)) == 0
    assert G.conj(G.inv(g), G.conj(g, x)) == x


def test_permutation_expansion():
    G = group_from_permutations([[1, 2, 0], [1, 0, 2]])
    assert G.order == 6 and not G.is_abelian()
    assert direct_product(cyclic(2), cyclic(3)).is_abelian()
