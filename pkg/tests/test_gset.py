import random

import pytest
from hypothesis import given, strategies as st

from mackey.finite_group import builtin_group
from mackey.gset import (GMap, GSet, GSetError, conjugation_gset, coproduct, decompose, empty,
                         find_iso, hom_gset, identity_map, point, product, pullback, regular, rep_gset,
                         swap_map)
from support import bfs_orbits, brute_force_gmaps, orbit_type_counts, random_gset

GROUPS = ["C1", "C2", "C3", "C2xC2", "S3"]


def test_bad_action_rejected(c2):
    with pytest.raises(GSetError):
        GSet(c2, 2, [[1, 0], [1, 0]])  # identity moves points


def test_non_equivariant_map_rejected(c2):
    X = regular(c2)
    with pytest.raises(GSetError):
        GMap(X, X, [0, 0])


def test_point_and_empty(s3):
    assert point(s3).size == 1 and empty(s3).size == 0
    assert decompose(empty(s3)).orbits == ()


def test_coset_space_point_zero_is_subgroup(s3):
    for i in range(4):
        C = rep_gset(s3, i)
        assert set(C.stabilizer(0)) == set(decompose(C).gset.stabilizer(0))


def test_product_bookkeeping(s3):
    X = rep_gset(s3, 1)
    assert product(point(s3), X) == X == product(X, point(s3))
    Y, Z = rep_gset(s3, 2), rep_gset(s3, 0)
    assert product(product(X, Y), Z) == product(X, product(Y, Z))


def test_conjugation_gset(s3):
    X = conjugation_gset(s3)
    assert sorted(len(o) for o in bfs_orbits(X)) == [1, 2, 3]


@pytest.mark.parametrize("name", GROUPS)
def test_decomposition_is_iso(name):
    G = builtin_group(name)
    rng = random.Random(1)
    for _ in range(10):
        X = random_gset(G, rng, max_orbits=3)
        d = decompose(X)
        assert d.iso.is_bijective()
        assert sorted(d.classes) == sorted(orbit_type_counts(X).elements())
        for a in range(len(d.orbits)):
            inc = d.inclusion(a)
            assert sorted(inc.values) == sorted(d.orbits[a][1])


@pytest.mark.parametrize("name", GROUPS)
def test_hom_gset_brute_force(name):
    G = builtin_group(name)
    rng = random.Random(2)
    for _ in range(6):
        X = random_gset(G, rng, max_size=4)
        Y = random_gset(G, rng, max_size=4)
        assert len(hom_gset(X, Y)) == brute_force_gmaps(X, Y)


@given(st.sampled_from(GROUPS), st.integers(0, 10 ** 6))
def test_find_iso_after_shuffle(name, seed):
    G = builtin_group(name)
    rng = random.Random(seed)
    X = random_gset(G, rng)
    perm = list(range(X.size))
    rng.shuffle(perm)
    inv = [0] * X.size
    for i, p in enumerate(perm):
        inv[p] = i
    Y = GSet(G, X.size, [[perm[X.action[g][inv[y]]] for y in range(X.size)] for g in G])
    f = find_iso(X, Y)
    assert f is not None and f.is_bijective()


@given(st.sampled_from(GROUPS), st.integers(0, 10 ** 6))
def test_pullback_property(name, seed):
    G = builtin_group(name)
    rng = random.Random(seed)
    X, Y, Z = (random_gset(G, rng, max_size=6) for _ in range(3))
    fs, gs = hom_gset(X, Z), hom_gset(Y, Z)
    if not fs or not gs:
        return
    f, g = rng.choice(fs), rng.choice(gs)
    pb = pullback(f, g)
    expect = sorted((x, y) for x in range(X.size) for y in range(Y.size) if f(x) == g(y))
    assert sorted(pb.pairs) == expect
    for p, (x, y) in enumerate(pb.pairs):
        assert pb.proj1(p) == x and pb.proj2(p) == y


def test_coproduct_and_swap(c3):
    X, Y = rep_gset(c3, 0), point(c3)
    assert coproduct(X, Y).size == 4
    s = swap_map(X, Y)
    assert s.then(swap_map(Y, X)) == identity_map(product(X, Y))
