import random

import pytest
from hypothesis import given, strategies as st

from mackey.finite_group import builtin_group
from mackey.gset import point, product, pullback, rep_gset, terminal_map, hom_gset
from mackey.span_category import (Span, SpanClass, bend_left, bend_right, compose, counit_span, hom_basis,
                                  identity_span, lower, swap_span, tensor, transpose, unit_span, upper)
from support import burnside_lemma_hom_dim, random_gmap, random_gset, random_span

GROUPS = ["C1", "C2", "C3", "C2xC2", "S3"]
seeds = st.integers(0, 10 ** 6)


def random_raw_span(U, V, rng):
    G = U.group
    for _ in range(20):
        A = random_gset(G, rng, max_orbits=2, max_size=6)
        left, right = hom_gset(A, U), hom_gset(A, V)
        if left and right:
            return Span(rng.choice(left), rng.choice(right))
    return None


@given(st.sampled_from(GROUPS), seeds)
def test_composition_matches_raw_pullback(name, seed):
    G = builtin_group(name)
    rng = random.Random(seed)
    U, V, W = (random_gset(G, rng, max_size=6) for _ in range(3))
    s, t = random_raw_span(U, V, rng), random_raw_span(V, W, rng)
    if s is None or t is None:
        return
    pb = pullback(s.right, t.left)
    raw = Span(pb.proj1.then(s.left), pb.proj2.then(t.right))
    assert raw.normal_form() == compose(s.normal_form(), t.normal_form())


@pytest.mark.parametrize("name", GROUPS)
def test_hom_dimension_burnside_lemma(name):
    G = builtin_group(name)
    rng = random.Random(5)
    for _ in range(8):
        U, V = random_gset(G, rng, max_size=8), random_gset(G, rng, max_size=8)
        assert hom_basis(U, V).dimension == burnside_lemma_hom_dim(U, V)


def test_small_c2_examples(c2):
    pt, free = point(c2), rep_gset(c2, 0)
    assert hom_basis(free, free).dimension == 2
    assert hom_basis(pt, pt).dimension == 2
    x = compose(upper(terminal_map(free)), lower(terminal_map(free)))  # 1 <- G/e -> 1
    assert compose(x, x).counts()[x.components[0]] == 2


@given(st.sampled_from(GROUPS), seeds)
def test_associativity_bilinearity_identity(name, seed):
    G = builtin_group(name)
    rng = random.Random(seed)
    U, V, W, X = (random_gset(G, rng, max_size=6) for _ in range(4))
    s, s2 = random_span(U, V, rng), random_span(U, V, rng)
    t, u = random_span(V, W, rng), random_span(W, X, rng)
    assert compose(compose(s, t), u) == compose(s, compose(t, u))
    assert compose(s + s2, t) == compose(s, t) + compose(s2, t)
    assert compose(s, t + t) == compose(s, t) + compose(s, t)
    assert compose(identity_span(U), s) == s == compose(s, identity_span(V))


@given(st.sampled_from(GROUPS), seeds)
def test_compact_closure(name, seed):
    G = builtin_group(name)
    rng = random.Random(seed)
    U, V, W = (random_gset(G, rng, max_size=4) for _ in range(3))
    assert hom_basis(product(U, V), W).dimension == hom_basis(U, product(V, W)).dimension
    s = random_span(product(U, V), W, rng)
    assert bend_left(bend_right(s, U, V), V, W) == s


@given(st.sampled_from(GROUPS), seeds)
def test_transpose_and_tensor(name, seed):
    G = builtin_group(name)
    rng = random.Random(seed)
    U, V, W = (random_gset(G, rng, max_size=5) for _ in range(3))
    s, t = random_span(U, V, rng), random_span(V, W, rng)
    assert transpose(transpose(s)) == s
    assert transpose(compose(s, t)) == compose(transpose(t), transpose(s))
    # interchange law
    a, b = random_span(U, U, rng), random_span(V, V, rng)
    assert compose(tensor(a, b), tensor(a, b)) == tensor(compose(a, a), compose(b, b))


def test_lower_upper_functorial(s3):
    rng = random.Random(3)
    for _ in range(10):
        X, Y, Z = (random_gset(s3, rng, max_size=6) for _ in range(3))
        f, g = random_gmap(X, Y, rng), random_gmap(Y, Z, rng)
        if f is None or g is None:
            continue
        assert compose(lower(f), lower(g)) == lower(f.then(g))
        assert compose(upper(g), upper(f)) == upper(f.then(g))


def test_snake_identity(c3):
    X = rep_gset(c3, 0)
    # (1 x eta) then (eps x 1) is the identity X -> X
    eta = unit_span(X)  # 1 -> X x X
    eps = counit_span(X)  # X x X -> 1
    a = tensor(identity_span(X), eta)  # X -> X x (X x X)
    b = tensor(eps, identity_span(X))  # (X x X) x X -> X
    a = SpanClass(X, product(product(X, X), X), a.components)
    b = SpanClass(product(product(X, X), X), X, b.components)
    assert compose(a, b) == identity_span(X)


def test_json_roundtrip(s3):
    rng = random.Random(4)
    for _ in range(5):
        U, V = random_gset(s3, rng), random_gset(s3, rng)
        s = random_span(U, V, rng)
        assert SpanClass.from_json(s.to_json(), U, V) == s


def test_swap_is_involution(c2):
    X, Y = rep_gset(c2, 0), point(c2)
    assert compose(swap_span(X, Y), swap_span(Y, X)) == identity_span(product(X, Y))
