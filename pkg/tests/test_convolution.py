import itertools
import random

import pytest

from mackey.convolution import (adjunction_dims, associator, convolution, convolve, coend_class,
                                dress_monoidal_dims, dress_monoidal_iso, internal_hom, star_double_dual_iso,
                                star_dual, star_pairing_check, symmetry_iso, unit_iso)
from mackey.exact_linalg import RatMatrix
from mackey.finite_group import builtin_group
from mackey.functor import (burnside_functor, find_iso, fixed_point_functor,
                            regular_rep, sign_rep, trivial_rep, validate, zero_functor)
from mackey.gset import product
from mackey.span_category import hom_basis
from support import random_rep, reduced_coend_dim


def small_functors(G):
    return [burnside_functor(G), fixed_point_functor(trivial_rep(G)), fixed_point_functor(regular_rep(G))]


def test_jj_dim(c2):
    J = burnside_functor(c2)
    JJ = convolve(J, J)
    assert JJ.levels[-1] == 2 == reduced_coend_dim(J, J, 1)


def test_convolve_zero(c2):
    Z = zero_functor(c2)
    assert convolve(burnside_functor(c2), Z).is_zero()


@pytest.mark.parametrize("name", ["C1", "C2", "C3"])
def test_convolution_valid_and_matches_reduced_coend(name):
    G = builtin_group(name)
    fs = small_functors(G)
    for M, N in itertools.product(fs, repeat=2):
        F = convolve(M, N)
        assert validate(F).ok
        assert list(F.levels) == [reduced_coend_dim(M, N, k) for k in range(len(F.levels))]


def test_reduced_coend_random_reps(c2):
    rng = random.Random(3)
    for _ in range(3):
        M = fixed_point_functor(random_rep(c2, rng, 3))
        N = fixed_point_functor(random_rep(c2, rng, 3))
        F = convolve(M, N)
        assert list(F.levels) == [reduced_coend_dim(M, N, k) for k in range(2)]


@pytest.mark.parametrize("name", ["C1", "C2", "C3"])
def test_unit_and_symmetry(name):
    G = builtin_group(name)
    fs = small_functors(G)
    for M in fs:
        theta = unit_iso(M)
        assert theta.is_iso() and theta.is_natural()
    for M, N in itertools.product(fs, repeat=2):
        s = symmetry_iso(M, N)
        back = symmetry_iso(N, M)
        comp = s.then(back)
        assert all(c == RatMatrix.identity(c.rows) for c in comp.components)


def test_unit_iso_trivial_group():
    G = builtin_group("C1")
    J = burnside_functor(G)
    theta = unit_iso(J)
    assert theta.components[0] == RatMatrix.identity(1)


def test_associativity(c2):
    fs = small_functors(c2) + [fixed_point_functor(sign_rep(c2, [0]))]
    for L, M, N in itertools.product(fs[:3], repeat=3):
        a = convolve(convolve(L, M), N).levels
        b = convolve(L, convolve(M, N)).levels
        assert a == b
    J, Ft, Fr, Fs = fs
    for triple in [(Fr, Fs, Fr), (J, Fr, Fr), (Fr, Fr, Fr)]:
        theta = associator(*triple)
        assert theta.is_iso() and theta.is_natural()


def test_coend_class_consistency(c2):
    """Classes of basis triples at representatives are the projected basis vectors."""
    J = burnside_functor(c2)
    Fr = fixed_point_functor(regular_rep(c2))
    conv = convolution(J, Fr)
    reps = J.reps
    for k, sp in enumerate(conv.spaces):
        for col, p in enumerate(sp.free_coordinates()):
            i, j, r, m, n = sp.decode(p)
            phi = hom_basis(product(reps[i], reps[j]), reps[k]).span(r)
            mv = [1 if t == m else 0 for t in range(J.levels[i])]
            nv = [1 if t == n else 0 for t in range(Fr.levels[j])]
            v = coend_class(conv, phi, reps[i], reps[j], mv, nv)
            assert v == [1 if t == col else 0 for t in range(sp.dim)]


# -- internal hom

def test_internal_hom_of_unit(c2):
    J = burnside_functor(c2)
    for N in small_functors(c2):
        H = internal_hom(J, N).functor
        assert validate(H).ok
        assert find_iso(H, N) is not None


def test_internal_hom_to_zero(c2):
    assert internal_hom(burnside_functor(c2), zero_functor(c2)).functor.is_zero()


def test_adjunction_random_triples(c2):
    rng = random.Random(8)
    for _ in range(4):
        L, M, N = (fixed_point_functor(random_rep(c2, rng, 2)) for _ in range(3))
        a, b = adjunction_dims(L, M, N)
        assert a == b


# -- star duality

def test_star_dual(c2):
    J = burnside_functor(c2)
    S = star_dual(J)
    assert validate(S).ok and S.levels == J.levels
    assert star_dual(zero_functor(c2)).is_zero()
    theta = star_double_dual_iso(J)
    assert theta.is_iso()


def test_star_dual_trivial_group_is_transpose():
    G = builtin_group("C1")
    M = fixed_point_functor(trivial_rep(G, 2))
    S = star_dual(M)
    for (_, _, _, A), (_, _, _, B) in zip(M.generators(), S.generators()):
        assert B == A.T


def test_star_pairing(c2, c3):
    J = burnside_functor(c2)
    rep = star_pairing_check(J, J, J)
    assert rep.ok
    assert star_pairing_check(J, zero_functor(c2), J).details == {"lhs": 0, "rhs": 0}
    rng = random.Random(2)
    for _ in range(3):
        M, N, L = (fixed_point_functor(random_rep(c3, rng, 2)) for _ in range(3))
        assert star_pairing_check(M, N, L).ok


# -- Dress monoidality

def test_dress_monoidal(c2):
    fs = small_functors(c2)
    reps = fs[0].reps
    for M, N in [(fs[0], fs[1]), (fs[2], fs[1])]:
        for X, Y in itertools.product(reps, repeat=2):
            lhs, rhs = dress_monoidal_dims(M, N, X, Y)
            assert lhs == rhs
    theta = dress_monoidal_iso(fs[2], fs[1], reps[0], reps[1])
    assert theta.is_iso()
