"""Acceptance criteria, one test per criterion. Run with -s or read the summary lines."""

import itertools
import random


from mackey import io
from mackey.cli import main, verify_certificate
from mackey.convolution import (adjunction_dims, convolve, dress_monoidal_dims, dress_monoidal_iso,
                                star_double_dual_iso, star_pairing_check, unit_iso)
from mackey.finite_group import all_subgroups, builtin_group
from mackey.functor import (burnside_functor, cohomological_check, dress, eval_object, fixed_point_functor,
                            hom_dim, hom_space, regular_rep, rep_hom_dim, sign_rep, trivial_rep, validate)
from mackey.green import (burnside_green, burnside_ring_table, check_algebra, dress_module, end_of_homs,
                          green_algebra, module_hom, regular_module, validate_green)
from mackey.gset import GMap, conjugation_gset, hom_gset, product, rep_gset
from mackey.span_category import bend_left, bend_right, compose, hom_basis, identity_span
from support import (burnside_product_by_marks, burnside_product_by_orbits, character_inner, random_gset,
                     random_rep, random_span)

GROUPS = ["C1", "C2", "C3", "C2xC2", "S3"]


def sign_functor(G):
    ker = [H for H in all_subgroups(G).subgroups if 2 * len(H) == G.order]
    return fixed_point_functor(sign_rep(G, ker[0])) if ker else None


def grid_c2():
    G = builtin_group("C2")
    return [burnside_functor(G), fixed_point_functor(trivial_rep(G)), sign_functor(G)]


# 1
def test_criterion_01_span_laws():
    for name in GROUPS:
        G = builtin_group(name)
        rng = random.Random(1000 + len(name))
        for _ in range(100):
            U, V, W, X = (random_gset(G, rng, max_orbits=2, max_size=6) for _ in range(4))
            s, s2 = random_span(U, V, rng), random_span(U, V, rng)
            t, t2, u = random_span(V, W, rng), random_span(V, W, rng), random_span(W, X, rng)
            assert compose(compose(s, t), u) == compose(s, compose(t, u))
            assert compose(s + s2, t) == compose(s, t) + compose(s2, t)
            assert compose(s, t + t2) == compose(s, t) + compose(s, t2)
            assert compose(identity_span(U), s) == s == compose(s, identity_span(V))
            assert hom_basis(product(U, V), W).dimension == hom_basis(U, product(V, W)).dimension
            r = random_span(product(U, V), W, rng)
            assert bend_left(bend_right(r, U, V), V, W) == r


# 2
def test_criterion_02_burnside_ring():
    assert burnside_ring_table(builtin_group("C2"))[0][0] == [2, 0]  # [G/e]^2 = 2[G/e]
    for name in ["C2", "C3", "C2xC2", "S3"]:
        G = builtin_group(name)
        T = burnside_ring_table(G)
        for a, b in itertools.product(range(len(T)), repeat=2):
            assert list(T[a][b]) == list(burnside_product_by_orbits(G, a, b))
            assert list(T[a][b]) == list(burnside_product_by_marks(G, a, b))


# 3
def test_criterion_03_lindner_validity():
    for name in GROUPS:
        G = builtin_group(name)
        fs = [burnside_functor(G), fixed_point_functor(trivial_rep(G)), fixed_point_functor(regular_rep(G))]
        S = sign_functor(G)
        if S is not None:
            fs.append(S)
        for M in fs:
            rep = validate(M)
            assert rep.ok, (name, M.name, rep.failures[:1])
        assert validate_green(burnside_green(G)).ok


# 4
def test_criterion_04_cohomological():
    for name in ["C2", "S3"]:
        G = builtin_group(name)
        for R in [regular_rep(G), trivial_rep(G)]:
            rep = cohomological_check(fixed_point_functor(R))
            assert rep.ok and rep.checked == len(rep.details["pairs"]) > 0
    rep = cohomological_check(burnside_functor(builtin_group("C2")))
    bad = [(p["H"], p["K"]) for p in rep.details["pairs"] if not p["ok"]]
    assert bad == [([0, 1], [0])]


# 5
def test_criterion_05_unit_law():
    for name in ["C2", "C3"]:
        G = builtin_group(name)
        for M in [burnside_functor(G), fixed_point_functor(trivial_rep(G)), fixed_point_functor(regular_rep(G))]:
            theta = unit_iso(M)
            assert theta.target is M
            assert theta.source.levels == M.levels
            assert theta.is_natural() and theta.is_iso()


# 6
def test_criterion_06_adjunction_grid():
    fs = grid_c2()
    for L, M, N in itertools.product(fs, repeat=3):
        a, b = adjunction_dims(L, M, N)
        assert a == b


# 7
def test_criterion_07_dress_monoidal():
    fs = grid_c2()
    reps = fs[0].reps
    for M, N in itertools.product(fs, repeat=2):
        for X, Y in itertools.product(reps, repeat=2):
            lhs, rhs = dress_monoidal_dims(M, N, X, Y)
            assert lhs == rhs
            assert lhs == list(dress(convolve(M, N), product(X, Y)).levels)
    theta = dress_monoidal_iso(fs[0], fs[2], reps[0], reps[0])
    assert theta.is_natural() and theta.is_iso()


# 8
def test_criterion_08_centre_lemma():
    for name in ["C2", "C3", "S3"]:
        G = builtin_group(name)
        res = end_of_homs(G)
        assert res.certified
        # independent re-check: every family is natural, and evaluation at the identity
        # coset is an equivariant bijection onto G under conjugation
        reps = [rep_gset(G, i) for i in range(all_subgroups(G).num_classes)]
        for fam in res.families:
            for (i, Ci), (j, Cj) in itertools.product(enumerate(reps), repeat=2):
                for f in hom_gset(Ci, Cj):
                    assert all(f(fam[i][x]) == fam[j][f(x)] for x in range(Ci.size))
        ev = GMap(res.gset, conjugation_gset(G), [fam[0][0] for fam in res.families])
        assert ev.is_bijective()


# 9
def test_criterion_09_star_autonomy():
    fs = grid_c2()
    for M, N, L in itertools.product(fs, repeat=3):
        rep = star_pairing_check(M, N, L)
        assert rep.ok, rep.details
    for M in fs:
        theta = star_double_dual_iso(M)
        assert theta.is_natural() and theta.is_iso()


# 10
def test_criterion_10_green_algebra():
    G = builtin_group("C2")
    A = burnside_green(G)
    W = green_algebra(A)
    assert W.dim == 6
    assert W.dim == sum(hom_basis(U, V).dimension for U, V in itertools.product(A.underlying.reps, repeat=2))
    assert check_algebra(W).ok
    m = regular_module(A)
    for U, V in itertools.product(A.underlying.reps, repeat=2):
        assert len(module_hom(dress_module(m, U), dress_module(m, V))) == eval_object(A.underlying, product(U, V))


# 11
def test_criterion_11_fully_faithful():
    for name in ["C2", "S3"]:
        G = builtin_group(name)
        rng = random.Random(11)
        for _ in range(5):
            R1, R2 = random_rep(G, rng, 3), random_rep(G, rng, 3)
            d = hom_dim(fixed_point_functor(R1), fixed_point_functor(R2))
            assert d == rep_hom_dim(R1, R2) == character_inner(R1, R2)
            assert len(hom_space(fixed_point_functor(R1), fixed_point_functor(R2))) == d


# 12
def test_criterion_12_cli_contract(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)

    def run(*argv):
        code = main(list(argv))
        capsys.readouterr()
        return code

    assert run("burnside", "--group", "C2", "--out", "J.json") == 0
    assert run("fixedpoint", "--group", "S3", "--kind", "regular", "--out", "fr_s3.json") == 0
    assert run("burnside", "--group", "Q8") == 2
    assert run("check", "cohomological", "--functor", "fr_s3.json", "--out", "coh.json") == 0
    assert run("check", "cohomological", "--functor", "J.json") == 1
    assert run("tensor", "--lhs", "J.json", "--rhs", "J.json", "--out", "JJ.json") == 0
    assert run("iso", "JJ.json", "J.json", "--out", "iso.json") == 0
    assert run("check", "centre-lemma", "--group", "S3", "--out", "centre.json") == 0
    for cert in ["coh.json", "iso.json", "centre.json"]:
        assert run("verify-certificate", cert) == 0
        ok, _ = verify_certificate(io.read_json(cert))
        assert ok
    bad = io.read_json("iso.json")
    bad["components"][0] = [["0"]]
    assert not verify_certificate(bad)[0]
    for f in ["J.json", "fr_s3.json", "JJ.json"]:
        assert validate(io.mackey_from_json(io.read_json(f))).ok
    assert validate_green(io.green_from_json(io.read_json("J.json"))).ok
