"""Random instances and independent oracles shared by the tests.

The oracles deliberately avoid the package's canonical forms: orbits are
found by breadth-first search, ranks by sympy, hom counts by Burnside's lemma.
"""

import random
from collections import Counter
from fractions import Fraction
from itertools import product as iproduct

import sympy

from mackey.exact_linalg import RatMatrix
from mackey.finite_group import all_subgroups, left_cosets
from mackey.functor import (Representation, augmentation_kernel, eval_object, eval_span, linearize_gset,
                            rep_conjugate, rep_direct_sum, sign_rep, trivial_rep)
from mackey.gset import GMap, GSet, coproduct_many, coset_gset, hom_gset, product, rep_gset
from mackey.span_category import SpanClass, hom_basis, identity_span, tensor, transpose


# ---------------------------------------------------------------------------
# random instances

def random_gset(G, rng: random.Random, max_orbits=2, max_size=12) -> GSet:
    n = all_subgroups(G).num_classes
    while True:
        k = rng.randint(1, max_orbits)
        parts = [rep_gset(G, rng.randrange(n)) for _ in range(k)]
        if sum(p.size for p in parts) <= max_size:
            return coproduct_many(G, parts)


def random_gmap(X: GSet, Y: GSet, rng: random.Random) -> GMap | None:
    maps = hom_gset(X, Y)
    return rng.choice(maps) if maps else None


def random_span(U: GSet, V: GSet, rng: random.Random, max_terms=3) -> SpanClass:
    B = hom_basis(U, V)
    if B.dimension == 0:
        return SpanClass(U, V, ())
    comps = [rng.choice(B.basis) for _ in range(rng.randint(0, max_terms))]
    return SpanClass(U, V, comps)


def random_rep(G, rng: random.Random, max_dim=4) -> Representation:
    pieces = [trivial_rep(G)]
    subs = all_subgroups(G)
    for H in subs.subgroups:
        if 2 * len(H) == G.order:
            pieces.append(sign_rep(G, H))
    if G.order == 6 and not G.is_abelian():
        pieces.append(augmentation_kernel(coset_gset(G, subs.rep(1))))
    pieces.append(linearize_gset(rep_gset(G, 0)))
    while True:
        chosen = [rng.choice(pieces) for _ in range(rng.randint(1, 3))]
        if sum(p.dim for p in chosen) <= max_dim:
            break
    R = chosen[0]
    for p in chosen[1:]:
        R = rep_direct_sum(R, p)
    # scramble the basis with a random unipotent change of coordinates
    d = R.dim
    P = [[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(d)] for i in range(d)]
    return rep_conjugate(R, RatMatrix(d, d, P))


# ---------------------------------------------------------------------------
# oracles

def bfs_orbits(X: GSet) -> list:
    seen, out = set(), []
    for x in range(X.size):
        if x in seen:
            continue
        orb, frontier = {x}, [x]
        while frontier:
            y = frontier.pop()
            for g in X.group:
                z = X.action[g][y]
                if z not in orb:
                    orb.add(z)
                    frontier.append(z)
        seen |= orb
        out.append(sorted(orb))
    return out


def orbit_type_counts(X: GSet) -> Counter:
    """Multiset of stabilizer classes over orbits, by direct search."""
    G = X.group
    subs = all_subgroups(G)
    c = Counter()
    for orb in bfs_orbits(X):
        x = orb[0]
        stab = frozenset(g for g in G if X.action[g][x] == x)
        c[subs.class_of[stab]] += 1
    return c


def burnside_product_by_orbits(G, a: int, b: int) -> list:
    """Coefficients of [G/H_a][G/H_b] by counting orbits of the product G-set."""
    P = product(rep_gset(G, a), rep_gset(G, b))
    c = orbit_type_counts(P)
    return [c.get(k, 0) for k in range(all_subgroups(G).num_classes)]


def table_of_marks(G) -> list:
    """marks[L][H] = number of cosets gH fixed by the subgroup L."""
    subs = all_subgroups(G)
    n = subs.num_classes
    out = []
    for li in range(n):
        L = subs.rep(li)
        row = []
        for hi in range(n):
            cosets = left_cosets(G, subs.rep(hi))
            row.append(sum(1 for C in cosets if all(frozenset(G.mul(l, x) for x in C) == C for l in L)))
        out.append(row)
    return out


def burnside_product_by_marks(G, a: int, b: int) -> list:
    M = sympy.Matrix(table_of_marks(G))
    target = sympy.Matrix([M[l, a] * M[l, b] for l in range(M.rows)])
    sol = M.solve(target)
    return [int(x) for x in sol]


def burnside_lemma_hom_dim(U: GSet, V: GSet) -> int:
    """Count connected spans U <- G/H -> V up to iso: N(H)-orbits on (U x V)^H."""
    G = U.group
    subs = all_subgroups(G)
    total = Fraction(0)
    for k in range(subs.num_classes):
        H = subs.rep(k)
        N = G.normalizer(H)
        fixed = [(u, v) for u in U.fixed_points(H) for v in V.fixed_points(H)]
        fix_count = sum(1 for n in N for (u, v) in fixed
                        if U.action[n][u] == u and V.action[n][v] == v)
        total += Fraction(fix_count, len(N))
    assert total.denominator == 1
    return int(total)


def brute_force_gmaps(X: GSet, Y: GSet) -> int:
    count = 0
    for vals in iproduct(range(Y.size), repeat=X.size):
        if all(vals[X.action[g][x]] == Y.action[g][vals[x]] for g in X.group for x in range(X.size)):
            count += 1
    return count


def character_inner(R1: Representation, R2: Representation) -> int:
    G = R1.group
    tr = lambda m: sum(m[i, i] for i in range(m.rows))
    s = sum(tr(R1(G.inv(g))) * tr(R2(g)) for g in G)
    assert s % G.order == 0
    return s // G.order


def sympy_rank(rows: list) -> int:
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def reduced_coend_dim(M, N, k: int) -> int:
    """dim (M * N)(C_k) via the one-variable coend of M(C) (x) N(C x C_k)."""
    reps = M.reps
    Ck = reps[k]
    nd = [eval_object(N, product(C, Ck)) for C in reps]
    off, pos = [], 0
    for i in range(len(reps)):
        off.append(pos)
        pos += M.levels[i] * nd[i]
    rels = []
    for i, i2, c, A in M.generators():
        S = SpanClass(reps[i], reps[i2], (c,))
        B = eval_span(N, tensor(transpose(S), identity_span(Ck)))  # N(C_i2 x Ck) -> N(C_i x Ck)
        for m in range(M.levels[i]):
            for n2 in range(nd[i2]):
                v = [0] * pos
                for t in range(M.levels[i2]):
                    v[off[i2] + t * nd[i2] + n2] += A[t, m]
                for t in range(nd[i]):
                    v[off[i] + m * nd[i] + t] -= B[t, n2]
                rels.append(v)
    return pos - sympy_rank(rels)
