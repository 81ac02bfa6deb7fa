"""Tensor-hom and star pairing dimensions on a small grid of functors."""

import argparse
import itertools

from mackey.convolution import adjunction_dims, star_pairing_check
from mackey.finite_group import all_subgroups, builtin_group
from mackey.functor import burnside_functor, fixed_point_functor, regular_rep, sign_rep, trivial_rep


def grid(G, with_regular=False):
    fs = {"J": burnside_functor(G), "triv": fixed_point_functor(trivial_rep(G))}
    ker = [H for H in all_subgroups(G).subgroups if 2 * len(H) == G.order]
    if ker:
        fs["sign"] = fixed_point_functor(sign_rep(G, ker[0]))
    if with_regular:
        fs["reg"] = fixed_point_functor(regular_rep(G))
    return fs


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--group", default="C2")
    ap.add_argument("--regular", action="store_true", help="add the regular fixed-point functor")
    args = ap.parse_args()
    fs = grid(builtin_group(args.group), args.regular)
    bad = 0
    print("L M N | Mky(L*M,N) Mky(L,[M,N]) | Mky(M*N,S L) Mky(N*L,S M)")
    for (a, L), (b, M), (c, N) in itertools.product(fs.items(), repeat=3):
        x, y = adjunction_dims(L, M, N)
        r = star_pairing_check(L, M, N)
        bad += (x != y) + (not r.ok)
        print(f"{a} {b} {c} | {x} {y} | {r.details['lhs']} {r.details['rhs']}")
    print("all equal" if not bad else f"{bad} mismatches")


if __name__ == "__main__":
    main()
