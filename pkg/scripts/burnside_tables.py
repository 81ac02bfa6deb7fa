"""Print Burnside ring tables for the small builtin groups and compare with the table of marks."""

import argparse

from mackey.exact_linalg import qstr
from mackey.finite_group import builtin_group
from mackey.functor import burnside_functor
from mackey.green import burnside_ring_table


def marks(G):
    from mackey.finite_group import all_subgroups
    T = all_subgroups(G)
    reps = T.reps
    # m[a][b] = number of cosets of H_a fixed by H_b
    out = []
    for H in reps:
        row = []
        for K in reps:
            cosets = {frozenset(G.mul(g, h) for h in H) for g in G}
            row.append(sum(all(frozenset(G.mul(k, x) for x in c) == c for k in K) for c in cosets))
        out.append(row)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("groups", nargs="*", default=["C2", "C3", "C2xC2", "S3", "D8"])
    args = ap.parse_args()
    for name in args.groups:
        G = builtin_group(name)
        J = burnside_functor(G)
        table = burnside_ring_table(G)
        m = marks(G)
        n = len(table)
        ok = all(
            sum(table[a][b][c] * m[c][k] for c in range(n)) == m[a][k] * m[b][k]
            for a in range(n) for b in range(n) for k in range(n))
        print(f"{name}: levels {list(J.levels)}, marks consistent: {ok}")
        for a, row in enumerate(table):
            print(f"  [{a}] * " + "  ".join("[" + ", ".join(qstr(x) for x in v) + "]" for v in row))


if __name__ == "__main__":
    main()
