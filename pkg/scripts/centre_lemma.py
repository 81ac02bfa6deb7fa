"""Compute the end of X -> [X, X] and show its identification with G under conjugation."""

import sys

from mackey.finite_group import builtin_group
from mackey.green import end_of_homs

for name in sys.argv[1:] or ["C2", "C3", "S3"]:
    G = builtin_group(name)
    E = end_of_homs(G)
    print(f"{name}: {E.gset.size} natural families, certified: {E.certified}")
    for p, fam in enumerate(E.families):
        print(f"  family {p} -> g = {E.bijection(p)}; on G/e: {list(fam[0])}")
