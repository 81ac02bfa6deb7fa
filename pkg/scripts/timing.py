"""Rough timings for the heavier constructions."""

import argparse
import time

from mackey.convolution import convolve, internal_hom, unit_iso
from mackey.finite_group import builtin_group
from mackey.functor import burnside_functor, fixed_point_functor, regular_rep


def clock(label, f):
    t = time.perf_counter()
    out = f()
    print(f"{label:32s} {time.perf_counter() - t:7.2f}s")
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("groups", nargs="*", default=["C2", "C3", "C2xC2", "S3"])
    ap.add_argument("--no-check", action="store_true", help="skip the relation check in convolutions")
    args = ap.parse_args()
    for name in args.groups:
        G = builtin_group(name)
        J, R = burnside_functor(G), fixed_point_functor(regular_rep(G))
        F = clock(f"{name} J*R", lambda: convolve(J, R, check=not args.no_check))
        print(f"  levels {list(F.levels)}")
        clock(f"{name} [R, R]", lambda: internal_hom(R, R))
        clock(f"{name} unit iso for R", lambda: unit_iso(R))


if __name__ == "__main__":
    main()
