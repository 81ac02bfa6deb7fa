"""
mackey: command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .config import Settings
from .exact_linalg import RatMatrix, is_invertible, qstr
from .finite_group import GroupError, all_subgroups
from .functor import (MackeyError, burnside_functor, cohomological_check, dress, find_iso,
                      fixed_point_functor, hom_dim, regular_rep, restriction, sign_rep, transfer,
                      trivial_rep, validate)
from .gset import GMap, GSet, GSetError, conjugation_gset, hom_gset, rep_gset
from .green import (GreenError, burnside_green, burnside_ring_table, check_algebra, end_of_homs,
                    green_algebra, validate_green)
from . import io


class UsageError(Exception):
    pass


def _out(args, data):
    if getattr(args, "out", None):
        io.write_json(args.out, data)
        print(f"wrote {args.out}")


def _need(args, name):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"--{name} is required for this command")
    return v


def _load_functor(path):
    try:
        return io.mackey_from_json(io.read_json(path))
    except (MackeyError, ValueError) as e:
        raise io.FormatError(f"{path}: {e}") from e


def _load_green(path):
    try:
        return io.green_from_json(io.read_json(path))
    except (MackeyError, ValueError) as e:
        raise io.FormatError(f"{path}: {e}") from e


def _load_group(args, settings: Settings):
    G = io.load_group(_need(args, "group"))
    all_subgroups(G, settings.order_bound)
    return G


def _require_valid(M, label):
    rep = validate(M)
    if not rep.ok:
        print(f"{label} is not a Mackey functor: {rep.failures[0]}")
        return False
    return True


def _fmt_vec(v) -> str:
    return "[" + ", ".join(qstr(x) for x in v) + "]"


def _iso_certificate(theta) -> dict:
    return {"kind": "mackey-iso", "source": io.mackey_to_json(theta.source),
            "target": io.mackey_to_json(theta.target), "components": io.morphism_to_json(theta)}


# ---------------------------------------------------------------------------
# commands

def cmd_burnside(args, settings):
    G = _load_group(args, settings)
    J = burnside_functor(G)
    print(f"group order {G.order}, {J.num_classes} subgroup classes")
    print(f"level dims of J (classes by subgroup size): {list(J.levels)}")
    table = burnside_ring_table(G)
    print("Burnside ring at G/G, basis [G/H_k] for the classes k:")
    for a, row in enumerate(table):
        print(f"  [{a}] * -> " + "  ".join(_fmt_vec(v) for v in row))
    A = burnside_green(G)
    if args.algebra:
        W = green_algebra(A)
        rep = check_algebra(W)
        print(f"W_J: dim {W.dim}, {rep.summary()}")
        for (a, b), v in sorted(W.structure.items()):
            print(f"  e{a} e{b} = " + " + ".join(f"{qstr(x)} e{c}" for c, x in sorted(v.items())))
    # the Green format extends the Mackey one, so this file loads either way
    _out(args, io.green_to_json(A))
    return 0


def cmd_fixedpoint(args, settings):
    if args.rep:
        R = io.rep_from_json(io.read_json(args.rep))
    else:
        G = _load_group(args, settings)
        kind = args.kind
        if kind == "trivial":
            R = trivial_rep(G)
        elif kind == "regular":
            R = regular_rep(G)
        elif kind == "sign":
            ker = [H for H in all_subgroups(G, settings.order_bound).subgroups if 2 * len(H) == G.order]
            if not ker:
                raise UsageError("the group has no index-2 subgroup")
            R = sign_rep(G, ker[0])
        else:
            raise UsageError(f"unknown representation kind {kind!r}")
    M = fixed_point_functor(R)
    print(f"fixed-point functor levels {list(M.levels)}")
    _out(args, io.mackey_to_json(M))
    return 0


def cmd_tensor(args, settings):
    from .convolution import convolve
    M, N = _load_functor(_need(args, "lhs")), _load_functor(_need(args, "rhs"))
    if not (_require_valid(M, "lhs") and _require_valid(N, "rhs")):
        return 1
    F = convolve(M, N, settings.check_relations)
    print(f"tensor product levels {list(F.levels)}")
    _out(args, io.mackey_to_json(F))
    return 0


def cmd_hom(args, settings):
    from .convolution import internal_hom
    M, N = _load_functor(_need(args, "lhs")), _load_functor(_need(args, "rhs"))
    if not (_require_valid(M, "lhs") and _require_valid(N, "rhs")):
        return 1
    H = internal_hom(M, N).functor
    print(f"internal hom levels {list(H.levels)}; dim Mky(lhs, rhs) = {hom_dim(M, N)}")
    _out(args, io.mackey_to_json(H))
    return 0


def cmd_stardual(args, settings):
    from .convolution import star_dual
    M = _load_functor(_need(args, "functor"))
    if not _require_valid(M, "functor"):
        return 1
    S = star_dual(M)
    print(f"star dual levels {list(S.levels)}")
    _out(args, io.mackey_to_json(S))
    return 0


def _gset_arg(args, G) -> GSet:
    if args.gset is not None:
        return io.gset_from_json(io.read_json(args.gset), G)
    if args.orbit is not None:
        n = all_subgroups(G, max(G.order, 24)).num_classes
        if not 0 <= args.orbit < n:
            raise UsageError(f"--orbit must be a class index in 0..{n - 1}")
        return rep_gset(G, args.orbit)
    raise UsageError("give --gset FILE or --orbit CLASS")


def cmd_dress(args, settings):
    M = _load_functor(_need(args, "functor"))
    if not _require_valid(M, "functor"):
        return 1
    Y = _gset_arg(args, M.group)
    D = dress(M, Y)
    print(f"dressed functor levels {list(D.levels)}")
    _out(args, io.mackey_to_json(D))
    return 0


def cmd_greenalg(args, settings):
    if args.functor:
        A = _load_green(args.functor)
    else:
        A = burnside_green(_load_group(args, settings))
    W = green_algebra(A)
    rep = check_algebra(W)
    print(f"W_A: dim {W.dim}; {rep.summary()}")
    print("blocks (i, j) -> dim: " + ", ".join(f"{k}: {d}" for k, (_, d) in sorted(W.blocks.items())))
    _out(args, {"kind": "green-algebra", "dim": W.dim,
                "structure": [{"a": a, "b": b, "product": {str(c): qstr(x) for c, x in v.items()}}
                              for (a, b), v in sorted(W.structure.items())],
                "unit": [qstr(x) for x in W.unit]})
    return 0 if rep.ok else 1


def cmd_iso(args, settings):
    M, N = _load_functor(args.first), _load_functor(args.second)
    if M.group != N.group:
        raise UsageError("functors over different groups")
    theta = find_iso(M, N, settings.seed, settings.iso_tries)
    if theta is None:
        print("no isomorphism found")
        return 1
    print("isomorphism found and certified")
    _out(args, _iso_certificate(theta))
    return 0


# -- checks

def check_mackey(args, settings):
    M = _load_functor(_need(args, "functor"))
    rep = validate(M)
    print(rep.summary())
    if rep.ok:
        _out(args, {"kind": "mackey-valid", "functor": io.mackey_to_json(M), "checks": rep.checked})
    return 0 if rep.ok else 1


def check_green(args, settings):
    A = _load_green(_need(args, "functor"))
    rep = validate_green(A)
    print(rep.summary())
    if rep.ok:
        _out(args, {"kind": "green-valid", "green": io.green_to_json(A), "checks": rep.checked})
    return 0 if rep.ok else 1


def check_cohomological(args, settings):
    M = _load_functor(_need(args, "functor"))
    rep = cohomological_check(M)
    for p in rep.details["pairs"]:
        print(f"  H={p['H']} K={p['K']} [H:K]={p['index']}: {'ok' if p['ok'] else 'FAIL'}")
    print(rep.summary())
    if rep.ok:
        pairs = [{"H": p["H"], "K": p["K"], "index": p["index"], "composite": p["tr"].to_json()}
                 for p in rep.details["pairs"]]
        _out(args, {"kind": "cohomological", "functor": io.mackey_to_json(M), "pairs": pairs})
    return 0 if rep.ok else 1


def check_star(args, settings):
    from .convolution import convolve, star_dual
    M = _load_functor(_need(args, "lhs"))
    N = _load_functor(_need(args, "rhs"))
    L = _load_functor(args.functor) if args.functor else M
    MN, NL, SL, SM = convolve(M, N), convolve(N, L), star_dual(L), star_dual(M)
    a, b = hom_dim(MN, SL), hom_dim(NL, SM)
    print(f"dim Mky(M*N, S(L)) = {a}, dim Mky(N*L, S(M)) = {b}")
    ok = a == b
    if ok:
        _out(args, {"kind": "star-autonomy", "lhs": a, "rhs": b,
                    "MN": io.mackey_to_json(MN), "SL": io.mackey_to_json(SL),
                    "NL": io.mackey_to_json(NL), "SM": io.mackey_to_json(SM)})
    return 0 if ok else 1


def check_dress_monoidal(args, settings):
    from .convolution import dress_monoidal_dims, dress_monoidal_iso
    M = _load_functor(_need(args, "lhs"))
    N = _load_functor(_need(args, "rhs"))
    reps = M.reps
    ok = True
    dims = []
    for x, X in enumerate(reps):
        for y, Y in enumerate(reps):
            lhs, rhs = dress_monoidal_dims(M, N, X, Y)
            dims.append({"X": x, "Y": y, "lhs": lhs, "rhs": rhs})
            print(f"  X=class {x}, Y=class {y}: {lhs} vs {rhs}")
            ok &= lhs == rhs
    if not ok:
        print("dimension mismatch")
        return 1
    x = args.orbit if args.orbit is not None else 0
    theta = dress_monoidal_iso(M, N, reps[x], reps[x])
    print(f"certified iso for X = Y = class {x}")
    _out(args, {"kind": "dress-monoidal", "dims": dims, "iso": _iso_certificate(theta)})
    return 0


def check_centre(args, settings):
    G = _load_group(args, settings)
    E = end_of_homs(G, settings.order_bound)
    print(f"end has {E.gset.size} elements; bijection to G_c certified: {E.certified}")
    if not E.certified:
        return 1
    _out(args, {"kind": "centre-lemma", "group": io.group_to_json(G), "gset": E.gset.to_json(),
                "families": [[list(r) for r in fam] for fam in E.families],
                "bijection": list(E.bijection.values)})
    return 0


CHECKS = {
    "mackey": check_mackey,
    "green": check_green,
    "cohomological": check_cohomological,
    "star-autonomy": check_star,
    "dress-monoidal": check_dress_monoidal,
    "centre-lemma": check_centre,
}


def cmd_check(args, settings):
    return CHECKS[args.what](args, settings)


# -- certificate verification (no constructions are rerun)

def _verify_iso(cert) -> tuple[bool, str]:
    M = io.mackey_from_json(cert["source"])
    N = io.mackey_from_json(cert["target"])
    theta = io.morphism_from_json(cert["components"], M, N)
    nat = theta.naturality_report()
    if not nat.ok:
        return False, nat.failures[0]
    if not all(is_invertible(c) for c in theta.components):
        return False, "a component is not invertible"
    return True, f"natural ({nat.checked} generators) and invertible"


def verify_certificate(cert: dict) -> tuple[bool, str]:
    kind = cert.get("kind")
    if kind == "mackey-iso":
        return _verify_iso(cert)
    if kind == "mackey-valid":
        rep = validate(io.mackey_from_json(cert["functor"]))
        return rep.ok, rep.summary()
    if kind == "green-valid":
        rep = validate_green(io.green_from_json(cert["green"]))
        return rep.ok, rep.summary()
    if kind == "cohomological":
        M = io.mackey_from_json(cert["functor"])
        for p in cert["pairs"]:
            tr = transfer(M, p["H"], p["K"]) @ restriction(M, p["H"], p["K"])
            rec = RatMatrix.from_json(p["composite"], tr.rows, tr.cols)
            if tr != rec or tr != RatMatrix.identity(tr.rows).scale(p["index"]):
                return False, f"pair H={p['H']}, K={p['K']} fails"
            if len(p["H"]) // len(p["K"]) != p["index"]:
                return False, "recorded index is wrong"
        return True, f"{len(cert['pairs'])} pairs verified"
    if kind == "star-autonomy":
        fs = {k: io.mackey_from_json(cert[k]) for k in ("MN", "SL", "NL", "SM")}
        if not all(validate(f).ok for f in fs.values()):
            return False, "a recorded functor is not valid"
        a, b = hom_dim(fs["MN"], fs["SL"]), hom_dim(fs["NL"], fs["SM"])
        ok = a == b == cert["lhs"] == cert["rhs"]
        return ok, f"dims {a} and {b}"
    if kind == "dress-monoidal":
        ok, msg = _verify_iso(cert["iso"])
        bad = [d for d in cert["dims"] if d["lhs"] != d["rhs"]]
        return ok and not bad, msg
    if kind == "centre-lemma":
        G = io.group_from_json(cert["group"])
        E = io.gset_from_json(cert["gset"], G)
        reps = [rep_gset(G, i) for i in range(all_subgroups(G, max(G.order, 24)).num_classes)]
        fams = cert["families"]
        if len(fams) != E.size:
            return False, "family count does not match the G-set"
        for fam in fams:
            for i, Ci in enumerate(reps):
                for j, Cj in enumerate(reps):
                    for f in hom_gset(Ci, Cj):
                        if any(f(fam[i][x]) != fam[j][f(x)] for x in range(Ci.size)):
                            return False, "a family is not natural"
        try:
            bij = GMap(E, conjugation_gset(G), cert["bijection"])
        except GSetError as e:
            return False, str(e)
        if not bij.is_bijective():
            return False, "map to G_c is not bijective"
        if any(fams[p][0][0] != cert["bijection"][p] for p in range(E.size)):
            return False, "bijection is not evaluation at the identity"
        return True, "equivariant bijection to G_c verified"
    raise UsageError(f"unknown certificate kind {kind!r}")


def cmd_verify(args, settings):
    cert = io.read_json(args.certificate)
    ok, msg = verify_certificate(cert)
    print(("VALID: " if ok else "INVALID: ") + msg)
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mackey", description="Mackey and Green functors over finite groups")
    p.add_argument("--bound", type=int, default=Settings.order_bound,
                   help="largest group order for subgroup enumeration")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, *flags):
        sp = sub.add_parser(name, help=help)
        for f in flags:
            sp.add_argument(f"--{f}")
        sp.add_argument("--out")
        sp.set_defaults(func=func)
        return sp

    sp = add("burnside", cmd_burnside, "Burnside functor and ring table", "group")
    sp.add_argument("--algebra", action="store_true", help="also build the Green algebra W_J")
    sp = add("fixedpoint", cmd_fixedpoint, "fixed-point functor of a representation", "group", "rep")
    sp.add_argument("--kind", default="trivial", help="trivial, regular or sign (with --group)")
    add("tensor", cmd_tensor, "convolution product", "lhs", "rhs")
    add("hom", cmd_hom, "internal hom", "lhs", "rhs")
    add("stardual", cmd_stardual, "star dual", "functor")
    sp = add("dress", cmd_dress, "Dress construction M_Y", "functor", "gset")
    sp.add_argument("--orbit", type=int, help="use the representative G-set of this class as Y")
    sp = add("greenalg", cmd_greenalg, "Green algebra W_A", "group", "functor")
    sp = add("check", cmd_check, "run a structural check", "group", "functor", "lhs", "rhs")
    sp.add_argument("what", choices=sorted(CHECKS))
    sp.add_argument("--orbit", type=int, help="class used for the certified dress iso")
    sp = sub.add_parser("iso", help="search for a certified isomorphism")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_iso)
    sp = sub.add_parser("verify-certificate", help="re-check an emitted certificate")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    settings = Settings(order_bound=args.bound, seed=args.seed)
    try:
        return args.func(args, settings)
    except (UsageError, KeyError, FileNotFoundError, json.JSONDecodeError, io.FormatError,
            GroupError, GSetError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except (MackeyError, GreenError) as e:
        print(f"failed: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
