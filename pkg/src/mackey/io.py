"""JSON formats for groups, G-sets, representations, Mackey and Green functors."""

from __future__ import annotations

import json
from pathlib import Path

from .exact_linalg import RatMatrix, q, qstr
from .finite_group import Group, builtin_group, group_from_permutations, group_from_table
from .functor import MackeyFunctor, MackeyMorphism, Representation, representatives
from .gset import GSet
from .green import CrossedGSet, CrossedMonoid, GreenFunctor
from .span_category import SpanClass, hom_basis


class FormatError(ValueError):
    pass


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path, data):
    Path(path).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")


# -- groups

def group_to_json(G: Group) -> dict:
    d = G.to_json()
    if G.name:
        d["name"] = G.name
    return d


def group_from_json(data) -> Group:
    if isinstance(data, str):
        return builtin_group(data)
    if "table" in data:
        return group_from_table(data["table"], data.get("name"))
    if "permutations" in data:
        return group_from_permutations(data["permutations"], data.get("name"))
    if "name" in data:
        return builtin_group(data["name"])
    raise FormatError("group needs a table, permutations or a builtin name")


def load_group(ref: str) -> Group:
    """A builtin name (C2, S3, ...) or a path to a group JSON file."""
    p = Path(ref)
    if p.suffix == ".json" or p.exists():
        return group_from_json(read_json(p))
    return builtin_group(ref)


# -- G-sets

def gset_to_json(X: GSet) -> dict:
    return X.to_json()


def gset_from_json(data: dict, G: Group) -> GSet:
    return GSet(G, int(data["size"]), data["action"])


# -- representations

def rep_to_json(R: Representation) -> dict:
    return {"group": group_to_json(R.group), **R.to_json()}


def rep_from_json(data: dict, G: Group | None = None) -> Representation:
    G = G or group_from_json(data["group"])
    d = int(data["dim"])
    return Representation(G, d, [RatMatrix.from_json(m, d, d) for m in data["matrices"]])


# -- Mackey functors

def mackey_to_json(M: MackeyFunctor) -> dict:
    gens = []
    for i, j, c, A in M.generators():
        s = SpanClass(M.reps[i], M.reps[j], (c,))
        gens.append({"source": i, "target": j, "span": s.to_json(), "matrix": A.to_json()})
    return {"kind": "mackey", "name": M.name, "group": group_to_json(M.group),
            "levels": list(M.levels), "generators": gens}


def mackey_from_json(data: dict, G: Group | None = None) -> MackeyFunctor:
    G = G or group_from_json(data["group"])
    reps = representatives(G)
    levels = [int(x) for x in data["levels"]]
    if len(levels) != len(reps):
        raise FormatError(f"expected {len(reps)} levels, got {len(levels)}")
    slots = {}
    for gen in data["generators"]:
        i, j = int(gen["source"]), int(gen["target"])
        s = SpanClass.from_json(gen["span"], reps[i], reps[j])
        if len(s.components) != 1:
            raise FormatError("each generator must be a connected span")
        B = hom_basis(reps[i], reps[j])
        slots[(i, j, B.index[s.components[0]])] = RatMatrix.from_json(gen["matrix"], levels[j], levels[i])
    action = {}
    for i in range(len(reps)):
        for j in range(len(reps)):
            B = hom_basis(reps[i], reps[j])
            mats = []
            for t in range(B.dimension):
                if (i, j, t) not in slots:
                    raise FormatError(f"missing generator {B.basis[t]} from class {i} to class {j}")
                mats.append(slots[(i, j, t)])
            action[(i, j)] = tuple(mats)
    return MackeyFunctor(G, levels, action, data.get("name", ""))


def morphism_to_json(theta: MackeyMorphism) -> list:
    return theta.to_json()


def morphism_from_json(data: list, M: MackeyFunctor, N: MackeyFunctor) -> MackeyMorphism:
    return MackeyMorphism(M, N, [RatMatrix.from_json(c, N.levels[i], M.levels[i]) for i, c in enumerate(data)])


# -- Green functors

def green_to_json(A: GreenFunctor) -> dict:
    d = mackey_to_json(A.underlying)
    d["kind"] = "green"
    d["name"] = A.name
    d["mult"] = [{"source": [i, j], "matrix": m.to_json()} for (i, j), m in sorted(A.mult.items())]
    d["unit"] = [qstr(x) for x in A.unit]
    return d


def green_from_json(data: dict) -> GreenFunctor:
    from .functor import eval_object
    from .gset import product
    M = mackey_from_json(data)
    reps = M.reps
    mult = {}
    for e in data["mult"]:
        i, j = e["source"]
        rows = eval_object(M, product(reps[i], reps[j]))
        mult[(i, j)] = RatMatrix.from_json(e["matrix"], rows, M.levels[i] * M.levels[j])
    return GreenFunctor(M, mult, tuple(q(x) for x in data["unit"]), data.get("name", ""))


def is_green_json(data: dict) -> bool:
    return "mult" in data


# -- crossed monoids

def crossed_to_json(Y: CrossedMonoid) -> dict:
    return {"group": group_to_json(Y.crossed.group), **Y.crossed.to_json(),
            "mult": list(Y.mult), "unit": Y.unit}


def crossed_from_json(data: dict, G: Group | None = None) -> CrossedMonoid:
    G = G or group_from_json(data["group"])
    X = gset_from_json(data["gset"], G)
    return CrossedMonoid(CrossedGSet(X, data["grading"]), tuple(data["mult"]), int(data["unit"]))
