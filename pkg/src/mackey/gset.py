"""
Finite G-sets and equivariant maps.

A G-set stores action[g][x] = g.x for points 0..size-1.  Products use the
point index x*|Y| + y (lexicographic on pairs), coproducts put X's points
first.  With these conventions 1 x X, X x 1 and (X x Y) x Z = X x (Y x Z) are
*equal* G-sets, which the rest of the package relies on for unit and
associativity bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Sequence

from .finite_group import Group, all_subgroups, left_cosets


class GSetError(ValueError):
    pass


class GSet:
    __slots__ = ("group", "size", "action", "_hash", "__dict__")

    def __init__(self, group: Group, size: int, action: Sequence[Sequence[int]], check: bool = True):
        self.group = group
        self.size = size
        self.action = tuple(tuple(int(x) for x in row) for row in action)
        if check:
            self._validate()
        self._hash = hash((group, size, self.action))

    def _validate(self):
        G, n, a = self.group, self.size, self.action
        if len(a) != G.order or any(len(r) != n for r in a):
            raise GSetError("action array must be |G| x size")
        if any(not 0 <= x < n for r in a for x in r):
            raise GSetError("action value out of range")
        if a[0] != tuple(range(n)):
            raise GSetError("identity does not act trivially")
        t = G.table
        for g in G:
            for h in G:
                gh = a[t[g][h]]
                ag, ah = a[g], a[h]
                for x in range(n):
                    if ag[ah[x]] != gh[x]:
                        raise GSetError(f"action not compatible at g={g}, h={h}, x={x}")

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, GSet) and self._hash == other._hash and self.size == other.size
                and self.action == other.action and self.group == other.group)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GSet(size={self.size}, orbits={len(self.orbits)})"

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    @cached_property
    def orbits(self) -> tuple:
        """Orbits as sorted point tuples, ordered by least point."""
        seen = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            o = sorted({self.action[g][x] for g in self.group})
            seen.update(o)
            out.append(tuple(o))
        return tuple(out)

    @cached_property
    def orbit_of(self) -> tuple:
        idx = [0] * self.size
        for i, o in enumerate(self.orbits):
            for x in o:
                idx[x] = i
        return tuple(idx)

    def stabilizer(self, x: int) -> frozenset:
        return frozenset(g for g in self.group if self.action[g][x] == x)

    def fixed_points(self, H) -> list[int]:
        return [x for x in range(self.size) if all(self.action[h][x] == x for h in H)]

    def is_transitive(self) -> bool:
        return len(self.orbits) == 1

    def to_json(self) -> dict:
        return {"size": self.size, "action": [list(r) for r in self.action]}


class GMap:
    __slots__ = ("source", "target", "values")

    def __init__(self, source: GSet, target: GSet, values: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.values = tuple(int(v) for v in values)
        if check:
            self._validate()

    def _validate(self):
        X, Y, f = self.source, self.target, self.values
        if X.group != Y.group:
            raise GSetError("source and target over different groups")
        if len(f) != X.size or any(not 0 <= v < Y.size for v in f):
            raise GSetError("map values out of range")
        for g in X.group:
            ax, ay = X.action[g], Y.action[g]
            for x in range(X.size):
                if f[ax[x]] != ay[f[x]]:
                    raise GSetError(f"map not equivariant at g={g}, x={x}")

    def __call__(self, x: int) -> int:
        return self.values[x]

    def __eq__(self, other):
        return (isinstance(other, GMap) and self.values == other.values
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.source, self.target, self.values))

    def __repr__(self):
        return f"GMap({list(self.values)})"

    def then(self, other: "GMap") -> "GMap":
        """other o self"""
        if other.source != self.target:
            raise GSetError("maps not composable")
        return GMap(self.source, other.target, [other.values[v] for v in self.values], check=False)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.values)) == self.source.size

    def inverse(self) -> "GMap":
        if not self.is_bijective():
            raise GSetError("map is not invertible")
        inv = [0] * self.source.size
        for x, y in enumerate(self.values):
            inv[y] = x
        return GMap(self.target, self.source, inv, check=False)


def identity_map(X: GSet) -> GMap:
    return GMap(X, X, range(X.size), check=False)


# ---------------------------------------------------------------------------
# constructions

def _sub(G: Group):
    return all_subgroups(G, max(G.order, 24))


@lru_cache(maxsize=None)
def coset_gset(G: Group, H: frozenset) -> GSet:
    H = frozenset(H)
    if not G.is_subgroup(H):
        raise GSetError("not a subgroup")
    cosets = left_cosets(G, H)
    where = {}
    for i, c in enumerate(cosets):
        for g in c:
            where[g] = i
    reps = [min(c) for c in cosets]
    action = [[where[G.table[g][r]] for r in reps] for g in G]
    return GSet(G, len(cosets), action, check=False)


@lru_cache(maxsize=None)
def coset_reps(G: Group, H: frozenset) -> tuple:
    """Least element of each left coset, in point order of coset_gset(G, H)."""
    return tuple(min(c) for c in left_cosets(G, frozenset(H)))


def rep_gset(G: Group, i: int) -> GSet:
    """The representative transitive G-set G/H_i of subgroup class i."""
    return coset_gset(G, _sub(G).rep(i))


def point(G: Group) -> GSet:
    """The terminal G-set 1."""
    return GSet(G, 1, [[0]] * G.order, check=False)


def empty(G: Group) -> GSet:
    return GSet(G, 0, [()] * G.order, check=False)


def trivial_gset(G: Group, n: int) -> GSet:
    return GSet(G, n, [tuple(range(n))] * G.order, check=False)


def regular(G: Group) -> GSet:
    return coset_gset(G, frozenset([0]))


def conjugation_gset(G: Group) -> GSet:
    """G_c: the set G with g.x = g x g^-1."""
    return GSet(G, G.order, [[G.conj(g, x) for x in G] for g in G], check=False)


def _same_group(X: GSet, Y: GSet):
    if X.group != Y.group:
        raise GSetError("G-sets over different groups")


@lru_cache(maxsize=4096)
def product(X: GSet, Y: GSet) -> GSet:
    _same_group(X, Y)
    m = Y.size
    action = [[ax[x] * m + ay[y] for x in range(X.size) for y in range(m)]
              for ax, ay in zip(X.action, Y.action)]
    return GSet(X.group, X.size * m, action, check=False)


def product_many(*Xs: GSet) -> GSet:
    out = Xs[0]
    for X in Xs[1:]:
        out = product(out, X)
    return out


def pair_index(Y: GSet, x: int, y: int) -> int:
    return x * Y.size + y


def projections(X: GSet, Y: GSet) -> tuple[GMap, GMap]:
    P = product(X, Y)
    m = Y.size
    return (GMap(P, X, [p // m for p in range(P.size)], check=False),
            GMap(P, Y, [p % m for p in range(P.size)], check=False))


@lru_cache(maxsize=4096)
def coproduct(X: GSet, Y: GSet) -> GSet:
    _same_group(X, Y)
    n = X.size
    action = [ax + tuple(n + v for v in ay) for ax, ay in zip(X.action, Y.action)]
    return GSet(X.group, n + Y.size, action, check=False)


def injections(X: GSet, Y: GSet) -> tuple[GMap, GMap]:
    S = coproduct(X, Y)
    return (GMap(X, S, range(X.size), check=False),
            GMap(Y, S, range(X.size, X.size + Y.size), check=False))


def coproduct_many(G: Group, Xs: Sequence[GSet]) -> GSet:
    out = empty(G)
    for X in Xs:
        out = coproduct(out, X)
    return out


def map_product(f: GMap, g: GMap) -> GMap:
    """f x g : X x Y -> X' x Y'"""
    S = product(f.source, g.source)
    T = product(f.target, g.target)
    m, m2 = g.source.size, g.target.size
    return GMap(S, T, [f.values[p // m] * m2 + g.values[p % m] for p in range(S.size)], check=False)


def swap_map(X: GSet, Y: GSet) -> GMap:
    """X x Y -> Y x X"""
    S = product(X, Y)
    T = product(Y, X)
    m, n = Y.size, X.size
    return GMap(S, T, [(p % m) * n + p // m for p in range(S.size)], check=False)


def diagonal_map(X: GSet) -> GMap:
    P = product(X, X)
    return GMap(X, P, [x * X.size + x for x in range(X.size)], check=False)


def terminal_map(X: GSet) -> GMap:
    return GMap(X, point(X.group), [0] * X.size, check=False)


@dataclass(frozen=True)
class Pullback:
    apex: GSet
    proj1: GMap
    proj2: GMap
    pairs: tuple  # point index -> (x, y)


def pullback(f: GMap, g: GMap) -> Pullback:
    """P = {(x, y) : f(x) = g(y)} in lexicographic order, with diagonal action."""
    if f.target != g.target:
        raise GSetError("pullback of maps with different targets")
    X, Y = f.source, g.source
    pairs = [(x, y) for x in range(X.size) for y in range(Y.size) if f.values[x] == g.values[y]]
    idx = {p: i for i, p in enumerate(pairs)}
    action = [[idx[(ax[x], ay[y])] for (x, y) in pairs] for ax, ay in zip(X.action, Y.action)]
    P = GSet(X.group, len(pairs), action, check=False)
    return Pullback(P, GMap(P, X, [x for x, _ in pairs], check=False),
                    GMap(P, Y, [y for _, y in pairs], check=False), tuple(pairs))


def restrict_to(X: GSet, points: Sequence[int]) -> tuple[GSet, GMap]:
    """Sub-G-set on a G-stable set of points, with its inclusion."""
    points = list(points)
    idx = {p: i for i, p in enumerate(points)}
    action = [[idx[a[p]] for p in points] for a in X.action]
    S = GSet(X.group, len(points), action, check=False)
    return S, GMap(S, X, points, check=False)


# ---------------------------------------------------------------------------
# canonical decomposition

@dataclass(frozen=True)
class CanonicalDecomposition:
    """X as a coproduct of representative coset spaces.

    orbits[a] = (class index, orbit points); the orbit is identified with
    G/H_class by sending the coset gH to g.base[a], where base[a] is the least
    orbit point whose stabilizer is exactly the class representative.
    """

    gset: GSet
    orbits: tuple
    base: tuple
    iso: GMap  # coproduct of rep_gset(class) over orbits -> X
    locate: tuple  # x -> (orbit index, point of the coset space)

    @property
    def classes(self) -> tuple:
        return tuple(c for c, _ in self.orbits)

    def offsets(self, dims: Sequence[int]) -> list[int]:
        out, acc = [], 0
        for c in self.classes:
            out.append(acc)
            acc += dims[c]
        out.append(acc)
        return out

    def inclusion(self, a: int) -> GMap:
        """The equivariant iso of G/H_{class a} onto orbit a, as a map into X."""
        G = self.gset.group
        C = rep_gset(G, self.orbits[a][0])
        reps = coset_reps(G, _sub(G).rep(self.orbits[a][0]))
        b = self.base[a]
        return GMap(C, self.gset, [self.gset.action[g][b] for g in reps], check=False)


@lru_cache(maxsize=8192)
def decompose(X: GSet) -> CanonicalDecomposition:
    G = X.group
    sub = _sub(G)
    found = []
    for o in X.orbits:
        stab = X.stabilizer(o[0])
        cls = sub.class_of[stab]
        H = sub.rep(cls)
        base = next(x for x in o if X.stabilizer(x) == H)
        found.append((cls, o, base))
    found.sort(key=lambda t: (t[0], t[1][0]))
    locate = [None] * X.size
    values = []
    for a, (cls, o, base) in enumerate(found):
        H = sub.rep(cls)
        reps = coset_reps(G, H)
        for i, g in enumerate(reps):
            x = X.action[g][base]
            locate[x] = (a, i)
            values.append(x)
    src = coproduct_many(G, [rep_gset(G, c) for c, _, _ in found])
    iso = GMap(src, X, values, check=False)
    return CanonicalDecomposition(X, tuple((c, o) for c, o, _ in found),
                                  tuple(b for _, _, b in found), iso, tuple(locate))


def class_multiset(X: GSet) -> tuple:
    return decompose(X).classes


def find_iso(X: GSet, Y: GSet) -> GMap | None:
    if X.group != Y.group or X.size != Y.size:
        return None
    dX, dY = decompose(X), decompose(Y)
    if dX.classes != dY.classes:
        return None
    # both isos start from the same coproduct of coset spaces
    return dX.iso.inverse().then(dY.iso)


def hom_gset(X: GSet, Y: GSet) -> list[GMap]:
    """All equivariant maps X -> Y, sorted by value array."""
    _same_group(X, Y)
    choices = []
    for o in X.orbits:
        x0 = o[0]
        stab = X.stabilizer(x0)
        targets = Y.fixed_points(stab)
        # coset representatives carrying x0 to each orbit point
        carry = {}
        for g in X.group:
            carry.setdefault(X.action[g][x0], g)
        choices.append([(o, carry, y) for y in targets])
    maps = []
    for combo in iproduct(*choices):
        vals = [0] * X.size
        for o, carry, y in combo:
            for x in o:
                vals[x] = Y.action[carry[x]][y]
        maps.append(tuple(vals))
    maps.sort()
    return [GMap(X, Y, v, check=False) for v in maps]
