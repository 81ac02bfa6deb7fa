"""
Finite groups as validated Cayley tables, with the subgroup lattice.

Element 0 is always the identity.  Subgroups are frozensets of element
indices.  Conjugacy classes of subgroups are put in a canonical order (size,
then sorted element tuple of the lexicographically least member) and that order
is the global indexing of transitive G-sets everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

DEFAULT_ORDER_BOUND = 24


class GroupError(ValueError):
    pass


class Group:
    """A finite group given by its multiplication table: table[g][h] = g*h."""

    def __init__(self, table: Sequence[Sequence[int]], name: str | None = None):
        n = len(table)
        if n == 0:
            raise GroupError("empty table")
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = n
        self.name = name
        self._validate()
        inv = [None] * n
        for g in range(n):
            for h in range(n):
                if self.table[g][h] == 0:
                    inv[g] = h
                    break
        self.inverse = tuple(inv)
        self._hash = hash(self.table)

    def _validate(self):
        n, t = self.order, self.table
        for i, row in enumerate(t):
            if len(row) != n:
                raise GroupError(f"row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise GroupError(f"entry {x} in row {i} out of range")
        for g in range(n):
            if t[0][g] != g or t[g][0] != g:
                raise GroupError(f"element 0 is not an identity (fails at {g})")
        for g in range(n):
            if 0 not in t[g]:
                raise GroupError(f"element {g} has no inverse")
            h = t[g].index(0)
            if t[h][g] != 0:
                raise GroupError(f"element {g} has no two-sided inverse")
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"not associative at ({a}, {b}, {c})")

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Group) and self.table == other.table

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Group({self.name or 'order ' + str(self.order)})"

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverse[g]]

    def conj_subgroup(self, g: int, H: Iterable[int]) -> frozenset:
        return frozenset(self.conj(g, h) for h in H)

    def closure(self, gens: Iterable[int]) -> frozenset:
        els = {0}
        frontier = [0]
        gens = list(set(gens))
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in els:
                        els.add(y)
                        new.append(y)
            frontier = new
        return frozenset(els)

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = frozenset(H)
        if 0 not in H:
            return False
        return all(self.table[a][self.inverse[b]] in H for a in H for b in H)

    def normalizer(self, H: frozenset) -> frozenset:
        return frozenset(g for g in self if self.conj_subgroup(g, H) == H)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self for b in self)

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table]}


def group_from_table(table, name: str | None = None) -> Group:
    return Group(table, name)


def group_from_permutations(gens: Sequence[Sequence[int]], name: str | None = None) -> Group:
    """Expand permutation generators (image lists) to a Cayley table.

    Elements are ordered identity first, then lexicographically by image list.
    """
    gens = [tuple(p) for p in gens]
    if not gens:
        raise GroupError("no generators")
    deg = len(gens[0])
    if any(sorted(p) != list(range(deg)) for p in gens):
        raise GroupError("generators must be permutations of 0..n-1")
    ident = tuple(range(deg))
    els = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(deg))
                if y not in els:
                    els.add(y)
                    new.append(y)
        frontier = new
    order = [ident] + sorted(els - {ident})
    idx = {p: i for i, p in enumerate(order)}
    # (g*h)(i) = g(h(i))
    table = [[idx[tuple(g[h[i]] for i in range(deg))] for h in order] for g in order]
    return Group(table, name)


def cyclic(n: int) -> Group:
    return Group([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}")


def direct_product(G: Group, H: Group, name: str | None = None) -> Group:
    n, m = G.order, H.order
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n * m)]
             for a in range(n * m)]
    return Group(table, name or f"{G.name}x{H.name}")


def symmetric(n: int) -> Group:
    if n == 1:
        return cyclic(1)
    return group_from_permutations(list(permutations(range(n))), f"S{n}")


def dihedral(n: int) -> Group:
    """Symmetries of an n-gon, order 2n."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return group_from_permutations([rot, ref], f"D{2 * n}")


BUILTIN = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C2xC2": lambda: direct_product(cyclic(2), cyclic(2), "C2xC2"),
    "S3": lambda: symmetric(3),
    "D8": lambda: dihedral(4),
}


def builtin_group(name: str) -> Group:
    key = {k.lower(): k for k in BUILTIN}.get(name.lower())
    if key is None:
        raise KeyError(f"unknown group {name!r}; builtins: {', '.join(BUILTIN)}")
    return BUILTIN[key]()


# ---------------------------------------------------------------------------
# subgroups

@dataclass(frozen=True)
class SubgroupClassTable:
    group: Group
    subgroups: tuple  # frozensets in canonical order
    class_of: dict = field(repr=False)  # subgroup -> class index
    class_reps: tuple  # index into subgroups, one per class

    @property
    def num_classes(self) -> int:
        return len(self.class_reps)

    def rep(self, i: int) -> frozenset:
        return self.subgroups[self.class_reps[i]]

    @cached_property
    def reps(self) -> tuple:
        return tuple(self.rep(i) for i in range(self.num_classes))

    def members(self, i: int) -> list:
        return [H for H in self.subgroups if self.class_of[H] == i]

    def class_index(self, H: Iterable[int]) -> int:
        return self.class_of[frozenset(H)]

    @cached_property
    def normalizers(self) -> tuple:
        return tuple(sorted(self.group.normalizer(H)) for H in self.reps)

    @property
    def top(self) -> int:
        """Class of G itself (the one-point G-set)."""
        return self.num_classes - 1


def _sort_key(H) -> tuple:
    return (len(H), tuple(sorted(H)))


def all_subgroups(G: Group, bound: int = DEFAULT_ORDER_BOUND) -> SubgroupClassTable:
    if G.order > bound:
        raise GroupError(f"group order {G.order} exceeds the enumeration bound {bound}; "
                         f"pass an explicit larger bound (CLI: --bound) to override")
    return _all_subgroups(G)


@lru_cache(maxsize=None)
def _all_subgroups(G: Group) -> SubgroupClassTable:
    cyclics = {G.closure([g]) for g in G}
    found = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        new = []
        for H in frontier:
            for C in cyclics:
                if C <= H:
                    continue
                K = G.closure(H | C)
                if K not in found:
                    found.add(K)
                    new.append(K)
        frontier = new
    subs = sorted(found, key=_sort_key)
    seen: dict = {}
    reps = []
    for H in subs:
        if H in seen:
            continue
        cls = sorted({G.conj_subgroup(g, H) for g in G}, key=_sort_key)
        # subs is sorted, so H is the least member of its class
        for K in cls:
            seen[K] = len(reps)
        reps.append(subs.index(H))
    return SubgroupClassTable(G, tuple(subs), seen, tuple(reps))


def subgroups_of(G: Group, H: frozenset) -> list:
    return [K for K in all_subgroups(G, max(G.order, DEFAULT_ORDER_BOUND)).subgroups if K <= H]


def double_cosets(G: Group, H: Iterable[int], K: Iterable[int]) -> list[frozenset]:
    H, K = frozenset(H), frozenset(K)
    for S, nm in ((H, "H"), (K, "K")):
        if not G.is_subgroup(S):
            raise GroupError(f"{nm} is not a subgroup")
    t = G.table
    seen = set()
    out = []
    for g in G:
        if g in seen:
            continue
        D = frozenset(t[t[h][g]][k] for h in H for k in K)
        seen |= D
        out.append(D)
    return sorted(out, key=min)


def index(G: Group, H: Iterable[int], K: Iterable[int]) -> int:
    H, K = frozenset(H), frozenset(K)
    if not (G.is_subgroup(H) and G.is_subgroup(K)):
        raise GroupError("arguments must be subgroups")
    if not K <= H:
        raise GroupError("K is not contained in H")
    return len(H) // len(K)


def left_cosets(G: Group, H: frozenset) -> list[frozenset]:
    """Left cosets gH ordered by least element (so H itself comes first)."""
    t = G.table
    seen = set()
    out = []
    for g in G:
        if g in seen:
            continue
        c = frozenset(t[g][h] for h in H)
        seen |= c
        out.append(c)
    return sorted(out, key=min)
